"""Tests for the sweep configuration parser."""

import math
from pathlib import Path

import pytest

from rcad_lmc.core.exceptions import ConfigError
from rcad_lmc.core.types import GradientMode, SamplerKind
from rcad_lmc.core.validation import INAPPLICABLE_NOTE
from rcad_lmc.harness import load_config, parse_config
from rcad_lmc.kernels import stationary_second_moment

MINIMAL = """\
# minimal sweep
target = gaussian
samplers = O_LMC, RCAD_O_LMC
h = 0.005, 0.008
d = 4
n = 1000
m = 200
"""


def with_lines(*lines: str) -> str:
    return MINIMAL + "\n".join(lines) + "\n"


class TestParse:
    def test_minimal(self):
        spec = parse_config(MINIMAL)
        assert spec.target.name == "gaussian"
        assert spec.samplers == [SamplerKind.O_LMC, SamplerKind.RCAD_O_LMC]
        assert spec.h == [0.005, 0.008]
        assert (spec.d, spec.n) == (4, 1000)
        assert spec.steps.mode == "fixed" and spec.steps.value == 200
        assert spec.seed == 0
        assert spec.initial.x_mean == 0.5
        assert spec.gradient_mode == GradientMode.FINITE_DIFFERENCE
        assert spec.warnings == []

    def test_optional_keys(self):
        spec = parse_config(
            with_lines(
                "seed = 9",
                "eta = h 0.05",
                "gamma = 2",
                "mean = 1.5",
                "variance = 2",
                "init_mean = 0",
                "init_std = 0.5",
                "gradient_mode = exact",
                "output = out/x.csv",
            )
        )
        assert spec.seed == 9
        assert spec.eta.mode == "h"
        assert spec.eta.resolve(0.1, SamplerKind.O_LMC.dynamics) == pytest.approx(0.005)
        assert spec.gamma == 2.0
        assert spec.target.params == {"mean": 1.5, "variance": 2.0}
        assert spec.initial.x_mean == 0.0 and spec.initial.x_std == 0.5
        assert spec.gradient_mode == GradientMode.EXACT
        assert spec.output == "out/x.csv"

    def test_echo_keeps_file_order(self):
        spec = parse_config(with_lines("seed = 3"))
        assert spec.echo == [
            "target = gaussian",
            "samplers = O_LMC, RCAD_O_LMC",
            "h = 0.005, 0.008",
            "d = 4",
            "n = 1000",
            "m = 200",
            "seed = 3",
        ]

    def test_plateau_rule(self):
        text = MINIMAL.replace("m = 200", "m_rule = plateau 5000")
        spec = parse_config(text)
        assert spec.steps.mode == "plateau" and spec.steps.value == 5000
        default = parse_config(MINIMAL.replace("m = 200", "m_rule = plateau"))
        assert default.steps.value == 200_000
        fixed = parse_config(MINIMAL.replace("m = 200", "m_rule = fixed 7"))
        assert fixed.steps.mode == "fixed" and fixed.steps.value == 7

    def test_case_insensitive_sampler_names(self):
        spec = parse_config(MINIMAL.replace("O_LMC, RCAD_O_LMC", "rcd_u_lmc"))
        assert spec.samplers == [SamplerKind.RCD_U_LMC]

    def test_load_config(self, tmp_path):
        path = tmp_path / "sweep.conf"
        path.write_text(MINIMAL, encoding="utf-8")
        assert load_config(path) == parse_config(MINIMAL)

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_config(tmp_path / "absent.conf")


class TestWarnings:
    def test_underdamped_eta_above_h_cubed(self):
        text = MINIMAL.replace("O_LMC, RCAD_O_LMC", "RCAD_U_LMC") + "eta = fixed 0.1\n"
        spec = parse_config(text)
        assert any("eta < h^3" in w for w in spec.warnings)
        assert all(w.startswith("RCAD_U_LMC h=") for w in spec.warnings)

    def test_overdamped_step_too_large(self):
        spec = parse_config(MINIMAL.replace("h = 0.005, 0.008", "h = 0.005, 0.5"))
        assert len(spec.warnings) == 2
        assert all("h=0.5" in w for w in spec.warnings)

    def test_mixture_is_inapplicable(self):
        text = MINIMAL.replace("target = gaussian", "target = mixture")
        spec = parse_config(text + "separation = 2\n")
        assert spec.warnings == [INAPPLICABLE_NOTE]


class TestErrors:
    def test_empty_sweep_axis(self):
        with pytest.raises(ConfigError, match="empty sweep axis: h") as exc:
            parse_config(MINIMAL.replace("h = 0.005, 0.008", "h = "))
        assert exc.value.line == 4

    def test_empty_sampler_axis(self):
        with pytest.raises(ConfigError, match="empty sweep axis: samplers"):
            parse_config(MINIMAL.replace("O_LMC, RCAD_O_LMC", " , "))

    @pytest.mark.parametrize(
        "text, line",
        [
            (with_lines("colour = blue"), 8),
            (with_lines("just words"), 8),
            (with_lines("seed = 1", "seed = 2"), 9),
            (MINIMAL.replace("d = 4", "d = four"), 5),
            (MINIMAL.replace("h = 0.005, 0.008", "h = 0.005, fast"), 4),
            (MINIMAL.replace("n = 1000", "n = 1"), 6),
            (MINIMAL.replace("O_LMC, RCAD_O_LMC", "O_LMC, SGLD"), 3),
            (with_lines("separation = 2"), 8),
            (with_lines("eta = sometimes"), 8),
            (with_lines("gradient_mode = symbolic"), 8),
            (with_lines("m_rule = plateau"), 8),
        ],
    )
    def test_reports_line(self, text, line):
        with pytest.raises(ConfigError) as exc:
            parse_config(text)
        assert exc.value.line == line
        assert str(exc.value).startswith(f"line {line}: ")

    @pytest.mark.parametrize("key", ["target", "samplers", "h", "d", "n"])
    def test_missing_required_key(self, key):
        text = "\n".join(line for line in MINIMAL.splitlines() if not line.startswith(key + " "))
        with pytest.raises(ConfigError, match=f"missing required key '{key}'"):
            parse_config(text)

    def test_missing_steps(self):
        with pytest.raises(ConfigError, match="'m'"):
            parse_config(MINIMAL.replace("m = 200\n", ""))

    def test_negative_initial_spread(self):
        with pytest.raises(ConfigError):
            parse_config(with_lines("init_std = -1"))


CONFIG_DIR = Path(__file__).parents[1] / "configs"


class TestBundledConfigs:
    @pytest.mark.parametrize("name", ["desk_gaussian", "desk_mixture", "full_scale", "smoke"])
    def test_loads(self, name):
        spec = load_config(CONFIG_DIR / f"{name}.conf")
        assert spec.output is None or spec.output.endswith(".csv")

    @pytest.mark.parametrize("name", ["desk_gaussian", "desk_mixture", "full_scale"])
    def test_steps_keep_coordinate_samplers_stable(self, name):
        spec = load_config(CONFIG_DIR / f"{name}.conf")
        for h in spec.h:
            rcd = stationary_second_moment(SamplerKind.RCD_O_LMC, spec.d, h)
            rcad = stationary_second_moment(SamplerKind.RCAD_O_LMC, spec.d, h)
            assert math.isfinite(rcd)
            assert 1.0 < rcad < rcd
