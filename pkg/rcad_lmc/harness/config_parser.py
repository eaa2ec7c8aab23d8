"""
Parser for flat key-value sweep configuration files.

Example::

    # Example 1 at desk scale
    target = gaussian
    samplers = RCD_O_LMC, RCAD_O_LMC
    h = 0.02, 0.05, 0.1, 0.2
    d = 100
    n = 100000
    m = 5000
    seed = 7

One ``key = value`` per line, ``#`` starts a comment, lists are comma-separated.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, List, Tuple, TypeVar, Union

from pydantic import ValidationError

from rcad_lmc.core.exceptions import ConfigError
from rcad_lmc.core.models import (
    EtaRule,
    InitialDistribution,
    StepsRule,
    SweepSpec,
    TargetSpec,
)
from rcad_lmc.core.targets import TargetModel
from rcad_lmc.core.types import GradientMode, SamplerKind
from rcad_lmc.core.validation import INAPPLICABLE_NOTE, validate_params

logger = logging.getLogger(__name__)

T = TypeVar("T")

REQUIRED_KEYS = ("target", "samplers", "h", "d", "n")
OPTIONAL_KEYS = (
    "m",
    "m_rule",
    "seed",
    "eta",
    "gamma",
    "mean",
    "variance",
    "separation",
    "init_mean",
    "init_std",
    "init_v_mean",
    "init_v_std",
    "gradient_mode",
    "output",
)
TARGET_PARAMS = {"gaussian": ("mean", "variance"), "mixture": ("separation",)}
DEFAULT_PLATEAU_CAP = 200_000


def _tokenize(text: str) -> Dict[str, Tuple[str, int]]:
    entries: Dict[str, Tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in REQUIRED_KEYS and key not in OPTIONAL_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        entries[key] = (value, lineno)
    return entries


def _convert(value: str, lineno: int, key: str, cast: Callable[[str], T]) -> T:
    try:
        return cast(value)
    except ValueError:
        kind = "integer" if cast is int else "number"
        raise ConfigError(f"{key}: expected a {kind}, got {value!r}", lineno) from None


def _split_list(value: str, lineno: int, key: str) -> List[str]:
    items = [item.strip() for item in value.split(",")]
    items = [item for item in items if item]
    if not items:
        raise ConfigError(f"empty sweep axis: {key}", lineno)
    return items


def _parse_eta(value: str, lineno: int) -> EtaRule:
    parts = value.split()
    if parts == ["auto"]:
        return EtaRule(mode="auto")
    if len(parts) == 2 and parts[0] in ("fixed", "h", "h3"):
        number = _convert(parts[1], lineno, "eta", float)
        if number <= 0:
            raise ConfigError(f"eta: value must be positive, got {number!r}", lineno)
        return EtaRule(mode=parts[0], value=number)
    raise ConfigError(f"eta: expected 'auto', 'fixed v', 'h v' or 'h3 v', got {value!r}", lineno)


def _parse_steps(entries: Dict[str, Tuple[str, int]]) -> StepsRule:
    if "m" in entries and "m_rule" in entries:
        raise ConfigError("give either 'm' or 'm_rule', not both", entries["m_rule"][1])
    if "m" in entries:
        value, lineno = entries["m"]
        steps = _convert(value, lineno, "m", int)
        if steps < 0:
            raise ConfigError(f"m must be >= 0, got {steps}", lineno)
        return StepsRule(mode="fixed", value=steps)
    if "m_rule" in entries:
        value, lineno = entries["m_rule"]
        parts = value.split()
        if parts and parts[0] == "plateau" and len(parts) <= 2:
            cap = DEFAULT_PLATEAU_CAP
            if len(parts) == 2:
                cap = _convert(parts[1], lineno, "m_rule", int)
            if cap < 1:
                raise ConfigError(f"m_rule: cap must be >= 1, got {cap}", lineno)
            return StepsRule(mode="plateau", value=cap)
        if len(parts) == 2 and parts[0] == "fixed":
            steps = _convert(parts[1], lineno, "m_rule", int)
            if steps < 0:
                raise ConfigError(f"m_rule: steps must be >= 0, got {steps}", lineno)
            return StepsRule(mode="fixed", value=steps)
        raise ConfigError(f"m_rule: expected 'plateau [cap]' or 'fixed M', got {value!r}", lineno)
    raise ConfigError("missing required key 'm' (or 'm_rule')")


def admissibility_warnings(spec: SweepSpec, target: TargetModel) -> List[str]:
    """One warning per failed admissibility check, per (sampler, h) cell."""
    if not target.strongly_convex:
        return [INAPPLICABLE_NOTE]
    warnings: List[str] = []
    for kind in spec.samplers:
        for h in spec.h:
            report = validate_params(target, spec.kernel_params(kind, h, target), kind.dynamics)
            for check in report.failed_checks:
                warnings.append(
                    f"{kind.value} h={h!r}: violates {check.detail} "
                    f"(value={check.value!r}, bound={check.bound!r})"
                )
    return warnings


def parse_config(text: str) -> SweepSpec:
    """
    Parse configuration text into a validated SweepSpec.

    Admissibility of every (sampler, h) cell is checked and failures are attached as
    warnings; they do not stop the sweep.

    Args:
        text: Configuration file contents

    Returns:
        SweepSpec

    Raises:
        ConfigError: On unknown, duplicate or missing keys, malformed values and empty
            sweep axes, with the offending line number when there is one
    """
    entries = _tokenize(text)
    for key in REQUIRED_KEYS:
        if key not in entries:
            raise ConfigError(f"missing required key {key!r}")

    target_name, target_line = entries["target"]
    target_name = target_name.lower()
    if target_name not in TARGET_PARAMS:
        raise ConfigError(f"unknown target {target_name!r}", target_line)
    params: Dict[str, float] = {}
    for key in ("mean", "variance", "separation"):
        if key in entries:
            value, lineno = entries[key]
            if key not in TARGET_PARAMS[target_name]:
                raise ConfigError(f"{key!r} does not apply to target {target_name!r}", lineno)
            params[key] = _convert(value, lineno, key, float)

    samplers_value, samplers_line = entries["samplers"]
    samplers: List[SamplerKind] = []
    for name in _split_list(samplers_value, samplers_line, "samplers"):
        try:
            samplers.append(SamplerKind(name.upper()))
        except ValueError:
            raise ConfigError(f"unknown sampler {name!r}", samplers_line) from None

    h_value, h_line = entries["h"]
    hs = [_convert(item, h_line, "h", float) for item in _split_list(h_value, h_line, "h")]
    if any(h <= 0 for h in hs):
        raise ConfigError("h values must be positive", h_line)

    d_value, d_line = entries["d"]
    n_value, n_line = entries["n"]
    d = _convert(d_value, d_line, "d", int)
    n = _convert(n_value, n_line, "n", int)
    if d < 1:
        raise ConfigError(f"d must be >= 1, got {d}", d_line)
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}", n_line)

    fields: Dict[str, object] = {}
    if "seed" in entries:
        value, lineno = entries["seed"]
        seed = _convert(value, lineno, "seed", int)
        if seed < 0:
            raise ConfigError(f"seed must be >= 0, got {seed}", lineno)
        fields["seed"] = seed
    if "eta" in entries:
        fields["eta"] = _parse_eta(*entries["eta"])
    if "gamma" in entries:
        value, lineno = entries["gamma"]
        gamma = _convert(value, lineno, "gamma", float)
        if gamma <= 0:
            raise ConfigError(f"gamma must be positive, got {gamma!r}", lineno)
        fields["gamma"] = gamma
    if "gradient_mode" in entries:
        value, lineno = entries["gradient_mode"]
        try:
            fields["gradient_mode"] = GradientMode(value.lower())
        except ValueError:
            raise ConfigError(f"unknown gradient_mode {value!r}", lineno) from None
    if "output" in entries:
        fields["output"] = entries["output"][0]

    initial: Dict[str, float] = {"x_mean": 0.5}
    for key, field in (
        ("init_mean", "x_mean"),
        ("init_std", "x_std"),
        ("init_v_mean", "v_mean"),
        ("init_v_std", "v_std"),
    ):
        if key in entries:
            value, lineno = entries[key]
            initial[field] = _convert(value, lineno, key, float)

    ordered = sorted(entries.items(), key=lambda item: item[1][1])
    echo = [f"{key} = {value}" for key, (value, _) in ordered]
    try:
        spec = SweepSpec(
            target=TargetSpec(name=target_name, params=params),
            samplers=samplers,
            h=hs,
            d=d,
            n=n,
            steps=_parse_steps(entries),
            initial=InitialDistribution(**initial),
            echo=echo,
            **fields,
        )
        target = spec.target.build(d)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration: {e.errors()[0]['msg']}") from e
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(str(e)) from e

    spec.warnings.extend(admissibility_warnings(spec, target))
    for warning in spec.warnings:
        logger.warning("Admissibility", extra={"detail": warning})
    return spec


def load_config(path: Union[str, Path]) -> SweepSpec:
    """
    Read and parse a configuration file.

    Raises:
        ConfigError: If the file cannot be parsed
        OSError: If it cannot be read
    """
    return parse_config(Path(path).read_text(encoding="utf-8"))
