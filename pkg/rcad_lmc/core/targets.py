"""Target distributions p ∝ exp(-f) with their regularity constants."""

from abc import ABC, abstractmethod
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy.special import logsumexp

ArrayLike = Union[np.ndarray, Sequence[float], float]
Coordinate = Union[int, np.ndarray]


class TargetModel(ABC):
    """
    Abstract potential f: R^d -> R together with mu, L and optionally H.

    Potentials are vectorised: ``potential`` accepts an array of shape ``(..., d)``
    and returns an array of shape ``(...)``. Instances are immutable after
    construction and may be shared between chains.
    """

    def __init__(
        self,
        dim: int,
        mu: float,
        lip_grad: float,
        lip_hess: Optional[float] = None,
    ):
        """
        Initialize the target.

        Args:
            dim: Dimension d
            mu: Strong-convexity constant (0 for targets that are not strongly convex)
            lip_grad: Gradient Lipschitz constant L
            lip_hess: Hessian Lipschitz constant H, if known
        """
        if int(dim) != dim or dim < 1:
            raise ValueError(f"dim must be a positive integer, got {dim!r}")
        if mu < 0:
            raise ValueError(f"mu must be nonnegative, got {mu!r}")
        if lip_grad <= 0:
            raise ValueError(f"lip_grad must be positive, got {lip_grad!r}")
        if lip_grad < mu:
            raise ValueError(f"lip_grad ({lip_grad!r}) must be >= mu ({mu!r})")
        if lip_hess is not None and lip_hess < 0:
            raise ValueError(f"lip_hess must be nonnegative, got {lip_hess!r}")
        self._dim = int(dim)
        self._mu = float(mu)
        self._lip_grad = float(lip_grad)
        self._lip_hess = None if lip_hess is None else float(lip_hess)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def mu(self) -> float:
        return self._mu

    @property
    def lip_grad(self) -> float:
        return self._lip_grad

    @property
    def lip_hess(self) -> Optional[float]:
        return self._lip_hess

    @property
    def strongly_convex(self) -> bool:
        return self._mu > 0

    @property
    def condition_number(self) -> float:
        """kappa = L / mu (infinite when mu is 0)."""
        if self._mu == 0:
            return float("inf")
        return self._lip_grad / self._mu

    @property
    def has_exact_partial(self) -> bool:
        return False

    @abstractmethod
    def potential(self, x: np.ndarray) -> np.ndarray:
        """
        Evaluate f.

        Args:
            x: Points of shape (..., d)

        Returns:
            Potential values of shape (...)
        """
        pass

    def exact_partial(self, x: np.ndarray, i: Coordinate) -> np.ndarray:
        """
        Evaluate the analytic partial derivative of f in coordinate ``i``.

        Args:
            x: Points of shape (..., d)
            i: Zero-based coordinate, scalar or one index per leading point

        Returns:
            Partial derivatives of shape (...)
        """
        raise NotImplementedError(f"{type(self).__name__} has no analytic partial derivative")

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        """Stack of all exact partials, shape (..., d)."""
        if not self.has_exact_partial:
            raise NotImplementedError(f"{type(self).__name__} has no analytic partial derivative")
        x = np.asarray(x, dtype=np.float64)
        return np.stack([self.exact_partial(x, i) for i in range(self._dim)], axis=-1)

    def first_coordinate_second_moment(self) -> float:
        """Analytic E_p|x_1|^2, the reference of the default moment-error test function."""
        raise NotImplementedError(f"no analytic reference moment for {type(self).__name__}")

    def _check_shape(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.shape[-1:] != (self._dim,):
            raise ValueError(f"expected trailing dimension {self._dim}, got shape {x.shape}")
        return x

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(dim={self._dim}, mu={self._mu}, "
            f"lip_grad={self._lip_grad}, lip_hess={self._lip_hess})"
        )


def _take_coordinate(x: np.ndarray, i: Coordinate) -> np.ndarray:
    """Select x[..., i] where ``i`` is a scalar or one index per leading point."""
    i = np.asarray(i)
    if i.ndim == 0:
        return x[..., int(i)]
    return np.take_along_axis(x, i[..., None], axis=-1)[..., 0]


class GaussianTarget(TargetModel):
    """Isotropic Gaussian N(mean, variance * I_d)."""

    def __init__(self, mean: ArrayLike, variance: float = 1.0, dim: Optional[int] = None):
        """
        Initialize the Gaussian target.

        Args:
            mean: Mean vector, or a scalar broadcast to ``dim`` coordinates
            variance: Isotropic variance sigma^2 > 0
            dim: Dimension, required when ``mean`` is a scalar
        """
        if variance <= 0:
            raise ValueError(f"variance must be positive, got {variance!r}")
        mean_arr = np.asarray(mean, dtype=np.float64)
        if mean_arr.ndim == 0:
            if dim is None:
                raise ValueError("dim is required when mean is a scalar")
            mean_arr = np.full(int(dim), float(mean_arr))
        elif dim is not None and mean_arr.shape != (dim,):
            raise ValueError(f"mean has shape {mean_arr.shape}, expected ({dim},)")
        precision = 1.0 / variance
        super().__init__(dim=mean_arr.shape[0], mu=precision, lip_grad=precision, lip_hess=0.0)
        mean_arr.setflags(write=False)
        self._mean = mean_arr
        self._variance = float(variance)

    @property
    def mean(self) -> np.ndarray:
        return self._mean

    @property
    def variance(self) -> float:
        return self._variance

    @property
    def has_exact_partial(self) -> bool:
        return True

    def potential(self, x: np.ndarray) -> np.ndarray:
        x = self._check_shape(x)
        return 0.5 * np.sum((x - self._mean) ** 2, axis=-1) / self._variance

    def exact_partial(self, x: np.ndarray, i: Coordinate) -> np.ndarray:
        x = self._check_shape(x)
        return (_take_coordinate(x, i) - self._mean[np.asarray(i)]) / self._variance

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        x = self._check_shape(x)
        return (x - self._mean) / self._variance

    def first_coordinate_second_moment(self) -> float:
        return float(self._mean[0] ** 2 + self._variance)


class QuadraticTarget(TargetModel):
    """Gaussian with general precision: f(x) = (x - b)^T A (x - b) / 2."""

    def __init__(self, precision: np.ndarray, mean: Optional[ArrayLike] = None):
        a = np.asarray(precision, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"precision must be a square matrix, got shape {a.shape}")
        if not np.allclose(a, a.T):
            raise ValueError("precision must be symmetric")
        eig = np.linalg.eigvalsh(a)
        if eig[0] <= 0:
            raise ValueError("precision must be positive definite")
        dim = a.shape[0]
        b = np.zeros(dim) if mean is None else np.asarray(mean, dtype=np.float64)
        if b.shape != (dim,):
            raise ValueError(f"mean has shape {b.shape}, expected ({dim},)")
        super().__init__(dim=dim, mu=float(eig[0]), lip_grad=float(eig[-1]), lip_hess=0.0)
        a.setflags(write=False)
        b.setflags(write=False)
        self._precision = a
        self._mean = b

    @property
    def precision(self) -> np.ndarray:
        return self._precision

    @property
    def mean(self) -> np.ndarray:
        return self._mean

    @property
    def has_exact_partial(self) -> bool:
        return True

    def potential(self, x: np.ndarray) -> np.ndarray:
        y = self._check_shape(x) - self._mean
        return 0.5 * np.einsum("...i,ij,...j->...", y, self._precision, y)

    def exact_partial(self, x: np.ndarray, i: Coordinate) -> np.ndarray:
        return _take_coordinate(self.exact_gradient(x), i)

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        y = self._check_shape(x) - self._mean
        return y @ self._precision

    def first_coordinate_second_moment(self) -> float:
        cov = np.linalg.inv(self._precision)
        return float(self._mean[0] ** 2 + cov[0, 0])


class MixtureTarget(TargetModel):
    """
    Symmetric two-component Gaussian mixture at +/- c * ones(d), unit variances.

    Not log-concave for c >= 1; mu is recorded as 0 and validators flag it.
    """

    def __init__(self, dim: int, separation: float = 2.0):
        if separation < 0:
            raise ValueError(f"separation must be nonnegative, got {separation!r}")
        # Hessian is I - c^2 sech^2(c * sum x) 11^T, so its largest eigenvalue is 1.
        super().__init__(dim=dim, mu=0.0, lip_grad=1.0, lip_hess=None)
        self._separation = float(separation)

    @property
    def separation(self) -> float:
        return self._separation

    @property
    def has_exact_partial(self) -> bool:
        return True

    def potential(self, x: np.ndarray) -> np.ndarray:
        x = self._check_shape(x)
        c = self._separation
        exponents = np.stack(
            [
                -0.5 * np.sum((x - c) ** 2, axis=-1),
                -0.5 * np.sum((x + c) ** 2, axis=-1),
            ]
        )
        return -logsumexp(exponents, axis=0)

    def exact_partial(self, x: np.ndarray, i: Coordinate) -> np.ndarray:
        x = self._check_shape(x)
        c = self._separation
        return _take_coordinate(x, i) - c * np.tanh(c * np.sum(x, axis=-1))

    def exact_gradient(self, x: np.ndarray) -> np.ndarray:
        x = self._check_shape(x)
        c = self._separation
        return x - c * np.tanh(c * np.sum(x, axis=-1))[..., None]

    def first_coordinate_second_moment(self) -> float:
        return self._separation**2 + 1.0


class CustomTarget(TargetModel):
    """User-supplied potential with user-supplied regularity constants."""

    def __init__(
        self,
        dim: int,
        potential: Callable[[np.ndarray], np.ndarray],
        mu: float,
        lip_grad: float,
        lip_hess: Optional[float] = None,
        exact_partial: Optional[Callable[[np.ndarray, Coordinate], np.ndarray]] = None,
        second_moment: Optional[float] = None,
    ):
        """
        Initialize the custom target.

        Args:
            dim: Dimension d
            potential: Vectorised f mapping (..., d) to (...)
            mu: Strong-convexity constant (never estimated by the library)
            lip_grad: Gradient Lipschitz constant
            lip_hess: Hessian Lipschitz constant, if known
            exact_partial: Optional analytic partial (x, i) -> df/dx_i
            second_moment: Optional analytic E_p|x_1|^2
        """
        super().__init__(dim=dim, mu=mu, lip_grad=lip_grad, lip_hess=lip_hess)
        self._potential = potential
        self._exact_partial = exact_partial
        self._second_moment = second_moment

    @property
    def has_exact_partial(self) -> bool:
        return self._exact_partial is not None

    def potential(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self._potential(self._check_shape(x)), dtype=np.float64)

    def exact_partial(self, x: np.ndarray, i: Coordinate) -> np.ndarray:
        if self._exact_partial is None:
            return super().exact_partial(x, i)
        return np.asarray(self._exact_partial(self._check_shape(x), i), dtype=np.float64)

    def first_coordinate_second_moment(self) -> float:
        if self._second_moment is None:
            return super().first_coordinate_second_moment()
        return float(self._second_moment)


def build_target(name: str, dim: int, **params: float) -> TargetModel:
    """
    Construct a named target as used by harness configuration files.

    Args:
        name: "gaussian" or "mixture"
        dim: Dimension d
        **params: ``mean`` and ``variance`` (gaussian) or ``separation`` (mixture)

    Returns:
        The target model

    Raises:
        ValueError: If the name or a parameter is unknown
    """
    name = name.lower()
    if name == "gaussian":
        unknown = set(params) - {"mean", "variance"}
        if unknown:
            raise ValueError(f"unknown gaussian parameters: {sorted(unknown)}")
        return GaussianTarget(
            mean=params.get("mean", 0.0), variance=params.get("variance", 1.0), dim=dim
        )
    if name == "mixture":
        unknown = set(params) - {"separation"}
        if unknown:
            raise ValueError(f"unknown mixture parameters: {sorted(unknown)}")
        return MixtureTarget(dim=dim, separation=params.get("separation", 2.0))
    raise ValueError(f"unknown target {name!r}; expected 'gaussian' or 'mixture'")
