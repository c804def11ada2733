"""Probe state families and their expansions in the well eigenbasis.

Four built-in families cover the use cases downstream:

* ``Eigen``: a single energy eigenstate.
* ``Superposition``: two eigenstates mixed by an angle, cos(alpha) on the
  first index and sin(alpha) on the second.
* ``Polynomial``: the smooth bump  N (1 - (2x/a - 1)^(2p)) / sqrt(a), which
  interpolates from the parabola (p = 1) towards a flat top with sharp
  shoulders as p grows.
* ``Parabolic``: sqrt(30/a^5) x (a - x), kept as its own name because it is
  the state whose time-evolved information has a fully explicit series.

``Custom`` takes an explicit (real) coefficient vector in the eigenbasis.

All expansion coefficients are dimensionless and independent of the box
width: rescaling x by a maps each family onto itself, so coefficients are
computed once at unit width and cached.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .quadrature import quadrature
from .well import WellConfig, eigen_wavefunction, d_eigen_wavefunction

__all__ = [
    "TruncationWarning",
    "Eigen",
    "Superposition",
    "Polynomial",
    "Parabolic",
    "Custom",
    "ProbeState",
    "AmplitudeVector",
    "amplitudes",
    "wavefunction",
    "d_wavefunction",
    "mean_energy",
    "nbar",
]

# expansion weight below which we do not bother warning about truncation
_LOSS_TOL = 1e-6


class TruncationWarning(UserWarning):
    """Emitted when a basis truncation visibly bites the requested quantity."""


@dataclass(frozen=True)
class Eigen:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"quantum number must be >= 1, got {self.n}")


@dataclass(frozen=True)
class Superposition:
    """cos(alpha) |n> + sin(alpha) |m> with n != m."""

    n: int
    m: int
    alpha: float

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"quantum numbers must be >= 1, got ({self.n}, {self.m})")
        if self.n == self.m:
            raise ValueError("superposition needs two distinct levels")


@dataclass(frozen=True)
class Polynomial:
    """Bump profile with flatness exponent p >= 1."""

    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError(f"polynomial order must be >= 1, got {self.p}")


@dataclass(frozen=True)
class Parabolic:
    pass


@dataclass(frozen=True)
class Custom:
    """Explicit real eigenbasis coefficients, normalized to 1."""

    coefficients: tuple

    def __post_init__(self):
        coeff = tuple(float(c) for c in self.coefficients)
        if not coeff:
            raise ValueError("need at least one coefficient")
        norm = math.fsum(c * c for c in coeff)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"coefficients must be unit norm, got norm^2 = {norm!r}")
        object.__setattr__(self, "coefficients", coeff)


ProbeState = Union[Eigen, Superposition, Polynomial, Parabolic, Custom]


@dataclass(frozen=True)
class AmplitudeVector:
    """Eigenbasis expansion of a probe state up to the truncation."""

    coefficients: np.ndarray
    truncation: int

    @property
    def truncation_loss(self) -> float:
        """Probability weight missing from the truncated expansion."""
        return max(0.0, 1.0 - float(self.coefficients @ self.coefficients))


def _poly_height(p: int) -> float:
    # normalization of 1 - (2u - 1)^(2p) on the unit interval
    return math.sqrt((1.0 + 6.0 * p + 8.0 * p * p) / (8.0 * p * p))


def _poly_profile(p: int, u: np.ndarray) -> np.ndarray:
    """Unit-width polynomial bump evaluated at u in [0, 1]."""
    return _poly_height(p) * (1.0 - (2.0 * u - 1.0) ** (2 * p))


def _poly_dprofile(p: int, u: np.ndarray) -> np.ndarray:
    """du derivative of the unit-width bump."""
    return _poly_height(p) * (-4.0 * p) * (2.0 * u - 1.0) ** (2 * p - 1)


@lru_cache(maxsize=None)
def _poly_coefficients(p: int, truncation: int) -> tuple:
    """Eigenbasis expansion of the unit-width bump, by quadrature."""
    unit = WellConfig(width=1.0, truncation=truncation)
    out = []
    for n in range(1, truncation + 1):
        val = quadrature(
            lambda x, n=n: eigen_wavefunction(n, unit, x) * _poly_profile(p, x),
            0.0,
            1.0,
            tol=1e-12,
        )
        out.append(val)
    return tuple(out)


@lru_cache(maxsize=None)
def _parabolic_coefficients(truncation: int) -> tuple:
    """Closed-form expansion of x(a-x): 8 sqrt(15) / (n pi)^3 for odd n."""
    out = []
    for n in range(1, truncation + 1):
        if n % 2 == 0:
            out.append(0.0)
        else:
            out.append(8.0 * math.sqrt(15.0) / (n * math.pi) ** 3)
    return tuple(out)


def amplitudes(state: ProbeState, config: WellConfig) -> AmplitudeVector:
    """Expand a probe state in the truncated eigenbasis.

    Warns with :class:`TruncationWarning` when the missing weight exceeds
    ``1e-6`` (including the case of an eigenstate index beyond the basis).
    """
    size = config.truncation
    coeff = np.zeros(size)
    if isinstance(state, Eigen):
        if state.n > size:
            warnings.warn(
                f"eigenstate index {state.n} exceeds truncation {size}; "
                "expansion is identically zero",
                TruncationWarning,
                stacklevel=2,
            )
        else:
            coeff[state.n - 1] = 1.0
    elif isinstance(state, Superposition):
        for idx, c in ((state.n, math.cos(state.alpha)), (state.m, math.sin(state.alpha))):
            if idx > size:
                warnings.warn(
                    f"superposition level {idx} exceeds truncation {size}",
                    TruncationWarning,
                    stacklevel=2,
                )
            else:
                coeff[idx - 1] += c
    elif isinstance(state, Polynomial):
        coeff[:] = _poly_coefficients(state.p, size)
    elif isinstance(state, Parabolic):
        coeff[:] = _parabolic_coefficients(size)
    elif isinstance(state, Custom):
        if len(state.coefficients) > size:
            raise ValueError(
                f"custom state has {len(state.coefficients)} coefficients "
                f"but the truncation is {size}"
            )
        coeff[: len(state.coefficients)] = state.coefficients
    else:
        raise TypeError(f"unknown probe state {state!r}")

    vec = AmplitudeVector(coefficients=coeff, truncation=size)
    if not isinstance(state, (Eigen, Superposition)) and vec.truncation_loss > _LOSS_TOL:
        warnings.warn(
            f"truncated expansion misses weight {vec.truncation_loss:.3e} "
            f"(truncation {size})",
            TruncationWarning,
            stacklevel=2,
        )
    return vec


def wavefunction(state: ProbeState, config: WellConfig, x: np.ndarray) -> np.ndarray:
    """Real-space profile of the probe state, zero outside the box."""
    a = config.width
    x = np.asarray(x, dtype=float)
    if isinstance(state, Eigen):
        return eigen_wavefunction(state.n, config, x)
    if isinstance(state, Superposition):
        return math.cos(state.alpha) * eigen_wavefunction(state.n, config, x) + math.sin(
            state.alpha
        ) * eigen_wavefunction(state.m, config, x)
    if isinstance(state, Polynomial):
        inside = (x >= 0) & (x <= a)
        u = np.clip(x / a, 0.0, 1.0)
        return np.where(inside, _poly_profile(state.p, u) / math.sqrt(a), 0.0)
    if isinstance(state, Parabolic):
        inside = (x >= 0) & (x <= a)
        return np.where(inside, math.sqrt(30.0 / a**5) * x * (a - x), 0.0)
    if isinstance(state, Custom):
        vec = amplitudes(state, config)
        out = np.zeros_like(x)
        for i, c in enumerate(vec.coefficients):
            if c != 0.0:
                out += c * eigen_wavefunction(i + 1, config, x)
        return out
    raise TypeError(f"unknown probe state {state!r}")


def d_wavefunction(state: ProbeState, config: WellConfig, x: np.ndarray) -> np.ndarray:
    """Width derivative of the real-space profile at fixed x.

    For the scale-covariant families f(x; a) = f(x/a; 1) / sqrt(a) this is
      -(1/a) [ f(x; a) / 2 + (x / a) f'(x / a; 1) / sqrt(a) ].
    """
    a = config.width
    x = np.asarray(x, dtype=float)
    if isinstance(state, Eigen):
        return d_eigen_wavefunction(state.n, config, x)
    if isinstance(state, Superposition):
        return math.cos(state.alpha) * d_eigen_wavefunction(state.n, config, x) + math.sin(
            state.alpha
        ) * d_eigen_wavefunction(state.m, config, x)
    if isinstance(state, Polynomial):
        inside = (x >= 0) & (x <= a)
        u = np.clip(x / a, 0.0, 1.0)
        val = -(0.5 * _poly_profile(state.p, u) + u * _poly_dprofile(state.p, u)) / a**1.5
        return np.where(inside, val, 0.0)
    if isinstance(state, Parabolic):
        inside = (x >= 0) & (x <= a)
        val = math.sqrt(30.0 / a**5) * x * (-2.5 * (a - x) / a + 1.0)
        return np.where(inside, val, 0.0)
    if isinstance(state, Custom):
        vec = amplitudes(state, config)
        out = np.zeros_like(x)
        for i, c in enumerate(vec.coefficients):
            if c != 0.0:
                out += c * d_eigen_wavefunction(i + 1, config, x)
        return out
    raise TypeError(f"unknown probe state {state!r}")


def mean_energy(state: ProbeState, config: WellConfig) -> float:
    """Expectation of the Hamiltonian in the probe state.

    For the polynomial family this has the closed form
    (1 + 6p + 8p^2) / ((4p - 1) a^2); other families sum f_n^2 E_n.
    """
    if isinstance(state, Polynomial):
        p = state.p
        return (1.0 + 6.0 * p + 8.0 * p * p) / ((4.0 * p - 1.0) * config.width**2)
    if isinstance(state, Parabolic):
        return 5.0 / config.width**2
    if isinstance(state, Eigen):
        return 0.5 * (state.n * np.pi / config.width) ** 2
    if isinstance(state, Superposition):
        c, s = math.cos(state.alpha), math.sin(state.alpha)
        pref = 0.5 * (np.pi / config.width) ** 2
        return pref * (c * c * state.n**2 + s * s * state.m**2)
    vec = amplitudes(state, config)
    n = np.arange(1, vec.truncation + 1, dtype=float)
    energies = 0.5 * (n * np.pi / config.width) ** 2
    return float(vec.coefficients**2 @ energies)


def nbar(n: int, d: int, alpha: float) -> tuple[float, int]:
    """Effective level of cos(alpha)|n> + sin(alpha)|n+d>.

    Returns the root-mean-square level sqrt(n^2 cos^2 + (n+d)^2 sin^2) and
    its value rounded half away from zero to the nearest integer.
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got ({n}, {d})")
    c, s = math.cos(alpha), math.sin(alpha)
    value = math.sqrt(n**2 * c * c + (n + d) ** 2 * s * s)
    return value, int(math.floor(value + 0.5))
