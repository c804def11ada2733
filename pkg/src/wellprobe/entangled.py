"""Multi-particle probe figures of merit.

Distinguishable, non-interacting particles in the same box, prepared in
energy-entangled states, give a signal-to-noise ratio equal to the sum of
the single-particle values plus a preparation-dependent bonus.  This module
evaluates the closed-form bonuses for two-particle eigen and polynomial
pairs, the three-particle single-excitation (W-like) state, and N-particle
two-branch (GHZ-like) states where the bonus survives only for a single
transposition of level indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metrology import qsnr_eigen, qsnr_polynomial

__all__ = [
    "GhzSpec",
    "qsnr_two_eigen",
    "qsnr_two_polynomial",
    "qsnr_w3",
    "qsnr_ghz",
    "entanglement_gain_grid",
]


def _pair_bonus(n1: int, n2: int) -> float:
    """Two-particle eigen-pair bonus 32 n1^2 n2^2 / (n1^2 - n2^2)^2."""
    return 32.0 * (n1 * n2) ** 2 / float(n1**2 - n2**2) ** 2


def qsnr_two_eigen(n1: int, n2: int) -> float:
    """Signal-to-noise ratio of the symmetrized two-eigenstate pair.

    Q_{n1} + Q_{n2} + 32 n1^2 n2^2/(n1^2 - n2^2)^2; the bonus is strictly
    positive, so the entangled pair always beats two independent runs.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError(f"quantum numbers must be >= 1, got ({n1}, {n2})")
    if n1 == n2:
        raise ValueError("pair indices must differ; the symmetrized state degenerates")
    return qsnr_eigen(n1) + qsnr_eigen(n2) + _pair_bonus(n1, n2)


def qsnr_two_polynomial(p1: int, p2: int) -> float:
    """Closed-form pair ratio for two distinct polynomial bumps.

    Q_{p1} + Q_{p2} + (1+4p1)(1+4p2)(1+4p1+4p2) / (2(4p1^2+4p2^2+8p1p2-1)).
    """
    if p1 < 1 or p2 < 1:
        raise ValueError(f"polynomial orders must be >= 1, got ({p1}, {p2})")
    if p1 == p2:
        raise ValueError("pair indices must differ; the gain ratio is undefined on the diagonal")
    bonus = (
        (1.0 + 4.0 * p1)
        * (1.0 + 4.0 * p2)
        * (1.0 + 4.0 * p1 + 4.0 * p2)
        / (2.0 * (4.0 * p1**2 + 4.0 * p2**2 + 8.0 * p1 * p2 - 1.0))
    )
    return qsnr_polynomial(p1) + qsnr_polynomial(p2) + bonus


def qsnr_w3(n1: int, n2: int) -> float:
    """Three-particle single-excitation state: two particles on level n1.

    2 Q_{n1} + Q_{n2} + 64 n1^2 n2^2/(n1^2 - n2^2)^2; the bonus is exactly
    twice the two-particle one.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError(f"quantum numbers must be >= 1, got ({n1}, {n2})")
    if n1 == n2:
        raise ValueError("excitation level must differ from the base level")
    return 2.0 * qsnr_eigen(n1) + qsnr_eigen(n2) + 2.0 * _pair_bonus(n1, n2)


@dataclass(frozen=True)
class GhzSpec:
    """Two-branch N-particle state: product of levels n overlapped with
    the same product re-assigned by the permutation m.

    Levels must be pairwise distinct (otherwise the two branches fail to be
    orthogonal and the 1/sqrt(2) normalization breaks down), and m must be
    a genuine permutation of n, not the identity.
    """

    n: tuple
    m: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        m = tuple(int(v) for v in self.m)
        if len(n) < 2:
            raise ValueError("need at least two particles")
        if len(m) != len(n):
            raise ValueError(f"level tuples differ in length: {len(n)} vs {len(m)}")
        if any(v < 1 for v in n):
            raise ValueError(f"quantum numbers must be >= 1, got {n}")
        if len(set(n)) != len(n):
            raise ValueError(f"levels must be pairwise distinct, got {n}")
        if sorted(m) != sorted(n):
            raise ValueError(f"{m} is not a permutation of {n}")
        if m == n:
            raise ValueError("identity permutation gives two identical branches")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)


def qsnr_ghz(spec: GhzSpec) -> float:
    """Signal-to-noise ratio of a two-branch N-particle state.

    Sum of the per-level ratios plus 16 sum_{k != j} over ordered pairs
    whose levels the permutation swaps while leaving every other particle
    untouched.  Only a single transposition survives this bookkeeping, so
    the bonus never exceeds the best two-particle one.
    """
    n = spec.n
    m = spec.m
    size = len(n)
    total = sum(qsnr_eigen(v) for v in n)
    bonus = 0.0
    for k in range(size):
        for j in range(size):
            if k == j:
                continue
            if m[k] != n[j] or m[j] != n[k]:
                continue
            if any(n[l] != m[l] for l in range(size) if l != k and l != j):
                continue
            bonus += 16.0 * (n[k] * n[j]) ** 2 / float(n[k] ** 2 - n[j] ** 2) ** 2
    return total + bonus


def entanglement_gain_grid(family: str, indices) -> np.ndarray:
    """Matrix of pair gains gamma = Q_joint / (Q_i + Q_j) over an index range.

    ``family`` is "eigen" or "polynomial"; the diagonal is NaN because the
    pair state needs distinct indices.
    """
    if family == "eigen":
        joint = qsnr_two_eigen
        single = qsnr_eigen
    elif family == "polynomial":
        joint = qsnr_two_polynomial
        single = qsnr_polynomial
    else:
        raise ValueError(f"unknown family {family!r}; expected 'eigen' or 'polynomial'")
    idx = list(indices)
    out = np.full((len(idx), len(idx)), np.nan)
    for i, a in enumerate(idx):
        for j, b in enumerate(idx):
            if a != b:
                out[i, j] = joint(a, b) / (single(a) + single(b))
    return out
