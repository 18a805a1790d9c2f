"""
Planar chain geometry in joint-angle coordinates.

A chain with link lengths ``a_1, ..., a_n`` is described by absolute link
angles ``beta_1, ..., beta_m`` (each measured from the positive x-axis).
The last link ``a_n`` is the fixed base: a configuration is *closed* when
the first ``n - 1`` links end at ``(a_n, 0)`` and *circular* when they end
anywhere on the circle of radius ``a_n`` about the origin.

All functions accept angle arrays with arbitrary leading batch dimensions;
the last axis runs over links.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from closedchain.errors import (
    DegeneratePhaseError,
    DimensionError,
    InfeasibleChainError,
    InvalidParameterError,
    NumericDomainError,
)

TOL_CLOSURE = 1e-9
# scaled by (sum of links)^2 for squared-length quantities
TOL_NONNEG = 1e-12


def normalize_angle(x: ArrayLike) -> NDArray[np.float64] | float:
    """Wrap angles into the half-open interval (-pi, pi]."""
    x = np.asarray(x, dtype=float)
    wrapped = math.pi - np.mod(math.pi - x, 2.0 * math.pi)
    y = np.where((x > -math.pi) & (x <= math.pi), x, wrapped)
    if np.ndim(y) == 0:
        return float(y)
    return y


def angle_distance(x: ArrayLike, y: ArrayLike) -> NDArray[np.float64] | float:
    """Distance on the circle between angles ``x`` and ``y``, in [0, pi]."""
    return np.abs(normalize_angle(np.asarray(x, dtype=float) - np.asarray(y, dtype=float)))


@dataclass(frozen=True)
class ChainSpec:
    """Link lengths of a planar chain with ``n >= 4`` revolute joints."""

    links: tuple[float, ...]

    def __init__(self, links: Sequence[float]):
        vals = tuple(float(v) for v in links)
        if len(vals) < 4:
            raise InvalidParameterError(
                f"a chain needs at least 4 links, got {len(vals)}"
            )
        if not all(math.isfinite(v) and v > 0 for v in vals):
            raise InvalidParameterError(f"link lengths must be positive and finite: {vals}")
        object.__setattr__(self, "links", vals)

    @property
    def n(self) -> int:
        return len(self.links)

    @property
    def a(self) -> NDArray[np.float64]:
        return np.array(self.links)

    @property
    def total(self) -> float:
        return math.fsum(self.links)

    @property
    def feasible(self) -> bool:
        """True when the chain can close, i.e. ``2 max a_i <= sum a_i``."""
        return 2.0 * max(self.links) <= self.total

    @property
    def tol_nonneg(self) -> float:
        return TOL_NONNEG * self.total**2

    def require_feasible(self) -> None:
        if not self.feasible:
            raise InfeasibleChainError(
                f"chain {self.links} cannot close: 2*max = {2 * max(self.links)} "
                f"> sum = {self.total}"
            )

    def link(self, i: int) -> float:
        """Length of link ``i`` using 1-based indexing."""
        return self.links[i - 1]


def _angles(beta: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(beta, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    return arr


def _check_len(chain: ChainSpec, beta: NDArray, *, lo: int = 1, hi: int | None = None):
    m = beta.shape[-1]
    hi = chain.n if hi is None else hi
    if not lo <= m <= hi:
        raise DimensionError(f"expected between {lo} and {hi} angles, got {m}")
    return m


def endpoint(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64]:
    """Position of the joint after the first ``len(beta)`` links.

    Returns an array of shape ``beta.shape[:-1] + (2,)``.
    """
    beta = _angles(beta)
    m = _check_len(chain, beta)
    a = chain.a[:m]
    x = np.cos(beta) @ a
    y = np.sin(beta) @ a
    return np.stack([x, y], axis=-1)


def sum_squares(chain: ChainSpec, m: int) -> float:
    """Sum of the first ``m`` squared link lengths."""
    if not 1 <= m <= chain.n:
        raise InvalidParameterError(f"index {m} outside 1..{chain.n}")
    return math.fsum(v * v for v in chain.links[:m])


def prefix_cross_terms(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64]:
    """Cross terms of every prefix of ``beta``.

    Entry ``m - 1`` of the last axis holds
    ``sum_{i<j<=m} a_i a_j cos(beta_i - beta_j)``; the first entry is 0.
    Accumulates the pairwise cosines directly rather than going through the
    endpoint, so it can be used to cross-check ``endpoint``.
    """
    beta = _angles(beta)
    m = _check_len(chain, beta)
    a = chain.a
    out = np.zeros(beta.shape)
    for j in range(1, m):
        inc = a[j] * (np.cos(beta[..., j : j + 1] - beta[..., :j]) @ a[:j])
        out[..., j] = out[..., j - 1] + inc
    return out


def cross_term(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64] | float:
    """``sum_{i<j} a_i a_j cos(beta_i - beta_j)`` over the given angles."""
    x = prefix_cross_terms(chain, beta)[..., -1]
    return float(x) if np.ndim(x) == 0 else x


def combine_sin_cos(a: float, b: float) -> tuple[float, float]:
    """Amplitude and phase with ``a sin x + b cos x == c sin(x + phi)``."""
    if a == 0.0 and b == 0.0:
        raise DegeneratePhaseError("sin/cos combination of a zero vector has no phase")
    return math.hypot(a, b), math.atan2(b, a)


def phase(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64] | float:
    """Phase of the prefix sums ``(sum a_j sin beta_j, sum a_j cos beta_j)``.

    With ``A`` and ``B`` those two sums,
    ``A sin x + B cos x == hypot(A, B) * sin(x + phase)`` for every ``x``.
    """
    beta = _angles(beta)
    m = _check_len(chain, beta)
    a = chain.a[:m]
    s = np.sin(beta) @ a
    c = np.cos(beta) @ a
    if np.any(np.hypot(s, c) <= TOL_NONNEG * chain.total):
        raise DegeneratePhaseError("prefix endpoint is at the origin")
    out = np.arctan2(c, s)
    return float(out) if np.ndim(out) == 0 else out


def diagonal_length(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64] | float:
    """Distance from the origin to the end of the prefix chain, via cross terms."""
    beta = _angles(beta)
    m = _check_len(chain, beta)
    arg = sum_squares(chain, m) + 2.0 * np.asarray(cross_term(chain, beta))
    if np.any(arg < -chain.tol_nonneg):
        raise NumericDomainError(f"negative squared diagonal {np.min(arg)}")
    out = np.sqrt(np.maximum(arg, 0.0))
    return float(out) if np.ndim(out) == 0 else out


def circular_residual(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64] | float:
    """``| |f(beta)|^2 - a_n^2 |`` for a full angle vector of length ``n - 1``."""
    beta = _angles(beta)
    _check_len(chain, beta, lo=chain.n - 1, hi=chain.n - 1)
    p = endpoint(chain, beta)
    out = np.abs(np.sum(p * p, axis=-1) - chain.links[-1] ** 2)
    return float(out) if np.ndim(out) == 0 else out


def closure_residual(chain: ChainSpec, alpha: ArrayLike) -> NDArray[np.float64] | float:
    """Euclidean distance from the chain's endpoint to ``(a_n, 0)``."""
    alpha = _angles(alpha)
    _check_len(chain, alpha, lo=chain.n - 1, hi=chain.n - 1)
    p = endpoint(chain, alpha)
    out = np.hypot(p[..., 0] - chain.links[-1], p[..., 1])
    return float(out) if np.ndim(out) == 0 else out


def rotate(beta: ArrayLike, lam: ArrayLike) -> NDArray[np.float64]:
    """Add ``lam`` to every angle and wrap to (-pi, pi].

    ``lam`` may carry batch dimensions matching ``beta.shape[:-1]``.
    """
    beta = _angles(beta)
    lam = np.asarray(lam, dtype=float)[..., None]
    return np.asarray(normalize_angle(beta + lam))


@dataclass(frozen=True, eq=False)
class CircularConfiguration:
    """Angles whose endpoint lies on the circle of radius ``a_n``."""

    beta: NDArray[np.float64]
    residual: float


@dataclass(frozen=True, eq=False)
class ClosedConfiguration:
    """Angles whose endpoint is exactly ``(a_n, 0)``."""

    alpha: NDArray[np.float64]
    residual: float
