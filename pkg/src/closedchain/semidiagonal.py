"""
Semi-diagonal parameters and their cube parametrization.

For a closing chain with links ``a_1..a_n`` the semi-diagonal vector holds
``C_3, ..., C_{n-1}``, where ``C_j`` is the cross term of the first ``j - 1``
links (so the squared distance from the origin to joint ``j - 1`` equals
``S_{j-1} + 2 C_j``).  Two fixed values frame the vector: ``C_2 = 0`` and
``C_n = (a_n^2 - S_{n-1}) / 2``.

Entries are *stored* by ascending subscript but *generated* top-down: cube
coordinate ``s_k`` drives ``U_{n-k}`` and hence ``C_{n-k}``, ``k = 1..n-3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from closedchain.chain import ChainSpec, sum_squares
from closedchain.errors import (
    DimensionError,
    InvalidParameterError,
    SamplingExhaustedError,
)

SAMPLE_CHUNK = 4096
MAX_DRAWS = 10_000_000
MIN_ACCEPTANCE = 1e-6


def _vector(chain: ChainSpec, entries: ArrayLike, what: str) -> NDArray[np.float64]:
    arr = np.array(entries, dtype=float).reshape(-1)
    if arr.shape[0] != chain.n - 3:
        raise DimensionError(f"{what} needs {chain.n - 3} entries, got {arr.shape[0]}")
    return arr


@dataclass(frozen=True, eq=False)
class SemiDiagonalVector:
    """``C_3, ..., C_{n-1}`` of ``chain``, ascending by subscript."""

    chain: ChainSpec
    entries: NDArray[np.float64]

    def __init__(self, chain: ChainSpec, entries: ArrayLike):
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "entries", _vector(chain, entries, "semi-diagonal vector"))

    def __getitem__(self, subscript: int) -> float:
        """``C_j`` for ``2 <= j <= n`` including the two framing constants."""
        return float(extended(self.chain, self.entries)[subscript])

    def __repr__(self) -> str:
        return f"SemiDiagonalVector({self.entries.tolist()!r})"


@dataclass(frozen=True, eq=False)
class UVector:
    """Shifted parameters ``U_3, ..., U_{n-1}``, ascending by subscript."""

    chain: ChainSpec
    entries: NDArray[np.float64]

    def __init__(self, chain: ChainSpec, entries: ArrayLike):
        object.__setattr__(self, "chain", chain)
        object.__setattr__(self, "entries", _vector(chain, entries, "U vector"))

    def __repr__(self) -> str:
        return f"UVector({self.entries.tolist()!r})"


@dataclass(frozen=True, eq=False)
class CubePoint:
    """Coordinates ``s_1, ..., s_{n-3}`` in ``[-1, 1]``; ``s_k`` drives ``U_{n-k}``."""

    s: NDArray[np.float64]

    def __init__(self, s: ArrayLike):
        arr = np.array(s, dtype=float).reshape(-1)
        if np.any(np.abs(arr) > 1.0) or not np.all(np.isfinite(arr)):
            raise InvalidParameterError(f"cube coordinates must lie in [-1, 1]: {arr}")
        object.__setattr__(self, "s", arr)

    def __repr__(self) -> str:
        return f"CubePoint({self.s.tolist()!r})"


def cn_constant(chain: ChainSpec) -> float:
    """The fixed top value ``C_n = (a_n^2 - S_{n-1}) / 2``."""
    return (chain.links[-1] ** 2 - sum_squares(chain, chain.n - 1)) / 2.0


def extended(chain: ChainSpec, entries: ArrayLike) -> NDArray[np.float64]:
    """Pad ascending ``C`` entries so index ``j`` holds ``C_j`` for ``2 <= j <= n``.

    Works on batches: the last axis of ``entries`` has length ``n - 3`` and the
    result's last axis has length ``n + 1`` (indices 0 and 1 are unused zeros).
    """
    c = np.asarray(entries, dtype=float)
    out = np.zeros(c.shape[:-1] + (chain.n + 1,))
    out[..., 3 : chain.n] = c
    out[..., chain.n] = cn_constant(chain)
    return out


def _prefix_squares(chain: ChainSpec) -> NDArray[np.float64]:
    """``S[m]`` = sum of the first ``m`` squared links, ``S[0] = 0``."""
    return np.concatenate([[0.0], np.cumsum(chain.a**2)])


def roots(chain: ChainSpec, c_upper: float, k: int) -> tuple[float, float]:
    """Interval of admissible ``C_{n-k}`` given ``C_{n-k+1} = c_upper``.

    These are the roots of ``(c_upper - C)^2 = a_{n-k}^2 (S_{n-k-1} + 2C)``.
    """
    n = chain.n
    if not 1 <= k <= n - 2:
        raise InvalidParameterError(f"k must lie in 1..{n - 2}, got {k}")
    disc = 2.0 * c_upper + sum_squares(chain, n - k)
    if disc < -chain.tol_nonneg:
        raise InvalidParameterError(
            f"no real roots: 2*C + S_{n - k} = {disc} is negative"
        )
    a = chain.link(n - k)
    mid = c_upper + a * a
    half = a * math.sqrt(max(disc, 0.0))
    return mid - half, mid + half


def qa_bounds(chain: ChainSpec, subscript: int) -> tuple[float, float]:
    """Range of the cross term over the first ``subscript - 1`` links.

    The minimum comes from the shortest reachable endpoint distance of an open
    chain: zero unless one link is longer than all the others together.
    """
    if not 3 <= subscript <= chain.n - 1:
        raise InvalidParameterError(f"subscript must lie in 3..{chain.n - 1}")
    m = subscript - 1
    a = chain.links[:m]
    total = math.fsum(a)
    sq = math.fsum(v * v for v in a)
    cmax = (total * total - sq) / 2.0
    d_min = max(0.0, 2.0 * max(a) - total)
    cmin = (d_min * d_min - sq) / 2.0
    return cmin, cmax


def u_from_c(c: SemiDiagonalVector) -> UVector:
    """``U_{n-k} = C_{n-k} - C_{n-k+1} - a_{n-k}^2``."""
    chain = c.chain
    ext = extended(chain, c.entries)
    j = np.arange(3, chain.n)
    u = ext[j] - ext[j + 1] - chain.a[j - 1] ** 2
    return UVector(chain, u)


def c_from_u(u: UVector) -> SemiDiagonalVector:
    """Inverse of :func:`u_from_c`, unrolled from ``C_n`` downward."""
    return SemiDiagonalVector(u.chain, _c_from_u_array(u.chain, u.entries))


def _c_from_u_array(chain: ChainSpec, u: NDArray) -> NDArray[np.float64]:
    n = chain.n
    a2 = chain.a**2
    out = np.empty_like(u)
    upper = np.full(u.shape[:-1], cn_constant(chain))
    for j in range(n - 1, 2, -1):
        upper = u[..., j - 3] + upper + a2[j - 1]
        out[..., j - 3] = upper
    return out


def t_eval(chain: ChainSpec, u_prefix: Sequence[float], k: int) -> float:
    """Squared diagonal bound for level ``k`` given ``U_{n-1}, ..., U_{n-k+1}``.

    Returns ``2 * sum(u_prefix) + a_n^2 + a_{n-1}^2 + ... + a_{n-k+1}^2``.
    """
    n = chain.n
    if not 1 <= k <= n - 2:
        raise InvalidParameterError(f"k must lie in 1..{n - 2}, got {k}")
    if len(u_prefix) != k - 1:
        raise DimensionError(f"t_{k} needs {k - 1} values, got {len(u_prefix)}")
    return 2.0 * math.fsum(u_prefix) + math.fsum(chain.link(n - j) ** 2 for j in range(k))


def _cube_to_u_array(chain: ChainSpec, s: NDArray) -> NDArray[np.float64]:
    """Batch version of :func:`cube_to_u`; returns ``U`` ascending by subscript."""
    n = chain.n
    a = chain.a
    u = np.empty_like(s)
    t = np.full(s.shape[:-1], a[n - 1] ** 2)
    for k in range(1, n - 2):
        j = n - k
        uj = s[..., k - 1] * a[j - 1] * np.sqrt(np.maximum(t, 0.0))
        u[..., j - 3] = uj
        t = t + 2.0 * uj + a[j - 1] ** 2
    return u


def cube_to_u(chain: ChainSpec, s: CubePoint | ArrayLike) -> UVector:
    """Map the unit cube onto the admissible ``U`` domain.

    ``U_{n-k} = s_k * a_{n-k} * sqrt(t_k)`` for ``k = 1, ..., n - 3`` in turn.
    """
    s = s if isinstance(s, CubePoint) else CubePoint(s)
    if s.s.shape[0] != chain.n - 3:
        raise DimensionError(f"cube point needs {chain.n - 3} coordinates")
    return UVector(chain, _cube_to_u_array(chain, s.s))


def u_to_cube(chain: ChainSpec, u: UVector) -> CubePoint:
    """Right inverse of :func:`cube_to_u` on the admissible ``U`` domain.

    Where a bound ``t_k`` vanishes the fibre is a whole interval; ``s_k = 0``
    is returned there.
    """
    n = chain.n
    a = chain.a
    tol = chain.tol_nonneg
    s = np.zeros(n - 3)
    t = a[n - 1] ** 2
    for k in range(1, n - 2):
        j = n - k
        uj = u.entries[j - 3]
        bound = a[j - 1] * math.sqrt(max(t, 0.0))
        if t > tol:
            sk = uj / bound
            if abs(sk) > 1.0 + 1e-9:
                raise InvalidParameterError(
                    f"U_{j} = {uj} exceeds its bound {bound}"
                )
            s[k - 1] = min(1.0, max(-1.0, sk))
        elif abs(uj) > math.sqrt(tol) * a[j - 1]:
            raise InvalidParameterError(f"U_{j} = {uj} must vanish when t_{k} = 0")
        t = t + 2.0 * uj + a[j - 1] ** 2
    return CubePoint(s)


def _margin(chain: ChainSpec, margin: float | None) -> float:
    return chain.tol_nonneg if margin is None else margin


def _in_sd_array(chain: ChainSpec, c: NDArray, margin) -> NDArray[np.bool_]:
    """``margin`` is a scalar or broadcasts against the batch shape of ``c``."""
    n = chain.n
    a = chain.a
    sq = _prefix_squares(chain)
    ext = extended(chain, c)
    ok = np.ones(c.shape[:-1], dtype=bool)
    for k in range(1, n - 2):
        j = n - k
        upper = ext[..., j + 1]
        disc = 2.0 * upper + sq[j]
        real = disc >= -margin
        half = a[j - 1] * np.sqrt(np.maximum(disc, 0.0))
        mid = upper + a[j - 1] ** 2
        cj = ext[..., j]
        ok &= real & (cj >= mid - half - margin) & (cj <= mid + half + margin)
    return ok


def _in_q_array(chain: ChainSpec, c: NDArray, margin) -> NDArray[np.bool_]:
    lo, hi = qa_box(chain)
    margin = np.asarray(margin)[..., None]
    return np.all((c >= lo - margin) & (c <= hi + margin), axis=-1)


def qa_box(chain: ChainSpec) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Lower and upper realizability bounds for every ``C_3..C_{n-1}``."""
    bounds = np.array([qa_bounds(chain, j) for j in range(3, chain.n)])
    return bounds[:, 0], bounds[:, 1]


def in_sd(c: SemiDiagonalVector, margin: float | None = None) -> bool:
    """Each ``C_{n-k}`` lies between the roots generated by ``C_{n-k+1}``.

    Boundary points count as inside; ``margin`` defaults to
    ``1e-12 * (sum a)^2``.
    """
    return bool(_in_sd_array(c.chain, c.entries, _margin(c.chain, margin)))


def in_q(c: SemiDiagonalVector, margin: float | None = None) -> bool:
    """Each ``C_j`` lies within the reachable range of the cross term."""
    return bool(_in_q_array(c.chain, c.entries, _margin(c.chain, margin)))


def cube_to_c(chain: ChainSpec, s: ArrayLike) -> NDArray[np.float64]:
    """Cube coordinates straight to ascending ``C`` entries (batched)."""
    s = np.asarray(s, dtype=float)
    return _c_from_u_array(chain, _cube_to_u_array(chain, s))


@dataclass(frozen=True, eq=False)
class CSample:
    """Accepted semi-diagonal vectors plus rejection statistics."""

    chain: ChainSpec
    c: NDArray[np.float64]
    draws: int

    @property
    def acceptance(self) -> float:
        return self.c.shape[0] / self.draws if self.draws else 1.0

    def vectors(self) -> list[SemiDiagonalVector]:
        return [SemiDiagonalVector(self.chain, row) for row in self.c]


def sample_c_array(
    chain: ChainSpec, count: int, rng: np.random.Generator | int | None
) -> CSample:
    """Draw ``count`` members of the semi-diagonal domain intersected with the box.

    Cube points are drawn uniformly in fixed-size chunks, so for a fixed seed
    the result for a smaller ``count`` is a prefix of the result for a larger one.
    """
    chain.require_feasible()
    if count < 0:
        raise InvalidParameterError("count must be nonnegative")
    rng = np.random.default_rng(rng)
    dim = chain.n - 3
    lo, hi = qa_box(chain)
    margin = chain.tol_nonneg
    kept: list[NDArray] = []
    got = 0
    draws = 0
    while got < count:
        s = rng.uniform(-1.0, 1.0, size=(SAMPLE_CHUNK, dim))
        c = cube_to_c(chain, s)
        ok = np.all((c >= lo - margin) & (c <= hi + margin), axis=-1)
        draws += SAMPLE_CHUNK
        c = c[ok]
        if got + c.shape[0] >= count:
            # draws are only charged up to the last accepted row
            last = np.flatnonzero(ok)[count - got - 1]
            draws -= SAMPLE_CHUNK - last - 1
            c = c[: count - got]
        kept.append(c)
        got += c.shape[0]
        if got < count and draws >= MAX_DRAWS and got / draws < MIN_ACCEPTANCE:
            raise SamplingExhaustedError(
                f"acceptance ratio {got / draws:.3g} after {draws} draws"
            )
    out = np.concatenate(kept) if kept else np.empty((0, dim))
    return CSample(chain, out, draws)


def sample_cs(
    chain: ChainSpec, seed: int | None, count: int
) -> tuple[list[SemiDiagonalVector], float]:
    """Sample ``count`` semi-diagonal vectors; returns them with the acceptance ratio."""
    res = sample_c_array(chain, count, seed)
    return res.vectors(), res.acceptance
