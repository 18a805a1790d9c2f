"""
From semi-diagonal parameters to joint angles.

Given ``C_3..C_{n-1}`` and one flip bit per joint ``2..n-1``, the angles are
built outward from the base: ``beta_1`` is free, and each later ``beta_j``
solves a single ``sin`` equation whose phase comes from the prefix already
built.  The result is circular; rotating it so the endpoint lands on the
positive x-axis closes the chain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from closedchain.chain import (
    TOL_CLOSURE,
    ChainSpec,
    CircularConfiguration,
    ClosedConfiguration,
    circular_residual,
    closure_residual,
    endpoint,
    normalize_angle,
    rotate,
)
from closedchain.errors import (
    DegeneratePhaseError,
    DimensionError,
    DomainError,
    InvalidParameterError,
    InvalidSemiDiagonalError,
)
from closedchain.semidiagonal import (
    CubePoint,
    SemiDiagonalVector,
    _in_q_array,
    _in_sd_array,
    _prefix_squares,
    cube_to_c,
    extended,
    sample_c_array,
)

RATIO_CLAMP = 1e-9


@dataclass(frozen=True)
class OrientationVector:
    """Flip bits for joints ``2..n-1``; ``bits[0]`` belongs to joint 2."""

    bits: tuple[int, ...]

    def __init__(self, bits: Iterable[int] | str):
        if isinstance(bits, str):
            if not set(bits) <= {"0", "1"}:
                raise InvalidParameterError(f"orientation must be a string of 0/1: {bits!r}")
            vals = tuple(int(b) for b in bits)
        else:
            vals = tuple(int(b) for b in bits)
            if not set(vals) <= {0, 1}:
                raise InvalidParameterError(f"orientation bits must be 0 or 1: {vals}")
        object.__setattr__(self, "bits", vals)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def bit(self, joint: int) -> int:
        return self.bits[joint - 2]


def all_orientations(chain: ChainSpec) -> list[OrientationVector]:
    """All ``2^(n-2)`` flip vectors, in binary counting order."""
    return [OrientationVector(b) for b in itertools.product((0, 1), repeat=chain.n - 2)]


def _eps(chain: ChainSpec, eps) -> OrientationVector:
    eps = eps if isinstance(eps, OrientationVector) else OrientationVector(eps)
    if len(eps) != chain.n - 2:
        raise DimensionError(f"orientation needs {chain.n - 2} bits, got {len(eps)}")
    return eps


def arcsin_ratio(chain: ChainSpec, c: SemiDiagonalVector, k: int) -> float:
    """Arcsine that fixes ``beta_{n-k}`` relative to the prefix phase.

    The ratio is ``(C_{n-k+1} - C_{n-k}) / (a_{n-k} * L)`` with
    ``L = sqrt(S_{n-k-1} + 2 C_{n-k})`` the length of the prefix diagonal.
    """
    n = chain.n
    if not 1 <= k <= n - 2:
        raise InvalidParameterError(f"k must lie in 1..{n - 2}, got {k}")
    j = n - k
    ext = extended(chain, c.entries)
    arg = _prefix_squares(chain)[j - 1] + 2.0 * ext[j]
    if arg <= chain.tol_nonneg:
        raise InvalidSemiDiagonalError(f"prefix diagonal before joint {j} has zero length")
    ratio = (ext[j + 1] - ext[j]) / (chain.link(j) * math.sqrt(arg))
    if abs(ratio) > 1.0 + RATIO_CLAMP:
        raise InvalidSemiDiagonalError(f"sine ratio {ratio} at joint {j} is outside [-1, 1]")
    return math.asin(min(1.0, max(-1.0, ratio)))


def solve_angle(sk: float, phi: float, eps: int) -> float:
    """Pick one of the two solutions of ``sin(beta + phi) = sin(sk)``."""
    return normalize_angle(math.pi * eps + (-1) ** eps * sk - phi)


def circular_angles(
    chain: ChainSpec,
    c: ArrayLike,
    eps: ArrayLike,
    beta1: ArrayLike = 0.0,
) -> NDArray[np.float64]:
    """Batched construction of circular configurations.

    ``c`` has shape ``(..., n-3)`` (ascending subscripts), ``eps`` shape
    ``(..., n-2)`` of 0/1 bits, ``beta1`` broadcasts against the batch shape.
    No domain checks are made beyond what the recursion itself needs.
    """
    n = chain.n
    a = chain.a
    sq = _prefix_squares(chain)
    ext = extended(chain, c)
    eps = np.asarray(eps)
    batch = np.broadcast_shapes(ext.shape[:-1], eps.shape[:-1], np.shape(beta1))
    ext = np.broadcast_to(ext, batch + ext.shape[-1:])
    eps = np.broadcast_to(eps, batch + eps.shape[-1:])
    tol = chain.tol_nonneg
    degen_tol = TOL_CLOSURE * chain.total**2

    beta = np.empty(batch + (n - 1,))
    beta[..., 0] = normalize_angle(np.broadcast_to(beta1, batch))
    sin_sum = a[0] * np.sin(beta[..., 0])
    cos_sum = a[0] * np.cos(beta[..., 0])
    for j in range(2, n):
        upper = ext[..., j + 1]
        cur = ext[..., j]
        arg = sq[j - 1] + 2.0 * cur
        degenerate = arg <= tol
        if np.any(degenerate & (np.abs(upper - cur) > degen_tol)):
            raise InvalidSemiDiagonalError(
                f"prefix diagonal before joint {j} vanishes but C_{j + 1} != C_{j}"
            )
        ratio = (upper - cur) / (a[j - 1] * np.sqrt(np.where(degenerate, 1.0, arg)))
        ratio = np.where(degenerate, 0.0, ratio)
        if np.any(np.abs(ratio) > 1.0 + RATIO_CLAMP):
            raise InvalidSemiDiagonalError(
                f"sine ratio at joint {j} is outside [-1, 1] "
                f"(max {np.max(np.abs(ratio))})"
            )
        sk = np.arcsin(np.clip(ratio, -1.0, 1.0))
        phi = np.arctan2(cos_sum, sin_sum)
        e = eps[..., j - 2]
        bj = normalize_angle(np.pi * e + np.where(e == 1, -sk, sk) - phi)
        bj = np.where(degenerate, 0.0, bj)
        beta[..., j - 1] = bj
        sin_sum = sin_sum + a[j - 1] * np.sin(bj)
        cos_sum = cos_sum + a[j - 1] * np.cos(bj)
    return beta


def closing_rotation(chain: ChainSpec, beta: ArrayLike) -> NDArray[np.float64]:
    """Batched closing step: rotate so the endpoint sits on the positive x-axis."""
    p = endpoint(chain, beta)
    return rotate(beta, -np.arctan2(p[..., 1], p[..., 0]))


def _check_domain(chain: ChainSpec, c: NDArray) -> None:
    margin = chain.tol_nonneg
    if not np.all(_in_sd_array(chain, c, margin)):
        raise DomainError("semi-diagonal vector violates the nested root bounds")
    if not np.all(_in_q_array(chain, c, margin)):
        raise DomainError("semi-diagonal vector leaves the reachable cross-term range")


def circular_config(
    chain: ChainSpec,
    c: SemiDiagonalVector,
    eps: OrientationVector | Sequence[int] | str,
    beta1: float = 0.0,
) -> CircularConfiguration:
    """Circular configuration with the given semi-diagonals and flip bits.

    Raises:
        DomainError: if ``c`` is not admissible.
        InvalidSemiDiagonalError: if a vanishing prefix diagonal meets
            inconsistent neighbouring ``C`` values.
    """
    eps = _eps(chain, eps)
    _check_domain(chain, c.entries)
    beta = circular_angles(chain, c.entries, np.array(eps.bits), beta1)
    return CircularConfiguration(beta, circular_residual(chain, beta))


def close_config(chain: ChainSpec, circ: CircularConfiguration) -> ClosedConfiguration:
    """Rotate a circular configuration onto the closed one with endpoint ``(a_n, 0)``."""
    p = endpoint(chain, circ.beta)
    if math.hypot(p[0], p[1]) == 0.0:
        raise DegeneratePhaseError("endpoint at the origin; no closing rotation")
    alpha = closing_rotation(chain, circ.beta)
    return ClosedConfiguration(alpha, closure_residual(chain, alpha))


EpsPolicy = Union[str, OrientationVector, Sequence[int]]


def _expand_eps(chain: ChainSpec, c: NDArray, policy: EpsPolicy, rng) -> tuple[NDArray, NDArray]:
    m = chain.n - 2
    if isinstance(policy, str) and policy == "all":
        bits = np.array(list(itertools.product((0, 1), repeat=m)), dtype=np.int8)
        cc = np.repeat(c, bits.shape[0], axis=0)
        ee = np.tile(bits, (c.shape[0], 1))
        return cc, ee
    if isinstance(policy, str) and policy == "random":
        return c, rng.integers(0, 2, size=(c.shape[0], m), dtype=np.int8)
    eps = _eps(chain, policy)
    return c, np.broadcast_to(np.array(eps.bits, dtype=np.int8), (c.shape[0], m))


@dataclass(frozen=True, eq=False)
class AngleSample:
    """Batched sampling output: one row per configuration."""

    c: NDArray[np.float64]
    eps: NDArray[np.int8]
    angles: NDArray[np.float64]
    residual: NDArray[np.float64]
    closed: bool
    acceptance: float


def sample_angles(
    chain: ChainSpec,
    seed: int | None,
    count: int,
    eps_policy: EpsPolicy = "random",
    beta1: float = 0.0,
    closed: bool = False,
) -> AngleSample:
    """Array form of :func:`sample_configs`.

    ``count`` is the number of semi-diagonal vectors drawn; with the ``"all"``
    policy each one yields ``2^(n-2)`` rows.
    """
    chain.require_feasible()
    c_seq, eps_seq = np.random.SeedSequence(seed).spawn(2)
    cs = sample_c_array(chain, count, np.random.default_rng(c_seq))
    c, e = _expand_eps(chain, cs.c, eps_policy, np.random.default_rng(eps_seq))
    beta = circular_angles(chain, c, e, beta1)
    if closed:
        beta = closing_rotation(chain, beta)
        res = np.atleast_1d(closure_residual(chain, beta)) if len(beta) else np.empty(0)
    else:
        res = np.atleast_1d(circular_residual(chain, beta)) if len(beta) else np.empty(0)
    return AngleSample(c, np.asarray(e), beta, res, closed, cs.acceptance)


def sample_configs(
    chain: ChainSpec,
    seed: int | None,
    count: int,
    eps_policy: EpsPolicy = "random",
    beta1: float = 0.0,
    closed: bool = False,
) -> list[CircularConfiguration] | list[ClosedConfiguration]:
    """Random configurations drawn through the cube parametrization.

    ``eps_policy`` is an orientation (bits or a ``"010"``-style string),
    ``"random"`` or ``"all"``.
    """
    out = sample_angles(chain, seed, count, eps_policy, beta1, closed)
    kind = ClosedConfiguration if closed else CircularConfiguration
    return [kind(row.copy(), float(r)) for row, r in zip(out.angles, out.residual)]


def path_in_cube(
    chain: ChainSpec,
    s_from: CubePoint | ArrayLike,
    s_to: CubePoint | ArrayLike,
    steps: int,
    eps: OrientationVector | Sequence[int] | str,
    beta1: float = 0.0,
) -> list[ClosedConfiguration | None]:
    """Closed configurations along the straight cube segment from ``s_from`` to ``s_to``.

    The flip vector is held fixed along the path.  Interior samples whose
    semi-diagonals leave the reachable range come back as ``None``.
    """
    s_from = s_from if isinstance(s_from, CubePoint) else CubePoint(s_from)
    s_to = s_to if isinstance(s_to, CubePoint) else CubePoint(s_to)
    eps = _eps(chain, eps)
    if steps < 2:
        raise InvalidParameterError("a path needs at least 2 steps")
    for s in (s_from.s, s_to.s):
        if s.shape[0] != chain.n - 3:
            raise DimensionError(f"cube point needs {chain.n - 3} coordinates")
    margin = chain.tol_nonneg
    t = np.linspace(0.0, 1.0, steps)[:, None]
    s = (1.0 - t) * s_from.s + t * s_to.s
    s[0], s[-1] = s_from.s, s_to.s
    c = cube_to_c(chain, s)
    ok = _in_q_array(chain, c, margin)
    if not (ok[0] and ok[-1]):
        raise DomainError("path endpoint lies outside the reachable cross-term range")
    out: list[ClosedConfiguration | None] = []
    for row, good in zip(c, ok):
        if not good:
            out.append(None)
            continue
        circ = circular_config(chain, SemiDiagonalVector(chain, row), eps, beta1)
        out.append(close_config(chain, circ))
    return out
