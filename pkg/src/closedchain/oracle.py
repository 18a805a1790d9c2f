"""
Brute-force cross-checks for small chains.

Nothing here uses the sampling recursion.  Configurations are found by
exhaustive grid search over joint angles, and semi-diagonal vectors are read
off configurations via pairwise cross terms, so the checks stay independent
of the code they validate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from closedchain.chain import ChainSpec, endpoint, prefix_cross_terms
from closedchain.errors import CostGuardError, DimensionError, InvalidParameterError
from closedchain.semidiagonal import (
    SemiDiagonalVector,
    _in_q_array,
    _in_sd_array,
    _prefix_squares,
    extended,
    qa_bounds,
)

MAX_GRID_N = 5
MAX_X_LINKS = 4
MAX_GRID_POINTS = 60_000_000
_CHUNK = 2_000_000


def grid_angles(resolution: int) -> NDArray[np.float64]:
    """Uniform grid on (-pi, pi] with ``resolution`` nodes, ending at pi."""
    h = 2.0 * math.pi / resolution
    return -math.pi + h * np.arange(1, resolution + 1)


def grid_tolerance(chain: ChainSpec, resolution: int) -> float:
    """Circularity tolerance matched to the grid spacing."""
    return 4.0 * chain.total * (2.0 * math.pi / resolution) * chain.total


def _grid_blocks(resolution: int, dims: int):
    """Yield blocks of grid points in ``(-pi, pi]^dims``, lexicographic order."""
    g = grid_angles(resolution)
    inner = max(0, dims - 1)
    per_lead = resolution**inner
    leads = max(1, _CHUNK // max(per_lead, 1))
    tail = (
        np.stack(np.meshgrid(*([g] * inner), indexing="ij"), axis=-1).reshape(-1, inner)
        if inner
        else np.empty((1, 0))
    )
    for start in range(0, resolution, leads):
        lead = g[start : start + leads]
        block = np.empty((lead.shape[0], tail.shape[0], dims))
        block[:, :, 0] = lead[:, None]
        block[:, :, 1:] = tail[None, :, :]
        yield block.reshape(-1, dims)


def grid_circular_configs(chain: ChainSpec, resolution: int, tol: float) -> NDArray[np.float64]:
    """Every grid point of ``(-pi, pi]^(n-1)`` whose circular residual is within ``tol``.

    Returns an array of shape ``(count, n - 1)`` in lexicographic grid order.
    """
    n = chain.n
    if n > MAX_GRID_N:
        raise CostGuardError(f"grid search is limited to n <= {MAX_GRID_N}, got {n}")
    if resolution < 8:
        raise InvalidParameterError("resolution must be at least 8")
    if resolution ** (n - 1) > MAX_GRID_POINTS:
        raise CostGuardError(f"{resolution}^{n - 1} grid points exceed the guard")
    an2 = chain.links[-1] ** 2
    hits = []
    for block in _grid_blocks(resolution, n - 1):
        p = endpoint(chain, block)
        res = np.abs(np.sum(p * p, axis=-1) - an2)
        hits.append(block[res <= tol])
    return np.concatenate(hits) if hits else np.empty((0, n - 1))


@dataclass(frozen=True)
class CircularityReport:
    """Three independent views of whether a configuration is circular."""

    circular: bool
    in_sd_q: bool
    diagonal: bool
    residual: float

    @property
    def consistent(self) -> bool:
        return self.circular == self.in_sd_q == self.diagonal


def _slack(chain: ChainSpec, res: NDArray, tol: float) -> NDArray[np.float64]:
    """Margin, in cross-term units, absorbing a circular residual up to ``tol``.

    The base value ``a_n^2`` in the root and diagonal tests differs from the
    true squared endpoint distance by the residual; this bounds the effect.
    """
    an = chain.links[-1]
    m = np.minimum(res, tol)
    return m * (1.0 + chain.links[-2] / an + m / (4.0 * an * an)) + 8.0 * chain.tol_nonneg


def circularity_reports(chain: ChainSpec, beta: ArrayLike, tol: float) -> dict[str, NDArray]:
    """Batched form of :func:`check_lemma_a2`.

    Returns boolean arrays ``circular``, ``in_sd_q``, ``diagonal`` and the
    float array ``residual``, one entry per row of ``beta``.
    """
    beta = np.asarray(beta, dtype=float)
    n = chain.n
    if beta.shape[-1] != n - 1:
        raise DimensionError(f"expected {n - 1} angles, got {beta.shape[-1]}")
    a = chain.a
    sq = _prefix_squares(chain)
    p = endpoint(chain, beta)
    res = np.abs(np.sum(p * p, axis=-1) - a[-1] ** 2)
    circular = res <= tol
    slack = _slack(chain, res, tol)

    x = prefix_cross_terms(chain, beta)
    c = x[..., 1 : n - 2]
    in_sd_q = _in_sd_array(chain, c, slack) & _in_q_array(chain, c, slack)

    # squared diagonals L_m^2 for m = 1..n-1, with the last pinned to a_n^2
    l2 = np.empty(beta.shape[:-1] + (n,))
    l2[..., 1:n] = sq[1:n] + 2.0 * x
    l2[..., n - 1] = a[-1] ** 2
    ln = np.sqrt(np.maximum(l2, 0.0))
    diagonal = np.ones(beta.shape[:-1], dtype=bool)
    for j in range(n - 1, 1, -1):
        s2 = 2.0 * slack if j == n - 1 else 16.0 * chain.tol_nonneg
        lo = (ln[..., j] - a[j - 1]) ** 2
        hi = (ln[..., j] + a[j - 1]) ** 2
        diagonal &= (l2[..., j - 1] >= lo - s2) & (l2[..., j - 1] <= hi + s2)
    return {"circular": circular, "in_sd_q": in_sd_q, "diagonal": diagonal, "residual": res}


def check_lemma_a2(chain: ChainSpec, beta: ArrayLike, tol: float) -> CircularityReport:
    """Compare circularity with membership of the induced semi-diagonal vector.

    The vector is ``C_j = X(beta_1..beta_{j-1})``.  For a circular input all
    three flags must be true.  For arbitrary input the membership flag and
    the diagonal-inequality flag always agree with each other, but both can
    be true while the endpoint is off the circle: they only constrain the
    diagonal lengths, not the last joint angle.
    """
    r = circularity_reports(chain, np.asarray(beta, dtype=float)[None, :], tol)
    return CircularityReport(
        bool(r["circular"][0]), bool(r["in_sd_q"][0]), bool(r["diagonal"][0]), float(r["residual"][0])
    )


def min_x_grid(chain: ChainSpec, m: int, resolution: int) -> float:
    """Grid minimum of the cross term over the first ``m`` links.

    The cross term only depends on angle differences, and the uniform grid
    is closed under shifts by a grid step, so the first angle is pinned.
    """
    if not 1 <= m <= min(MAX_X_LINKS, chain.n):
        raise CostGuardError(f"exhaustive minimisation needs 1 <= m <= {MAX_X_LINKS}")
    if m == 1:
        return 0.0
    if resolution < 8:
        raise InvalidParameterError("resolution must be at least 8")
    if resolution ** (m - 1) > MAX_GRID_POINTS:
        raise CostGuardError(f"{resolution}^{m - 1} grid points exceed the guard")
    a = chain.a[:m]
    best = math.inf
    for block in _grid_blocks(resolution, m - 1):
        beta = np.concatenate([np.full((block.shape[0], 1), math.pi), block], axis=1)
        x = np.zeros(block.shape[0])
        for i in range(m):
            for j in range(i + 1, m):
                x += a[i] * a[j] * np.cos(beta[:, i] - beta[:, j])
        best = min(best, float(x.min()))
    return best


def root_discriminants(chain: ChainSpec, c: ArrayLike) -> NDArray[np.float64]:
    """``2 C_{j+1} + S_j`` for ``j = n-1`` down to ``2`` (last axis), batched."""
    n = chain.n
    ext = extended(chain, c)
    sq = _prefix_squares(chain)
    j = np.arange(n - 1, 1, -1)
    return 2.0 * ext[..., j + 1] + sq[j]


def check_lemma_a1(chain: ChainSpec, c: SemiDiagonalVector) -> bool:
    """Every quadratic met along ``c`` has real roots (within ``1e-12 (sum a)^2``)."""
    return bool(np.all(root_discriminants(chain, c.entries) >= -chain.tol_nonneg))


@dataclass
class OracleSummary:
    """Counts gathered by :func:`run_oracle_suite`."""

    grid_points: int = 0
    grid_circular: int = 0
    grid_inconsistent: int = 0
    grid_sdq_diag_disagree: int = 0
    grid_noncircular_admissible: int = 0
    sampled: int = 0
    sampled_inconsistent: int = 0
    a1_checked: int = 0
    a1_violations: int = 0
    qa_checks: list[tuple[int, float, float, float]] = field(default_factory=list)

    @property
    def qa_failures(self) -> int:
        return sum(abs(g - c) > bound for _, g, c, bound in self.qa_checks)

    @property
    def consistent(self) -> bool:
        return (
            self.grid_inconsistent == 0
            and self.grid_sdq_diag_disagree == 0
            and self.sampled_inconsistent == 0
            and self.a1_violations == 0
            and self.qa_failures == 0
        )

    def lines(self) -> list[str]:
        out = [
            f"grid points scanned            {self.grid_points}",
            f"grid circular configurations   {self.grid_circular}",
            f"  three-way inconsistent       {self.grid_inconsistent}",
            f"grid box/diagonal disagreement {self.grid_sdq_diag_disagree}",
            f"grid non-circular admissible   {self.grid_noncircular_admissible} (informational)",
            f"sampled configurations         {self.sampled}",
            f"  inconsistent                 {self.sampled_inconsistent}",
            f"root-realness checks           {self.a1_checked}",
            f"  violations                   {self.a1_violations}",
        ]
        for m, g, c, bound in self.qa_checks:
            flag = "ok" if abs(g - c) <= bound else "FAIL"
            out.append(f"min cross term, m={m}: grid {g:.6f} closed form {c:.6f} bound {bound:.3g} {flag}")
        out.append("CONSISTENT" if self.consistent else "INCONSISTENT")
        return out


def run_oracle_suite(
    chain: ChainSpec,
    resolution: int,
    tol: float | None = None,
    samples: int = 500,
    seed: int = 0,
    x_resolution: int = 180,
) -> OracleSummary:
    """Run the small-scale equivalence checks on one chain."""
    from closedchain.sampler import sample_angles

    n = chain.n
    if n > MAX_GRID_N:
        raise CostGuardError(f"oracle suite is limited to n <= {MAX_GRID_N}, got {n}")
    if resolution ** (n - 1) > MAX_GRID_POINTS:
        raise CostGuardError(f"{resolution}^{n - 1} grid points exceed the guard")
    tol = grid_tolerance(chain, resolution) if tol is None else tol
    out = OracleSummary()

    for block in _grid_blocks(resolution, n - 1):
        r = circularity_reports(chain, block, tol)
        circ = r["circular"]
        out.grid_points += block.shape[0]
        out.grid_circular += int(circ.sum())
        agree = (r["in_sd_q"] == circ) & (r["diagonal"] == circ)
        out.grid_inconsistent += int((circ & ~agree).sum())
        strict = circularity_reports(chain, block, 0.0)
        out.grid_sdq_diag_disagree += int((strict["in_sd_q"] != strict["diagonal"]).sum())
        out.grid_noncircular_admissible += int((~circ & r["in_sd_q"]).sum())

    if chain.feasible and samples > 0:
        s = sample_angles(chain, seed, samples, "random")
        r = circularity_reports(chain, s.angles, 1e-9 * chain.total**2)
        ok = r["circular"] & r["in_sd_q"] & r["diagonal"]
        out.sampled = s.angles.shape[0]
        out.sampled_inconsistent = int((~ok).sum())
        d = root_discriminants(chain, s.c)
        out.a1_checked = s.c.shape[0]
        out.a1_violations = int(np.any(d < -chain.tol_nonneg, axis=-1).sum())

    for m in range(2, min(MAX_X_LINKS, n - 2) + 1):
        g = min_x_grid(chain, m, x_resolution)
        cmin, cmax = qa_bounds(chain, m + 1)
        pair_sum = cmax
        bound = 2.0 * (2.0 * math.pi / x_resolution) * pair_sum
        out.qa_checks.append((m, g, cmin, bound))
    return out
