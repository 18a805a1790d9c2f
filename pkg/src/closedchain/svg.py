"""Minimal SVG writers for configuration and region figures."""

from __future__ import annotations

import numpy as np
from numpy.typing import NDArray

from closedchain.chain import ChainSpec

_SIZE = 480


def _color(i: int, total: int) -> str:
    hue = (360.0 * i / max(total, 1)) % 360.0
    return f"hsl({hue:.1f},70%,40%)"


def _joints(chain: ChainSpec, beta: NDArray) -> NDArray:
    a = chain.a[: beta.shape[0]]
    steps = np.stack([a * np.cos(beta), a * np.sin(beta)], axis=1)
    return np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])


def _points(pts: NDArray) -> str:
    return " ".join(f"{x:.6f},{y:.6f}" for x, y in pts)


def configurations_svg(chain: ChainSpec, angles: NDArray, closed: bool) -> str:
    """Overlay of chain drawings; circular sets also show the radius-``a_n`` circle."""
    r = chain.total
    stroke = r / 250.0
    body = []
    if closed:
        body.append(
            f'<line x1="0" y1="0" x2="{chain.links[-1]:.6f}" y2="0" '
            f'stroke="black" stroke-width="{2 * stroke:.6f}"/>'
        )
    else:
        body.append(
            f'<circle cx="0" cy="0" r="{chain.links[-1]:.6f}" fill="none" '
            f'stroke="black" stroke-dasharray="{4 * stroke:.6f}" stroke-width="{stroke:.6f}"/>'
        )
    for i, beta in enumerate(angles):
        pts = _joints(chain, np.asarray(beta))
        body.append(
            f'<polyline points="{_points(pts)}" fill="none" stroke="{_color(i, len(angles))}" '
            f'stroke-width="{stroke:.6f}" stroke-linejoin="round"/>'
        )
    body.append(f'<circle cx="0" cy="0" r="{2 * stroke:.6f}" fill="red"/>')
    return _document(f"{-r} {-r} {2 * r} {2 * r}", body)


def path_strip_svg(chain: ChainSpec, frames: list[NDArray | None]) -> str:
    """Closed configurations side by side, one panel per path sample."""
    r = chain.total
    stroke = r / 250.0
    width = 2.0 * r
    body = []
    for i, alpha in enumerate(frames):
        dx = i * width
        body.append(f'<g transform="translate({dx:.6f},0)">')
        body.append(
            f'<line x1="0" y1="0" x2="{chain.links[-1]:.6f}" y2="0" '
            f'stroke="black" stroke-width="{2 * stroke:.6f}"/>'
        )
        if alpha is not None:
            pts = _joints(chain, np.asarray(alpha))
            body.append(
                f'<polyline points="{_points(pts)}" fill="none" stroke="{_color(i, len(frames))}" '
                f'stroke-width="{stroke:.6f}"/>'
            )
        body.append("</g>")
    view = f"{-r} {-r} {width * max(len(frames), 1)} {2 * r}"
    return _document(view, body, width=_SIZE * max(len(frames), 1) // 2)


def region_svg(
    c4: NDArray, c3: NDArray, inq: NDArray, q_line: float
) -> str:
    """Scatter of ``(C_4, C_3)`` with the realizability cut lines ``C_3 = +-q_line``."""
    xs = np.concatenate([c4, [0.0]])
    ys = np.concatenate([c3, [q_line, -q_line]])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    pad = 0.05 * max(x1 - x0, y1 - y0, 1e-9)
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    dot = 0.004 * max(x1 - x0, y1 - y0)
    body = []
    for x, y, q in zip(c4, c3, inq):
        fill = "#1f5fbf" if q else "#b8c8e8"
        body.append(f'<circle cx="{x:.6f}" cy="{y:.6f}" r="{dot:.6f}" fill="{fill}"/>')
    for yv in (q_line, -q_line):
        body.append(
            f'<line class="q-bound" x1="{x0:.6f}" y1="{yv:.6f}" x2="{x1:.6f}" y2="{yv:.6f}" '
            f'stroke="black" stroke-width="{dot / 2:.6f}"/>'
        )
    return _document(f"{x0} {y0} {x1 - x0} {y1 - y0}", body)


def _document(view: str, body: list[str], width: int = _SIZE) -> str:
    # flip y so the plane reads with y up
    vx, vy, vw, vh = (float(v) for v in view.split())
    height = int(round(width * vh / vw)) if vw else width
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{vx:.6f} {-(vy + vh):.6f} {vw:.6f} {vh:.6f}">'
    )
    inner = "\n".join(body)
    return f'{head}\n<g transform="scale(1,-1)">\n{inner}\n</g>\n</svg>\n'
