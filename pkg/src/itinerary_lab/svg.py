"""Minimal deterministic SVG emitters (no plotting backend needed)."""

from __future__ import annotations

from itinerary_lab import __version__

WIDTH = 800
HEIGHT = 400
PAD = 40


def _doc(body: list, title: str) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">')
    return "\n".join([
        '<?xml version="1.0" encoding="UTF-8"?>',
        head,
        f"<!-- itinerary_lab {__version__} -->",
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white" class="background"/>',
        *body,
        "</svg>",
        "",
    ])


def _sx(x: float) -> float:
    return PAD + float(x) * (WIDTH - 2 * PAD)


def _sy(y: float) -> float:
    return HEIGHT - PAD - float(y) * (HEIGHT - 2 * PAD)


def cylinder_bars(intervals: list, title: str = "cylinders") -> str:
    """One ``<rect class="cylinder">`` per ``(label, lo, hi)`` triple on the unit interval."""
    body = [f'<line x1="{_sx(0):.3f}" y1="{_sy(0):.3f}" x2="{_sx(1):.3f}" y2="{_sy(0):.3f}" '
            'stroke="black"/>']
    top = _sy(0.8)
    for label, lo, hi in intervals:
        x0, x1 = _sx(lo), _sx(hi)
        body.append(f'<rect class="cylinder" x="{x0:.6f}" y="{top:.3f}" '
                    f'width="{max(x1 - x0, 0.0):.6f}" height="{_sy(0) - top:.3f}" '
                    f'fill="steelblue" stroke="none"><title>{label}</title></rect>')
    return _doc(body, title)


def graph(xs, ys, title: str = "graph") -> str:
    """Polyline of ``y`` against ``x`` on the unit square."""
    pts = " ".join(f"{_sx(x):.4f},{_sy(y):.4f}" for x, y in zip(xs, ys))
    body = [
        f'<rect x="{_sx(0):.3f}" y="{_sy(1):.3f}" width="{_sx(1) - _sx(0):.3f}" '
        f'height="{_sy(0) - _sy(1):.3f}" fill="none" stroke="black"/>',
        f'<polyline class="curve" points="{pts}" fill="none" stroke="crimson" stroke-width="1"/>',
    ]
    return _doc(body, title)
