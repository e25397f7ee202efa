"""SVG snapshots of a planning step."""

from __future__ import annotations

from xml.sax.saxutils import quoteattr

import numpy as np

from .coverage import coverage_block
from .route import RouteInstance
from .simulator import Scenario, StepRecord, candidates_for_step

STYLE = """
.bounds { fill: #fbfbf8; stroke: #444; stroke-width: 0.6; }
.obstacle { fill: #8f8f8f; stroke: #555; stroke-width: 0.4; }
.candidate { fill: #9ab; opacity: 0.35; }
.route { fill: none; stroke: #d07a00; stroke-width: 1.2; }
.route-point { fill: #d07a00; }
.route-point.uncovered { fill: #e00; stroke: #600; stroke-width: 0.6; }
.sight { stroke: #2a7; stroke-width: 0.35; opacity: 0.6; }
.guard { fill: #1565c0; stroke: #fff; stroke-width: 0.5; }
.label { font: 6px sans-serif; fill: #222; }
""".strip()


def _f(v: float) -> str:
    return f"{v:.3f}"


def render_frame(s: Scenario, rec: StepRecord, inst: RouteInstance, scale: float = 3.0) -> str:
    b = s.world.bounds
    x0, y0 = b.min_corner.x, b.min_corner.y
    width, height = b.width, b.height

    def tx(x):
        return (x - x0)

    def ty(y):  # SVG y grows downwards
        return (height - (y - y0))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width * scale)}" '
        f'height="{_f(height * scale)}" viewBox="0 0 {_f(width)} {_f(height)}">',
        f"<style>{STYLE}</style>",
        f'<rect class="bounds" x="0" y="0" width="{_f(width)}" height="{_f(height)}"/>',
    ]
    for ob in s.world.obstacles:
        out.append(
            f'<rect class="obstacle" x="{_f(tx(ob.min_corner.x))}" y="{_f(ty(ob.max_corner.y))}" '
            f'width="{_f(ob.width)}" height="{_f(ob.height)}"/>'
        )

    cands = candidates_for_step(s, rec.step_index)
    for x, y in cands.positions:
        out.append(f'<circle class="candidate" cx="{_f(tx(x))}" cy="{_f(ty(y))}" r="0.6"/>')

    pts = inst.as_array()
    out.append('<polyline class="route" points="'
               + " ".join(f"{_f(tx(x))},{_f(ty(y))}" for x, y in pts) + '"/>')

    guards = np.array([[p.x, p.y] for p in rec.robot_positions]).reshape(-1, 2)
    values, _ = coverage_block(s.world, guards, pts, s.sensor)
    for g, row in zip(guards, values):
        for j in np.flatnonzero(row > 0):
            out.append(
                f'<line class="sight" x1="{_f(tx(g[0]))}" y1="{_f(ty(g[1]))}" '
                f'x2="{_f(tx(pts[j, 0]))}" y2="{_f(ty(pts[j, 1]))}"/>'
            )
    total = values.sum(axis=0)
    for j, (x, y) in enumerate(pts):
        cls = "route-point" if total[j] > 0 else "route-point uncovered"
        out.append(f'<circle class={quoteattr(cls)} cx="{_f(tx(x))}" cy="{_f(ty(y))}" r="1.2"/>')
    for r, (x, y) in enumerate(guards):
        out.append(f'<circle class="guard" data-robot="{r}" cx="{_f(tx(x))}" cy="{_f(ty(y))}" r="2.4"/>')
    out.append(
        f'<text class="label" x="3" y="8">step {rec.step_index}  '
        f'min coverage {rec.t_boolean:g}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
