"""Static SVG figures of Okounkov polygons with their comparison boxes."""

from __future__ import annotations

import re
from pathlib import Path
from xml.sax.saxutils import escape

from .okounkov import OkounkovPolygon

WIDTH, HEIGHT, MARGIN = 480, 360, 48


def _label(x) -> str:
    return str(x)


def render_svg(polygon: OkounkovPolygon, box: OkounkovPolygon | None = None, title: str = "") -> str:
    verts = polygon.vertices()
    box_verts = box.vertices() if box is not None else []
    xs = [float(v[0]) for v in verts + box_verts] + [0.0]
    ys = [float(v[1]) for v in verts + box_verts] + [0.0]
    xmax = max(max(xs), 1e-9)
    ymax = max(max(ys), 1e-9)
    sx = (WIDTH - 2 * MARGIN) / xmax
    sy = (HEIGHT - 2 * MARGIN) / ymax

    def px(p):
        return f"{MARGIN + float(p[0]) * sx:.3f},{HEIGHT - MARGIN - float(p[1]) * sy:.3f}"

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(title)}</title>",
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN / 2}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{MARGIN}" y2="{MARGIN / 2}" stroke="black"/>',
        f'<text x="{WIDTH - MARGIN / 2}" y="{HEIGHT - MARGIN + 16}" font-size="12">t</text>',
        f'<text x="{MARGIN - 16}" y="{MARGIN / 2}" font-size="12">y</text>',
    ]
    if len(verts) >= 2:
        parts.append(
            f'<polygon class="body" points="{" ".join(px(v) for v in verts)}" '
            'fill="#9ecae1" fill-opacity="0.7" stroke="#08519c" stroke-width="2"/>'
        )
    if len(box_verts) >= 2:
        parts.append(
            f'<polygon class="box" points="{" ".join(px(v) for v in box_verts)}" '
            'fill="none" stroke="#d94801" stroke-width="2" stroke-dasharray="6,4"/>'
        )
    for v in verts:
        x, y = px(v).split(",")
        parts.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#08519c"/>')
        parts.append(
            f'<text class="vertex" x="{float(x) + 5:.3f}" y="{float(y) - 5:.3f}" font-size="11">'
            f"({escape(_label(v[0]))},{escape(_label(v[1]))})</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _filename(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name) or "polygon"


def emit_svg(polygons, out_dir) -> list[Path]:
    """Write one SVG per (name, polygon, box-or-None) entry; returns the paths."""
    polygons = list(polygons)
    if not polygons:
        return []
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, polygon, box in polygons:
        path = out / f"{_filename(name)}.svg"
        path.write_text(render_svg(polygon, box, title=name))
        paths.append(path)
    return paths
