"""Deterministic SVG rendering of grid drawings."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .drawing import GridDrawing, planarize


def render_svg(d: GridDrawing, scale: int = 40, show_crossings: bool = True, show_labels: bool = False) -> str:
    """SVG text: one grid unit is ``scale`` pixels, y grows upwards in drawing space.

    Raises ``PlanarizeError`` on drawings whose edges cannot be planarized.
    """
    if d.graph.n == 0:
        raise ValueError("cannot render an empty drawing")
    pd = planarize(d)
    margin = scale // 2
    x0, y0 = d.min_x, d.min_y
    w, h = d.width * scale + 2 * margin, d.height * scale + 2 * margin

    def px(p) -> tuple[int, int]:
        return margin + (p[0] - x0) * scale, margin + (d.height - (p[1] - y0)) * scale

    r = max(scale // 8, 2)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
    ]
    segs = []
    for a, b in d.graph.edges():
        (xa, ya), (xb, yb) = px(d.positions[a]), px(d.positions[b])
        segs.append(f"M{xa} {ya}L{xb} {yb}")
    out.append(f'<path d="{"".join(segs)}" stroke="black" stroke-width="{max(scale // 20, 1)}" fill="none"/>')
    if show_crossings:
        s = max(scale // 10, 2)
        for p in sorted(pd.crossings, key=lambda q: (q[1], q[0])):
            x, y = px(p)
            out.append(f'<rect class="crossing" x="{x - s}" y="{y - s}" width="{2 * s}" height="{2 * s}" fill="white" stroke="black"/>')
    for v in d.graph.vertices():
        x, y = px(d.positions[v])
        out.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="{r}" fill="black"/>')
        if show_labels:
            out.append(f'<text x="{x + r + 1}" y="{y - r - 1}" font-size="{max(scale // 4, 6)}" font-family="monospace">{escape(d.graph.label(v))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
