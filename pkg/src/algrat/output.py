"""Deterministic CSV, JSON and SVG writers.

CSV rows follow the schema ``set_tag,re,im,order_or_mult,aux,class``; floats
are written with ``%.15g`` so identical runs give identical bytes.  SVG files
are self-contained with inline styles and a viewBox taken from the window.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

CSV_HEADER = ("set_tag", "re", "im", "order_or_mult", "aux", "class")

STYLE = {
    "xi": "fill:none;stroke:#1f4e9a;stroke-width:1.5",
    "xi_isolated": "fill:#1f4e9a",
    "upsilon": "fill:none;stroke:#222;stroke-width:1.2",
    "delta_T": "fill:#d08000",
    "sigma": "fill:none;stroke:#c00;stroke-width:1.5",
    "S": "fill:none;stroke:#999;stroke-width:0.8",
    "pole:Fixed": "fill:#555",
    "pole:Regular": "fill:#2a8a2a",
    "pole:Spurious": "fill:#c00",
    "pole:Unclassified": "fill:#a0a",
    "zero": "fill:#2a8a2a",
    "zero_next": "fill:#c06000",
}


def fmt(x) -> str:
    """``%.15g`` with negative zero folded to zero."""
    x = float(x)
    if x == 0:
        x = 0.0
    return "%.15g" % x


def point_row(tag, z, mult="", aux="", cls=""):
    z = complex(z)
    if isinstance(aux, float):
        aux = fmt(aux)
    return (tag, fmt(z.real), fmt(z.imag), str(mult), str(aux), cls)


def locus_rows(loci) -> list:
    """CSV rows for every locus in a :class:`~algrat.loci.LocusSet`."""
    rows = []
    for i, seg in enumerate(loci.xi_segments):
        rows.extend(point_row("xi", z, "", i) for z in seg)
    rows.extend(point_row("xi_isolated", z) for z in loci.xi_isolated)
    rows.extend(point_row("upsilon", z) for z in loci.upsilon)
    rows.extend(point_row("delta_T", z) for z in loci.delta_T)
    rows.extend(point_row("S", z, m) for z, m in loci.candidates_S)
    rows.extend(point_row("sigma", s.z, s.mult, float(s.value)) for s in loci.sigma_details)
    return rows


def pole_rows(report) -> list:
    """One row per pole; ``aux`` holds ``|residue|``."""
    return [point_row("pole", p.location, p.order, float(abs(p.residue)), p.cls.value)
            for p in report.poles]


def zero_rows(zeros, tag="zero", n=""):
    return [point_row(tag, z, 1, n) for z in zeros]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(rows)
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)


def to_json(summary: dict) -> str:
    return json.dumps(_jsonable(summary), indent=2, sort_keys=True) + "\n"


def write_text(path, text: str, force: bool = False) -> Path:
    """Write ``text`` to ``path``; refuses to overwrite unless ``force``."""
    path = Path(path)
    if path.exists() and not force:
        raise FileExistsError(f"{path} exists; pass --force to overwrite")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


class SvgCanvas:
    """Minimal SVG builder in complex-plane coordinates (y axis flipped)."""

    def __init__(self, window, width: int = 600):
        self.xmin, self.xmax, self.ymin, self.ymax = map(float, window)
        self.scale = width / (self.xmax - self.xmin)
        self.width = width
        self.height = self.scale * (self.ymax - self.ymin)
        self.items: list[str] = []

    def _xy(self, z):
        z = complex(z)
        return (z.real - self.xmin) * self.scale, (self.ymax - z.imag) * self.scale

    def visible(self, z) -> bool:
        z = complex(z)
        return self.xmin <= z.real <= self.xmax and self.ymin <= z.imag <= self.ymax

    def polyline(self, pts, style):
        coords = " ".join("%s,%s" % tuple(fmt(round(c, 3)) for c in self._xy(z)) for z in pts)
        self.items.append(f'<polyline points="{coords}" style="{style}"/>')

    def dot(self, z, style, r=2.5):
        if not self.visible(z):
            return
        x, y = self._xy(z)
        self.items.append(f'<circle cx="{fmt(round(x, 3))}" cy="{fmt(round(y, 3))}" r="{r}" style="{style}"/>')

    def cross(self, z, style, r=4.0):
        if not self.visible(z):
            return
        x, y = self._xy(z)
        d = " ".join(fmt(round(v, 3)) for v in (x - r, y - r, x + r, y + r))
        a, b, c, e = d.split()
        self.items.append(f'<path d="M{a} {b} L{c} {e} M{a} {e} L{c} {b}" style="{style}"/>')

    def axes(self):
        style = "stroke:#ccc;stroke-width:0.6"
        if self.ymin <= 0 <= self.ymax:
            self.polyline([complex(self.xmin, 0), complex(self.xmax, 0)], style)
        if self.xmin <= 0 <= self.xmax:
            self.polyline([complex(0, self.ymin), complex(0, self.ymax)], style)

    def title(self, text):
        esc = text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        self.items.append(f'<text x="6" y="14" style="font:12px sans-serif;fill:#333">{esc}</text>')

    def render(self) -> str:
        w, h = fmt(round(self.width, 3)), fmt(round(self.height, 3))
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" '
                f'width="{w}" height="{h}">\n<rect width="100%" height="100%" style="fill:#fff"/>\n')
        return head + "\n".join(self.items) + "\n</svg>\n"


def loci_svg(loci, window, report=None, zeros=None, title: str = "") -> str:
    """Overlay of loci, classified poles and optional zero sets."""
    cv = SvgCanvas(window)
    cv.axes()
    for seg in loci.xi_segments if loci is not None else []:
        cv.polyline(seg, STYLE["xi"])
    if loci is not None:
        for z in loci.xi_isolated:
            cv.dot(z, STYLE["xi_isolated"], 1.5)
        for z, _ in loci.candidates_S:
            cv.dot(z, STYLE["S"], 5)
        for z in loci.upsilon:
            cv.cross(z, STYLE["upsilon"])
        for z in loci.delta_T:
            cv.dot(z, STYLE["delta_T"], 3.5)
        for z, _ in loci.sigma:
            cv.dot(z, STYLE["sigma"], 7)
    if report is not None:
        for p in report.poles:
            cv.dot(p.location, STYLE["pole:" + p.cls.value], 2)
    for i, zs in enumerate(zeros or []):
        for z in zs:
            cv.dot(z, STYLE["zero" if i == 0 else "zero_next"], 1.8)
    if title:
        cv.title(title)
    return cv.render()


__all__ = [
    "CSV_HEADER", "fmt", "point_row", "locus_rows", "pole_rows", "zero_rows", "rows_to_csv",
    "to_json", "write_text", "SvgCanvas", "loci_svg",
]
