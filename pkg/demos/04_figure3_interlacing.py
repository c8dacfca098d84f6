"""Zeros of consecutive polynomials alternate along the equimodular curves.

For p_{n+1} = (z+1-I) p_n + (z+1)(z-I) p_{n-1} + (z^3+10) p_{n-2} the zeros of
p_40 and p_41 cluster on the traced curves.  Projecting them onto the curves
and ordering by arclength, the two sets alternate.  The check gathers
evidence; it proves nothing.

Usage: python demos/04_figure3_interlacing.py [output_dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

from algrat.experiments import reproduce_figure3
from algrat.loci import LocusSet
from algrat.output import loci_svg, write_text

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
window = (-5, 5, -5, 5)
defn, init, trace, res, zeros = reproduce_figure3(n=40, window=window)
print(f"traced segments: {len(trace.segments)}, junctions: {len(trace.junctions)}")
print(f"zeros projected onto the curves: {res.projected}")
for seg in res.per_segment:
    print(f"  segment {seg['segment']}: {seg['zeros']} zeros, alternating: {seg['alternating']}")
print(f"interlacing observed: {res.ok} [{res.label}]")
shell = LocusSet(trace.segments, trace.isolated, [], [], [], [], trace=trace)
path = write_text(out / "figure3.svg", loci_svg(shell, window, zeros=[zeros[40], zeros[41]],
                                                 title="zeros of p_40 and p_41"), force=True)
print(f"wrote {path}")
