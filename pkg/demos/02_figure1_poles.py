"""Poles of r_31 for the cubic example, with both initial triples.

With the standard triple {0, 0, 1} every pole settles on the equimodular
curves or on the single fixed pole z = -1.  With a generic triple, the extra
poles of r_n are attracted to the isolated slow-growth points where the
initial data does not excite the dominant root.

Usage: python demos/02_figure1_poles.py [output_dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

from algrat.experiments import reproduce_figure1
from algrat.output import loci_svg, write_text

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
window = (-5, 3, -4.5, 3.5)

for triple in ("standard", "paper"):
    run = reproduce_figure1(triple, n=31, window=window)
    s = run.summary
    print(f"{triple} triple: |Sigma| = {s['sigma_cardinality']}, "
          f"spurious poles of r_31 = {s['spurious_count']}, classes {s['pole_classes']}")
    for z, _ in run.loci.sigma:
        print(f"  slow-growth point {z:.6f}")
    svg = loci_svg(run.loci, window, run.report, title=f"r_31, {triple} triple")
    path = write_text(out / f"figure1_{triple}.svg", svg, force=True)
    print(f"  wrote {path}")
