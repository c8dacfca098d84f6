"""The four-term family p_n = z p_{n-1} - C p_{n-2} - p_{n-3}.

Its branching points are the roots of 4z^3 + C^2 z^2 - 18Cz - 27 - 4C^3.  For
C > 3 all three are real and the zeros of p_n are real and interlacing; for
C < 3 two branching points form a complex pair and p_n acquires nonreal
zeros nearby.  The shape of the equimodular set changes only at C = 3 and
C = -1.

Usage: python demos/03_three_term_family.py [output_dir]
"""

from __future__ import annotations

import sys
from pathlib import Path

from algrat.experiments import (FIG2_C_VALUES, branching_discriminant_identity, branching_points,
                                degenerate_points, equimodular_topology, real_interlacing,
                                real_zero_check, regime, three_term_sequence)
from algrat.loci import LocusSet
from algrat.numcore import poly_roots
from algrat.output import loci_svg, write_text

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")

holds, const = branching_discriminant_identity()
print(f"discriminant identity holds: {holds} (normalization constant {const})")
for d in degenerate_points():
    print(f"degenerate parameter C = {d.C:g}: double root at tau = {d.tau}, z = {d.z}")

for C in FIG2_C_VALUES:
    bps = branching_points(C)
    all_real, wit = real_zero_check(C, 41)
    topo = equimodular_topology(C)
    line = f"C = {C:>2} ({regime(C)}): {topo['segments']} segment(s), {len(topo['junctions'])} junction(s)"
    line += f", p_41 all real: {all_real}"
    if all_real:
        line += f", interlaces with p_40: {real_interlacing(C, 40)}"
    print(line)
    print("   branching points: " + ", ".join(f"{b:.4f}" for b in bps))
    tr = topo["trace"]
    zeros = [z for z, m in poly_roots(three_term_sequence(C, 41)[41], precise=True) for _ in range(m)]
    shell = LocusSet(tr.segments, tr.isolated, [], bps, [], [], trace=tr)
    svg = loci_svg(shell, topo["window"], zeros=[zeros], title=f"C = {C}")
    write_text(out / f"three_term_C{C}.svg", svg, force=True)
print(f"SVGs written to {out}/")
