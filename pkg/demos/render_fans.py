"""
Drawing two-dimensional fans
============================

Writes one SVG per fixture surface into the directory given on the command
line (default: ``fans`` under the current directory).
"""

import sys
from pathlib import Path

from torq.fixtures import hirzebruch, p1_times_p1, projective_line, projective_plane
from torq.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "fans")
out.mkdir(parents=True, exist_ok=True)

fans = {"P1": projective_line(), "P2": projective_plane(), "Hz1": hirzebruch(1),
        "Hz2": hirzebruch(2), "P1xP1": p1_times_p1()}
for name, F in fans.items():
    path = out / f"{name}.svg"
    path.write_text(render_svg(F))
    print(f"{path}: {len(F.rays)} rays, {len(F.max_cones)} maximal cones")
