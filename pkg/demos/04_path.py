# %% A motion through the cube
# Straight segments in cube coordinates become continuous closed motions as
# long as the flip bits stay fixed and the segment stays admissible.
from pathlib import Path

import numpy as np

from closedchain import ChainSpec, path_in_cube
from closedchain.svg import path_strip_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# %% Square four-bar: C_3 sweeps from -1 to 1
unit4 = ChainSpec([1, 1, 1, 1])
frames = path_in_cube(unit4, [-1.0], [1.0], 5, "00")
for f in frames:
    print(np.round(f.alpha, 4), f"{f.residual:.1e}")
(out / "path_unit4.svg").write_text(path_strip_svg(unit4, [f.alpha for f in frames]))

# %% A five-link segment that leaves the admissible set for a while
unit5 = ChainSpec([1, 1, 1, 1, 1])
frames = path_in_cube(unit5, [0.5, -0.5], [-0.5, 1.0], 11, "000")
print("gaps at", [i for i, f in enumerate(frames) if f is None])
(out / "path_unit5.svg").write_text(path_strip_svg(unit5, [None if f is None else f.alpha for f in frames]))
