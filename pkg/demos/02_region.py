# %% Admissible semi-diagonal region for five-link chains
# The cube [-1, 1]^2 maps onto the nested root domain for (C_4, C_3).
# Points are kept when C_3 also lies in the reachable range of the first
# two links, |C_3| <= a_1 a_2 (the two horizontal cut lines).
from pathlib import Path

import numpy as np

from closedchain import ChainSpec
from closedchain.cli import region_grid
from closedchain.fileio import write_region_csv
from closedchain.svg import region_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# %%
for name, links in (("unit", [1, 1, 1, 1, 1]), ("22211", [2, 2, 2, 1, 1])):
    chain = ChainSpec(links)
    c4, c3, inq = region_grid(chain, 101)
    print(f"{name}: C_4 in [{c4.min():.3f}, {c4.max():.3f}], C_3 in [{c3.min():.3f}, {c3.max():.3f}], "
          f"inside {inq.mean():.1%}")
    with open(out / f"region_{name}.csv", "w") as fh:
        write_region_csv(fh, c4, c3, inq)
    (out / f"region_{name}.svg").write_text(region_svg(c4, c3, inq, chain.links[0] * chain.links[1]))

# %% For the unit chain C_4 = s_1 - 1/2 spans [-3/2, 1/2] exactly
s1 = np.linspace(-1, 1, 5)
print(s1 - 0.5)
