# %% Random circular configurations
# Draw cube points, keep the admissible ones and run the angle recursion.
# The circle in the figures has radius a_n: every drawn chain ends on it.
from pathlib import Path

from closedchain import ChainSpec
from closedchain.sampler import sample_angles
from closedchain.svg import configurations_svg

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

# %% Five unit links, all flip bits zero
unit5 = ChainSpec([1, 1, 1, 1, 1])
s = sample_angles(unit5, seed=1, count=10, eps_policy="000")
print("unit5 acceptance", round(s.acceptance, 3), "max residual", s.residual.max())
(out / "configs_unit5.svg").write_text(configurations_svg(unit5, s.angles, closed=False))

# %% Six links 2,1,2,1,2,1
chain = ChainSpec([2, 1, 2, 1, 2, 1])
s = sample_angles(chain, seed=2, count=10, eps_policy="0000")
print("212121 max residual", s.residual.max())
(out / "configs_212121.svg").write_text(configurations_svg(chain, s.angles, closed=False))

# %% One semi-diagonal vector, all 16 flip patterns, closed by rotation
s = sample_angles(chain, seed=3, count=1, eps_policy="all", closed=True)
print("flip variants", s.angles.shape[0], "max closure residual", s.residual.max())
(out / "flips_212121.svg").write_text(configurations_svg(chain, s.angles, closed=True))

# %% Acceptance falls as n grows
for n in (4, 5, 6, 10, 20, 50):
    print(n, round(sample_angles(ChainSpec([1] * n), 0, 2000).acceptance, 4))
