# %% Brute-force cross-checks
# Grid search finds near-circular configurations without the recursion;
# each one is then tested against the admissible semi-diagonal domain.
import math

from closedchain import ChainSpec
from closedchain.oracle import check_lemma_a2, min_x_grid, run_oracle_suite
from closedchain.semidiagonal import qa_bounds

# %%
for links, res in (([1, 1, 1, 1], 90), ([1, 1, 1, 1, 1], 24), ([2, 2, 2, 1, 1], 24)):
    chain = ChainSpec(links)
    print(links, f"resolution {res}")
    for line in run_oracle_suite(chain, res, tol=0.02 * chain.total**2).lines():
        print("   ", line)

# %% The domain test looks only at the first n - 2 angles
unit4 = ChainSpec([1, 1, 1, 1])
print(check_lemma_a2(unit4, [0, -math.pi / 2, -math.pi], 1e-9))
print(check_lemma_a2(unit4, [0, math.pi / 2, 0], 1e-9))

# %% Closed-form minimum of the cross term against the grid
chain = ChainSpec([3, 1, 1, 2, 2, 3])
for m in (2, 3, 4):
    print(m, qa_bounds(chain, m + 1)[0], min_x_grid(chain, m, 180))
