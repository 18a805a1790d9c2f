# %% Chain basics
# A planar chain is a list of link lengths. The last link is the fixed base
# from the origin to (a_n, 0); the remaining n - 1 links are free to swing.
import math

import numpy as np

from closedchain import ChainSpec, circular_residual, closure_residual, cross_term, endpoint, phase, rotate

chain = ChainSpec([1, 1, 1, 1])
print("links", chain.links, "feasible", chain.feasible)

# %% Endpoint of the free links
beta = np.array([0.0, -math.pi / 2, -math.pi])
print("endpoint", endpoint(chain, beta))
print("distance to origin squared", endpoint(chain, beta) @ endpoint(chain, beta))

# %% Circular means |endpoint| = a_n; closed means endpoint = (a_n, 0)
print("circular residual", circular_residual(chain, beta))
print("closure residual ", closure_residual(chain, beta))

# %% Rotating every link by the same angle keeps the configuration circular
alpha = rotate(beta, math.pi / 2)
print("rotated", alpha, "closure residual", closure_residual(chain, alpha))

# %% Cross terms and phases drive the construction
for m in (1, 2, 3):
    print(f"m={m}: cross term {cross_term(chain, beta[:m]):+.3f}, phase {phase(chain, beta[:m]):+.4f}")

# %% Chains with one dominant link cannot close
print("(10, 1, 1, 1) feasible:", ChainSpec([10, 1, 1, 1]).feasible)
