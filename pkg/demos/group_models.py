"""The compact group models: bases, exponentials, and adjoint actions.

Each model fixes an orthogonal algebra basis and the inner product scale,
so adjoint matrices are honest orthogonal matrices and logs invert exps
away from the cut locus.
"""

import numpy as np

from surfrep import so3, su2, u1

for model in (su2(), so3(), u1()):
    print(f"-- {model.name} (dim {model.dim}) --")
    rng = np.random.default_rng(1)
    v = model.random_algebra_vector(rng)
    g = model.exp(v)
    print("  exp/log roundtrip error:", np.linalg.norm(model.log(g) - v))
    print("  group defect of exp:", model.group_defect(g))
    Ad = model.Ad_matrix(g)
    print("  Ad orthogonality error:",
          np.linalg.norm(Ad.T @ Ad - np.eye(model.dim)))
    if model.dim > 1:
        w = model.random_algebra_vector(rng)
        lhs = model.bracket(v, w)
        rhs = model.ad_matrix(v) @ w
        print("  bracket vs ad matrix:", np.linalg.norm(lhs - rhs))
    print("  center elements:", len(model.center_elements))
    print()

print("-- Haar sampling sanity: Ad of SU2 averages toward zero --")
model = su2()
rng = np.random.default_rng(2)
mean = np.zeros((3, 3))
trials = 4000
for _ in range(trials):
    mean += model.Ad_matrix(model.random_element(rng))
mean /= trials
print("  |mean Ad| over", trials, "samples:", np.linalg.norm(mean))
print("  (a uniform distribution drives this to zero like 1/sqrt(n))")
