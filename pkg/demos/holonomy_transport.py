"""Path holonomy of a connection and its derivative in the connection.

A connection along an interval is a sampled algebra-valued path; holonomy
transports the identity along it.  The derivative of the holonomy with
respect to the connection is an integral of the variation twisted by the
transport, which we check against plain finite differencing.
"""

import numpy as np

from surfrep import (
    PathConnection,
    Variation,
    conjugation_invariance_check,
    holonomy,
    holonomy_derivative,
    holonomy_derivative_fd,
    su2,
)

group = su2()
rng = np.random.default_rng(7)

print("-- constant connections have closed-form holonomy --")
u = group.random_algebra_vector(rng)
conn = PathConnection(group, 1.0, np.tile(u, (9, 1)))
print("  |holonomy - exp(-u)|:",
      np.linalg.norm(holonomy(conn) - group.exp(-u)))

print()
print("-- derivative of the holonomy vs finite differences --")
conn = PathConnection(group, 1.0, rng.standard_normal((9, 3)))
var = Variation(conn, rng.standard_normal((9, 3)))
exact = holonomy_derivative(conn, var)
approx = holonomy_derivative_fd(conn, var, s=1e-4)
print("  twisted-integral value:", np.round(exact, 6))
print("  difference from FD:    ", np.linalg.norm(exact - approx))

print()
print("-- gauge behavior: conjugating the connection conjugates holonomy --")
x = group.random_element(rng)
print("  invariance defect:", conjugation_invariance_check(conn, x))

print()
print("-- the integrator converges at fourth order --")
reference = holonomy(conn, n_sub=512)
errors = []
for n_sub in (4, 8, 16, 32):
    errors.append(np.linalg.norm(holonomy(conn, n_sub=n_sub) - reference))
orders = [np.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1)]
print("  errors:", [f"{e:.3e}" for e in errors])
print("  observed orders:", [f"{o:.2f}" for o in orders])
