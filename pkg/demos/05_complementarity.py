"""Tensor complementarity: solve instances and explore solution sets.

The problem for (A, q): find x >= 0 with F(x) = A x^{m-1} + q >= 0 and
<x, F(x)> = 0.  When A has the strong sign property the solution set is
nonempty and compact, but not necessarily a single point.

Run:  python3 demos/05_complementarity.py
"""

import numpy as np

from ptensor import (
    SearchBudget,
    TcpInstance,
    check_p,
    explore_solutions,
    fb_merit,
    identity_tensor,
    solve_tcp,
    tcp_F,
)
from ptensor.generators import random_sdd_tensor

budget = SearchBudget(seed=0, starts=16, iters=200)

# Componentwise solvable example: x_i (x_i^2 - 1) = 0 with x_i^2 >= 1 forces x = 1.
inst = TcpInstance(identity_tensor(3, 2), np.array([-1.0, -1.0]))
sol = solve_tcp(inst, budget)
print("identity instance, q = (-1,-1):")
print("  x =", sol.x, " natural residual =", sol.natural_residual)
print("  F(x) =", tcp_F(inst, sol.x), " merit =", fb_merit(inst, sol.x))

# Nonnegative q is solved by zero immediately.
print("\nq >= 0 instance:", solve_tcp(TcpInstance(identity_tensor(3, 2),
                                                  np.array([0.3, 0.0])), budget).x)

# A generated strictly dominant instance: certified, solved, explored.
# This particular draw has three distinct solutions.
A = random_sdd_tensor(3, 2, seed=1336)
q = np.random.default_rng(1436).uniform(-1.0, 1.0, size=2)
print("\nstrictly dominant instance (certified strong property:",
      check_p(A, budget).certified, ")")
ss = explore_solutions(TcpInstance(A, q), SearchBudget(seed=0, starts=48, iters=200))
print("  multistart found", len(ss.solutions), "distinct solutions:")
for s in ss.solutions:
    print("   ", np.round(s.x, 8), " residual", f"{s.natural_residual:.2e}")
print("  bounding box:", ss.bounding_box)
print("  (the solution set of a strong-sign-property instance is nonempty and")
print("   compact, yet need not be a singleton, as this instance shows)")

# Infeasible example: F(x) = -x^[2] - 1 < 0 on the nonnegative orthant.
out = solve_tcp(TcpInstance(-1.0 * identity_tensor(3, 2), np.array([-1.0, -1.0])),
                SearchBudget(seed=0, starts=6, iters=100))
print("\ninfeasible instance ->", type(out).__name__,
      " best merit", round(out.best_merit, 6))
print("  natural residual at the best iterate:",
      round(out.best_natural_residual, 6), "(a result, not an error)")
