"""The certify-or-refute engine for the strong/weak sign properties.

A tensor has the strong property when every nonzero x has some index with
x_i^{m-1} (A x^{m-1})_i > 0, and the weak property when some supported
index reaches >= 0.  The engine either certifies through a closed list of
sufficient conditions, refutes with a concrete witness, or reports LIKELY
with the smallest functional value its search could find.

Run:  python3 demos/03_sign_property_checks.py
"""

import numpy as np

from ptensor import (
    SearchBudget,
    check_p,
    check_p0,
    check_s,
    contract_m1,
    identity_tensor,
    phi_p0,
    scaling_matrix,
)
from ptensor.generators import random_m_tensor, reference_counterexample


def show(tag, v):
    parts = [f"{tag:22s} {v.prop:2s} -> {v.verdict}"]
    if v.certificate_chain:
        parts.append(f"via {v.certificate_chain[0][0]}")
    if v.witness is not None:
        parts.append(f"witness {np.round(v.witness, 6)}")
    if v.functional_value is not None:
        parts.append(f"functional {v.functional_value:.6g}")
    print("  " + "  ".join(parts))


budget = SearchBudget(seed=0, starts=12, iters=150)

print("identity tensor (strictly dominant diagonal):")
I3 = identity_tensor(3, 3)
show("identity", check_p(I3, budget))
show("identity", check_s(I3, budget))

print("\na generated nonsingular split s*I - B (certifies through the"
      " comparison-tensor route):")
M = random_m_tensor(3, 3, seed=4, margin=0.8)
show("mtensor", check_p(M, budget))

print("\nthe built-in counterexample: entrywise nonnegative, every found"
      " H-eigenvalue positive, and still not weakly sign definite:")
R = reference_counterexample()
vp0 = check_p0(R, budget)
show("counterexample", vp0)
y = vp0.witness
print("  functional terms at the witness:", np.round(y**2 * contract_m1(R, y), 6))
print("  exact-support functional:", phi_p0(R, y, tau_rel=0.0))

print("\nstrong check on the same tensor (boundary witness, value 0):")
show("counterexample", check_p(R, budget))

print("\nscaling construction at a point where the identity behaves well:")
x = np.ones(3)
d = scaling_matrix(I3, x)
t = x**2 * contract_m1(I3, x)
print("  D diagonal =", d, " gives <D x^[m-1], I x^{m-1}> =", float(np.sum(d * t)))
