"""Structured tensor classes: dominance, M/H splits, B rows, Cauchy,
hypergraph Laplacians, completely positive constructions.

Run:  python3 demos/02_structured_classes.py
"""

import numpy as np

from ptensor import (
    Hypergraph,
    all_ones_tensor,
    cauchy_tensor,
    classify_m_tensor,
    contract_m1,
    cp_tensor,
    identity_tensor,
    is_b_tensor,
    is_diagonally_dominant,
    is_h_tensor,
    is_z_tensor,
    laplacian_tensors,
)


def show(report):
    label = f" [{report.label}]" if report.label else ""
    print(f"  {report.class_name:34s} -> {report.verdict}{label}")


A = 5.0 * identity_tensor(3, 2) - all_ones_tensor(3, 2)
print("A = 5*I - J (order 3, dim 2):")
show(is_diagonally_dominant(A, strict=True))
show(is_z_tensor(A))
show(classify_m_tensor(A))          # s = 5 split, rho(J) = 4 < 5
show(is_h_tensor(A))

print("\nthe all-ones tensor J:")
J = all_ones_tensor(3, 2)
show(is_diagonally_dominant(J))     # row 0: 1 >= 3 fails
show(classify_m_tensor(J))          # not even a Z-tensor
show(is_b_tensor(J))                # weak row conditions hold with equality
show(is_b_tensor(J, strict=True))   # ... but not strictly

print("\nboundary split 4*I - J (s equals the spectral radius):")
show(classify_m_tensor(4.0 * identity_tensor(3, 2) - J))

# A Cauchy tensor from a positive generating vector with distinct entries.
C = cauchy_tensor(np.array([1.0, 2.0, 3.0]), 3)
print("\nCauchy tensor, u = (1,2,3): entry (0,0,0) =", C.data[0, 0, 0])
print("  construction claims: cp =", C.claim("cp"), " scp =", C.claim("scp"))

# Hypergraph Laplacians: one 3-uniform edge {0,1,2}.
G = Hypergraph(3, [(0, 1, 2)])
adjacency, laplacian, signless = laplacian_tensors(G)
print("\nsingle-edge hypergraph: degrees =", G.degrees())
print("  adjacency value on edge permutations:", adjacency.data[0, 1, 2])
print("  Laplacian row action on the all-ones vector:", contract_m1(laplacian, np.ones(3)))

# A completely positive construction whose factors span the space.
T = cp_tensor([np.array([1.0, 0.0]), np.array([1.0, 1.0])], 3)
print("\ncp construction from {(1,0), (1,1)}: scp =", T.claim("scp"),
      " entry (0,0,0) =", T.data[0, 0, 0])
