"""Dense tensor basics: construction, contractions, structural transforms.

Run:  python3 demos/01_tensor_basics.py
"""

import numpy as np

from ptensor import (
    Tensor,
    all_ones_tensor,
    comparison_tensor,
    contract_full,
    contract_m1,
    hadamard_power,
    identity_tensor,
    outer_power,
    principal_subtensor,
    support,
    symmetrize,
)

# The identity tensor reproduces componentwise powers: (I x^{m-1})_i = x_i^{m-1}.
I3 = identity_tensor(3, 2)
x = np.array([2.0, 3.0])
print("I x^2      =", contract_m1(I3, x), "   (componentwise squares)")
print("x^[2]      =", hadamard_power(x, 2))

# A tensor built from arithmetic on constructors.  5*I - J is the classic
# diagonally dominant Z-tensor example used throughout the demos.
A = 5.0 * identity_tensor(3, 2) - all_ones_tensor(3, 2)
print("\nA = 5*I - J, entries A[0,:,:] =\n", A.data[0])
print("A 1^2      =", contract_m1(A, np.ones(2)), "  (row sums: 4 - 3 = 1)")
print("form A x^3 =", contract_full(A, x))

# Principal subtensors restrict every index mode to the same subset.
sub = principal_subtensor(A, [1])
print("\n1x1x1 principal subtensor of A:", sub.data.reshape(-1), "(a diagonal entry)")

# The comparison tensor keeps |diagonal| and negates off-diagonal magnitudes.
# For a Z-tensor with nonnegative diagonal it is the tensor itself.
print("comparison(A) equals A:", bool(np.array_equal(comparison_tensor(A).data, A.data)))

# Symmetrization averages over all index permutations without changing the form.
M = Tensor(np.array([[0.0, 1.0], [0.0, 0.0]]))
print("\nsymmetrize [[0,1],[0,0]] =\n", symmetrize(M).data)

# Rank-one outer powers and numeric support.
u = np.array([1.0, 2.0])
print("\nouter_power((1,2), 3) entry (1,1,0):", outer_power(u, 3).data[1, 1, 0])
print("support of (0, 1, -1):", support(np.array([0.0, 1.0, -1.0])))
print("support of (1e-20, 1):", support(np.array([1e-20, 1.0])), "(relative threshold)")
