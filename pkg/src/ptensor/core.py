"""Dense hypercubic tensors and the contraction kernels everything else uses.

Storage is a plain numpy float64 array of shape (n,)*m in C (row-major)
order, so the flat view matches the linearization
idx = sum_k i_k * n**(m-k), 0-based.  Tensors are immutable after
construction: the underlying array is marked read-only, which makes
instances safe to share across any number of concurrent readers.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import DegenerateInput, DimensionError

DEFAULT_SUPPORT_TAU = 1e-7


def is_diagonal_index(index) -> bool:
    """True when all positions of a multi-index agree (a diagonal entry)."""
    first = index[0]
    return all(i == first for i in index)


class Tensor:
    """Order-m, n-dimensional real tensor with dense storage.

    ``symmetric`` is a metadata flag asserting invariance under all index
    permutations; file loaders validate it, in-process constructors set it
    only when it holds by construction.

    ``provenance`` optionally records construction claims (for example
    ``{"scp": True}`` for a strongly completely positive construction).
    ``provenance_trusted`` tells downstream certificate consumers whether
    the claims come from an in-process constructor or from a file whose
    generator checksum verified; untrusted claims are ignored.
    """

    __slots__ = ("data", "symmetric", "provenance", "provenance_trusted")

    def __init__(self, data, symmetric=False, provenance=None, provenance_trusted=False):
        arr = np.array(data, dtype=float)
        if arr.ndim < 2:
            raise DimensionError(f"tensor order must be >= 2, got {arr.ndim}")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise DimensionError(f"tensor must be hypercubic, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DegenerateInput("tensor entries must be finite")
        arr.setflags(write=False)
        self.data = arr
        self.symmetric = bool(symmetric)
        self.provenance = dict(provenance) if provenance else None
        self.provenance_trusted = bool(provenance_trusted) and self.provenance is not None

    @property
    def order(self) -> int:
        return self.data.ndim

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def values(self) -> np.ndarray:
        """Row-major flat view of the entries (read-only)."""
        return self.data.reshape(-1)

    def diagonal(self) -> np.ndarray:
        idx = np.arange(self.dim)
        return self.data[tuple([idx] * self.order)].copy()

    def claim(self, name):
        """A trusted provenance claim, or None if absent/untrusted."""
        if self.provenance_trusted and self.provenance is not None:
            return self.provenance.get(name)
        return None

    def symmetry_deviation(self) -> float:
        """Max entry change under any index transposition.

        Exactly zero iff the tensor is invariant under all permutations
        (adjacent transpositions generate the full symmetric group).
        """
        dev = 0.0
        for k in range(self.order - 1):
            swapped = np.swapaxes(self.data, k, k + 1)
            dev = max(dev, float(np.max(np.abs(self.data - swapped))))
        return dev

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.data.shape != self.data.shape:
            raise DimensionError("tensor shapes do not match")
        return Tensor(self.data + other.data, symmetric=self.symmetric and other.symmetric)

    def __sub__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.data.shape != self.data.shape:
            raise DimensionError("tensor shapes do not match")
        return Tensor(self.data - other.data, symmetric=self.symmetric and other.symmetric)

    def __neg__(self):
        return Tensor(-self.data, symmetric=self.symmetric)

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return Tensor(self.data * float(c), symmetric=self.symmetric)

    __rmul__ = __mul__

    def __repr__(self):
        return (
            f"Tensor(order={self.order}, dim={self.dim}, symmetric={self.symmetric}, "
            f"max|a|={np.max(np.abs(self.data)):.6g})"
        )


# ---------------------------------------------------------------------------
# constructors


def zero_tensor(m: int, n: int) -> Tensor:
    return Tensor(np.zeros((n,) * m), symmetric=True)


def identity_tensor(m: int, n: int) -> Tensor:
    """Diagonal tensor with unit diagonal: (I x^{m-1})_i = x_i^{m-1}."""
    data = np.zeros((n,) * m)
    idx = np.arange(n)
    data[tuple([idx] * m)] = 1.0
    return Tensor(data, symmetric=True)


def all_ones_tensor(m: int, n: int) -> Tensor:
    return Tensor(np.ones((n,) * m), symmetric=True)


def diagonal_tensor(diag, m: int) -> Tensor:
    d = as_vector(diag)
    n = d.size
    data = np.zeros((n,) * m)
    idx = np.arange(n)
    data[tuple([idx] * m)] = d
    return Tensor(data, symmetric=True)


# ---------------------------------------------------------------------------
# vectors and index sets


def as_vector(x, dim: int | None = None) -> np.ndarray:
    """Validate and return x as a 1-D float64 array."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DegenerateInput("vector entries must be finite")
    if dim is not None and v.size != dim:
        raise DimensionError(f"vector length {v.size} does not match dimension {dim}")
    return v


def as_index_set(indices, n: int) -> np.ndarray:
    """Validate a nonempty strictly increasing index set inside range(n)."""
    s = np.asarray(indices, dtype=int)
    if s.ndim != 1 or s.size == 0:
        raise IndexError("index set must be a nonempty 1-D sequence")
    if np.any(s < 0) or np.any(s >= n):
        raise IndexError(f"index set entries must lie in [0, {n})")
    if np.any(np.diff(s) <= 0):
        raise IndexError("index set must be strictly increasing (sorted, no duplicates)")
    return s


def support(x, tau_rel: float = DEFAULT_SUPPORT_TAU) -> np.ndarray:
    """Indices i with |x_i| > tau_rel * max|x| (relative numeric support)."""
    v = as_vector(x)
    mx = float(np.max(np.abs(v))) if v.size else 0.0
    if mx == 0.0:
        raise DegenerateInput("support of the zero vector is undefined")
    return np.flatnonzero(np.abs(v) > tau_rel * mx)


def embed_vector(y, indices, n: int) -> np.ndarray:
    """Zero-pad a subvector y back into R^n on the given index set."""
    s = as_index_set(indices, n)
    v = as_vector(y, dim=s.size)
    out = np.zeros(n)
    out[s] = v
    return out


def canonicalize_direction(x) -> np.ndarray:
    """Scale to sup-norm 1 and flip sign so the first maximal-magnitude
    component is positive (ties break at the lowest index).  Used to report
    eigenvectors and witnesses in a deterministic form."""
    v = as_vector(x)
    mx = float(np.max(np.abs(v)))
    if mx == 0.0:
        raise DegenerateInput("cannot canonicalize the zero vector")
    v = v / mx
    j = int(np.flatnonzero(np.abs(v) >= 1.0 - 1e-12)[0])
    if v[j] < 0.0:
        v = -v
    return v


# ---------------------------------------------------------------------------
# contractions


def _check_operand(A: Tensor, x) -> np.ndarray:
    return as_vector(x, dim=A.dim)


def contract_m1(A: Tensor, x) -> np.ndarray:
    """The (m-1)-fold contraction: v_i = sum a_{i i2...im} x_{i2} ... x_{im}."""
    v = _check_operand(A, x)
    out = A.data
    for _ in range(A.order - 1):
        out = out.dot(v)
    return out


def contract_full(A: Tensor, x) -> float:
    """The degree-m form value sum_i x_i * (contract_m1(A, x))_i."""
    v = _check_operand(A, x)
    return float(np.dot(v, contract_m1(A, v)))


def contract_m1_batch(A: Tensor, X: np.ndarray) -> np.ndarray:
    """contract_m1 applied to every row of X, shape (p, n) -> (p, n).

    Chunked so intermediate arrays stay small at desk scale.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != A.dim:
        raise DimensionError(f"expected batch shape (p, {A.dim})")
    m, n = A.order, A.dim
    letters = "abcdef"[:m]
    spec = (
        letters
        + ","
        + ",".join("z" + c for c in letters[1:])
        + "->z"
        + letters[0]
    )
    chunk = max(1, int(2_000_000 // max(1, n ** (m - 1))))
    parts = []
    for s in range(0, X.shape[0], chunk):
        rows = X[s : s + chunk]
        parts.append(np.einsum(spec, A.data, *([rows] * (m - 1)), optimize=True))
    return np.concatenate(parts, axis=0)


def contract_m1_jacobian(A: Tensor, x) -> np.ndarray:
    """Exact Jacobian of x -> contract_m1(A, x) for a general dense tensor.

    J_{ij} = sum over modes k=2..m of the contraction of A with x in all
    modes except 1 and k.  For mode-symmetric tensors this equals
    (m-1) * (A x^{m-2}) as a matrix.
    """
    v = _check_operand(A, x)
    m, n = A.order, A.dim
    J = np.zeros((n, n))
    for k in range(1, m):
        t = np.moveaxis(A.data, k, 1)
        for _ in range(m - 2):
            t = t.dot(v)
        J += t
    return J


def hadamard_power(x, k: int) -> np.ndarray:
    """Componentwise k-th power (sign preserving for odd k)."""
    if k < 0:
        raise ValueError("hadamard_power requires k >= 0")
    return as_vector(x) ** int(k)


# ---------------------------------------------------------------------------
# structural transforms


def principal_subtensor(A: Tensor, indices) -> Tensor:
    """Restrict every index mode to the same subset, keeping the order."""
    s = as_index_set(indices, A.dim)
    grid = np.ix_(*([s] * A.order))
    return Tensor(A.data[grid], symmetric=A.symmetric)


def comparison_tensor(A: Tensor) -> Tensor:
    """Absolute values on the diagonal, negated absolute values elsewhere."""
    out = -np.abs(A.data)
    idx = np.arange(A.dim)
    diag = tuple([idx] * A.order)
    out[diag] = np.abs(A.data[diag])
    return Tensor(out, symmetric=A.symmetric)


def _orbit_index_map(m: int, n: int):
    """Flat positions of the sorted representative of every multi-index."""
    grids = np.indices((n,) * m).reshape(m, -1).T  # (n^m, m)
    rep = np.sort(grids, axis=1)
    return np.ravel_multi_index(rep.T, (n,) * m)


def symmetrize(A: Tensor) -> Tensor:
    """Average over all m! index permutations.

    The result is exactly invariant under permutations: the orbit average
    is computed once per orbit and broadcast to every position, so no
    floating-point summation-order asymmetry can creep in.
    """
    m, n = A.order, A.dim
    acc = np.zeros_like(A.data)
    count = 0
    for perm in itertools.permutations(range(m)):
        acc += A.data.transpose(perm)
        count += 1
    acc /= count
    flat = acc.reshape(-1)[_orbit_index_map(m, n)]
    return Tensor(flat.reshape((n,) * m), symmetric=True)


def outer_power(u, m: int) -> Tensor:
    """The symmetric rank-one tensor with entries u_{i1} * ... * u_{im}.

    Products are taken at one canonical position per orbit and broadcast,
    so the result is exactly permutation invariant (float multiplication is
    not associative, so naive outer products are symmetric only to an ulp).
    """
    if m < 2:
        raise ValueError("outer_power requires order m >= 2")
    v = as_vector(u)
    data = v
    for _ in range(m - 1):
        data = np.multiply.outer(data, v)
    n = v.size
    flat = data.reshape(-1)[_orbit_index_map(m, n)]
    return Tensor(flat.reshape((n,) * m), symmetric=True)


def factorial(k: int) -> int:
    return math.factorial(k)
