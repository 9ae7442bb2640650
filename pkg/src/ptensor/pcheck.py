"""Certify-or-refute engine for the strong (P), weak (P0) and feasibility (S)
sign properties of a tensor.

The decision functional for a tensor A and nonzero x is

    t_i(x) = x_i^(m-1) * (A x^(m-1))_i

A  has the strong property iff max_i t_i(x) > 0 for every nonzero x, the
weak property iff max over the support of x of t_i(x) is >= 0 for every
nonzero x, and the feasibility property iff some x > 0 has
A x^(m-1) > 0 componentwise.

Deciding these properties exactly generalizes P-matrix recognition, which
is co-NP-complete, so verdicts are three valued:

    CERTIFIED  a closed list of sufficient conditions fired, each an exact
               arithmetic check or a margin-guarded spectral bound, and the
               certificate chain is recorded;
    REFUTED    a concrete witness re-fails the defining inequality on
               re-evaluation;
    LIKELY     a deterministic candidate battery plus seeded multistart
               subgradient descent found no witness (LIKELY_NOT for the
               feasibility search, which looks for a witness, not a
               counterexample).

Certificate rules in the closed list: strict diagonal dominance with
positive diagonal; nonsingular H with positive diagonal; strongly
completely positive construction; B row conditions (odd order, or
symmetric even order); and for the weak property their non-strict
counterparts plus completely positive, hypergraph Laplacian and rank-one
basis construction provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .budget import DEFAULT_TAU_REL, SearchBudget
from .classes import (
    CERTIFIED,
    LIKELY,
    REFUTED,
    ClassReport,
    is_b_tensor,
    is_diagonally_dominant,
    is_h_tensor,
    is_z_tensor,
)
from .core import (
    Tensor,
    as_vector,
    canonicalize_direction,
    contract_m1,
    contract_m1_jacobian,
    support,
)
from .errors import DegenerateInput, DiagonalNegationError, NotPBehaviorAt
from .spectral import nqz_spectral_radius

P = "P"
P0 = "P0"
S = "S"
LIKELY_NOT = "LIKELY_NOT"

_SYM_TOL = 1e-12


@dataclass
class PVerdict:
    """Outcome of a sign-property check.

    witness: refuting vector (P/P0) or feasible interior vector (S),
    reported sup-norm normalized with a deterministic sign.
    functional_value: the decision functional at the witness; for the weak
    property both the support-thresholded and the exact-support values are
    kept, since the numeric support threshold is an artifact choice.
    search_margin: smallest (largest, for S) functional value seen during
    the search; calibrates how much slack a LIKELY verdict has.
    """

    prop: str
    verdict: str
    witness: np.ndarray | None = None
    certificate_chain: list = field(default_factory=list)
    search_margin: float | None = None
    functional_value: float | None = None
    functional_value_unthresholded: float | None = None
    budget: SearchBudget = field(default_factory=SearchBudget)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    def to_json_dict(self) -> dict:
        chain = []
        for rule, info in self.certificate_chain:
            if isinstance(info, ClassReport):
                chain.append({"rule": rule, "report": info.to_json_dict()})
            else:
                chain.append({"rule": rule, "report": str(info)})
        return {
            "property": self.prop,
            "verdict": self.verdict,
            "witness": None if self.witness is None else [float(v) for v in self.witness],
            "margin": None if self.search_margin is None else float(self.search_margin),
            "functional_value": (
                None if self.functional_value is None else float(self.functional_value)
            ),
            "functional_value_unthresholded": (
                None
                if self.functional_value_unthresholded is None
                else float(self.functional_value_unthresholded)
            ),
            "chain": chain,
            "budget": self.budget.to_json_dict(),
        }


# ---------------------------------------------------------------------------
# decision functionals


def _terms(A: Tensor, x: np.ndarray) -> np.ndarray:
    m = A.order
    return x ** (m - 1) * contract_m1(A, x)


def phi_p(A: Tensor, x) -> float:
    """max_i x_i^(m-1) (A x^(m-1))_i; positive for every nonzero x iff A has
    the strong sign property.  Homogeneous of degree 2(m-1)."""
    v = as_vector(x, dim=A.dim)
    if float(np.max(np.abs(v))) == 0.0:
        raise DegenerateInput("the sign functional is undefined at the zero vector")
    return float(np.max(_terms(A, v)))


def phi_p0(A: Tensor, x, tau_rel: float | None = None) -> float:
    """max over the numeric support of x of x_i^(m-1) (A x^(m-1))_i.

    tau_rel=0 gives the exact-arithmetic support (x_i != 0.0)."""
    v = as_vector(x, dim=A.dim)
    if float(np.max(np.abs(v))) == 0.0:
        raise DegenerateInput("the sign functional is undefined at the zero vector")
    if tau_rel is None:
        tau_rel = DEFAULT_TAU_REL
    if tau_rel == 0.0:
        sup = np.flatnonzero(v != 0.0)
    else:
        sup = support(v, tau_rel)
    return float(np.max(_terms(A, v)[sup]))


def scaling_matrix(A: Tensor, x) -> np.ndarray:
    """Diagonal of a positive diagonal matrix D with
    <D x^{[m-1]}, A x^{m-1}> > 0, built from the sign pattern of the
    functional terms: D = diag(delta + eps) with delta_i = 1 exactly on the
    positive terms and eps half the bound sum(delta*t) / |sum(t)|
    (eps = 1 when the terms sum to zero).  Requires a positive term at x."""
    v = as_vector(x, dim=A.dim)
    if float(np.max(np.abs(v))) == 0.0:
        raise DegenerateInput("scaling matrix needs a nonzero vector")
    t = _terms(A, v)
    mx = float(np.max(t))
    if mx <= 0.0:
        raise NotPBehaviorAt(v, mx)
    delta = (t > 0.0).astype(float)
    total = float(np.sum(t))
    if total == 0.0:
        eps = 1.0
    else:
        eps = 0.5 * float(np.sum(delta * t)) / abs(total)
    d = delta + eps
    value = float(np.sum(d * t))
    if not value > 0.0:
        raise NotPBehaviorAt(v, value)  # unreachable for valid inputs
    return d


def hull_membership(A: Tensor) -> ClassReport:
    """Membership in the convex hull (= convex cone) of the weak-property
    class, which is exactly {diagonal >= 0}."""
    diag = A.diagonal()
    bad = np.flatnonzero(diag < 0.0)
    if bad.size:
        i = int(bad[0])
        return ClassReport(
            "p0_hull",
            REFUTED,
            witness=i,
            detail=f"diagonal entry {diag[i]:.6g} < 0 at index {i}",
        )
    return ClassReport("p0_hull", CERTIFIED, detail="all diagonal entries are >= 0")


def basis_p0_tensor(indices, dim: int, negate: bool = False) -> Tensor:
    """Rank-one basis tensor +/- e_{i1} x ... x e_{im} (a single +/-1 entry).

    The negated variant requires a non-constant index tuple: negating a
    diagonal position creates a negative diagonal entry, which already
    violates the weak property."""
    idx = tuple(int(i) for i in indices)
    m = len(idx)
    if m < 2:
        raise ValueError("need at least 2 indices")
    if any(i < 0 or i >= dim for i in idx):
        raise IndexError(f"indices {idx} out of range for dimension {dim}")
    constant = all(i == idx[0] for i in idx)
    if negate and constant:
        raise DiagonalNegationError(
            f"cannot negate the diagonal tuple {idx}: the result has a negative diagonal"
        )
    data = np.zeros((dim,) * m)
    data[idx] = -1.0 if negate else 1.0
    return Tensor(
        data,
        symmetric=constant,
        provenance={"generator": "basis_p0", "p0_by_construction": True},
        provenance_trusted=True,
    )


# ---------------------------------------------------------------------------
# candidate battery and subgradient descent

_SIGN_PATTERN_MAX_DIM = 6


def candidate_battery(n: int) -> list:
    """Deterministic probe directions, sup-norm normalized.

    Always contains +/- every coordinate direction and +/- the all-ones
    vector; for n <= 6 the full {-1, 0, 1}^n sign-pattern set is included,
    which catches every diagonal-sign violation and all orthant boundary
    behavior before any randomized search runs."""
    out = []
    eye = np.eye(n)
    for i in range(n):
        out.append(eye[i].copy())
        out.append(-eye[i])
    out.append(np.ones(n))
    out.append(-np.ones(n))
    if n <= _SIGN_PATTERN_MAX_DIM:
        import itertools

        for pattern in itertools.product((-1.0, 0.0, 1.0), repeat=n):
            v = np.array(pattern)
            if np.any(v != 0.0):
                out.append(v)
    return out


def _term_gradient(A: Tensor, x: np.ndarray, i: int, ax: np.ndarray) -> np.ndarray:
    """Gradient of t_i(x) = x_i^(m-1) (A x^(m-1))_i."""
    m = A.order
    J = contract_m1_jacobian(A, x)
    g = x[i] ** (m - 1) * J[i]
    g[i] += (m - 1) * x[i] ** (m - 2) * ax[i]
    return g


def _descend(A: Tensor, x0: np.ndarray, budget: SearchBudget, weak: bool):
    """Subgradient descent on the max-of-terms functional over the 2-sphere.

    Active term: argmax (lowest index on ties); step 1/(k+10) scaled by the
    gradient norm, then projection back to the sphere.  Returns the best
    point and value seen."""
    x = x0 / np.linalg.norm(x0)
    best_x, best_val = x.copy(), np.inf
    for it in range(budget.iters):
        ax = contract_m1(A, x)
        t = x ** (A.order - 1) * ax
        if weak:
            try:
                sup = support(x, budget.tau_rel)
            except DegenerateInput:
                break
            local = sup[int(np.argmax(t[sup]))]
            val = float(t[local])
        else:
            local = int(np.argmax(t))
            val = float(t[local])
        if val < best_val:
            best_val, best_x = val, x.copy()
        g = _term_gradient(A, x, int(local), ax)
        gn = float(np.linalg.norm(g))
        if gn == 0.0:
            break
        x = x - g / (gn * (it + 10.0))
        nx = float(np.linalg.norm(x))
        if nx < 1e-14:
            break
        x = x / nx
    return best_x, best_val


def _snap_witness(x: np.ndarray, tau_rel: float) -> np.ndarray:
    """Canonical witness form: zero out numerically dead components, scale
    to sup-norm 1, fix the sign deterministically."""
    w = canonicalize_direction(x)
    w[np.abs(w) <= tau_rel] = 0.0
    return canonicalize_direction(w)


def _threshold(x: np.ndarray, m: int, tol: float) -> float:
    return tol * float(np.linalg.norm(x)) ** (2 * (m - 1))


# ---------------------------------------------------------------------------
# the three checks


def _p_certificates(A: Tensor) -> list:
    chain = []
    if A.claim("scp"):
        chain.append(("scp_construction", "trusted strongly-completely-positive construction"))
        return chain
    diag_positive = bool(np.all(A.diagonal() > 0.0))
    if diag_positive:
        dd = is_diagonally_dominant(A, strict=True)
        if dd.certified:
            chain.append(("strict_diagonal_dominance_positive_diagonal", dd))
            return chain
        h = is_h_tensor(A)
        if h.label == "NONSINGULAR_H":
            chain.append(("nonsingular_h_positive_diagonal", h))
            return chain
    m = A.order
    symmetric_enough = A.symmetric or A.symmetry_deviation() <= _SYM_TOL * max(
        1.0, float(np.max(np.abs(A.data)))
    )
    if m % 2 == 1 or symmetric_enough:
        b = is_b_tensor(A, strict=True)
        if b.certified:
            rule = "b_tensor_odd_order" if m % 2 == 1 else "b_tensor_symmetric_even_order"
            chain.append((rule, b))
            return chain
    return chain


def _p0_certificates(A: Tensor) -> list:
    chain = []
    if A.claim("cp") or A.claim("scp"):
        chain.append(("cp_construction", "trusted completely-positive construction"))
        return chain
    if A.claim("hypergraph_laplacian"):
        chain.append(("hypergraph_laplacian", "trusted uniform-hypergraph Laplacian construction"))
        return chain
    if A.claim("p0_by_construction"):
        chain.append(("rank_one_basis", "trusted rank-one basis construction"))
        return chain
    diag_nonneg = bool(np.all(A.diagonal() >= 0.0))
    if diag_nonneg:
        dd = is_diagonally_dominant(A, strict=False)
        if dd.certified:
            chain.append(("diagonal_dominance_nonnegative_diagonal", dd))
            return chain
        h = is_h_tensor(A)
        if h.label == "NONSINGULAR_H":
            chain.append(("nonsingular_h_nonnegative_diagonal", h))
            return chain
    m = A.order
    symmetric_enough = A.symmetric or A.symmetry_deviation() <= _SYM_TOL * max(
        1.0, float(np.max(np.abs(A.data)))
    )
    if m % 2 == 1 or symmetric_enough:
        b = is_b_tensor(A, strict=False)
        if b.certified:
            rule = "b0_tensor_odd_order" if m % 2 == 1 else "b0_tensor_symmetric_even_order"
            chain.append((rule, b))
            return chain
    return chain


def check_p(A: Tensor, budget: SearchBudget | None = None) -> PVerdict:
    """Three-phase check of the strong sign property.

    1. necessary condition: every diagonal entry must be positive (the
       coordinate directions witness any violation);
    2. certificates (closed rule list, see module docstring);
    3. refutation search: the candidate battery, then multistart
       subgradient descent; a point with functional <= tol refutes, since
       the property requires strict positivity.
    """
    if budget is None:
        budget = SearchBudget()
    m, n = A.order, A.dim

    diag = A.diagonal()
    i = int(np.argmin(diag))
    if diag[i] <= 0.0:
        w = np.zeros(n)
        w[i] = 1.0
        return PVerdict(
            P,
            REFUTED,
            witness=w,
            certificate_chain=[
                ("diagonal_necessary_condition", f"diagonal entry {diag[i]:.6g} <= 0 at {i}")
            ],
            functional_value=float(diag[i]),
            search_margin=float(diag[i]),
            budget=budget,
        )

    chain = _p_certificates(A)
    if chain:
        return PVerdict(P, CERTIFIED, certificate_chain=chain, budget=budget)

    w, val, floor = _refutation_search(A, budget, weak=False)
    if w is not None:
        return PVerdict(
            P, REFUTED, witness=w, functional_value=val, search_margin=val, budget=budget
        )
    return PVerdict(P, LIKELY, search_margin=floor, budget=budget)


def check_p0(A: Tensor, budget: SearchBudget | None = None) -> PVerdict:
    """Three-phase check of the weak sign property.

    Differences from the strong check: the refutation threshold is strictly
    negative (boundary zeros are feasible), and a witness must fail both
    the support-thresholded functional and the exact-support one, so a
    support-threshold artifact can never refute on its own.
    """
    if budget is None:
        budget = SearchBudget()
    m, n = A.order, A.dim

    diag = A.diagonal()
    i = int(np.argmin(diag))
    if diag[i] < -budget.tol:
        w = np.zeros(n)
        w[i] = 1.0
        return PVerdict(
            P0,
            REFUTED,
            witness=w,
            certificate_chain=[
                ("diagonal_necessary_condition", f"diagonal entry {diag[i]:.6g} < 0 at {i}")
            ],
            functional_value=float(diag[i]),
            functional_value_unthresholded=float(diag[i]),
            search_margin=float(diag[i]),
            budget=budget,
        )

    chain = _p0_certificates(A)
    if chain:
        return PVerdict(P0, CERTIFIED, certificate_chain=chain, budget=budget)

    w, val, floor = _refutation_search(A, budget, weak=True)
    if w is not None:
        return PVerdict(
            P0,
            REFUTED,
            witness=w,
            functional_value=val,
            functional_value_unthresholded=phi_p0(A, w, tau_rel=0.0),
            search_margin=val,
            budget=budget,
        )
    return PVerdict(P0, LIKELY, search_margin=floor, budget=budget)


def _refutation_search(A: Tensor, budget: SearchBudget, weak: bool):
    """Battery plus descent.  Returns (witness, functional, floor): witness
    is the canonical refuting vector or None, floor the smallest functional
    value seen anywhere in the search.

    For the strong property a witness needs functional <= tol * scale; for
    the weak property it needs < -tol * scale under both the thresholded
    and the exact-support functional.
    """
    m = A.order
    func = (lambda x: phi_p0(A, x, budget.tau_rel)) if weak else (lambda x: phi_p(A, x))

    def refutes(x: np.ndarray) -> bool:
        thr = _threshold(x, m, budget.tol)
        if weak:
            if not func(x) < -thr:
                return False
            return phi_p0(A, x, tau_rel=0.0) < -thr
        return func(x) <= thr

    best_val, best_x = np.inf, None
    worst_pool = []
    for cand in candidate_battery(A.dim):
        v = func(cand)
        worst_pool.append((v, cand))
        if v < best_val:
            best_val, best_x = v, cand
        if refutes(cand):
            w = _snap_witness(cand, budget.tau_rel)
            if refutes(w):
                return w, func(w), min(best_val, func(w))

    worst_pool.sort(key=lambda t: t[0])
    starts = [c / np.linalg.norm(c) for _, c in worst_pool[:8]]
    for k in range(budget.starts):
        z = budget.start_rng(k).standard_normal(A.dim)
        nz = float(np.linalg.norm(z))
        if nz > 1e-12:
            starts.append(z / nz)

    for x0 in starts:
        x, val = _descend(A, x0, budget, weak=weak)
        if val < best_val:
            best_val, best_x = val, x
        if refutes(x):
            w = _snap_witness(x, budget.tau_rel)
            if refutes(w):
                return w, func(w), min(best_val, func(w))

    floor = best_val
    if best_x is not None:
        try:
            floor = func(_snap_witness(best_x, budget.tau_rel))
        except DegenerateInput:
            pass
    return None, None, float(min(best_val, floor))


def check_s(A: Tensor, budget: SearchBudget | None = None) -> PVerdict:
    """Feasibility search: is there x > 0 with A x^{m-1} > 0 componentwise?

    Quick probes (the all-ones vector, and the positive principal vector of
    s*I - A when A is a Z-tensor) come first, then projected subgradient
    ascent of min_i (A x^{m-1})_i over the simplex with components clamped
    to >= 1e-8.  Success certifies with a re-verified witness; failure is
    only LIKELY_NOT, never REFUTED, because the search looks for a witness
    of existence.
    """
    if budget is None:
        budget = SearchBudget()
    m, n = A.order, A.dim
    floor = 1e-8

    def gmin(x: np.ndarray) -> float:
        return float(np.min(contract_m1(A, x)))

    def certify(x: np.ndarray) -> PVerdict | None:
        w = x / float(np.max(np.abs(x)))
        ax = contract_m1(A, w)
        if np.all(w > 0.0) and np.all(ax > 0.0) and float(np.min(ax)) > budget.tol:
            return PVerdict(
                S,
                CERTIFIED,
                witness=w,
                functional_value=float(np.min(ax)),
                search_margin=float(np.min(ax)),
                budget=budget,
            )
        return None

    ones = np.ones(n)
    out = certify(ones)
    if out is not None:
        return out

    candidates = []
    if is_z_tensor(A).certified:
        diag = A.diagonal()
        s = float(np.max(diag)) + 1.0
        bdata = -A.data.copy()
        idx = np.arange(n)
        bdata[tuple([idx] * m)] = s - diag
        perron = nqz_spectral_radius(Tensor(bdata)).perron_vector
        candidates.append(np.maximum(perron, floor))
    for k in range(budget.starts):
        candidates.append(np.maximum(budget.start_rng(k).random(n), floor))

    best_x, best_val = ones / n, gmin(ones / n)
    for x0 in candidates:
        out = certify(x0)  # raw candidate first: rescaling preserves positivity
        if out is not None:
            return out
        x = _project_simplex_floor(x0, floor)
        for it in range(budget.iters):
            ax = contract_m1(A, x)
            val = float(np.min(ax))
            if val > best_val:
                best_val, best_x = val, x.copy()
            active = int(np.argmin(ax))
            g = contract_m1_jacobian(A, x)[active]
            gn = float(np.linalg.norm(g))
            if gn == 0.0:
                break
            x = _project_simplex_floor(x + g / (gn * (it + 10.0)), floor)
        out = certify(best_x)
        if out is not None:
            return out
    return PVerdict(S, LIKELY_NOT, search_margin=best_val, budget=budget)


def _project_simplex_floor(v: np.ndarray, floor: float) -> np.ndarray:
    """Projection onto {x >= floor, sum x = 1} (shifted simplex projection)."""
    from .classes import _project_simplex

    n = v.size
    mass = 1.0 - n * floor
    if mass <= 0.0:
        return np.full(n, 1.0 / n)
    return _project_simplex((v - floor) / mass) * mass + floor
