"""Predicates and constructors for structured tensor classes.

Covers diagonal dominance, Z/M/H classes, B/B0 row conditions, Cauchy
tensors, uniform-hypergraph Laplacians, completely positive constructions,
and sampling-based copositivity / definiteness tests.

Verdict semantics: CERTIFIED and REFUTED are exact (inequalities on given
entries, or a re-checkable witness); LIKELY marks outcomes that rest on a
finite search or on a numerically uncertain boundary and is never a proof.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .budget import SearchBudget
from .core import (
    Tensor,
    as_vector,
    comparison_tensor,
    contract_full,
    contract_m1,
    contract_m1_batch,
    contract_m1_jacobian,
    diagonal_tensor,
    outer_power,
)
from .errors import ArityError, NotNonnegative, SingularCauchy
from .spectral import nqz_spectral_radius

CERTIFIED = "CERTIFIED"
LIKELY = "LIKELY"
REFUTED = "REFUTED"
UNKNOWN = "UNKNOWN"


@dataclass
class ClassReport:
    """Outcome of a structured-class test.

    verdict is the coarse grade (CERTIFIED / LIKELY / REFUTED / UNKNOWN);
    label refines it where a class has named subcases (NONSINGULAR_M, M,
    LIKELY_STRICT, ...).  REFUTED reports carry a witness that re-fails the
    defining inequality on re-evaluation.
    """

    class_name: str
    verdict: str
    label: str | None = None
    witness: object = None
    detail: str = ""
    metrics: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    def to_json_dict(self) -> dict:
        witness = self.witness
        if isinstance(witness, np.ndarray):
            witness = [float(v) for v in witness]
        elif isinstance(witness, tuple):
            witness = [int(v) for v in witness]
        elif isinstance(witness, (int, np.integer)):
            witness = int(witness)
        return {
            "class": self.class_name,
            "verdict": self.verdict,
            "label": self.label,
            "witness": witness,
            "detail": self.detail,
            "metrics": self.metrics,
        }


# ---------------------------------------------------------------------------
# hypergraphs and factor sets


class Hypergraph:
    """Uniform hypergraph: n_vertices and a list of arity-m vertex sets."""

    __slots__ = ("n_vertices", "arity", "edges")

    def __init__(self, n_vertices: int, edges, arity: int | None = None):
        if n_vertices < 1:
            raise ArityError("hypergraph needs at least one vertex")
        canon = []
        for e in edges:
            t = tuple(int(v) for v in e)
            if len(set(t)) != len(t):
                raise ArityError(f"edge {t} repeats a vertex")
            if any(v < 0 or v >= n_vertices for v in t):
                raise ArityError(f"edge {t} has a vertex outside [0, {n_vertices})")
            canon.append(tuple(sorted(t)))
        if arity is None:
            if not canon:
                raise ArityError("arity must be given explicitly for an empty edge set")
            arity = len(canon[0])
        if arity < 2:
            raise ArityError("edge arity must be at least 2")
        for t in canon:
            if len(t) != arity:
                raise ArityError(f"edge {t} has arity {len(t)}, expected {arity}")
        if len(set(canon)) != len(canon):
            raise ArityError("hypergraph contains a repeated edge")
        self.n_vertices = int(n_vertices)
        self.arity = int(arity)
        self.edges = tuple(canon)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.n_vertices)
        for e in self.edges:
            for v in e:
                d[v] += 1.0
        return d

    def __repr__(self):
        return f"Hypergraph(n={self.n_vertices}, m={self.arity}, edges={len(self.edges)})"


def parse_hypergraph(obj) -> Hypergraph:
    from .errors import ParseError

    if not isinstance(obj, dict) or not {"n", "m", "edges"} <= set(obj):
        raise ParseError('hypergraph file must be {"n": ..., "m": ..., "edges": [...]}')
    try:
        return Hypergraph(int(obj["n"]), obj["edges"], arity=int(obj["m"]))
    except ArityError as exc:
        raise ParseError(str(exc)) from None


def read_hypergraph(path) -> Hypergraph:
    from .tensorio import _load_json

    return parse_hypergraph(_load_json(path))


@dataclass
class FactorSet:
    """Nonnegative factor vectors u_k for completely positive constructions."""

    factors: list

    def __post_init__(self):
        if len(self.factors) < 1:
            raise NotNonnegative("factor set needs at least one vector")
        vecs = [as_vector(u) for u in self.factors]
        n = vecs[0].size
        for u in vecs:
            if u.size != n:
                raise NotNonnegative("all factors must have the same dimension")
            if np.any(u < 0.0):
                raise NotNonnegative("factors must be entrywise nonnegative")
        self.factors = vecs

    @property
    def dim(self) -> int:
        return self.factors[0].size


# ---------------------------------------------------------------------------
# row-inequality classes (exact arithmetic on the given entries)


def _row_views(A: Tensor) -> np.ndarray:
    return A.data.reshape(A.dim, -1)


def _row_diag_position(i: int, n: int, m: int) -> int:
    # flat position of (i, ..., i) within the row-major slice A[i]
    return sum(i * n**k for k in range(m - 1))


def is_diagonally_dominant(A: Tensor, strict: bool = False) -> ClassReport:
    """Row test |a_{ii...i}| >= (or >) sum of off-row absolute values."""
    name = "strictly_diagonally_dominant" if strict else "diagonally_dominant"
    rows = np.abs(_row_views(A))
    m, n = A.order, A.dim
    for i in range(n):
        dpos = _row_diag_position(i, n, m)
        diag = rows[i, dpos]
        off = float(rows[i].sum() - diag)
        ok = diag > off if strict else diag >= off
        if not ok:
            op = ">" if strict else ">="
            return ClassReport(
                name,
                REFUTED,
                witness=i,
                detail=f"row {i}: |diagonal| = {diag:.6g} fails {op} off-row sum {off:.6g}",
                metrics={"row": i, "diagonal_abs": diag, "off_row_sum": off},
            )
    return ClassReport(name, CERTIFIED, detail="all rows pass the dominance inequality")


def is_z_tensor(A: Tensor) -> ClassReport:
    """All off-diagonal entries <= 0."""
    m, n = A.order, A.dim
    mask = A.data > 0.0
    idx = np.arange(n)
    diag_sel = tuple([idx] * m)
    mask[diag_sel] = False
    offenders = np.argwhere(mask)
    if offenders.size:
        tup = tuple(int(v) for v in offenders[0])
        return ClassReport(
            "z_tensor",
            REFUTED,
            witness=tup,
            detail=f"positive off-diagonal entry {A.data[tup]:.6g} at {tup}",
        )
    return ClassReport("z_tensor", CERTIFIED, detail="all off-diagonal entries are <= 0")


def classify_m_tensor(A: Tensor, tol: float | None = None, s_offset: float = 0.0) -> ClassReport:
    """Split A = s*I - B with B nonnegative and compare s against rho(B).

    The pivot is s = max diagonal + 1 (+ s_offset); the verdict is
    independent of that choice because rho(B) shifts by exactly the same
    amount.  Labels: NONSINGULAR_M when s > rho + tol (certified), M when
    |s - rho| <= tol (boundary, possibly singular, graded LIKELY because
    equality cannot be certified numerically), REFUTED when s < rho - tol.
    """
    z = is_z_tensor(A)
    if z.refuted:
        return ClassReport(
            "m_tensor",
            REFUTED,
            witness=z.witness,
            detail="not a Z-tensor: " + z.detail,
        )
    m, n = A.order, A.dim
    diag = A.diagonal()
    s = float(np.max(diag)) + 1.0 + float(s_offset)
    bdata = -A.data.copy()
    idx = np.arange(n)
    bdata[tuple([idx] * m)] = s - diag
    B = Tensor(bdata, symmetric=A.symmetric)
    res = nqz_spectral_radius(B)
    if not res.converged:
        return ClassReport(
            "m_tensor",
            UNKNOWN,
            detail="spectral radius iteration did not converge",
            metrics={"s": s, "rho": res.rho, "uncertainty": res.uncertainty},
        )
    eff_tol = (res.uncertainty + 1e-7) if tol is None else float(tol)
    margin = s - res.rho
    metrics = {
        "s": s,
        "rho": res.rho,
        "rho_uncertainty": res.uncertainty,
        "margin": margin,
        "tol": eff_tol,
    }
    if margin > eff_tol:
        return ClassReport(
            "m_tensor",
            CERTIFIED,
            label="NONSINGULAR_M",
            detail=f"s = {s:.6g} exceeds rho = {res.rho:.6g} by {margin:.3g}",
            metrics=metrics,
        )
    if abs(margin) <= eff_tol:
        return ClassReport(
            "m_tensor",
            LIKELY,
            label="M",
            detail=f"s = {s:.6g} and rho = {res.rho:.6g} agree within tolerance "
            "(boundary case, possibly singular)",
            metrics=metrics,
        )
    return ClassReport(
        "m_tensor",
        REFUTED,
        witness=res.perron_vector,
        detail=f"rho = {res.rho:.6g} exceeds s = {s:.6g}",
        metrics=metrics,
    )


_H_LABELS = {"NONSINGULAR_M": "NONSINGULAR_H", "M": "H"}


def is_h_tensor(A: Tensor, tol: float | None = None) -> ClassReport:
    """A is an H-tensor iff its comparison tensor passes the M test."""
    inner = classify_m_tensor(comparison_tensor(A), tol=tol)
    diag = A.diagonal()
    metrics = dict(inner.metrics)
    metrics["min_diagonal"] = float(np.min(diag))
    metrics["diagonal_positive"] = bool(np.all(diag > 0.0))
    metrics["diagonal_nonnegative"] = bool(np.all(diag >= 0.0))
    return ClassReport(
        "h_tensor",
        inner.verdict,
        label=_H_LABELS.get(inner.label),
        witness=inner.witness,
        detail="comparison tensor: " + inner.detail,
        metrics=metrics,
    )


def is_b_tensor(A: Tensor, strict: bool = False) -> ClassReport:
    """Row-sum / row-average dominance test.

    Requires, for every i: sum_{i2..im} a_{i i2..im} >= 0 and the row
    average (row sum / n^{m-1}) >= every off-position entry a_{i j2..jm}
    with (j2,..,jm) != (i,..,i); strict variants with > throughout.
    """
    name = "b_tensor" if strict else "b0_tensor"
    m, n = A.order, A.dim
    rows = _row_views(A)
    for i in range(n):
        rs = float(rows[i].sum())
        ok_sum = rs > 0.0 if strict else rs >= 0.0
        if not ok_sum:
            return ClassReport(
                name,
                REFUTED,
                witness=(i,),
                detail=f"row {i} sum {rs:.6g} fails the sign condition",
                metrics={"row": i, "row_sum": rs},
            )
        avg = rs / n ** (m - 1)
        masked = rows[i].copy()
        dpos = _row_diag_position(i, n, m)
        masked[dpos] = -np.inf
        jflat = int(np.argmax(masked))
        mx = float(masked[jflat])
        ok_avg = avg > mx if strict else avg >= mx
        if not ok_avg:
            jtup = np.unravel_index(jflat, (n,) * (m - 1))
            witness = (i, *(int(t) for t in jtup))
            op = ">" if strict else ">="
            return ClassReport(
                name,
                REFUTED,
                witness=witness,
                detail=f"row {i}: average {avg:.6g} fails {op} entry {mx:.6g} at {witness}",
                metrics={"row": i, "row_average": avg, "max_off_entry": mx},
            )
    return ClassReport(name, CERTIFIED, detail="all row sum and row average inequalities hold")


# ---------------------------------------------------------------------------
# constructors


def cauchy_tensor(u, m: int) -> Tensor:
    """Symmetric tensor with entries 1 / (u_{i1} + ... + u_{im}).

    Provenance records cp (generating vector positive) and scp (positive
    with mutually distinct entries); both claims feed the sign-property
    certificate chains downstream.
    """
    v = as_vector(u)
    if m < 2:
        raise ValueError("cauchy_tensor requires order m >= 2")
    denom = v
    for _ in range(m - 1):
        denom = np.add.outer(denom, v)
    if np.any(denom == 0.0):
        raise SingularCauchy("an index sum of the generating vector is zero")
    cp = bool(np.all(v > 0.0))
    scp = cp and np.unique(v).size == v.size
    return Tensor(
        1.0 / denom,
        symmetric=True,
        provenance={"generator": "cauchy", "cp": cp, "scp": scp},
        provenance_trusted=True,
    )


def laplacian_tensors(G: Hypergraph):
    """Adjacency, Laplacian and signless Laplacian tensors of a uniform
    hypergraph.

    The adjacency tensor holds 1/(m-1)! at every permutation of every edge
    (tuples with repeated indices stay zero); the degree tensor is diagonal
    with the vertex degrees; Laplacian = degrees - adjacency and signless
    Laplacian = degrees + adjacency.
    """
    n, m = G.n_vertices, G.arity
    adj = np.zeros((n,) * m)
    val = 1.0 / math.factorial(m - 1)
    for e in G.edges:
        for perm in itertools.permutations(e):
            adj[perm] = val
    adjacency = Tensor(
        adj,
        symmetric=True,
        provenance={"generator": "hypergraph_adjacency"},
        provenance_trusted=True,
    )
    deg = diagonal_tensor(G.degrees(), m)
    lap_claims = {"generator": "hypergraph_laplacian", "hypergraph_laplacian": True}
    laplacian = Tensor(
        deg.data - adj, symmetric=True, provenance=lap_claims, provenance_trusted=True
    )
    signless = Tensor(
        deg.data + adj,
        symmetric=True,
        provenance={"generator": "hypergraph_signless_laplacian", "hypergraph_laplacian": True},
        provenance_trusted=True,
    )
    return adjacency, laplacian, signless


def cp_tensor(factors, m: int) -> Tensor:
    """Sum of m-th outer powers of nonnegative factors.

    The scp claim records whether the factors numerically span R^n (rank by
    column-pivoted QR with threshold 1e-10 times the largest factor norm).
    """
    fs = factors if isinstance(factors, FactorSet) else FactorSet(list(factors))
    if m < 2:
        raise ValueError("cp_tensor requires order m >= 2")
    n = fs.dim
    acc = np.zeros((n,) * m)
    for u in fs.factors:
        acc += outer_power(u, m).data
    U = np.column_stack(fs.factors)
    r = scipy.linalg.qr(U, mode="r", pivoting=True)[0]
    rdiag = np.abs(np.diag(r))
    thresh = 1e-10 * max(float(np.linalg.norm(u)) for u in fs.factors)
    rank = int(np.sum(rdiag > thresh))
    scp = rank == n
    return Tensor(
        acc,
        symmetric=True,
        provenance={"generator": "cp", "cp": True, "scp": scp, "rank": rank},
        provenance_trusted=True,
    )


# ---------------------------------------------------------------------------
# sampling-based definiteness tests


def simplex_grid(n: int, depth: int, max_points: int = 1_000_000) -> np.ndarray:
    """All rational points k/d on the unit simplex, with d auto-reduced so
    the point count stays under max_points."""
    d = max(1, int(depth))
    while d > 1 and math.comb(d + n - 1, n - 1) > max_points:
        d -= 1
    pts = [
        np.array(c, dtype=float) / d
        for c in _compositions(d, n)
    ]
    return np.array(pts)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head, *rest)


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = 1}."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    ks = np.arange(1, v.size + 1)
    cond = u - (css - 1.0) / ks > 0.0
    k = int(np.max(ks[cond]))
    tau = (css[k - 1] - 1.0) / k
    return np.maximum(v - tau, 0.0)


def _form_gradient(A: Tensor, x: np.ndarray) -> np.ndarray:
    return contract_m1(A, x) + contract_m1_jacobian(A, x).T.dot(x)


def is_copositive(A: Tensor, budget: SearchBudget | None = None) -> ClassReport:
    """Search for the minimum of the degree-m form over the unit simplex.

    REFUTED (exact, with a re-checked witness) when a point with value
    < -tol is found; otherwise LIKELY with label LIKELY_COPOSITIVE, upgraded
    to LIKELY_STRICT when the observed minimum exceeds +tol.  Never
    CERTIFIED: the underlying decision problem is co-NP-hard and a finite
    search cannot prove nonnegativity.
    """
    if budget is None:
        budget = SearchBudget()
    n = A.dim
    pts = simplex_grid(n, budget.grid_depth)
    vals = np.einsum("pi,pi->p", pts, contract_m1_batch(A, pts))
    order = np.argsort(vals, kind="stable")
    best_x = pts[order[0]].copy()
    best_val = float(vals[order[0]])

    n_starts = min(budget.starts, pts.shape[0])
    for idx in order[:n_starts]:
        x = pts[idx].copy()
        for it in range(budget.iters):
            g = _form_gradient(A, x)
            step = 1.0 / ((it + 10.0) * max(1.0, float(np.linalg.norm(g))))
            x_new = _project_simplex(x - step * g)
            val_new = contract_full(A, x_new)
            if val_new < best_val:
                best_val, best_x = val_new, x_new.copy()
            x = x_new

    check = contract_full(A, best_x)  # witness re-evaluation
    metrics = {
        "min_value": check,
        "grid_points": int(pts.shape[0]),
        "argmin": [float(v) for v in best_x],
    }
    if check < -budget.tol:
        return ClassReport(
            "copositive",
            REFUTED,
            witness=best_x,
            detail=f"form value {check:.6g} < 0 at a nonnegative point",
            metrics=metrics,
        )
    label = "LIKELY_STRICT" if check > budget.tol else "LIKELY_COPOSITIVE"
    return ClassReport(
        "copositive",
        LIKELY,
        label=label,
        detail=f"simplex search minimum {check:.6g} (search only, not a proof)",
        metrics=metrics,
    )


def _sphere_minimize(A: Tensor, x0: np.ndarray, iters: int) -> tuple:
    import scipy.optimize

    def fun(z):
        nz = float(np.linalg.norm(z))
        if nz == 0.0:
            return 0.0, np.zeros_like(z)
        x = z / nz
        val = contract_full(A, x)
        g = _form_gradient(A, x)
        grad = (g - np.dot(g, x) * x) / nz
        return val, grad

    res = scipy.optimize.minimize(
        fun, x0, jac=True, method="L-BFGS-B", options={"maxiter": iters, "ftol": 1e-16}
    )
    z = res.x
    nz = float(np.linalg.norm(z))
    if nz == 0.0 or not np.all(np.isfinite(z)):
        return x0, contract_full(A, x0)
    x = z / nz
    return x, contract_full(A, x)


def is_psd(A: Tensor, budget: SearchBudget | None = None) -> ClassReport:
    """Search for the minimum of the degree-m form over the unit sphere.

    Odd order: a nonzero form value v at x flips sign at -x, so any probe
    with v != 0 refutes immediately; a tensor whose form vanishes on all
    probes is graded LIKELY (for symmetric tensors that only happens at the
    zero tensor).  Even order: multistart descent; REFUTED below -tol,
    otherwise LIKELY_PSD / LIKELY_PD.
    """
    if budget is None:
        budget = SearchBudget()
    m, n = A.order, A.dim

    probes = [np.eye(n)[i] for i in range(n)]
    probes.append(np.ones(n) / np.sqrt(n))
    for k in range(budget.starts):
        z = budget.start_rng(k).standard_normal(n)
        nz = float(np.linalg.norm(z))
        if nz > 1e-12:
            probes.append(z / nz)

    if m % 2 == 1:
        for x in probes:
            val = contract_full(A, x)
            if val != 0.0:
                w = -x if val > 0.0 else x
                wval = contract_full(A, w)
                if wval < 0.0:
                    return ClassReport(
                        "psd",
                        REFUTED,
                        witness=w,
                        detail=f"odd order: form value {wval:.6g} < 0 after sign flip",
                        metrics={"min_value": wval},
                    )
        return ClassReport(
            "psd",
            LIKELY,
            label="LIKELY_PSD",
            detail="odd order with numerically zero form on all probes",
            metrics={"min_value": 0.0},
        )

    best_x, best_val = probes[0], contract_full(A, probes[0])
    for x0 in probes:
        v0 = contract_full(A, x0)
        if v0 < best_val:
            best_val, best_x = v0, x0
    for x0 in probes[: max(4, min(len(probes), budget.starts))]:
        x, val = _sphere_minimize(A, x0, budget.iters)
        if val < best_val:
            best_val, best_x = val, x

    check = contract_full(A, best_x)
    metrics = {"min_value": check, "argmin": [float(v) for v in best_x]}
    if check < -budget.tol:
        return ClassReport(
            "psd",
            REFUTED,
            witness=best_x,
            detail=f"form value {check:.6g} < 0 on the unit sphere",
            metrics=metrics,
        )
    label = "LIKELY_PD" if check > budget.tol else "LIKELY_PSD"
    return ClassReport(
        "psd",
        LIKELY,
        label=label,
        detail=f"sphere search minimum {check:.6g} (search only, not a proof)",
        metrics=metrics,
    )


def dnn_consistency(A: Tensor, eigenpairs, tol: float = 1e-8) -> ClassReport:
    """Consistency check against the doubly nonnegative class: symmetric,
    entrywise nonnegative, and no found eigenvalue below -tol.  CERTIFIED is
    unreachable because the full H-spectrum cannot be enumerated here."""
    if A.symmetry_deviation() > 1e-12 * max(1.0, float(np.max(np.abs(A.data)))):
        return ClassReport("dnn", REFUTED, detail="tensor is not symmetric")
    neg = np.argwhere(A.data < 0.0)
    if neg.size:
        tup = tuple(int(v) for v in neg[0])
        return ClassReport(
            "dnn",
            REFUTED,
            witness=tup,
            detail=f"negative entry {A.data[tup]:.6g} at {tup}",
        )
    lams = [p.value for p in eigenpairs]
    for p in eigenpairs:
        if p.value < -tol:
            return ClassReport(
                "dnn",
                REFUTED,
                witness=p.vector,
                detail=f"found H-eigenvalue {p.value:.6g} < 0",
                metrics={"eigenvalues_found": lams},
            )
    return ClassReport(
        "dnn",
        LIKELY,
        label="DNN_CONSISTENT",
        detail="entries nonnegative and every found H-eigenvalue is nonnegative "
        "(the full spectrum is not enumerated)",
        metrics={"eigenvalues_found": lams},
    )
