"""Complementarity solver: residuals, merit, solves, exploration."""

import numpy as np
import pytest

from ptensor import (
    NoSolutionFound,
    SearchBudget,
    SolutionSet,
    TcpInstance,
    TcpSolution,
    Tensor,
    all_ones_tensor,
    fb_merit,
    identity_tensor,
    natural_residual,
    solve_tcp,
    tcp_F,
    explore_solutions,
)
from ptensor.generators import random_sdd_tensor
from ptensor.tcp import jacobian_F, parse_tcp_instance
from ptensor.core import symmetrize
from oracles import tcp_grid_argmin

FAST = SearchBudget(seed=0, starts=8, iters=200)


def identity_instance():
    return TcpInstance(identity_tensor(3, 2), np.array([-1.0, -1.0]))


# ---------------------------------------------------------------------------
# F and merit


def test_tcp_F_examples(ref_tensor):
    inst = identity_instance()
    assert np.array_equal(tcp_F(inst, np.array([1.0, 1.0])), [0.0, 0.0])
    inst2 = TcpInstance(ref_tensor, np.zeros(3))
    out = tcp_F(inst2, np.array([0.0, 1.0, -1.0]))
    assert np.allclose(out, [2.0, -0.5, -1.0], atol=1e-12)
    # x = 0 returns q, so q >= 0 is immediately solved by zero
    q = np.array([0.3, 0.0, 2.0])
    inst3 = TcpInstance(ref_tensor, q)
    assert np.array_equal(tcp_F(inst3, np.zeros(3)), q)


def test_fb_merit_zero_at_solutions():
    inst = identity_instance()
    assert fb_merit(inst, np.array([1.0, 1.0])) == 0.0
    inst2 = TcpInstance(identity_tensor(3, 2), np.array([1.0, 1.0]))
    assert fb_merit(inst2, np.zeros(2)) == 0.0


def test_fb_merit_frozen_value():
    # scalar oracle: x_i = 2, F_i = 3 per coordinate, psi = sqrt(13) - 5,
    # merit = 0.5 * 2 * psi^2 = (sqrt(13) - 5)^2
    inst = identity_instance()
    expected = (np.sqrt(13.0) - 5.0) ** 2
    assert fb_merit(inst, np.array([2.0, 2.0])) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(1.9444876, abs=1e-6)


def test_merit_and_natural_residual_agree_on_zeros(rng):
    instances = [
        TcpInstance(random_sdd_tensor(3, 3, seed=2), np.array([-0.5, 0.2, -1.0])),
        TcpInstance(identity_tensor(3, 2), np.array([-1.0, -1.0])),
        TcpInstance(random_sdd_tensor(4, 2, seed=8), np.array([0.3, -0.7])),
    ]
    for inst in instances:
        for _ in range(1000):
            x = rng.uniform(-1.0, 2.0, size=inst.A.dim)
            merit = fb_merit(inst, x)
            nat = natural_residual(inst, x)
            assert (merit <= 1e-18) == (nat <= 1e-9)


# ---------------------------------------------------------------------------
# solving


def test_solve_identity_instance():
    sol = solve_tcp(identity_instance(), FAST)
    assert isinstance(sol, TcpSolution)
    assert np.max(np.abs(sol.x - 1.0)) <= 1e-7
    assert sol.natural_residual <= 1e-10


def test_solve_nonnegative_q_is_zero(ref_tensor):
    sol = solve_tcp(TcpInstance(ref_tensor, np.array([0.5, 0.0, 1.0])), FAST)
    assert sol.method == "trivial_nonnegative_q"
    assert np.array_equal(sol.x, np.zeros(3))
    assert sol.natural_residual == 0.0


def test_solve_certified_p_tensor_with_grid_oracle():
    A = 5.0 * identity_tensor(3, 2) - all_ones_tensor(3, 2)
    inst = TcpInstance(A, np.array([-1.0, -1.0]))
    sol = solve_tcp(inst, FAST)
    assert isinstance(sol, TcpSolution)
    assert sol.natural_residual <= 1e-8
    xg, res = tcp_grid_argmin(A.data, inst.q)
    assert np.max(np.abs(sol.x - xg)) <= 2e-3
    # componentwise analysis gives exactly (1, 1)
    assert np.max(np.abs(sol.x - 1.0)) <= 1e-7


def test_solution_satisfies_all_three_conditions():
    A = random_sdd_tensor(4, 3, seed=9)
    inst = TcpInstance(A, np.array([-0.3, 0.4, -0.9]))
    sol = solve_tcp(inst, FAST)
    assert isinstance(sol, TcpSolution)
    f = tcp_F(inst, sol.x)
    tol = FAST.tol
    assert np.min(sol.x) >= -tol
    assert np.min(f) >= -tol
    assert abs(float(np.dot(sol.x, f))) <= tol * (1 + np.linalg.norm(sol.x) * np.linalg.norm(f))
    assert natural_residual(inst, sol.x) <= tol


def test_no_solution_found_is_a_result():
    inst = TcpInstance(-1.0 * identity_tensor(3, 2), np.array([-1.0, -1.0]))
    out = solve_tcp(inst, SearchBudget(seed=0, starts=4, iters=80))
    assert isinstance(out, NoSolutionFound)
    assert out.best_merit > 0.0
    assert out.starts_tried == 5
    obj = out.to_json_dict()
    assert obj["status"] == "no_solution_found"


def test_jacobian_analytic_vs_fd(rng):
    for seed in range(20):
        m = 3 if seed % 2 == 0 else 4
        A = symmetrize(Tensor(rng.uniform(-1, 1, size=(3,) * m)))
        inst = TcpInstance(A, rng.uniform(-1, 1, size=3))
        x = rng.uniform(0.2, 1.0, size=3)
        Ja = jacobian_F(inst, x, analytic=True)
        Jf = jacobian_F(inst, x, analytic=False)
        scale = max(1.0, float(np.max(np.abs(Ja))))
        assert np.max(np.abs(Ja - Jf)) <= 1e-5 * scale


def test_homogeneity_of_shifted_map(rng):
    A = Tensor(rng.uniform(-1, 1, size=(3, 3, 3)))
    inst = TcpInstance(A, rng.uniform(-1, 1, size=3))
    f0 = tcp_F(inst, np.zeros(3))
    x = rng.uniform(-1, 1, size=3)
    g1 = tcp_F(inst, x) - f0
    for t in (0.5, 2.0, 3.7):
        gt = tcp_F(inst, t * x) - f0
        assert np.max(np.abs(gt - t ** (A.order - 1) * g1)) <= 1e-10 * max(
            1.0, float(np.max(np.abs(gt)))
        )


# ---------------------------------------------------------------------------
# exploration


def test_explore_identity_unique_solution():
    ss = explore_solutions(identity_instance(), SearchBudget(seed=0, starts=20, iters=200))
    assert isinstance(ss, SolutionSet)
    assert len(ss.solutions) == 1
    assert np.max(np.abs(ss.solutions[0].x - 1.0)) <= 1e-7
    lo, hi = ss.bounding_box[0]
    assert abs(lo - 1.0) <= 1e-7 and abs(hi - 1.0) <= 1e-7


def test_explore_contains_zero_for_nonnegative_q(ref_tensor):
    ss = explore_solutions(TcpInstance(ref_tensor, np.array([1.0, 0.5, 0.2])), FAST)
    assert any(np.array_equal(s.x, np.zeros(3)) for s in ss.solutions)


def test_explore_matrix_lcp():
    inst = TcpInstance(identity_tensor(2, 2), np.array([-1.0, -2.0]))
    ss = explore_solutions(inst, FAST)
    assert len(ss.solutions) == 1
    assert np.max(np.abs(ss.solutions[0].x - np.array([1.0, 2.0]))) <= 1e-8


def test_explore_solutions_pairwise_distinct():
    A = random_sdd_tensor(3, 2, seed=4)
    ss = explore_solutions(TcpInstance(A, np.array([-1.0, -0.2])), FAST)
    for i, a in enumerate(ss.solutions):
        for b in ss.solutions[i + 1:]:
            assert np.max(np.abs(a.x - b.x)) > 1e-6


def test_explore_diagnostic_only_for_certified_failures():
    A = random_sdd_tensor(3, 2, seed=4)
    ss = explore_solutions(TcpInstance(A, np.array([-1.0, -0.2])), FAST)
    assert ss.diagnostic is None
    # force an unsolvable search to exercise the diagnostic path
    bad = TcpInstance(-1.0 * identity_tensor(3, 2), np.array([-1.0, -1.0]))
    ss2 = explore_solutions(bad, SearchBudget(seed=0, starts=3, iters=50), certified_p=True)
    assert ss2.diagnostic is not None
    assert len(ss2.solutions) == 0


# ---------------------------------------------------------------------------
# instance files


def test_parse_tcp_instance_inline(ref_tensor, tmp_path):
    from ptensor.tensorio import tensor_to_json_dict, write_tensor

    obj = {"tensor": tensor_to_json_dict(ref_tensor), "q": [0.0, -1.0, 2.0]}
    inst = parse_tcp_instance(obj)
    assert inst.A.dim == 3 and np.array_equal(inst.q, [0.0, -1.0, 2.0])

    tpath = tmp_path / "t.json"
    write_tensor(ref_tensor, tpath)
    inst2 = parse_tcp_instance({"tensor": "t.json", "q": [0.0, 0.0, 0.0]}, base_dir=tmp_path)
    assert np.array_equal(inst2.A.data, ref_tensor.data)

    from ptensor import ParseError

    with pytest.raises(ParseError):
        parse_tcp_instance({"tensor": tensor_to_json_dict(ref_tensor), "q": [1.0]})
    with pytest.raises(ParseError):
        parse_tcp_instance({"q": [1.0]})
