import shlex
import sys
from pathlib import Path

import pytest

from gccm import (brute_force, eccentricities, gen_counterexample, gen_named, reduce_graph,
                  solve_iteratively)
from gccm.ilp import (BackendError, BergaminiModel, bergamini_solve, CommandBackend, InfeasibleAssignment,
                      IterationState, ModelError, build_full_model, build_reduced_model,
                      builtin_backend_solve, check_sufficiency, estimate_d, export_bergamini_lp,
                      export_lp, import_solution, initial_d, make_backend, model_from_lp,
                      reconstruct_full_assignment, write_solution)
from gccm.reductions import no_reduction

from oracles import floyd_warshall, min_farness_oracle, random_corpus

DATA = Path(__file__).parent / "data"
HELPER = Path(__file__).parent / "helpers" / "milp_solver.py"


def helper_backend(extra=""):
    exe = shlex.quote(sys.executable)
    return CommandBackend(f"{exe} {shlex.quote(str(HELPER))} {{lp}} {{sol}} {extra}".strip())


def ecc_caps(g):
    ecc, _ = eccentricities(g)
    return {v: int(ecc[v]) for v in range(g.n)}, ecc


def p3_reduced():
    g = gen_named("path", 3)
    ecc, _ = eccentricities(g)
    return build_reduced_model(g, 1, initial_d(g, ecc), reduce_graph(g, 1), ecc)


def star_reduced():
    g = gen_named("star", 5)
    ecc, _ = eccentricities(g)
    return build_reduced_model(g, 1, initial_d(g, ecc), reduce_graph(g, 1), ecc)


# model construction

def test_star_reduced_model():
    m = star_reduced()
    assert m.vertices == [0] and m.centers == [0] and m.alpha == {0: 5}
    assert [(v, i) for v, i, _ in m.variables()] == [(0, 0), (0, 1)]
    assert builtin_backend_solve(m).objective == 5


def test_p3_reduced_model():
    m = p3_reduced()
    assert m.alpha == {1: 2}
    res = builtin_backend_solve(m)
    assert res.objective == 2 and res.centers() == [1]


def test_coefficient():
    m = p3_reduced()
    m.alpha[1] = 1
    assert m.coefficient(1, 3) == 7 and m.coefficient(1, 0) == 1


def test_k_equals_n_full_model(p5):
    d, ecc = ecc_caps(p5)
    m = build_full_model(p5, 5, d, ecc=ecc)
    assert builtin_backend_solve(m).objective == 0


def test_model_errors(p5):
    d, ecc = ecc_caps(p5)
    with pytest.raises(ModelError):
        build_full_model(p5, 0, d, ecc=ecc)
    with pytest.raises(ModelError):
        build_full_model(p5, 4, d, dominated=[0, 1], ecc=ecc)
    with pytest.raises(ModelError):
        build_full_model(p5, 2, {**d, 3: -1}, ecc=ecc)


@pytest.mark.parametrize("g,k", random_corpus(25, (6, 16), seed=41))
def test_variable_count(g, k):
    r = reduce_graph(g, k)
    ecc, _ = eccentricities(g)
    d = initial_d(g, ecc)
    m = build_reduced_model(g, k, d, r, ecc)
    kept = r.kept(g.n)
    dom_kept = set(r.dominated) - set(r.absorbed)
    assert m.num_variables == sum(d[v] + 1 for v in kept) - len(dom_kept)
    assert m.num_variables == len(list(m.variables()))


@pytest.mark.parametrize("g,k", random_corpus(25, (6, 14), seed=42))
def test_models_at_eccentricity_are_exact(g, k):
    d, ecc = ecc_caps(g)
    opt = min_farness_oracle(floyd_warshall(g), k)
    r = reduce_graph(g, k)
    assert builtin_backend_solve(build_full_model(g, k, d, r.dominated, ecc)).objective == opt
    assert builtin_backend_solve(build_reduced_model(g, k, d, r, ecc)).objective == opt
    # truncated caps only ever lower the optimum
    low = builtin_backend_solve(build_full_model(g, k, initial_d(g, ecc), r.dominated, ecc))
    assert low.objective <= opt


@pytest.mark.parametrize("g,k", random_corpus(20, (6, 14), seed=43))
def test_assignment_for_is_feasible(g, k):
    ecc, _ = eccentricities(g)
    r = reduce_graph(g, k)
    m = build_reduced_model(g, k, initial_d(g, ecc), r, ecc)
    S = m.centers[:k]
    a = m.assignment_for(S)
    m.check(a)
    # same assignment from the distance index alone
    bare = model_from_lp(export_lp(m))
    assert bare.assignment_for(S) == a


# cap estimates and sufficiency

def test_estimate_d_examples(p5):
    ecc, _ = eccentricities(p5)
    assert estimate_d(p5, [2], ecc) == {0: 3, 1: 2, 2: 2, 3: 2, 4: 3}
    assert initial_d(p5, ecc) == {v: 2 for v in range(5)}
    k2 = gen_named("complete", 2)
    assert initial_d(k2, eccentricities(k2)[0]) == {0: 1, 1: 1}


def test_check_sufficiency_examples():
    ecc = {0: 3, 1: 2}
    d = {0: 2, 1: 2}
    assert check_sufficiency({(0, 2): 1, (1, 2): 1}, d, ecc) == [0]
    assert check_sufficiency({(0, 1): 1, (1, 2): 1}, d, ecc) == []


def test_iteration_state_bump():
    st = IterationState({0: 2, 1: 3}, {0: 3, 1: 3})
    assert st.slack() == 1
    st.bump([0, 1])
    assert st.d_tilde == {0: 3, 1: 3} and st.slack() == 0


# reconstruction of absorbed vertices

def test_reconstruct_star():
    g = gen_named("star", 5)
    r = reduce_graph(g, 1)
    m = star_reduced()
    res = builtin_backend_solve(m)
    full, full_d = reconstruct_full_assignment(res.assignment, r, m.level_cap)
    assert full_d == {0: 1, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2}
    assert all(full[(v, 1)] == 1 and full[(v, 2)] == 0 for v in range(1, 6))
    fm = build_full_model(g, 1, full_d, r.dominated)
    fm.check(full)
    assert fm.objective(full) == 5


def test_reconstruct_identity_without_absorption(p5):
    ecc, _ = eccentricities(p5)
    r = no_reduction(p5, 2)
    m = build_reduced_model(p5, 2, initial_d(p5, ecc), r, ecc)
    res = builtin_backend_solve(m)
    full, full_d = reconstruct_full_assignment(res.assignment, r, m.level_cap)
    assert full == res.assignment and full_d == m.level_cap


@pytest.mark.parametrize("g,k", random_corpus(30, (6, 20), seed=44))
def test_reconstruct_feasible_and_equal(g, k):
    rep = solve_iteratively(g, k, "grover")
    if rep.last_result is None:
        return
    full, full_d = reconstruct_full_assignment(rep.last_result.assignment, rep.reduction, rep.state.d_tilde)
    fm = build_full_model(g, k, full_d, rep.reduction.dominated)
    fm.check(full)
    assert fm.objective(full) == rep.last_result.objective == rep.farness


# LP text

def test_golden_lp_bytes():
    assert export_lp(p3_reduced()) == (DATA / "p3_reduced.lp").read_text()


def test_lp_wraps_long_rows():
    g = gen_named("complete", 12)
    m = build_full_model(g, 2, {v: 1 for v in range(12)})
    text = export_lp(m)
    assert max(line.count("x_") for line in text.splitlines()) == 8
    assert model_from_lp(text).num_variables == m.num_variables


@pytest.mark.parametrize("g,k", random_corpus(50, (5, 18), seed=45))
def test_lp_round_trip(g, k):
    ecc, _ = eccentricities(g)
    r = reduce_graph(g, k)
    approx = brute_force(g, k)[0] if g.n <= 10 else r.centers(g.n)[:k]
    m = build_reduced_model(g, k, estimate_d(g, approx, ecc), r, ecc)
    text = export_lp(m)
    back = model_from_lp(text)
    assert export_lp(back) == text
    assert builtin_backend_solve(back).objective == builtin_backend_solve(m).objective


def test_import_solution_examples():
    m = star_reduced()
    assert import_solution("x_0_0 1.0\n", m).objective == 5
    assert import_solution("x_0_0 0.9999999\nx_0_1 1e-9\n", m).objective == 5
    with pytest.raises(InfeasibleAssignment, match="non-binary"):
        import_solution("x_0_0 0.5\n", m)
    with pytest.raises(InfeasibleAssignment) as exc:
        import_solution("x_0_1 1\n", m)
    assert exc.value.row == "k_sum"


def test_write_solution_round_trip():
    m = p3_reduced()
    res = builtin_backend_solve(m)
    assert import_solution(write_solution(res.assignment), m).objective == res.objective


# iterative loop

@pytest.mark.parametrize("g,k", random_corpus(30, (6, 18), seed=46))
def test_modes_agree_with_brute(g, k):
    opt = min_farness_oracle(floyd_warshall(g), k)
    for mode in ("grover", "ilpind"):
        rep = solve_iteratively(g, k, mode)
        assert rep.status == "optimal" and rep.farness == opt
        assert len(rep.per_iteration_variable_counts) == rep.iterations


def test_path7_iterations(p5):
    g = gen_named("path", 7)
    gr, il = solve_iteratively(g, 2, "grover"), solve_iteratively(g, 2, "ilpind")
    assert gr.farness == il.farness == 6
    assert gr.iterations <= il.iterations


def test_k1_shortcut(p5):
    rep = solve_iteratively(p5, 1)
    assert rep.iterations == 0 and rep.solution == [2] and rep.farness == 6


def test_loop_terminates_within_slack():
    for g, k in random_corpus(10, (10, 25), seed=47):
        ecc, _ = eccentricities(g)
        rep = solve_iteratively(g, k, "ilpind")
        kept = rep.reduction.kept(g.n)
        start = sum(int(ecc[v]) - initial_d(g, ecc)[v] for v in kept)
        assert rep.iterations <= start + 1
        assert rep.state.history[-1][2] == 0


def test_unknown_mode(p5):
    with pytest.raises(ValueError):
        solve_iteratively(p5, 2, "magic")


def test_loop_timeout_status():
    g = gen_named("grid", 14, 14)
    rep = solve_iteratively(g, 7, "ilpind", time_limit=0.05)
    assert rep.status == "timeout" and rep.farness is None


# assignment-model cross-check

@pytest.mark.parametrize("g,k", random_corpus(10, (5, 12), seed=48))
def test_bergamini_model(g, k):
    bm = BergaminiModel.build(g, k)
    S, opt = brute_force(g, k)
    y, x = bm.assignment_for(S)
    bm.check(y, x)
    assert bm.objective(y, x) == opt
    with pytest.raises(InfeasibleAssignment):
        bm.check({v: 0 for v in range(g.n)}, x)
    res = bergamini_solve(bm)
    assert res.objective == opt and len(res.centers()) == k
    d, ecc = ecc_caps(g)
    assert builtin_backend_solve(build_full_model(g, k, d, ecc=ecc)).objective == opt


# external command backend

def test_command_backend_matches_builtin():
    backend = helper_backend()
    for g, k in random_corpus(6, (6, 12), seed=49):
        ecc, _ = eccentricities(g)
        m = build_reduced_model(g, k, initial_d(g, ecc), reduce_graph(g, k), ecc)
        assert backend(m).objective == builtin_backend_solve(m).objective
    g, _ = gen_counterexample(2, 2)
    assert solve_iteratively(g, 2, "grover", backend=backend).farness == 9


def test_bergamini_lp_via_command_solver():
    from helpers.milp_solver import solve
    for g, k in random_corpus(4, (5, 9), seed=50):
        values = solve(export_bergamini_lp(BergaminiModel.build(g, k)))
        D = floyd_warshall(g)
        obj = sum(D[int(u), int(v)] * round(val) for name, val in values.items()
                  if name.startswith("x_") for u, v in [name[2:].split("_")])
        assert obj == min_farness_oracle(D, k)


def test_command_backend_errors():
    m = p3_reduced()
    with pytest.raises(BackendError, match="exited with 3"):
        helper_backend("--exit 3")(m)
    assert helper_backend("--sleep 5")(m, time_limit=0.3).status == "timeout"
    with pytest.raises(ValueError):
        CommandBackend("solver {lp}")
    with pytest.raises(ValueError):
        make_backend("cplex")
    assert make_backend("builtin") is builtin_backend_solve
