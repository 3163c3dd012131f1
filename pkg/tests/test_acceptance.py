"""Exit criteria.  Each test carries a ``criterion`` marker and the terminal
summary prints one PASS/FAIL line per criterion."""

import subprocess
import sys
import time

import pytest

from conftest import ROOT, Z3_FILE, words_up_to, z3_model
from geodesy.automata import (
    DfaDeltaOracle,
    abelian_geodesic_dfa,
    delta_from_dfa,
    free_geodesic_dfa,
    validate_dfa_against_ball,
)
from geodesy.checks import all_words, reduce_check, sample_words
from geodesy.growth import growth_csv, growth_series
from geodesy.models import bs_model, equal, free_abelian_model, free_group_model
from geodesy.oracles import bfs_delta, bfs_length, build_ball, is_geodesic
from geodesy.reductions import BudgetExhausted, EnumeratorConfig, geodesic_from_delta

criterion = pytest.mark.criterion


@pytest.fixture(scope="module")
def equivalence_run():
    start = time.perf_counter()
    reports = {}
    for name, model in [
        ("Z^2", free_abelian_model(2)),
        ("F_2", free_group_model(2)),
        ("Z/3", z3_model()),
        ("BS(1,2)", bs_model(2)),
    ]:
        ball = build_ball(model, 8)
        letters = model.alphabet
        words = list(all_words(letters, 5)) + sample_words(letters, 1000, (6, 7), seed=0)
        assert len(words) == sum(len(letters) ** n for n in range(6)) + 1000
        reports[name] = reduce_check(model, ball, words)
    return reports, time.perf_counter() - start


@criterion("oracle equivalence: reductions equal BFS on Z^2, F_2, Z/3, BS(1,2); |w|<=5 + 1000 random 6-7; < 60 s")
def test_oracle_equivalence(equivalence_run):
    reports, elapsed = equivalence_run
    for name, report in reports.items():
        for row in report.rows:
            assert row.wrong == 0, f"{name}: {row.name}: {row.examples}"
            assert row.cases > 0
    assert elapsed < 60


@criterion("call-count budgets: P5->P4 <= n, P4->P3 <= 1 + k*m, P5->P1 <= 2; zero violations")
def test_call_budgets(equivalence_run):
    reports, _ = equivalence_run
    for name, report in reports.items():
        for row in report.rows:
            assert row.over_budget == 0, f"{name}: {row.name}: {row.examples}"
        by_name = {row.name: row for row in report.rows}
        assert by_name["P1 from P5 (delta)"].max_calls <= 2
        assert by_name["P4 from P5 (length)"].max_calls <= 7


@criterion("regular acceptor: delta_from_dfa == bfs_delta on geodesics <= 5 (Z^2, F_2), DFA vs ball 0 mismatches k=1..3; < 30 s")
def test_regular_acceptor_delta():
    start = time.perf_counter()
    for model, dfa in [
        (free_abelian_model(2), abelian_geodesic_dfa(2)),
        (free_group_model(2), free_geodesic_dfa(2)),
    ]:
        ball = build_ball(model, 6)
        grows = shrinks = 0
        for u in words_up_to(model.alphabet, 5):
            if not is_geodesic(ball, u):
                continue
            for x in model.alphabet:
                expected = bfs_delta(ball, u, x) == 1
                assert delta_from_dfa(dfa, u, x) == expected
                grows += expected
                shrinks += not expected
        assert grows and shrinks  # both directions of the iff exercised
    for k in (1, 2, 3):
        for dfa, model in [
            (free_geodesic_dfa(k), free_group_model(k)),
            (abelian_geodesic_dfa(k), free_abelian_model(k)),
        ]:
            report = validate_dfa_against_ball(dfa, build_ball(model, 5), 5)
            assert report.mismatches == []
    assert time.perf_counter() - start < 30


@criterion("geodesics from delta: geodesic_from_delta (K=2, L=2, 1e5) length-correct and element-equal on Z^2, Z/3 words <= 4; no BudgetExhausted; < 120 s")
def test_geodesics_from_delta():
    start = time.perf_counter()
    cfg = EnumeratorConfig(max_factors=2, max_conjugator_length=2, max_products=10**5)
    exhausted = []
    for model in (free_abelian_model(2), z3_model()):
        ball = build_ball(model, 6)

        def p2(u, x, ball=ball):
            return bfs_delta(ball, u, x) == 1

        for w in words_up_to(model.alphabet, 4):
            try:
                g = geodesic_from_delta(p2, model.presentation, w, cfg)
            except BudgetExhausted:
                exhausted.append(w)
                continue
            assert len(g) == bfs_length(ball, w)
            assert equal(model, g, w)
    assert exhausted == []
    assert time.perf_counter() - start < 120


@criterion("parity: bfs_delta never 0 on Z^2, F_2 over all (geodesic <= 5, letter) pairs")
def test_parity_invariant():
    for model in (free_abelian_model(2), free_group_model(2)):
        ball = build_ball(model, 6)
        pairs = [
            (u, x)
            for u in words_up_to(model.alphabet, 5)
            if is_geodesic(ball, u)
            for x in model.alphabet
        ]
        assert pairs
        zeros = sum(bfs_delta(ball, u, x) == 0 for u, x in pairs)
        assert zeros == 0


@criterion("growth: Z^2 N=3 (1,4,12,28)/(1,4,8,12); F_2 N=5 = 4*3^(d-1); BFS and DFA tables byte-identical; < 10 s")
def test_growth_numbers():
    start = time.perf_counter()
    z2 = free_abelian_model(2)
    ball = build_ball(z2, 3)
    # independent count: every word of length <= 3, first occurrence per element
    shortest, geo, sph = {}, [0] * 4, [set() for _ in range(4)]
    for w in words_up_to(z2.alphabet, 3):
        key = z2.eval(w)
        if shortest.setdefault(key, len(w)) == len(w):
            geo[len(w)] += 1
            sph[len(w)].add(key)
    assert tuple(geo) == (1, 4, 12, 28)
    assert tuple(len(s) for s in sph) == (1, 4, 8, 12)
    t = growth_series(z2, lambda u, x: bfs_delta(ball, u, x) == 1, 3)
    assert t.geodesics == (1, 4, 12, 28) and t.spheres == (1, 4, 8, 12)

    f2 = free_group_model(2)
    ball = build_ball(f2, 5)
    t = growth_series(f2, lambda u, x: bfs_delta(ball, u, x) == 1, 5)
    closed = (1,) + tuple(4 * 3 ** (d - 1) for d in range(1, 6))
    assert t.geodesics == closed and t.spheres == closed

    for model, dfa in [(z2, abelian_geodesic_dfa(2)), (f2, free_geodesic_dfa(2))]:
        ball = build_ball(model, 5)
        via_bfs = growth_series(model, lambda u, x: bfs_delta(ball, u, x) == 1, 5)
        via_dfa = growth_series(model, DfaDeltaOracle(dfa), 5)
        assert growth_csv(via_bfs).encode() == growth_csv(via_dfa).encode()
    assert time.perf_counter() - start < 10


@criterion("determinism: two runs of `geodesy reduce-check` are byte-identical")
def test_reduce_check_determinism():
    argv = [
        sys.executable, "-m", "geodesy", "reduce-check",
        "--model", "abelian:2", "--model", "free:2",
        "--model", f"rewrite:{Z3_FILE.relative_to(ROOT)}", "--model", "bs:2",
    ]
    first = subprocess.run(argv, cwd=ROOT, capture_output=True)
    second = subprocess.run(argv, cwd=ROOT, capture_output=True)
    assert first.returncode == 0, first.stderr.decode()
    assert first.stdout == second.stdout
    assert first.stdout.count(b"overall PASS") == 4
