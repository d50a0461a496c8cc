"""Acceptance checks.  Each test prints one ``criterion N: PASS|FAIL`` line.

Run on their own with ``pytest tests/test_acceptance.py -v -s``.
"""

import json
import random
import statistics
import time
from collections import Counter

import pytest

from birkhoff import suites
from birkhoff.cli import build_parser, main
from birkhoff.fields import RATIONAL, PrimeField
from birkhoff.geometry import classify_component_candidates
from birkhoff.linalg import Matrix, is_invertible, rank
from birkhoff.modules import AModule, build_canonical_module, hom_dim
from birkhoff.partitions import Partition, PolyHom, enumerate_partitions, poly_hom_matrix

from oracles import family_oracle

GOLDEN = "19,18,17,16,13,13,10,10,9,6,6,2,2,1|19,15,14,13,13,13,12,8,4,4,3,2"
GOLDEN_SUMMANDS = ["19|19", "13|13", "13|13", "2|2", "18,10,2|13,3", "17,9,6,1|14,8,4",
                   "16,6|15,4", "10|12"]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def median_time(fn, runs=7):
    times, out = [], None
    for _ in range(runs):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return statistics.median(times), out


def test_criterion_1_golden_decomposition(report):
    args = build_parser().parse_args(["decompose", GOLDEN, "--m", "19"])
    elapsed, (code, text) = median_time(lambda: args.func(args))
    got = Counter(text.splitlines())
    ok = code == 0 and got == Counter(GOLDEN_SUMMANDS) and elapsed < 0.010
    report(1, ok, f"{len(got)} summand kinds, multiset match={got == Counter(GOLDEN_SUMMANDS)}, "
                  f"{elapsed * 1e3:.2f} ms (< 10 ms)")


def test_criterion_2_figure_module(report):
    p, q = Partition((6, 3, 2), 6), Partition((4, 2, 1), 6)
    elapsed, M = median_time(lambda: build_canonical_module(p, q))
    AModule(M.m, M.M0, M.M1, M.h)  # re-validate all invariants
    # mono block structure
    ro, co = [0, 6, 9, 11], [0, 4, 6, 7]
    blocks_ok = True
    for i in range(3):
        for j in range(3):
            blk = M.h.submatrix(ro[i], ro[i + 1], co[j], co[j + 1])
            if i == j:
                want = poly_hom_matrix(PolyHom.monomial(p.parts[i] - q.parts[j], q.parts[j], p.parts[i]))
            elif i == j + 1:
                want = poly_hom_matrix(PolyHom(q.parts[j], p.parts[i], (1,)))
            else:
                want = Matrix.zeros(blk.rows, blk.cols)
            blocks_ok &= blk == want
    ok = M.dims == (11, 7) and blocks_ok and elapsed < 0.010
    report(2, ok, f"dims={M.dims}, mono blocks={blocks_ok}, {elapsed * 1e3:.2f} ms (< 10 ms)")


def test_criterion_3_dense_orbit_identity(report):
    res = suites.dimension_identity(4, 6)
    ok = res.passed and res.elapsed < 60
    report(3, ok, f"{res.checked} pairs, {len(res.failures)} failures, {res.elapsed:.1f} s (< 60 s)")


def test_criterion_4_lemma_iso_and_ind(report):
    iso = suites.lemma_iso(4, 6)
    ind = suites.lemma_ind(4, 6)
    ok = iso.passed and ind.passed
    report(4, ok, f"iso: {iso.checked} cases, {len(iso.failures)} failures; "
                  f"ind: {ind.checked} cases, {len(ind.failures)} failures")


def test_criterion_5_def_ind_exactness(report):
    res = suites.def_ind_exactness(4, 6)
    ok = res.passed and res.checked > 0
    report(5, ok, f"{res.checked} verified sequences, {len(res.failures)} exactness failures")


def test_criterion_6_component_families(report):
    res = suites.component_families(4, 6)
    mismatches = []
    for m in range(1, 5):
        for d0 in range(7):
            for d1 in range(7):
                got = {pr.key() for pr in classify_component_candidates(m, d0, d1).candidates}
                if got != family_oracle(m, d0, d1):
                    mismatches.append((m, d0, d1))
    ok = res.passed and not mismatches
    report(6, ok, f"{res.checked} indecomposable pairs, {len(mismatches)} family mismatches, "
                  f"{len(res.failures)} missing escape moves")


def test_criterion_7_corollary_ext(report):
    res = suites.component_sums(4, 6)
    ok = res.passed and res.checked > 0
    report(7, ok, f"{res.checked} ordered pairs, {len(res.failures)} disagreements")


CERT_CASES = [(m, d0, d1) for m in range(1, 4) for d0 in range(6) for d1 in range(6)] + [(4, 4, 4)]


def test_criterion_8_certificates(report, tmp_path):
    failures, slowest = [], (0.0, None)
    for m, d0, d1 in CERT_CASES:
        out = tmp_path / f"cert_{m}_{d0}_{d1}.json"
        t = time.perf_counter()
        code = main(["verify", "--m", str(m), "--d0", str(d0), "--d1", str(d1),
                     "--field", "prime", "--samples", "8", "--output", "json",
                     "--out-file", str(out)])
        el = time.perf_counter() - t
        slowest = max(slowest, (el, (m, d0, d1)))
        data = json.loads(out.read_text())
        samples_ok = all(s["samples_isomorphic"] for s in data["strata"])
        if code != 0 or not data["verdict"] or not samples_ok or el >= 300:
            failures.append((m, d0, d1))
        assert data["config"]["samples"] == 8 and data["config"]["field"] == "prime"
    ok = not failures
    report(8, ok, f"{len(CERT_CASES)} certificates, failures={failures}, "
                  f"slowest {slowest[1]} at {slowest[0]:.2f} s (< 300 s)")


def test_criterion_9_cross_field(report):
    rng = random.Random(20261016)
    F = PrimeField()
    mods = {m: [build_canonical_module(p, q) for d0 in range(4) for d1 in range(4)
                for p in enumerate_partitions(d0, m) for q in enumerate_partitions(d1, m)]
            for m in (1, 2, 3)}
    rank_bad = hom_bad = 0
    for _ in range(1000):
        r, c = rng.randint(1, 8), rng.randint(1, 8)
        rows = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        # low-rank instances too
        if rng.random() < 0.5 and r > 1:
            rows[-1] = [x + y for x, y in zip(rows[0], rows[1 % r])]
        rank_bad += rank(Matrix(rows, RATIONAL, c)) != rank(Matrix(rows, F, c))

        m = rng.choice((1, 2, 3))
        A, B = rng.choice(mods[m]), rng.choice(mods[m])
        g0 = _random_int_invertible(B.d0, rng)
        g1 = _random_int_invertible(B.d1, rng)
        C = B.conjugate(g0, g1) if B.d0 + B.d1 else B
        Ap = AModule(m, A.M0.convert(F), A.M1.convert(F), A.h.convert(F))
        Cp = AModule(m, C.M0.convert(F), C.M1.convert(F), C.h.convert(F))
        hom_bad += hom_dim(A, C) != hom_dim(Ap, Cp)
    ok = rank_bad == 0 and hom_bad == 0
    report(9, ok, f"1000 instances: {rank_bad} rank and {hom_bad} hom disagreements")


def _random_int_invertible(d, rng):
    while True:
        g = Matrix([[rng.randint(-4, 4) for _ in range(d)] for _ in range(d)], RATIONAL, d)
        if is_invertible(g):
            return g
