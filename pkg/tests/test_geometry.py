import json

import pytest

from birkhoff.errors import DimensionMismatch, HypothesisViolated
from birkhoff.geometry import (
    DEF_IND,
    DEF_IND_DUAL,
    VerifyConfig,
    build_def_ind_dual,
    build_def_ind_sequence,
    check_def_strata,
    check_def_strata_dual,
    check_dense_orbit_identity,
    classify_component_candidates,
    component_shape_test,
    component_sum_report,
    component_sum_test,
    degeneration_moves,
    hom_order_check,
    indecomposable_pairs_upto,
    orbit_dim,
    stratum_dim,
    summand_moves,
    verify_irreducibility,
)
from birkhoff.modules import build_canonical_module, zero_module
from birkhoff.pairs import PartitionPair, is_indecomposable_pair, is_weakly_indecomposable
from birkhoff.partitions import Partition, enumerate_partitions

from oracles import family_oracle


def P(*parts, m):
    return Partition(tuple(parts), m)


def PP(p, q, m):
    return PartitionPair.of(p, q, m)


# dimensions


def test_dimension_examples():
    assert orbit_dim(zero_module(2, 0, 0)) == 0
    assert orbit_dim(build_canonical_module(P(1, m=2), P(1, m=2))) == 1
    assert stratum_dim(P(1, m=2), P(1, m=2)) == 1
    assert stratum_dim(P(m=2), P(m=2)) == 0
    assert stratum_dim(P(2, m=2), P(1, m=2)) == 3


def test_dense_identity_examples():
    for n in range(1, 4):
        r = check_dense_orbit_identity(P(n, m=3), P(n, m=3))
        assert r.dense_in_stratum and r.stratum_dim == r.orbit_dim == 2 * n * n - n
    for p in enumerate_partitions(4, 3):
        assert check_dense_orbit_identity(p, P(m=3)).dense_in_stratum


def test_stratum_at_least_orbit():
    for m in range(1, 4):
        for d0 in range(4):
            for d1 in range(4):
                for p in enumerate_partitions(d0, m):
                    for q in enumerate_partitions(d1, m):
                        assert stratum_dim(p, q) >= orbit_dim(build_canonical_module(p, q))


# def-ind


def test_def_ind_example():
    e = build_def_ind_sequence(P(3, 1, m=3), P(1, 1, m=3), 1, 2)
    assert e.target == PP((3, 1), (2,), 3) and e.mechanism == DEF_IND
    w = e.witness
    assert w.middle.dims == (4 + w.N.d0, 2 + w.N.d1)


def test_def_ind_rejects_non_weak_target():
    # q' = (3,1) is not weakly indecomposable with p = (2,2)
    with pytest.raises(HypothesisViolated):
        build_def_ind_sequence(P(2, 2, m=3), P(2, 2, m=3), 1, 2)


def test_def_ind_strictness():
    with pytest.raises(HypothesisViolated):
        build_def_ind_sequence(P(3, 2, 2, m=3), P(2, 2, 1, m=3), 2, 3)  # q_2 == q_1
    with pytest.raises(HypothesisViolated):
        build_def_ind_sequence(P(3, 1, m=3), P(1, 1, m=3), 2, 2)
    with pytest.raises(HypothesisViolated):
        build_def_ind_sequence(P(3, 3, m=3), P(1, 1, 1, 1, m=3), 1, 4)  # not weakly indecomposable


def test_def_ind_dual():
    e = build_def_ind_dual(P(1, 1, m=3), P(3, 1, m=3), 1, 2)
    assert e.source == PP((1, 1), (3, 1), 3) and e.target == PP((2,), (3, 1), 3)
    assert e.mechanism == DEF_IND_DUAL


def _weak_pairs(m_max, d_max):
    for m in range(1, m_max + 1):
        for d0 in range(d_max + 1):
            for d1 in range(d_max + 1):
                for p in enumerate_partitions(d0, m):
                    for q in enumerate_partitions(d1, m):
                        if is_weakly_indecomposable(p, q):
                            yield p, q


def test_def_ind_edges_raise_dimension_and_respect_hom_order():
    tests_by_m = {}
    for p, q in _weak_pairs(3, 5):
        for e in degeneration_moves(p, q, (DEF_IND, DEF_IND_DUAL)):
            assert stratum_dim(e.target.p, e.target.q) > stratum_dim(p, q)
            m = p.m
            if m not in tests_by_m:
                tests_by_m[m] = [build_canonical_module(t.p, t.q) for t in indecomposable_pairs_upto(m, 6)]
            src = build_canonical_module(p, q)
            tgt = build_canonical_module(e.target.p, e.target.q)
            # the generic module has the smaller Hom from every test module
            assert hom_order_check(tgt, src, tests_by_m[m])


# def-strata


def test_def_strata_example():
    e = check_def_strata(P(3, 3, m=3), P(2, 2, m=3), 1, 2)
    assert e.target == PP((3, 3), (3, 1), 3) and e.witness is None


def test_def_strata_rejects_middle_parts():
    with pytest.raises(HypothesisViolated):
        check_def_strata(P(2, 2, m=3), P(2, 2, m=3), 1, 2)
    with pytest.raises(HypothesisViolated):
        check_def_strata(P(3, m=3), P(2, 1, m=3), 1, 1)


def test_def_strata_dual_symmetric():
    e = check_def_strata(P(3, 3, m=3), P(2, 2, m=3), 1, 2)
    d = check_def_strata_dual(P(2, 2, m=3), P(3, 3, m=3), 1, 2)
    assert d.target == PartitionPair(e.target.q, e.target.p)


def test_summand_moves_target_union():
    p, q = P(3, 2, 1, m=3), P(3, 1, m=3)
    for e in summand_moves(p, q):
        assert e.summand is not None
        assert e.target.dims == (p.size, q.size)


# components


def test_component_examples():
    c = classify_component_candidates(3, 4, 2)
    assert PP((3, 1), (2,), 3) in c.candidates
    c = classify_component_candidates(4, 4, 2)
    pair = PP((3, 1), (2,), 4)
    assert pair not in c.candidates and pair in c.escapes
    assert PP((4,), (2,), 4) in classify_component_candidates(4, 4, 2).candidates


def test_component_families_match_oracle():
    for m in range(1, 5):
        for d0 in range(7):
            for d1 in range(7):
                c = classify_component_candidates(m, d0, d1)
                assert {pr.key() for pr in c.candidates} == family_oracle(m, d0, d1)
                assert not c.no_escape
                for pr, e in c.escapes.items():
                    assert stratum_dim(e.target.p, e.target.q) > stratum_dim(pr.p, pr.q)
                indec = sum(1 for p in enumerate_partitions(d0, m) for q in enumerate_partitions(d1, m)
                            if is_indecomposable_pair(p, q))
                assert indec == len(c.candidates) + len(c.escapes)


def test_component_sum_examples():
    m = 3
    full = PP((3,), (3,), m)
    for other in [PP((2,), (1,), m), PP((1,), (2,), m), PP((3, 1), (2,), m)]:
        assert component_sum_test(full, other) and component_sum_test(other, full)
    assert component_sum_test(PP((3,), (), m), PP((2,), (1,), m))
    assert component_sum_test(PP((), (3,), m), PP((1,), (2,), m))
    r = component_sum_report(PP((2,), (1,), m), PP((1,), (2,), m))
    assert not r.shape and not r.ext_vanishes and r.agree
    assert not component_shape_test(PP((3,), (), m), PP((1,), (2,), m))


# hom order


def test_hom_order_examples():
    A = build_canonical_module(P(2, m=2), P(2, m=2))
    B = build_canonical_module(P(1, 1, m=2), P(1, 1, m=2))
    tests = [build_canonical_module(t.p, t.q) for t in indecomposable_pairs_upto(2, 4)]
    assert hom_order_check(A, A, tests)
    assert hom_order_check(A, B, tests)
    assert not hom_order_check(B, A, tests)
    with pytest.raises(DimensionMismatch):
        hom_order_check(A, build_canonical_module(P(2, m=2), P(1, m=2)), tests)


# certificates


def test_certificate_examples():
    c = verify_irreducibility(1, 3, 2)
    assert c.verdict and len(c.reports) == 1
    c = verify_irreducibility(2, 2, 2)
    assert c.verdict and c.maximal == PP((2,), (2,), 2)
    c = verify_irreducibility(3, 4, 3)
    assert c.verdict and len(c.reports) == 4 * 3 and c.unique_max


def test_certificate_json_deterministic():
    cfg = VerifyConfig(samples=3, seed=5)
    a = json.dumps(verify_irreducibility(3, 3, 2, cfg).to_json())
    b = json.dumps(verify_irreducibility(3, 3, 2, cfg).to_json())
    assert a == b
    data = json.loads(a)
    assert data["schema"] == 1 and data["verdict"] is True
    top = max(s["stratum_dim"] for s in data["strata"])
    assert [s["pair"] for s in data["strata"] if s["stratum_dim"] == top] == [data["maximal_pair"]]


def test_certificate_dot():
    dot = verify_irreducibility(3, 3, 3, VerifyConfig(samples=1)).to_dot()
    assert dot.startswith("digraph degenerations {")
    assert '"(3|3) dim=' in dot
    assert "DefInd" in dot or "DefStrata" in dot


def test_certificate_over_rationals():
    c = verify_irreducibility(2, 2, 1, VerifyConfig(field="rational", samples=2))
    assert c.verdict
