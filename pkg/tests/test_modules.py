import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from birkhoff.errors import ShapeMismatch, UnsupportedField, ZeroModule
from birkhoff.fields import RATIONAL, PrimeField
from birkhoff.linalg import Matrix, invert, rank
from birkhoff.modules import (
    AModule,
    are_isomorphic,
    build_canonical_module,
    direct_sum,
    dual,
    end_dim,
    ext1_dim,
    hom_basis,
    hom_dim,
    is_gorenstein_projective,
    is_indecomposable_module,
    is_morphism,
    isomorphism_test,
    random_invertible,
    sample_stratum,
    stratum_of,
    zero_module,
)
from birkhoff.pairs import PairType, PartitionPair, classify_pair, is_weakly_indecomposable
from birkhoff.partitions import Partition, enumerate_partitions, hom_dim_lambda, jordan_matrix

from strategies import pairs


def M(p, q, m, field=RATIONAL):
    return build_canonical_module(Partition.of(p, m), Partition.of(q, m), field)


def canonical_modules(m_max, d_max):
    for m in range(1, m_max + 1):
        for d0 in range(d_max + 1):
            for d1 in range(d_max + 1):
                for p in enumerate_partitions(d0, m):
                    for q in enumerate_partitions(d1, m):
                        yield p, q, build_canonical_module(p, q)


def sympy_hom_dim(A, B):
    """Oracle: nullspace of the assembled intertwining system via sympy."""
    n0, n1 = B.d0 * A.d0, B.d1 * A.d1
    n = n0 + n1
    if n == 0:
        return 0
    f0 = sympy.Matrix(B.d0, A.d0, sympy.symbols(f"a0:{n0}")) if n0 else sympy.zeros(B.d0, A.d0)
    f1 = sympy.Matrix(B.d1, A.d1, sympy.symbols(f"b0:{n1}")) if n1 else sympy.zeros(B.d1, A.d1)
    S = lambda X: sympy.Matrix(X.rows, X.cols, list(X.entries)) if X.rows and X.cols else sympy.zeros(X.rows, X.cols)
    eqs = list(f0 * S(A.M0) - S(B.M0) * f0) + list(f1 * S(A.M1) - S(B.M1) * f1) + list(f0 * S(A.h) - S(B.h) * f1)
    syms = list(f0) + list(f1)
    syms = [s for s in syms if isinstance(s, sympy.Symbol)]
    eqs = [e for e in eqs if e != 0]
    if not eqs:
        return len(syms)
    coeffs = sympy.Matrix([[sympy.diff(e, s) for s in syms] for e in eqs])
    return len(syms) - coeffs.rank()


# construction


def test_figure_module_dims():
    A = M((6, 3, 2), (4, 2, 1), 6)
    assert A.dims == (11, 7)
    assert A.M0 == jordan_matrix(Partition((6, 3, 2), 6))


def test_equal_single_parts_identity():
    for n in range(1, 5):
        A = M((n,), (n,), 4)
        assert A.h == Matrix.identity(n)


def test_two_one_column():
    assert M((2,), (1,), 2).h.tolist() == [[0], [1]]


def test_invalid_triples_rejected():
    J = jordan_matrix(Partition((2,), 2))
    with pytest.raises(ValueError):
        AModule(2, J, J, Matrix([[1, 0], [0, 0]]))  # does not commute
    with pytest.raises(ValueError):
        AModule(1, J, J, Matrix.identity(2))  # J^1 != 0
    with pytest.raises(ShapeMismatch):
        AModule(2, J, J, Matrix.identity(3))


def test_all_canonical_modules_valid_and_typed():
    for p, q, A in canonical_modules(4, 5):
        AModule(A.m, A.M0, A.M1, A.h)  # validates
        assert stratum_of(A) == PartitionPair(p, q)


def test_both_forms_isomorphic():
    for p, q, A in canonical_modules(3, 5):
        if classify_pair(p, q) is PairType.BOTH and p.parts:
            B = build_canonical_module(p, q, form="epi")
            assert B != A or len(p) == 1
            assert are_isomorphic(A, B)


# sums and duals


def test_direct_sum_dims_and_additivity():
    S = direct_sum(M((2,), (2,), 3), M((1,), (1,), 3))
    assert S.dims == (3, 3)
    T = M((3, 1), (2,), 3)
    A, B = M((2,), (1,), 3), M((1,), (3,), 3)
    assert hom_dim(T, direct_sum(A, B)) == hom_dim(T, A) + hom_dim(T, B)
    Z = zero_module(3, 0, 0)
    assert direct_sum(A, Z) == A


def test_dual_examples():
    A = M((2,), (1,), 2)
    assert dual(A).dims == (1, 2)
    assert are_isomorphic(dual(A), M((1,), (2,), 2))
    assert are_isomorphic(dual(dual(A)), A)
    assert are_isomorphic(dual(M((3,), (3,), 3)), M((3,), (3,), 3))


def test_dual_swaps_pairs():
    for m in range(1, 4):
        for d0 in range(5):
            for d1 in range(5):
                for p in enumerate_partitions(d0, m):
                    for q in enumerate_partitions(d1, m):
                        if not is_weakly_indecomposable(p, q):
                            continue
                        D = dual(build_canonical_module(p, q))
                        E = build_canonical_module(q, p)
                        kind, dkind = classify_pair(p, q), classify_pair(q, p)
                        assert kind.mono == dkind.epi and kind.epi == dkind.mono
                        assert are_isomorphic(D, E), (p, q)


# Hom and End


def test_hom_examples():
    assert hom_dim(M((1,), (1,), 2), M((1,), (1,), 2)) == 1
    assert hom_dim(M((2,), (1,), 2), M((2,), (1,), 2)) == 2
    S0 = zero_module(2, 1, 0)
    S1 = zero_module(2, 0, 1)
    assert end_dim(S0) == 1
    assert hom_dim(S0, S1) == 0 and hom_dim(S1, S0) == 0
    for n in range(1, 5):
        assert end_dim(M((n,), (n,), 4)) == n


def test_hom_basis_elements_are_morphisms():
    A, B = M((3, 1), (2,), 3), M((3,), (3, 1), 3)
    H = hom_basis(A, B)
    for f0, f1 in H.basis:
        assert is_morphism(A, B, f0, f1)


def test_staged_and_direct_agree():
    mods = [A for _, _, A in canonical_modules(3, 3)]
    rng = random.Random(0)
    for _ in range(120):
        A, B = rng.choice(mods), rng.choice(mods)
        if A.m != B.m:
            continue
        s, d = hom_basis(A, B), hom_basis(A, B, method="direct")
        assert len(s) == len(d)
        # the two bases span the same space
        vec = lambda f: list(f[0].entries) + list(f[1].entries)
        both = [vec(f) for f in s.basis + d.basis]
        if both:
            assert rank(Matrix(both, RATIONAL, len(both[0]))) == len(s)


def test_hom_matches_sympy_oracle():
    mods = [A for _, _, A in canonical_modules(2, 3)]
    rng = random.Random(1)
    for _ in range(25):
        A, B = rng.choice(mods), rng.choice(mods)
        if A.m == B.m:
            assert hom_dim(A, B) == sympy_hom_dim(A, B)


@settings(max_examples=25)
@given(pairs(max_m=3, max_size=4), pairs(max_m=3, max_size=4), st.integers(0, 2**32))
def test_hom_invariant_under_conjugation(a, b, seed):
    (p, q), (r, s) = a, b
    if p.m != r.m:
        return
    T = build_canonical_module(p, q)
    A = build_canonical_module(r, s)
    rng = random.Random(seed)
    C = A.conjugate(random_invertible(A.d0, RATIONAL, rng), random_invertible(A.d1, RATIONAL, rng))
    assert hom_dim(T, C) == hom_dim(T, A)
    assert hom_dim(C, T) == hom_dim(A, T)


def test_end_dim_identity_small():
    for p, q, A in canonical_modules(3, 4):
        expected = hom_dim_lambda(p, p) + hom_dim_lambda(q, q) - hom_dim_lambda(q, p)
        assert end_dim(A) == expected


# Ext


def test_ext_examples():
    A = M((1,), (1,), 2)
    assert ext1_dim(A, A) == 1
    assert ext1_dim(A, A, method="coboundary") == 1
    for m in range(1, 4):
        P = AModule(m, jordan_matrix(Partition((m,), m)), Matrix.zeros(0, 0), Matrix.zeros(m, 0))
        for _, _, N in canonical_modules(m, 3):
            if N.m == m:
                assert ext1_dim(P, N) == 0


def test_ext_methods_agree():
    mods = [A for _, _, A in canonical_modules(3, 3)]
    rng = random.Random(2)
    for _ in range(80):
        A, B = rng.choice(mods), rng.choice(mods)
        if A.m == B.m:
            assert ext1_dim(A, B) == ext1_dim(A, B, method="coboundary")


def test_ext_additive():
    A, B, C = M((2,), (1,), 3), M((1,), (2,), 3), M((3, 1), (2,), 3)
    assert ext1_dim(A, direct_sum(B, C)) == ext1_dim(A, B) + ext1_dim(A, C)
    assert ext1_dim(direct_sum(B, C), A) == ext1_dim(B, A) + ext1_dim(C, A)


# indecomposability and isomorphism


def test_indecomposable_examples():
    assert is_indecomposable_module(M((18, 10, 2), (13, 3), 19))
    A = M((1,), (1,), 2)
    assert not is_indecomposable_module(direct_sum(A, A))
    assert is_indecomposable_module(zero_module(2, 1, 0))
    with pytest.raises(ZeroModule):
        is_indecomposable_module(zero_module(2, 0, 0))
    with pytest.raises(UnsupportedField):
        is_indecomposable_module(M((1,), (1,), 2, PrimeField()))


def test_isomorphism_examples():
    A = M((3, 1), (2,), 3)
    assert are_isomorphic(A, A)
    r = isomorphism_test(M((2,), (1,), 2), M((1,), (2,), 2))
    assert not r.isomorphic and not r.probabilistic_negative
    joined = M((3, 2, 1), (2, 2), 3)
    assert are_isomorphic(joined, direct_sum(A, M((2,), (2,), 3)))
    # same dimension vector, different strata
    r = isomorphism_test(M((2,), (1, 1), 2), M((1, 1), (2,), 2))
    assert not r.isomorphic and not r.probabilistic_negative


def test_isomorphism_witness_is_invertible_morphism():
    A = M((3, 1), (2,), 3)
    rng = random.Random(3)
    C = A.conjugate(random_invertible(4, RATIONAL, rng), random_invertible(2, RATIONAL, rng))
    r = isomorphism_test(A, C)
    assert r.isomorphic
    f0, f1 = r.witness
    assert is_morphism(A, C, f0, f1)
    invert(f0), invert(f1)


def test_gorenstein_projective():
    for n in range(1, 4):
        assert is_gorenstein_projective(M((n,), (n,), 3))
    assert is_gorenstein_projective(zero_module(3, 2, 0))
    assert not is_gorenstein_projective(zero_module(3, 1, 1))


# sampling


def test_sample_stratum():
    F = PrimeField()
    p, q = Partition((3, 1), 3), Partition((2, 1), 3)
    S = sample_stratum(p, q, 7, F)
    assert stratum_of(S) == PartitionPair(p, q)
    assert sample_stratum(p, q, 7, F) == S
    assert sample_stratum(p, q, 8, F) != S
    E = sample_stratum(p, Partition((), 3), 1, F)
    assert E.h.shape == (4, 0)


def test_generic_samples_isomorphic_to_canonical():
    F = PrimeField()
    for m, d0, d1 in [(2, 3, 3), (3, 4, 2), (3, 5, 4)]:
        from birkhoff.partitions import maximal_partition
        p, q = maximal_partition(d0, m), maximal_partition(d1, m)
        canon = build_canonical_module(p, q, F)
        for seed in range(5):
            assert are_isomorphic(sample_stratum(p, q, seed, F), canon)


def test_sampling_refuses_small_fields():
    with pytest.raises(UnsupportedField):
        sample_stratum(Partition((1,), 2), Partition((1,), 2), 0, PrimeField(101))


def test_stratum_of_zero():
    assert stratum_of(zero_module(2, 3, 2)) == PartitionPair(Partition((1, 1, 1), 2), Partition((1, 1), 2))


# serialisation


def test_json_roundtrip():
    A = M((3, 1), (2,), 3)
    data = A.to_json()
    assert list(data)[0] == "field" and data["d0"] == 4
    assert AModule.from_json(data) == A
    F = PrimeField(1000003)
    B = build_canonical_module(Partition((2,), 2), Partition((1,), 2), F)
    assert AModule.from_json(B.to_json()) == B
    C = AModule(1, Matrix([[0]]), Matrix([[0]]), Matrix([[Fraction(-2, 3)]]))
    assert C.to_json()["h"] == [["-2/3"]]
    assert AModule.from_json(C.to_json()) == C
