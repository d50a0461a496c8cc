"""Strata of the module variety: dimensions, degenerations between strata,
the shapes of indecomposable components, and irreducibility certificates.

A degeneration edge ``source -> target`` asserts that the stratum of
``source`` lies in the closure of the stratum of ``target``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import (
    DimensionMismatch,
    ExactnessFailure,
    HypothesisViolated,
    NoEscapeMove,
)
from .fields import DEFAULT_PRIME, RATIONAL, make_field
from .linalg import Matrix, block_diag, block_matrix, hstack, rank, vstack
from .modules import (
    AModule,
    build_canonical_module,
    direct_sum,
    end_dim,
    ext1_dim,
    hom_dim,
    is_gorenstein_projective,
    is_morphism,
    isomorphism_test,
    sample_stratum,
    weak_h_matrix,
)
from .pairs import (
    PairType,
    PartitionPair,
    canonical_decomposition,
    classify_pair,
    is_indecomposable_pair,
    pair_union,
)
from .partitions import (
    Partition,
    PolyHom,
    enumerate_partitions,
    hom_dim_lambda,
    jordan_block,
    jordan_matrix,
    maximal_partition,
    poly_hom_matrix,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# dimensions


def orbit_dim(M: AModule) -> int:
    return M.d0 ** 2 + M.d1 ** 2 - end_dim(M)


def stratum_dim(p: Partition, q: Partition) -> int:
    """Nilpotent orbit dimensions at both vertices plus the fibre ``Hom(U_q, U_p)``."""
    d0, d1 = p.size, q.size
    return (d0 * d0 - hom_dim_lambda(p, p)) + (d1 * d1 - hom_dim_lambda(q, q)) + hom_dim_lambda(q, p)


@dataclass(frozen=True)
class StratumReport:
    pair: PartitionPair
    stratum_dim: int
    orbit_dim: int
    dense_in_stratum: bool
    gorenstein_projective: bool

    def to_json(self):
        return {
            "pair": str(self.pair),
            "stratum_dim": self.stratum_dim,
            "orbit_dim": self.orbit_dim,
            "dense_in_stratum": self.dense_in_stratum,
            "gorenstein_projective": self.gorenstein_projective,
        }


def check_dense_orbit_identity(p: Partition, q: Partition, field=RATIONAL) -> StratumReport:
    M = build_canonical_module(p, q, field)
    s, o = stratum_dim(p, q), orbit_dim(M)
    return StratumReport(PartitionPair(p, q), s, o, s == o, is_gorenstein_projective(M))


# ---------------------------------------------------------------------------
# degenerations


DEF_IND = "DefInd"
DEF_IND_DUAL = "DefIndDual"
DEF_STRATA = "DefStrata"
DEF_STRATA_DUAL = "DefStrataDual"


@dataclass(frozen=True)
class ExactSequence:
    """``0 -> M -[f1; f2]-> M' + N -[g1 g2]-> N -> 0``, with the maps stored per vertex."""

    M: AModule
    middle: AModule
    N: AModule
    F: tuple
    G: tuple


@dataclass(frozen=True)
class DegenerationEdge:
    source: PartitionPair
    target: PartitionPair
    mechanism: str
    j1: int
    j2: int
    witness: Optional[ExactSequence] = dc_field(default=None, compare=False, repr=False)
    # set when the move was applied to one summand of the canonical decomposition
    summand: Optional[PartitionPair] = None

    def to_json(self):
        out = {
            "from": str(self.source),
            "to": str(self.target),
            "mechanism": self.mechanism,
            "j1": self.j1,
            "j2": self.j2,
            "witnessed": self.witness is not None,
        }
        if self.summand is not None:
            out["summand"] = str(self.summand)
        return out


def _shift_parts(q: Partition, j1: int, j2: int) -> Partition:
    parts = list(q.parts)
    parts[j1 - 1] += 1
    parts[j2 - 1] -= 1
    return Partition.of(parts, q.m)


def _check_corners(q: Partition, j1: int, j2: int, strict: bool):
    """Common hypotheses on the indices of ``q`` for both lemmas."""
    if j1 < 1 or j2 > len(q) or (j1 >= j2 if strict else j1 > j2):
        raise HypothesisViolated(f"indices ({j1}, {j2}) out of range for {q}")
    if j1 == j2:
        # +1 and -1 on the same part is no move at all
        raise HypothesisViolated("j1 == j2 leaves the partition unchanged")
    if not q.part(j1) < q.part(j1 - 1):
        raise HypothesisViolated(f"need q_{j1} < q_{j1 - 1} for {q}")
    if not q.part(j2) > q.part(j2 + 1):
        raise HypothesisViolated(f"need q_{j2} > q_{j2 + 1} for {q}")


def _verify_exact(M, mid, N, F, G):
    f0, f1 = F
    g0, g1 = G
    if not is_morphism(M, mid, f0, f1):
        raise ExactnessFailure("[f1; f2] is not a module map")
    if not is_morphism(mid, N, g0, g1):
        raise ExactnessFailure("[g1 g2] is not a module map")
    for v, (f, g, dim_src, dim_mid, dim_tgt) in enumerate(
            [(f0, g0, M.d0, mid.d0, N.d0), (f1, g1, M.d1, mid.d1, N.d1)]):
        if not (g @ f).is_zero():
            raise ExactnessFailure(f"composite is nonzero at vertex {v}")
        rf, rg = rank(f), rank(g)
        if rf != dim_src:
            raise ExactnessFailure(f"first map not injective at vertex {v}")
        if rg != dim_tgt:
            raise ExactnessFailure(f"second map not surjective at vertex {v}")
        if rf + rg != dim_mid:
            raise ExactnessFailure(f"image differs from kernel at vertex {v}")


def build_def_ind_sequence(p: Partition, q: Partition, j1: int, j2: int,
                           field=RATIONAL) -> DegenerationEdge:
    """Degenerate ``(p, q)`` to ``(p, q')`` by moving a box of ``q`` from row
    ``j2`` up to row ``j1``, witnessed by an explicit verified short exact
    sequence ``0 -> M_{p,q} -> M_{p,q'} + N -> N -> 0``."""
    kind = classify_pair(p, q)
    if kind is PairType.NEITHER:
        raise HypothesisViolated(f"({p}|{q}) is not weakly indecomposable")
    _check_corners(q, j1, j2, strict=True)
    q2 = _shift_parts(q, j1, j2)
    kind2 = classify_pair(p, q2)
    if kind2 is PairType.NEITHER:
        raise HypothesisViolated(f"({p}|{q2}) is not weakly indecomposable")
    form = "mono" if kind2.mono else "epi"
    if (form == "mono" and not kind.mono) or (form == "epi" and not kind.epi):
        raise HypothesisViolated("the two pairs are of different types")

    m = p.m
    if form == "mono":
        i1, i2 = j1 + 1, j2
    else:
        i1, i2 = j1, j2 - 1
    offs = [0]
    for x in p.parts:
        offs.append(offs[-1] + x)
    u0, u1 = offs[i1 - 1], offs[i2]
    u = u1 - u0
    d0 = p.size

    h = weak_h_matrix(p, q, form, field)
    h2 = weak_h_matrix(p, q2, form, field)
    M = AModule(m, jordan_matrix(p, field), jordan_matrix(q, field), h, check=False)
    M2 = AModule(m, jordan_matrix(p, field), jordan_matrix(q2, field), h2, check=False)
    JU = jordan_matrix(Partition(p.parts[i1 - 1:i2], m), field)
    N = AModule(m, JU, JU, Matrix.identity(u, field), check=False)

    # f1 at vertex 0: identity off the window, X on U
    f1_0 = block_diag(Matrix.identity(u0, field), JU, Matrix.identity(d0 - u1, field), field=field)
    # f1 at vertex 1, block diagonal over the parts of q
    row_sizes = [q.part(j) + (1 if j == j1 else -1 if j == j2 else 0) for j in range(1, len(q) + 1)]
    col_sizes = list(q.parts)
    blocks = {}
    for j in range(1, len(q) + 1):
        a, b = q.part(j), row_sizes[j - 1]
        if j < j1 or j > j2:
            blocks[(j - 1, j - 1)] = Matrix.identity(a, field)
        elif j == j1:
            blocks[(j - 1, j - 1)] = poly_hom_matrix(PolyHom(a, b, (0, 1)), field)
        elif j == j2:
            blocks[(j - 1, j - 1)] = poly_hom_matrix(PolyHom(a, b, (1,)), field)
        else:
            blocks[(j - 1, j - 1)] = jordan_block(a, field)
    f1_1 = block_matrix(row_sizes, col_sizes, blocks, field)

    PU = Matrix(tuple(tuple(1 if c == u0 + r else 0 for c in range(d0)) for r in range(u)),
                field, d0, _trusted=True)
    f2_0, f2_1 = PU, PU @ h
    g1_0, g1_1 = PU, PU @ h2
    g2 = -JU

    mid = direct_sum(M2, N)
    F = (vstack(f1_0, f2_0), vstack(f1_1, f2_1))
    G = (hstack(g1_0, g2), hstack(g1_1, g2))
    _verify_exact(M, mid, N, F, G)
    return DegenerationEdge(PartitionPair(p, q), PartitionPair(p, q2), DEF_IND, j1, j2,
                            ExactSequence(M, mid, N, F, G))


def build_def_ind_dual(p: Partition, q: Partition, j1: int, j2: int,
                       field=RATIONAL) -> DegenerationEdge:
    """The dual move, changing ``p`` instead of ``q``; the witness is the
    sequence for the swapped pair, which transposes to one for ``(p, q)``."""
    e = build_def_ind_sequence(q, p, j1, j2, field)
    return DegenerationEdge(PartitionPair(p, q), PartitionPair(e.target.q, q), DEF_IND_DUAL,
                            j1, j2, e.witness)


def check_def_strata(p: Partition, q: Partition, j1: int, j2: int) -> DegenerationEdge:
    """Degenerate ``(p, q)`` to ``(p, q')`` when no part of ``p`` sits between
    ``q_{j2}`` and ``q_{j1}``; then ``Hom(U_q', U_p)`` keeps its dimension."""
    _check_corners(q, j1, j2, strict=False)
    lo, hi = q.part(j2), q.part(j1)
    for i, x in enumerate(p.parts, start=1):
        if not (x > hi or x < lo):
            raise HypothesisViolated(f"p_{i} = {x} lies between q_{j2} = {lo} and q_{j1} = {hi}")
    q2 = _shift_parts(q, j1, j2)
    if hom_dim_lambda(q2, p) != hom_dim_lambda(q, p):
        raise AssertionError("hom dimension changed under a def-strata move")
    return DegenerationEdge(PartitionPair(p, q), PartitionPair(p, q2), DEF_STRATA, j1, j2)


def check_def_strata_dual(p: Partition, q: Partition, j1: int, j2: int) -> DegenerationEdge:
    e = check_def_strata(q, p, j1, j2)
    return DegenerationEdge(PartitionPair(p, q), PartitionPair(e.target.q, q), DEF_STRATA_DUAL,
                            j1, j2)


_MOVES = (
    (DEF_IND, build_def_ind_sequence),
    (DEF_IND_DUAL, build_def_ind_dual),
    (DEF_STRATA, check_def_strata),
    (DEF_STRATA_DUAL, check_def_strata_dual),
)


def degeneration_moves(p: Partition, q: Partition, mechanisms=None, field=RATIONAL):
    """All single moves out of ``(p, q)`` whose hypotheses hold."""
    out = []
    for name, fn in _MOVES:
        if mechanisms is not None and name not in mechanisms:
            continue
        changed = q if name in (DEF_IND, DEF_STRATA) else p
        if name in (DEF_IND, DEF_IND_DUAL) and classify_pair(p, q) is PairType.NEITHER:
            continue
        n = len(changed)
        for j1 in range(1, n + 1):
            for j2 in range(j1 + 1, n + 1):
                try:
                    if name in (DEF_IND, DEF_IND_DUAL):
                        out.append(fn(p, q, j1, j2, field))
                    else:
                        out.append(fn(p, q, j1, j2))
                except HypothesisViolated:
                    pass
    return out


def summand_moves(p: Partition, q: Partition, field=RATIONAL):
    """Moves applied to a single summand of the canonical decomposition.

    ``M_{p,q}`` is the direct sum of the canonical modules of its summands,
    so a degeneration of one summand, with the others added back, is a
    degeneration of the whole.
    """
    summands = canonical_decomposition(p, q).summands
    if len(summands) < 2:
        return []
    out, seen = [], set()
    for k, s in enumerate(summands):
        if s in seen:
            continue
        seen.add(s)
        rest = summands[:k] + summands[k + 1:]
        for e in degeneration_moves(s.p, s.q, field=field):
            target = e.target
            for r in rest:
                target = pair_union(target, r)
            out.append(DegenerationEdge(PartitionPair(p, q), target, e.mechanism, e.j1, e.j2,
                                        e.witness, s))
    return out


# ---------------------------------------------------------------------------
# indecomposable components


def component_family(pair: PartitionPair) -> Optional[int]:
    """Which of the three component shapes ``pair`` has, if any."""
    p, q, m = pair.p.parts, pair.q.parts, pair.m
    if len(p) <= 1 and len(q) <= 1 and (p or q):
        return 1
    if len(p) == 2 and len(q) == 1 and p[0] == m and m > q[0] > p[1] > 0:
        return 2
    if len(p) == 1 and len(q) == 2 and q[0] == m and m > p[0] > q[1] > 0:
        return 3
    return None


@dataclass
class ComponentClassification:
    m: int
    d0: int
    d1: int
    candidates: list
    escapes: dict
    no_escape: list


def classify_component_candidates(m: int, d0: int, d1: int, strict: bool = False,
                                  field=RATIONAL) -> ComponentClassification:
    """Indecomposable pairs of the three component shapes, plus for every
    other indecomposable pair a def-ind move (or its dual) into a strictly
    larger stratum."""
    cands, escapes, stuck = [], {}, []
    for p in enumerate_partitions(d0, m):
        for q in enumerate_partitions(d1, m):
            if not is_indecomposable_pair(p, q):
                continue
            pair = PartitionPair(p, q)
            if component_family(pair) is not None:
                cands.append(pair)
                continue
            base = stratum_dim(p, q)
            found = None
            for e in degeneration_moves(p, q, (DEF_IND, DEF_IND_DUAL), field):
                if stratum_dim(e.target.p, e.target.q) > base:
                    found = e
                    break
            if found is None:
                if strict:
                    raise NoEscapeMove(f"no escape move from ({pair})")
                stuck.append(pair)
            else:
                escapes[pair] = found
    return ComponentClassification(m, d0, d1, cands, escapes, stuck)


def component_shape_test(a: PartitionPair, b: PartitionPair) -> bool:
    """The six shape conditions under which two indecomposable components
    can sum to a component."""
    m = a.m
    full = ((m,), (m,))
    proj0 = ((m,), ())
    proj1 = ((), (m,))
    ka, kb = a.key(), b.key()
    return (ka == full or kb == full
            or (ka == proj0 and classify_pair(b.p, b.q).mono)
            or (ka == proj1 and classify_pair(b.p, b.q).epi)
            or (kb == proj0 and classify_pair(a.p, a.q).mono)
            or (kb == proj1 and classify_pair(a.p, a.q).epi))


@dataclass(frozen=True)
class SumTestResult:
    shape: bool
    ext_ab: int
    ext_ba: int

    @property
    def ext_vanishes(self):
        return self.ext_ab == 0 and self.ext_ba == 0

    @property
    def agree(self):
        return self.shape == self.ext_vanishes


def component_sum_report(a: PartitionPair, b: PartitionPair, field=RATIONAL) -> SumTestResult:
    Ma, Mb = build_canonical_module(a.p, a.q, field), build_canonical_module(b.p, b.q, field)
    return SumTestResult(component_shape_test(a, b), ext1_dim(Ma, Mb), ext1_dim(Mb, Ma))


def component_sum_test(a: PartitionPair, b: PartitionPair, cross_check: bool = True) -> bool:
    if not cross_check:
        return component_shape_test(a, b)
    r = component_sum_report(a, b)
    if not r.agree:
        log.error("shape test and Ext vanishing disagree on (%s, %s): ext = %d, %d",
                  a, b, r.ext_ab, r.ext_ba)
    return r.shape


def hom_order_check(candidate: AModule, target: AModule, tests) -> bool:
    """``dim Hom(T, candidate) <= dim Hom(T, target)`` for every test module ``T``."""
    if candidate.dims != target.dims:
        raise DimensionMismatch(f"{candidate.dims} vs {target.dims}")
    return all(hom_dim(T, candidate) <= hom_dim(T, target) for T in tests)


def indecomposable_pairs_upto(m: int, total: int):
    """Indecomposable pairs with ``|p| + |q| <= total``, in a fixed order."""
    out = []
    for d0 in range(total + 1):
        for d1 in range(total - d0 + 1):
            for p in enumerate_partitions(d0, m):
                for q in enumerate_partitions(d1, m):
                    if is_indecomposable_pair(p, q):
                        out.append(PartitionPair(p, q))
    return out


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class VerifyConfig:
    field: str = "prime"
    prime: int = DEFAULT_PRIME
    samples: int = 8
    seed: int = 0
    iso_retries: int = 32


@dataclass
class IrreducibilityCertificate:
    m: int
    d0: int
    d1: int
    maximal: PartitionPair
    reports: list
    edges: list
    hom_order: dict
    sampling: dict
    reached: dict
    unique_max: bool
    verdict: bool
    config: VerifyConfig = dc_field(default_factory=VerifyConfig)

    def to_json(self) -> dict:
        strata = []
        for r in self.reports:
            key = str(r.pair)
            entry = r.to_json()
            entry["hom_order"] = self.hom_order[key]
            entry["samples_isomorphic"] = self.sampling[key]["isomorphic"]
            entry["samples_probabilistic_negative"] = self.sampling[key]["probabilistic_negative"]
            entry["reached"] = self.reached[key]
            strata.append(entry)
        return {
            "schema": 1,
            "m": self.m,
            "d0": self.d0,
            "d1": self.d1,
            "config": {
                "field": self.config.field,
                "prime": self.config.prime,
                "samples": self.config.samples,
                "seed": self.config.seed,
                "iso_retries": self.config.iso_retries,
            },
            "maximal_pair": str(self.maximal),
            "maximal_dim": stratum_dim(self.maximal.p, self.maximal.q),
            "unique_max": self.unique_max,
            "strata": strata,
            "edges": [e.to_json() for e in self.edges],
            "unreached": [k for k, v in self.reached.items() if not v],
            "verdict": self.verdict,
        }

    def to_dot(self) -> str:
        lines = ["digraph degenerations {", "  rankdir=BT;"]
        names = {}
        for i, r in enumerate(self.reports):
            names[str(r.pair)] = f"s{i}"
            lines.append(f'  s{i} [label="({r.pair}) dim={r.stratum_dim}"];')
        for e in self.edges:
            lines.append(f'  {names[str(e.source)]} -> {names[str(e.target)]} '
                         f'[label="{e.mechanism}({e.j1},{e.j2})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def verify_irreducibility(m: int, d0: int, d1: int,
                          config: VerifyConfig = VerifyConfig()) -> IrreducibilityCertificate:
    """Collect evidence that the variety of modules with dimension vector
    ``(d0, d1)`` is irreducible: the stratum of the maximal pair is the
    unique one of top dimension, its canonical module has a dense orbit,
    every other canonical module satisfies the hom-order condition against
    it, explicit moves reach it where they can, and random points of every
    stratum are isomorphic to the canonical module."""
    p0, q0 = maximal_partition(d0, m), maximal_partition(d1, m)
    top = PartitionPair(p0, q0)
    pairs = [PartitionPair(p, q) for p in enumerate_partitions(d0, m)
             for q in enumerate_partitions(d1, m)]
    reports = [check_dense_orbit_identity(pr.p, pr.q) for pr in pairs]
    dims = {pr: r.stratum_dim for pr, r in zip(pairs, reports)}
    top_dim = dims[top]
    unique_max = all(d < top_dim for pr, d in dims.items() if pr != top)

    tests = [build_canonical_module(t.p, t.q) for t in indecomposable_pairs_upto(m, d0 + d1)]
    M_top = build_canonical_module(p0, q0)
    top_homs = [hom_dim(T, M_top) for T in tests]
    hom_order = {}
    for pr in pairs:
        M = build_canonical_module(pr.p, pr.q)
        hom_order[str(pr)] = all(a <= hom_dim(T, M) for a, T in zip(top_homs, tests))

    # degeneration moves, searched depth-first with memoisation
    edges = []
    out_edges = {}
    for pr in pairs:
        moves = degeneration_moves(pr.p, pr.q) + summand_moves(pr.p, pr.q)
        moves = [e for e in moves if dims[e.target] > dims[pr]]
        out_edges[pr] = moves
        edges.extend(moves)
    memo = {top: True}

    def reach(pr):
        if pr not in memo:
            memo[pr] = False
            memo[pr] = any(reach(e.target) for e in out_edges[pr])
        return memo[pr]

    reached = {str(pr): reach(pr) for pr in pairs}

    fld = make_field(config.field, config.prime)
    sampling = {}
    for idx, pr in enumerate(pairs):
        canon = build_canonical_module(pr.p, pr.q, fld)
        ok, prob = True, False
        for s in range(config.samples):
            seed = config.seed * 1_000_003 + idx * 1009 + s
            S = sample_stratum(pr.p, pr.q, seed, fld)
            res = isomorphism_test(S, canon, config.iso_retries, seed)
            ok &= res.isomorphic
            prob |= res.probabilistic_negative
        sampling[str(pr)] = {"isomorphic": ok, "probabilistic_negative": prob}

    verdict = (unique_max
               and all(r.dense_in_stratum for r in reports)
               and all(hom_order.values())
               and all(v["isomorphic"] for v in sampling.values()))
    return IrreducibilityCertificate(m, d0, d1, top, reports, edges, hom_order, sampling,
                                     reached, unique_max, verdict, config)
