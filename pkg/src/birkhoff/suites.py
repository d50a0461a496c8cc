"""Exhaustive invariant checks over a grid of bounds and dimensions.

Each suite walks every pair with ``m <= m_max`` and ``d0, d1 <= d_max`` and
returns a ``SuiteResult`` listing the cases checked and any failures.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .errors import ExactnessFailure, HypothesisViolated
from .geometry import (
    build_def_ind_sequence,
    check_dense_orbit_identity,
    classify_component_candidates,
    component_sum_report,
)
from .modules import build_canonical_module, direct_sum, isomorphism_test, is_indecomposable_module
from .pairs import PartitionPair, is_indecomposable_pair, is_weakly_indecomposable, pair_union
from .partitions import Partition, enumerate_partitions


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {
            "name": self.name,
            "checked": self.checked,
            "failures": list(self.failures),
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
        }


def grid(m_max, d_max):
    """Yield ``(m, p, q)`` over the whole range in a fixed order."""
    for m in range(1, m_max + 1):
        for d0 in range(d_max + 1):
            for d1 in range(d_max + 1):
                for p in enumerate_partitions(d0, m):
                    for q in enumerate_partitions(d1, m):
                        yield m, p, q


def _timed(name):
    def wrap(fn):
        def run(m_max, d_max, **kw):
            res = SuiteResult(name)
            t = time.perf_counter()
            fn(res, m_max, d_max, **kw)
            res.elapsed = time.perf_counter() - t
            return res
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        run.suite_name = name
        return run
    return wrap


@_timed("dimension-identity")
def dimension_identity(res, m_max, d_max):
    """orbit_dim(M_{p,q}) == stratum_dim(p, q) everywhere."""
    for m, p, q in grid(m_max, d_max):
        r = check_dense_orbit_identity(p, q)
        res.checked += 1
        if not r.dense_in_stratum:
            res.failures.append(f"m={m} {p}|{q}: orbit {r.orbit_dim} != stratum {r.stratum_dim}")


@_timed("lemma-iso")
def lemma_iso(res, m_max, d_max, retries=32):
    """Adding ``((n), (n))`` to a weakly indecomposable pair adds ``M_{(n),(n)}``."""
    for m, p, q in grid(m_max, d_max):
        if not is_weakly_indecomposable(p, q):
            continue
        base = build_canonical_module(p, q)
        for n in range(1, m + 1):
            extra = PartitionPair(Partition((n,), m), Partition((n,), m))
            joined = pair_union(PartitionPair(p, q), extra)
            lhs = build_canonical_module(joined.p, joined.q)
            rhs = direct_sum(base, build_canonical_module(extra.p, extra.q))
            r = isomorphism_test(lhs, rhs, retries)
            res.checked += 1
            if not r.isomorphic or r.probabilistic_negative:
                res.failures.append(f"m={m} {p}|{q} + ({n}): {r.reason}")


@_timed("lemma-ind")
def lemma_ind(res, m_max, d_max):
    """For weakly indecomposable pairs, module and pair indecomposability agree."""
    for m, p, q in grid(m_max, d_max):
        if not (p.parts or q.parts) or not is_weakly_indecomposable(p, q):
            continue
        a = is_indecomposable_module(build_canonical_module(p, q))
        b = is_indecomposable_pair(p, q)
        res.checked += 1
        if a != b:
            res.failures.append(f"m={m} {p}|{q}: module {a}, pair {b}")


@_timed("def-ind-exactness")
def def_ind_exactness(res, m_max, d_max):
    """Every admissible def-ind move has a verified exact sequence."""
    for m, p, q in grid(m_max, d_max):
        if not is_weakly_indecomposable(p, q):
            continue
        for j1 in range(1, len(q) + 1):
            for j2 in range(j1 + 1, len(q) + 1):
                try:
                    build_def_ind_sequence(p, q, j1, j2)
                except HypothesisViolated:
                    continue
                except ExactnessFailure as exc:
                    res.failures.append(f"m={m} {p}|{q} ({j1},{j2}): {exc}")
                res.checked += 1


@_timed("component-families")
def component_families(res, m_max, d_max):
    """Every indecomposable pair outside the three shapes has an escape move."""
    for m in range(1, m_max + 1):
        for d0 in range(d_max + 1):
            for d1 in range(d_max + 1):
                c = classify_component_candidates(m, d0, d1)
                res.checked += len(c.candidates) + len(c.escapes) + len(c.no_escape)
                for pair in c.no_escape:
                    res.failures.append(f"m={m} {pair}: no escape move")


def component_pairs(m, d_max):
    out = []
    for d0 in range(d_max + 1):
        for d1 in range(d_max + 1):
            out.extend(classify_component_candidates(m, d0, d1).candidates)
    return out


@_timed("component-sums")
def component_sums(res, m_max, d_max):
    """The six shape conditions agree with two-sided Ext vanishing."""
    for m in range(1, m_max + 1):
        comps = component_pairs(m, d_max)
        for a in comps:
            for b in comps:
                r = component_sum_report(a, b)
                res.checked += 1
                if not r.agree:
                    res.failures.append(f"m={m} ({a}) + ({b}): shape {r.shape}, "
                                        f"ext {r.ext_ab}, {r.ext_ba}")


SUITES = (dimension_identity, lemma_iso, lemma_ind, def_ind_exactness,
          component_families, component_sums)


def run_all(m_max, d_max):
    return [suite(m_max, d_max) for suite in SUITES]
