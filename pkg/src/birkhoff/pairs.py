"""Pairs of partitions: mono/epi classification, indecomposability and the
canonical decomposition into indecomposable pairs.

Indices of parts are 1-based throughout this module, matching the
``Partition.part`` accessor.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError, ShapeMismatch
from .partitions import Partition, union


class PairType(enum.Enum):
    MONO_ONLY = "MonoOnly"
    EPI_ONLY = "EpiOnly"
    BOTH = "Both"
    NEITHER = "Neither"

    @property
    def mono(self):
        return self in (PairType.MONO_ONLY, PairType.BOTH)

    @property
    def epi(self):
        return self in (PairType.EPI_ONLY, PairType.BOTH)


@dataclass(frozen=True, order=True)
class PartitionPair:
    p: Partition
    q: Partition

    def __post_init__(self):
        if self.p.m != self.q.m:
            raise ShapeMismatch(f"bounds differ: {self.p.m} and {self.q.m}")

    @classmethod
    def of(cls, p, q, m):
        return cls(Partition.of(p, m), Partition.of(q, m))

    @classmethod
    def parse(cls, text: str, m: int) -> "PartitionPair":
        """Parse ``"p1,p2,...|q1,q2,..."``."""
        if text.count("|") != 1:
            pos = text.find("|", text.find("|") + 1) if "|" in text else len(text)
            raise ParseError("a pair needs exactly one '|'", text, pos)
        left, right = text.split("|")
        try:
            return cls(Partition.parse(left, m), Partition.parse(right, m, offset=len(left) + 1))
        except ParseError as exc:
            raise ParseError(exc.reason, text, exc.position) from None

    @property
    def m(self):
        return self.p.m

    @property
    def dims(self):
        return (self.p.size, self.q.size)

    def __str__(self):
        return f"{self.p}|{self.q}"

    def key(self):
        return (self.p.parts, self.q.parts)


def pair_union(a: PartitionPair, b: PartitionPair) -> PartitionPair:
    return PartitionPair(union(a.p, b.p), union(a.q, b.q))


def _interlaces(first: Partition, second: Partition) -> bool:
    """first_1 >= second_1 >= first_2 >= second_2 >= ... (zero-extended)."""
    n = max(len(first), len(second)) + 1
    seq = []
    for i in range(1, n + 1):
        seq.append(first.part(i))
        seq.append(second.part(i))
    return all(a >= b for a, b in zip(seq, seq[1:]))


def classify_pair(p: Partition, q: Partition) -> PairType:
    mono = _interlaces(p, q)
    epi = _interlaces(q, p)
    if mono and epi:
        return PairType.BOTH
    if mono:
        return PairType.MONO_ONLY
    if epi:
        return PairType.EPI_ONLY
    return PairType.NEITHER


def is_weakly_indecomposable(p: Partition, q: Partition) -> bool:
    return classify_pair(p, q) is not PairType.NEITHER


def _strict_chain(first: Partition, second: Partition) -> bool:
    """first_1 > second_1 > first_2 > ... with len(first) - len(second) in {0, 1}."""
    if len(first) - len(second) not in (0, 1):
        return False
    seq = []
    for i in range(len(first)):
        seq.append(first.parts[i])
        if i < len(second):
            seq.append(second.parts[i])
    return all(a > b for a, b in zip(seq, seq[1:]))


def is_indecomposable_pair(p: Partition, q: Partition) -> bool:
    if not p.parts and not q.parts:
        return False
    if len(p) == 1 and p.parts == q.parts:
        return True
    return _strict_chain(p, q) or _strict_chain(q, p)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Summands of the canonical decomposition plus the matching used to find them.

    ``u``, ``v_plus`` and ``v_minus`` map q-indices to p-indices (1-based).
    """

    pair: PartitionPair
    summands: tuple
    I0: frozenset
    J0: frozenset
    u: dict = field(hash=False)
    v_plus: dict = field(hash=False)
    v_minus: dict = field(hash=False)

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def multiset(self):
        return sorted(s.key() for s in self.summands)


def _match_equal_parts(p: Partition, q: Partition, rng: Optional[random.Random]):
    """Greedy: each q_j goes to the leftmost unmatched i with p_i == q_j.

    With ``rng`` the matched index is chosen at random among equal parts, to
    exercise independence from the choice.
    """
    free = {}
    for i, x in enumerate(p.parts, start=1):
        free.setdefault(x, []).append(i)
    u = {}
    q_order = list(range(1, len(q) + 1))
    if rng is not None:
        rng.shuffle(q_order)
    for j in q_order:
        cands = free.get(q.part(j))
        if cands:
            k = rng.randrange(len(cands)) if rng is not None else 0
            u[j] = cands.pop(k)
    return u


def canonical_decomposition(p: Partition, q: Partition,
                            rng: Optional[random.Random] = None) -> CanonicalDecomposition:
    if p.m != q.m:
        raise ShapeMismatch(f"bounds differ: {p.m} and {q.m}")
    m = p.m
    lp, lq = len(p), len(q)
    u = _match_equal_parts(p, q, rng)
    J0 = frozenset(u)
    I0 = frozenset(u.values())
    free_p = [i for i in range(1, lp + 1) if i not in I0]
    free_q = [j for j in range(1, lq + 1) if j not in J0]

    v_plus = {}
    used = set()
    for j in free_q:
        for i in reversed(free_p):  # nearest larger part to the left
            if i not in used and p.part(i) > q.part(j):
                v_plus[j] = i
                used.add(i)
                break
    v_minus = {}
    used = set()
    for j in reversed(free_q):
        for i in free_p:  # nearest smaller part to the right
            if i not in used and p.part(i) < q.part(j):
                v_minus[j] = i
                used.add(i)
                break

    v_plus_inv = {i: j for j, i in v_plus.items()}
    v_minus_img = set(v_minus.values())

    def chain_from_p(i):
        ps, qs = [i], []
        while i in v_plus_inv:
            j = v_plus_inv[i]
            qs.append(j)
            if j not in v_minus:
                break
            i = v_minus[j]
            ps.append(i)
        return ps, qs

    summands = []
    for j in sorted(J0):
        summands.append(PartitionPair(Partition((q.part(j),), m), Partition((q.part(j),), m)))
    for i in free_p:
        if i not in v_minus_img:
            ps, qs = chain_from_p(i)
            summands.append(_pair_from_indices(p, q, ps, qs))
    for j in free_q:
        if j not in v_plus:
            qs, ps = [j], []
            if j in v_minus:
                more_p, more_q = chain_from_p(v_minus[j])
                ps, qs = more_p, qs + more_q
            summands.append(_pair_from_indices(p, q, ps, qs))
    summands.sort(key=lambda s: (s.p.parts[:1] or (0,), s.p.parts, s.q.parts), reverse=True)
    return CanonicalDecomposition(PartitionPair(p, q), tuple(summands), I0, J0,
                                  dict(u), v_plus, v_minus)


def _pair_from_indices(p, q, ps, qs):
    return PartitionPair(Partition.of([p.part(i) for i in ps], p.m),
                         Partition.of([q.part(j) for j in qs], q.m))


def decomposition_dot(dec: CanonicalDecomposition) -> str:
    """DOT drawing of the matching: p-parts on top, q-parts below, edges for
    ``u`` (vertical), ``v_plus`` (SW-NE) and ``v_minus`` (NW-SE)."""
    p, q = dec.pair.p, dec.pair.q
    lines = ["graph decomposition {", "  rankdir=TB;", "  node [shape=plaintext];"]
    lines.append("  { rank=same; " + " ".join(f"p{i};" for i in range(1, len(p) + 1)) + " }")
    lines.append("  { rank=same; " + " ".join(f"q{j};" for j in range(1, len(q) + 1)) + " }")
    for i in range(1, len(p) + 1):
        lines.append(f'  p{i} [label="{p.part(i)}"];')
    for j in range(1, len(q) + 1):
        lines.append(f'  q{j} [label="{q.part(j)}"];')
    for j in sorted(dec.u):
        lines.append(f'  p{dec.u[j]} -- q{j} [label="u", style=bold];')
    for j in sorted(dec.v_plus):
        lines.append(f'  p{dec.v_plus[j]} -- q{j} [label="v+"];')
    for j in sorted(dec.v_minus):
        lines.append(f'  p{dec.v_minus[j]} -- q{j} [label="v-", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
