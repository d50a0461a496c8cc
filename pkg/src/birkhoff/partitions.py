"""Partitions with parts bounded by ``m``, nilpotent Jordan matrices, and
homomorphisms between the uniserial modules ``K[X]/(X^p)`` given by
polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import NotNilpotent, ParseError, ShapeMismatch, UnequalWeight
from .fields import RATIONAL
from .linalg import Matrix, block_diag, is_nilpotent_of_order, rank


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts, each at most ``m``.

    ``part(j)`` uses 1-based indices with the sentinels ``part(0) == m`` and
    ``part(j) == 0`` for ``j > len(self)``.
    """

    parts: tuple
    m: int

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.m < 1:
            raise ValueError(f"bound m must be >= 1, got {self.m}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and (parts[-1] < 1 or parts[0] > self.m):
            raise ValueError(f"parts of {parts} must lie in 1..{self.m}")

    @classmethod
    def of(cls, parts: Sequence[int], m: int) -> "Partition":
        """Build from parts in any order; zero parts are dropped."""
        return cls(tuple(sorted((x for x in parts if x), reverse=True)), m)

    @classmethod
    def parse(cls, text: str, m: int, offset: int = 0) -> "Partition":
        """Parse ``"3,2,2"``; the empty string is the empty partition."""
        stripped = text.strip()
        if not stripped:
            return cls((), m)
        parts = []
        pos = 0
        for token in text.split(","):
            tok = token.strip()
            if not tok.isdigit():
                where = offset + pos + (len(token) - len(token.lstrip()))
                raise ParseError(f"expected a positive integer, got {tok!r}", text, where)
            parts.append(int(tok))
            pos += len(token) + 1
        try:
            return cls(tuple(parts), m)
        except ValueError as exc:
            raise ParseError(str(exc), text, offset) from None

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return ",".join(map(str, self.parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, j: int) -> int:
        if j == 0:
            return self.m
        if j < 0:
            raise IndexError(j)
        return self.parts[j - 1] if j <= len(self.parts) else 0

    def conjugate(self):
        if not self.parts:
            return ()
        return tuple(sum(1 for x in self.parts if x > k) for k in range(self.parts[0]))


@lru_cache(maxsize=None)
def _partitions(d, largest):
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(d: int, m: int) -> list[Partition]:
    """All partitions of ``d`` with parts at most ``m``, reverse-lexicographically."""
    return [Partition(p, m) for p in _partitions(d, m)]


def maximal_partition(d: int, m: int) -> Partition:
    """The partition ``(m, ..., m, r)`` that is dominance-maximal in ``P_m(d)``."""
    k, r = divmod(d, m)
    return Partition((m,) * k + ((r,) if r else ()), m)


def dominance_leq(p: Partition, q: Partition) -> bool:
    if p.size != q.size:
        raise UnequalWeight(f"|{p}| = {p.size} differs from |{q}| = {q.size}")
    sp = sq = 0
    for i in range(max(len(p), len(q))):
        sp += p.part(i + 1)
        sq += q.part(i + 1)
        if sp > sq:
            return False
    return True


def union(p: Partition, q: Partition) -> Partition:
    if p.m != q.m:
        raise ShapeMismatch(f"bounds differ: {p.m} and {q.m}")
    return Partition(tuple(sorted(p.parts + q.parts, reverse=True)), p.m)


def hom_dim_lambda(q: Partition, p: Partition) -> int:
    """``dim Hom(U_q, U_p) = sum_{i,j} min(p_i, q_j)``."""
    return sum(min(a, b) for a in p.parts for b in q.parts)


def jordan_block(n: int, field=RATIONAL) -> Matrix:
    return Matrix(tuple(tuple(1 if i == j + 1 else 0 for j in range(n)) for i in range(n)),
                  field, n, _trusted=True)


def jordan_matrix(p: Partition, field=RATIONAL) -> Matrix:
    """Block diagonal of lower nilpotent Jordan blocks of sizes ``p``."""
    if not p.parts:
        return Matrix.zeros(0, 0, field)
    return block_diag(*(jordan_block(n, field) for n in p.parts), field=field)


def jordan_type(a: Matrix, m: int) -> Partition:
    """Recover the Jordan type of an ``m``-nilpotent matrix from the ranks of its powers."""
    if not is_nilpotent_of_order(a, m):
        raise NotNilpotent(f"matrix is not nilpotent of order {m}")
    n = a.rows
    ranks = [n]
    power = Matrix.identity(n, a.field)
    for _ in range(min(m, n)):
        power = power @ a
        ranks.append(rank(power))
        if ranks[-1] == 0:
            break
    # at_least[k] = number of blocks of size >= k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    parts = []
    for k in range(len(at_least) - 1, 0, -1):
        parts.extend([k] * (at_least[k - 1] - at_least[k]))
    return Partition(tuple(parts), m)


# ---------------------------------------------------------------------------
# homomorphisms U_(source) -> U_(target) given by polynomials


@dataclass(frozen=True)
class PolyHom:
    """Multiplication by a polynomial ``K[X]/(X^source) -> K[X]/(X^target)``.

    ``poly`` holds coefficients from the constant term up, truncated below
    ``X^target`` and without trailing zeros; it must be divisible by
    ``X^(target - source)`` to define a module map.
    """

    source: int
    target: int
    poly: tuple = ()

    def __post_init__(self):
        coeffs = [RATIONAL.reduce(c) for c in self.poly[: self.target]]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "poly", tuple(coeffs))
        if self.source < 0 or self.target < 0:
            raise ValueError("parts must be non-negative")
        shift = max(self.target - self.source, 0)
        if any(coeffs[:shift]):
            raise ValueError(
                f"X^{shift} must divide the polynomial for a map U_({self.source}) -> U_({self.target})")

    @classmethod
    def monomial(cls, k: int, source: int, target: int, coeff=1) -> "PolyHom":
        return cls(source, target, (0,) * k + (coeff,))

    def is_zero(self):
        return not self.poly

    def is_epi(self):
        return self.target == 0 or (bool(self.poly) and self.poly[0] != 0)

    def is_mono(self):
        if self.source == 0:
            return True
        shift = self.target - self.source
        if shift < 0:
            return False
        return len(self.poly) > shift and self.poly[shift] != 0


def poly_hom_compose(f: PolyHom, g: PolyHom) -> PolyHom:
    """The composite ``f . g``; requires ``g.target == f.source``."""
    if f.source != g.target:
        raise ShapeMismatch(f"cannot compose U_({f.source})->U_({f.target}) "
                            f"after U_({g.source})->U_({g.target})")
    prod = [0] * min(len(f.poly) + len(g.poly), f.target)
    for i, a in enumerate(f.poly):
        if not a:
            continue
        for j, b in enumerate(g.poly):
            if i + j < f.target:
                prod[i + j] += a * b
    return PolyHom(g.source, f.target, tuple(prod))


def poly_hom_dual(f: PolyHom) -> PolyHom:
    """The K-dual ``U_(target) -> U_(source)``, represented by ``X^(source-target) * poly``."""
    shift = f.source - f.target
    if shift >= 0:
        poly = (0,) * shift + f.poly
    else:
        poly = f.poly[-shift:]
    return PolyHom(f.target, f.source, poly)


def poly_hom_matrix(f: PolyHom, field=RATIONAL) -> Matrix:
    """The ``target x source`` matrix of ``f`` in the monomial bases ``1, X, X^2, ...``."""
    p, q = f.target, f.source
    coeffs = [field.reduce(c) for c in f.poly]
    data = tuple(
        tuple(coeffs[i - k] if 0 <= i - k < len(coeffs) else 0 for k in range(q))
        for i in range(p)
    )
    return Matrix(data, field, q, _trusted=True)
