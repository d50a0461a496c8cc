"""Modules over A = [[L, L], [0, L]], L = K[X]/(X^m), as matrix triples.

A module is ``(M0, M1, h)`` with ``M0^m = 0``, ``M1^m = 0`` and
``M0 h = h M1``; ``h`` maps the vertex-1 space to the vertex-0 space.  A
morphism ``M -> N`` is a pair ``(f0, f1)`` of L-linear maps with
``f0 h_M = h_N f1``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ShapeMismatch, UnsupportedField, ZeroModule
from .fields import RATIONAL, PrimeField, RationalField, make_field
from .linalg import (
    Matrix,
    block_diag,
    block_matrix,
    invert,
    is_invertible,
    is_nilpotent_of_order,
    nullspace_rows,
    rank,
    rank_rows,
)
from .pairs import PairType, PartitionPair, canonical_decomposition, classify_pair
from .partitions import Partition, PolyHom, jordan_matrix, jordan_type, poly_hom_matrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AModule:
    m: int
    M0: Matrix
    M1: Matrix
    h: Matrix
    check: bool = dc_field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.check:
            return
        M0, M1, h = self.M0, self.M1, self.h
        if not (M0.is_square() and M1.is_square()):
            raise ShapeMismatch("M0 and M1 must be square")
        if h.shape != (M0.rows, M1.rows):
            raise ShapeMismatch(f"h must be {M0.rows}x{M1.rows}, got {h.rows}x{h.cols}")
        if not (M0.field == M1.field == h.field):
            raise ShapeMismatch("components over different fields")
        if not is_nilpotent_of_order(M0, self.m) or not is_nilpotent_of_order(M1, self.m):
            raise ValueError(f"M0 and M1 must satisfy X^{self.m} = 0")
        if M0 @ h != h @ M1:
            raise ValueError("M0 h != h M1")

    @property
    def field(self):
        return self.M0.field

    @property
    def d0(self):
        return self.M0.rows

    @property
    def d1(self):
        return self.M1.rows

    @property
    def dims(self):
        return (self.d0, self.d1)

    def conjugate(self, g0: Matrix, g1: Matrix) -> "AModule":
        """The module ``(g0 M0 g0^-1, g1 M1 g1^-1, g0 h g1^-1)``."""
        g0i, g1i = invert(g0), invert(g1)
        return AModule(self.m, g0 @ self.M0 @ g0i, g1 @ self.M1 @ g1i, g0 @ self.h @ g1i)

    def to_json(self) -> dict:
        fmt = self.field.format
        out = dict(self.field.to_json())
        out.update({
            "m": self.m,
            "d0": self.d0,
            "d1": self.d1,
            "M0": [[fmt(x) for x in row] for row in self.M0],
            "M1": [[fmt(x) for x in row] for row in self.M1],
            "h": [[fmt(x) for x in row] for row in self.h],
        })
        return out

    @classmethod
    def from_json(cls, data: dict) -> "AModule":
        fld = make_field(data.get("field", "rational"), data.get("prime", PrimeField().p))
        d0, d1 = data["d0"], data["d1"]

        def mat(key, rows, cols):
            return Matrix([[fld.parse(x) for x in row] for row in data[key]], fld, cols)

        return cls(data["m"], mat("M0", d0, d0), mat("M1", d1, d1), mat("h", d0, d1))


def zero_module(m, d0, d1, field=RATIONAL) -> AModule:
    return AModule(m, Matrix.zeros(d0, d0, field), Matrix.zeros(d1, d1, field),
                   Matrix.zeros(d0, d1, field))


def direct_sum(M: AModule, N: AModule) -> AModule:
    if M.m != N.m:
        raise ShapeMismatch(f"different nilpotency bounds {M.m} and {N.m}")
    f = M.field
    return AModule(M.m, block_diag(M.M0, N.M0, field=f), block_diag(M.M1, N.M1, field=f),
                   block_diag(M.h, N.h, field=f), check=False)


def dual(M: AModule) -> AModule:
    """Transpose everything and swap the two vertices."""
    return AModule(M.m, M.M1.T, M.M0.T, M.h.T, check=False)


# ---------------------------------------------------------------------------
# canonical modules


def weak_h_matrix(p: Partition, q: Partition, form: str, field=RATIONAL) -> Matrix:
    """``h_{p,q}`` for a weakly indecomposable pair in mono or epi form."""
    lp, lq = len(p), len(q)
    blocks = {}
    if form == "mono":
        for j in range(1, lq + 1):
            blocks[(j - 1, j - 1)] = poly_hom_matrix(
                PolyHom.monomial(p.part(j) - q.part(j), q.part(j), p.part(j)), field)
            if j + 1 <= lp:
                blocks[(j, j - 1)] = poly_hom_matrix(PolyHom(q.part(j), p.part(j + 1), (1,)), field)
    elif form == "epi":
        for i in range(1, lp + 1):
            blocks[(i - 1, i - 1)] = poly_hom_matrix(PolyHom(q.part(i), p.part(i), (1,)), field)
            if i + 1 <= lq:
                blocks[(i - 1, i)] = poly_hom_matrix(
                    PolyHom.monomial(p.part(i) - q.part(i + 1), q.part(i + 1), p.part(i)), field)
    else:
        raise ValueError(f"form must be 'mono' or 'epi', got {form!r}")
    return block_matrix(list(p.parts), list(q.parts), blocks, field)


def build_canonical_module(p: Partition, q: Partition, field=RATIONAL, form=None) -> AModule:
    """The canonical module ``M_{p,q}``.

    Weakly indecomposable pairs get ``(J_p, J_q, h_{p,q})`` directly (mono form
    when the pair is of both types, unless ``form`` says otherwise); any other
    pair gets the direct sum over its canonical decomposition.
    """
    if p.m != q.m:
        raise ShapeMismatch(f"bounds differ: {p.m} and {q.m}")
    kind = classify_pair(p, q)
    if kind is not PairType.NEITHER:
        if form is None:
            form = "mono" if kind.mono else "epi"
        elif (form == "mono" and not kind.mono) or (form == "epi" and not kind.epi):
            raise ValueError(f"pair {p}|{q} is not of {form} type")
        h = weak_h_matrix(p, q, form, field)
        return AModule(p.m, jordan_matrix(p, field), jordan_matrix(q, field), h, check=False)
    summands = canonical_decomposition(p, q).summands
    module = build_canonical_module(summands[0].p, summands[0].q, field)
    for s in summands[1:]:
        module = direct_sum(module, build_canonical_module(s.p, s.q, field))
    return module


def canonical_module(pair: PartitionPair, field=RATIONAL) -> AModule:
    return build_canonical_module(pair.p, pair.q, field)


# ---------------------------------------------------------------------------
# linear systems


def _intertwiner_rows(A: Matrix, B: Matrix, nvars: int, offset: int = 0):
    """Rows of ``f A - B f = 0`` for an unknown ``B.rows x A.rows`` matrix ``f``
    stored row-major at ``offset`` in a vector of ``nvars`` unknowns."""
    r, c = B.rows, A.rows
    A_cols = [[(k, A[k, b]) for k in range(c) if A[k, b]] for b in range(c)]
    B_rows = [[(k, B[a, k]) for k in range(r) if B[a, k]] for a in range(r)]
    rows = []
    for a in range(r):
        for b in range(c):
            row = [0] * nvars
            for k, x in A_cols[b]:
                row[offset + a * c + k] += x
            for k, x in B_rows[a]:
                row[offset + k * c + b] -= x
            rows.append(row)
    return rows


def lambda_hom_basis(A: Matrix, B: Matrix):
    """Basis of ``{f : f A = B f}``, i.e. L-module maps from ``A`` to ``B``."""
    r, c = B.rows, A.rows
    n = r * c
    if n == 0:
        return []
    rows = _intertwiner_rows(A, B, n)
    basis, _ = nullspace_rows(rows, n, A.field)
    return [Matrix(tuple(tuple(v[a * c:(a + 1) * c]) for a in range(r)), A.field, c, _trusted=True)
            for v in basis]


@dataclass(frozen=True)
class HomSpace:
    source: AModule
    target: AModule
    basis: tuple

    def __len__(self):
        return len(self.basis)

    @property
    def dim(self):
        return len(self.basis)

    def combination(self, coeffs):
        f = self.source.field
        return (_combine([b[0] for b in self.basis], coeffs, self.target.d0, self.source.d0, f),
                _combine([b[1] for b in self.basis], coeffs, self.target.d1, self.source.d1, f))


def _combine(mats, coeffs, rows, cols, field) -> Matrix:
    """``sum(c * A)`` accumulated on flat entry lists."""
    acc = [0] * (rows * cols)
    for c, a in zip(coeffs, mats):
        if not c:
            continue
        for k, x in enumerate(a.entries):
            if x:
                acc[k] += c * x
    return Matrix.from_flat(rows, cols, acc, field)


def _check_compatible(M, N):
    if M.m != N.m:
        raise ShapeMismatch(f"different nilpotency bounds {M.m} and {N.m}")
    if M.field != N.field:
        raise ShapeMismatch("modules over different fields")


def hom_basis(M: AModule, N: AModule, method: str = "staged") -> HomSpace:
    """Basis of ``Hom_A(M, N)``.

    ``staged`` first solves for the L-linear maps at each vertex and then
    imposes ``f0 h_M = h_N f1`` on their coefficients; ``direct`` solves the
    single system in all ``d0^M d0^N + d1^M d1^N`` unknowns.  Both span the
    same space.
    """
    _check_compatible(M, N)
    fld = M.field
    if method == "direct":
        n0 = N.d0 * M.d0
        n = n0 + N.d1 * M.d1
        if n == 0:
            return HomSpace(M, N, ())
        rows = _intertwiner_rows(M.M0, N.M0, n, 0) + _intertwiner_rows(M.M1, N.M1, n, n0)
        # f0 h_M - h_N f1
        for a in range(N.d0):
            for b in range(M.d1):
                row = [0] * n
                for k in range(M.d0):
                    x = M.h[k, b]
                    if x:
                        row[a * M.d0 + k] += x
                for k in range(N.d1):
                    x = N.h[a, k]
                    if x:
                        row[n0 + k * M.d1 + b] -= x
                rows.append(row)
        basis, _ = nullspace_rows(rows, n, fld)
        out = []
        for v in basis:
            f0 = Matrix(tuple(tuple(v[a * M.d0:(a + 1) * M.d0]) for a in range(N.d0)), fld, M.d0,
                        _trusted=True)
            f1 = Matrix(tuple(tuple(v[n0 + a * M.d1:n0 + (a + 1) * M.d1]) for a in range(N.d1)),
                        fld, M.d1, _trusted=True)
            out.append((f0, f1))
        return HomSpace(M, N, tuple(out))
    if method != "staged":
        raise ValueError(f"unknown method {method!r}")
    H0 = lambda_hom_basis(M.M0, N.M0)
    H1 = lambda_hom_basis(M.M1, N.M1)
    k0, k1 = len(H0), len(H1)
    # column s of the reduced system is the image of the s-th basis map under
    # (f0, f1) -> f0 h_M - h_N f1
    cols = [(f0 @ M.h).entries for f0 in H0] + [(-(N.h @ f1)).entries for f1 in H1]
    rows = [list(r) for r in zip(*cols)]
    coeff_basis, _ = nullspace_rows(rows, k0 + k1, fld)
    out = [(_combine(H0, v[:k0], N.d0, M.d0, fld), _combine(H1, v[k0:], N.d1, M.d1, fld))
           for v in coeff_basis]
    return HomSpace(M, N, tuple(out))


def hom_dim(M: AModule, N: AModule) -> int:
    return len(hom_basis(M, N))


def end_dim(M: AModule) -> int:
    return len(hom_basis(M, M))


def is_morphism(M: AModule, N: AModule, f0: Matrix, f1: Matrix) -> bool:
    return (f0 @ M.M0 == N.M0 @ f0 and f1 @ M.M1 == N.M1 @ f1
            and f0 @ M.h == N.h @ f1)


# ---------------------------------------------------------------------------
# Ext^1


def _cocycle_rows(M: AModule, N: AModule):
    """Rows of the cocycle conditions on ``(z0, z1, w)`` for extensions
    ``0 -> N -> E -> M -> 0``, with ``E0 = [[N0, z0], [0, M0]]``,
    ``E1 = [[N1, z1], [0, M1]]`` and ``h_E = [[h_N, w], [0, h_M]]``."""
    m = M.m
    n_z0 = N.d0 * M.d0
    n_z1 = N.d1 * M.d1
    n_w = N.d0 * M.d1
    n = n_z0 + n_z1 + n_w
    rows = []

    def nilpotency(Nx, Mx, offset):
        r, c = Nx.rows, Mx.rows
        if r * c == 0:
            return
        acc = [[{} for _ in range(c)] for _ in range(r)]
        Np = Matrix.identity(r, Nx.field)
        npowers = []
        for _ in range(m):
            npowers.append(Np)
            Np = Np @ Nx
        Mp = Matrix.identity(c, Mx.field)
        mpowers = []
        for _ in range(m):
            mpowers.append(Mp)
            Mp = Mp @ Mx
        for i in range(m):
            P, Q = npowers[i], mpowers[m - 1 - i]
            if P.is_zero() or Q.is_zero():
                continue
            pnz = [(a, k, P[a, k]) for a in range(r) for k in range(r) if P[a, k]]
            qnz = [(e, b, Q[e, b]) for e in range(c) for b in range(c) if Q[e, b]]
            for a, k, x in pnz:
                for e, b, y in qnz:
                    cell = acc[a][b]
                    idx = offset + k * c + e
                    cell[idx] = cell.get(idx, 0) + x * y
        for a in range(r):
            for b in range(c):
                row = [0] * n
                for idx, x in acc[a][b].items():
                    row[idx] = x
                rows.append(row)

    nilpotency(N.M0, M.M0, 0)
    nilpotency(N.M1, M.M1, n_z0)
    # N0 w + z0 h_M - w M1 - h_N z1 = 0
    ow, oz1 = n_z0 + n_z1, n_z0
    for a in range(N.d0):
        for b in range(M.d1):
            row = [0] * n
            for k in range(N.d0):
                x = N.M0[a, k]
                if x:
                    row[ow + k * M.d1 + b] += x
            for k in range(M.d0):
                x = M.h[k, b]
                if x:
                    row[a * M.d0 + k] += x
            for k in range(M.d1):
                x = M.M1[k, b]
                if x:
                    row[ow + a * M.d1 + k] -= x
            for k in range(N.d1):
                x = N.h[a, k]
                if x:
                    row[oz1 + k * M.d1 + b] -= x
            rows.append(row)
    return rows, n


def _coboundary_vectors(M: AModule, N: AModule):
    """Images of the unit pairs ``(f0, f1)`` under
    ``(f0, f1) -> (f0 M0 - N0 f0, f1 M1 - N1 f1, f0 h_M - h_N f1)``."""
    fld = M.field
    vecs = []
    for a in range(N.d0):
        for b in range(M.d0):
            e = Matrix(tuple(tuple(1 if (i, j) == (a, b) else 0 for j in range(M.d0))
                             for i in range(N.d0)), fld, M.d0, _trusted=True)
            z0 = e @ M.M0 - N.M0 @ e
            w = e @ M.h
            vecs.append(list(z0.entries) + [0] * (N.d1 * M.d1) + list(w.entries))
    for a in range(N.d1):
        for b in range(M.d1):
            e = Matrix(tuple(tuple(1 if (i, j) == (a, b) else 0 for j in range(M.d1))
                             for i in range(N.d1)), fld, M.d1, _trusted=True)
            z1 = e @ M.M1 - N.M1 @ e
            w = -(N.h @ e)
            vecs.append([0] * (N.d0 * M.d0) + list(z1.entries) + list(w.entries))
    return vecs


def ext1_dim(M: AModule, N: AModule, method: str = "hom") -> int:
    """``dim Ext^1_A(M, N)``, counting extensions ``0 -> N -> E -> M -> 0``.

    The cocycle space is the kernel of the linearised module relations on the
    upper-right blocks of ``E``.  With ``method="hom"`` the coboundary
    dimension is obtained from ``dim Hom(M, N)``; with ``"coboundary"`` it is
    the rank of the explicit coboundary images, which are also checked to be
    cocycles.
    """
    _check_compatible(M, N)
    rows, n = _cocycle_rows(M, N)
    if n == 0:
        return 0
    dim_z = n - rank_rows(rows, n, M.field)
    if method == "hom":
        dim_b = N.d0 * M.d0 + N.d1 * M.d1 - hom_dim(M, N)
    elif method == "coboundary":
        vecs = _coboundary_vectors(M, N)
        dim_b = rank_rows(vecs, n, M.field) if vecs else 0
        red = M.field.reduce
        for v in vecs:
            for row in rows:
                if red(sum(x * y for x, y in zip(row, v) if x and y)):
                    raise AssertionError("coboundary is not a cocycle")
    else:
        raise ValueError(f"unknown method {method!r}")
    return dim_z - dim_b


# ---------------------------------------------------------------------------
# indecomposability, isomorphism, Gorenstein projectivity


def _integer_vectors(vectors):
    from math import lcm

    out = []
    for v in vectors:
        den = 1
        for x in v:
            if type(x) is not int:
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in v])
    return out


def is_indecomposable_module(M: AModule) -> bool:
    """Decide whether ``End_A(M)`` is local via the trace-form radical.

    In characteristic zero the radical of a matrix algebra is the kernel of
    ``(x, y) -> trace(x y)``; the algebra is local iff the quotient by the
    radical is one-dimensional.
    """
    if not isinstance(M.field, RationalField):
        raise UnsupportedField("the trace-form criterion needs characteristic zero")
    if M.d0 == 0 and M.d1 == 0:
        raise ZeroModule("the zero module has no indecomposability")
    E = hom_basis(M, M).basis
    k = len(E)
    vec = _integer_vectors([list(f0.entries) + list(f1.entries) for f0, f1 in E])
    vecT = _integer_vectors([list(f0.T.entries) + list(f1.T.entries) for f0, f1 in E])
    # the transposed vectors are scaled by the same factors as ``vec``
    big = max((abs(x) for v in vec for x in v), default=0)
    dtype = np.int64 if big * big * max(len(vec[0]), 1) < 2**62 else object
    V = np.array(vec, dtype=dtype).reshape(k, -1)
    W = np.array(vecT, dtype=dtype).reshape(k, -1)
    G = V @ W.T
    gram = [[int(x) for x in row] for row in G]
    # dim End - dim radical
    return rank_rows(gram, k, RATIONAL) == 1


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    probabilistic_negative: bool = False
    reason: str = ""
    witness: tuple = None


def isomorphism_test(M: AModule, N: AModule, retries: int = 32, seed: int = 0) -> IsoResult:
    """Search for an invertible morphism ``M -> N``.

    Deterministic prechecks compare dimension vectors and the dimensions of
    ``End(M)``, ``End(N)``, ``Hom(M, N)`` and ``Hom(N, M)``.  Then the sum of
    the basis of ``Hom(M, N)`` and ``retries`` random combinations are tried.
    A positive answer is always correct; a negative one after the search is
    flagged as probabilistic.
    """
    _check_compatible(M, N)
    if M.dims != N.dims:
        return IsoResult(False, reason="dimension vectors differ")
    e = end_dim(M)
    if end_dim(N) != e:
        return IsoResult(False, reason="End dimensions differ")
    H = hom_basis(M, N)
    if len(H) != e:
        return IsoResult(False, reason="dim Hom(M,N) != dim End(M)")
    if hom_dim(N, M) != e:
        return IsoResult(False, reason="dim Hom(N,M) != dim End(M)")
    if M.d0 + M.d1 == 0:
        return IsoResult(True, reason="zero modules")
    rng = random.Random(seed)
    fld = M.field
    attempts = [[1] * len(H)]
    attempts += [[fld.random_element(rng) for _ in range(len(H))] for _ in range(retries)]
    for coeffs in attempts:
        f0, f1 = H.combination(coeffs)
        if is_invertible(f0) and is_invertible(f1):
            return IsoResult(True, witness=(f0, f1))
    log.warning("no invertible morphism found after %d attempts; reporting non-isomorphic",
                len(attempts))
    return IsoResult(False, probabilistic_negative=True, reason="search exhausted")


def are_isomorphic(M: AModule, N: AModule, retries: int = 32, seed: int = 0) -> bool:
    return isomorphism_test(M, N, retries, seed).isomorphic


def is_gorenstein_projective(M: AModule) -> bool:
    """True iff ``h`` is injective."""
    return rank(M.h) == M.d1


# ---------------------------------------------------------------------------
# strata


def random_invertible(d: int, field, rng: random.Random) -> Matrix:
    while True:
        g = Matrix([[field.random_element(rng) for _ in range(d)] for _ in range(d)], field, d)
        if is_invertible(g):
            return g


def sample_stratum(p: Partition, q: Partition, seed: int, field=None) -> AModule:
    """A random point of the stratum ``S_{p,q}``; a large prime field by default.

    The result is reproducible from ``seed``.  Over small fields the sample
    is far from generic, so primes below ``2**31`` are refused.
    """
    if field is None:
        field = PrimeField()
    if isinstance(field, PrimeField) and field.p < 2**31:
        raise UnsupportedField("stratum sampling needs a large field")
    rng = random.Random(seed)
    d0, d1 = p.size, q.size
    g0 = random_invertible(d0, field, rng)
    g1 = random_invertible(d1, field, rng)
    M0 = g0 @ jordan_matrix(p, field) @ invert(g0)
    M1 = g1 @ jordan_matrix(q, field) @ invert(g1)
    if d0 * d1 == 0:
        h = Matrix.zeros(d0, d1, field)
    else:
        H = lambda_hom_basis(M1, M0)
        h = Matrix.zeros(d0, d1, field)
        for e in H:
            h = h + e.scale(field.random_element(rng))
    return AModule(p.m, M0, M1, h)


def stratum_of(M: AModule) -> PartitionPair:
    return PartitionPair(jordan_type(M.M0, M.m), jordan_type(M.M1, M.m))
