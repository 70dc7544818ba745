"""Representations over small finite fields and quiver Grassmannian counts.

Sample fields have s = p^2 elements; the count |Gr_e V| is a polynomial in s.
Three counters are available:

* ``count_subreps``: echelon-form enumeration, vertex by vertex in
  topological order (the sink is handled by a Gaussian binomial).
* a band counter for modules whose long-path maps are identities, which
  reduces the problem to subspaces U of the first vertex and dim(U + TU).
* ``string_fixed_points``: for rigid string modules, a G_m action by the
  cover grading has isolated fixed points (coordinate subrepresentations),
  and the Bialynicki-Birula cells give |Gr_e| = sum over fixed points of
  s^(dim of the positive tangent part).
"""
from __future__ import annotations

import itertools
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import arcat
from .arcat import Obj, TypeData


class NoStringFound(ValueError):
    pass


class InterpolationMismatch(ArithmeticError):
    pass


class CapExceeded(RuntimeError):
    pass


class FieldMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# caps

DEFAULT_CAPS = {
    "vertex_dim": 4,            # brute-force enumeration, per vertex
    "fixed_points": 3_000_000,  # fixed-point enumeration for rigid strings
    "samples": 12,              # interpolation sample fields
    "mutation_depth": 6,
}


def get_caps() -> dict:
    caps = dict(DEFAULT_CAPS)
    raw = os.environ.get("QCA_CAPS")
    if raw:
        caps.update({k: int(v) for k, v in json.loads(raw).items()})
    return caps


SAMPLE_SIZES = (4, 9, 25, 49, 121, 169, 289, 361, 529, 841, 961, 1369)


# ---------------------------------------------------------------------------
# fields


def _factor_prime_power(s: int) -> tuple[int, int]:
    if s < 2:
        raise ValueError("field size must be at least 2")
    p = next(d for d in range(2, s + 1) if s % d == 0)
    k, t = 0, s
    while t % p == 0:
        t //= p
        k += 1
    if t != 1:
        raise ValueError(f"{s} is not a prime power")
    return p, k


class SmallField:
    """GF(p) or GF(p^2), elements encoded as a0 + p*a1 in range(s)."""

    def __init__(self, size: int):
        p, k = _factor_prime_power(size)
        if k > 2:
            raise ValueError("only prime fields and quadratic extensions are supported")
        self.size, self.p, self.k = size, p, k
        idx = np.arange(size)
        a0, a1 = idx % p, idx // p
        if k == 1:
            add = (idx[:, None] + idx[None, :]) % p
            mul = (idx[:, None] * idx[None, :]) % p
        else:
            c0, c1 = self._irreducible_quadratic(p)  # x^2 = -c1 x - c0
            add = (a0[:, None] + a0[None, :]) % p + p * ((a1[:, None] + a1[None, :]) % p)
            t0 = a0[:, None] * a0[None, :]
            t1 = a0[:, None] * a1[None, :] + a1[:, None] * a0[None, :]
            t2 = a1[:, None] * a1[None, :]
            r0 = (t0 - c0 * t2) % p
            r1 = (t1 - c1 * t2) % p
            mul = r0 + p * r1
        self.add = add.tolist()
        self.mul = mul.tolist()
        self.neg = [int(np.where(add[x] == 0)[0][0]) for x in range(size)]
        self.inv = [0] + [int(np.where(mul[x] == 1)[0][0]) for x in range(1, size)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(size)] for a in range(size)]

    @staticmethod
    def _irreducible_quadratic(p: int) -> tuple[int, int]:
        for c1 in range(p):
            for c0 in range(1, p):
                if all((x * x + c1 * x + c0) % p for x in range(p)):
                    return c0, c1
        raise AssertionError("no irreducible quadratic")

    def elements(self) -> range:
        return range(self.size)

    def is_prime_subfield(self, x: int) -> bool:
        return x < self.p

    def __eq__(self, other):
        return isinstance(other, SmallField) and other.size == self.size

    def __hash__(self):
        return hash(("SmallField", self.size))

    def __repr__(self):
        return f"SmallField({self.size})"


@lru_cache(maxsize=None)
def small_field(size: int) -> SmallField:
    return SmallField(size)


# ---------------------------------------------------------------------------
# linear algebra over SmallField (vectors are tuples of field elements)


def rref(F: SmallField, rows: Iterable[Sequence[int]], width: int) -> tuple[list[list[int]], list[int]]:
    """Reduced echelon basis of the span of rows, and its pivot columns."""
    add, mul, neg, inv = F.add, F.mul, F.neg, F.inv
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in rows:
        v = list(r)
        for b, pc in zip(basis, pivots):
            c = v[pc]
            if c:
                nc = neg[c]
                v = [add[x][mul[nc][y]] for x, y in zip(v, b)]
        pc = next((j for j in range(width) if v[j]), None)
        if pc is None:
            continue
        iv = inv[v[pc]]
        v = [mul[iv][x] for x in v]
        for bi, b in enumerate(basis):
            c = b[pc]
            if c:
                nc = neg[c]
                basis[bi] = [add[x][mul[nc][y]] for x, y in zip(b, v)]
        basis.append(v)
        pivots.append(pc)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def mat_vec(F: SmallField, M: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    add, mul = F.add, F.mul
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        out.append(acc)
    return out


def subspaces_containing(F: SmallField, dim: int, k: int, base: list[list[int]], base_piv: list[int]):
    """Yield echelon bases of all k-dimensional subspaces of F^dim containing span(base)."""
    a = len(base)
    if k < a or k > dim:
        return
    free_cols = [j for j in range(dim) if j not in set(base_piv)]
    m = len(free_cols)
    r = k - a
    elems = list(F.elements())
    for piv in itertools.combinations(range(m), r):
        slots = []
        for ri, pc in enumerate(piv):
            for c in range(pc + 1, m):
                if c not in piv:
                    slots.append((ri, c))
        for vals in itertools.product(elems, repeat=len(slots)):
            rows = [[0] * dim for _ in range(r)]
            for ri, pc in enumerate(piv):
                rows[ri][free_cols[pc]] = 1
            for (ri, c), x in zip(slots, vals):
                rows[ri][free_cols[c]] = x
            yield base + rows


def gaussian_binomial_int(n: int, k: int, s: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= s ** (n - i) - 1
        den *= s ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def gaussian_binomial_poly(n: int, k: int) -> tuple[int, ...]:
    """Coefficients (ascending in s) of the Gaussian binomial [n, k]_s."""
    if k < 0 or k > n:
        return (0,)
    if k == 0 or k == n:
        return (1,)
    a = gaussian_binomial_poly(n - 1, k - 1)
    b = gaussian_binomial_poly(n - 1, k)
    # [n,k] = [n-1,k-1] + s^k [n-1,k]
    out = [0] * max(len(a), len(b) + k)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class FFRep:
    field: SmallField
    n: int
    dims: tuple[int, ...]
    maps: tuple[tuple[tuple[int, ...], ...], ...]  # one dims[t] x dims[s] matrix per arrow

    def __post_init__(self):
        for (s, t), M in zip(arcat.arrows(self.n), self.maps):
            if len(M) != self.dims[t] or any(len(row) != self.dims[s] for row in M):
                raise ValueError("arrow matrix shape does not match dimensions")

    @property
    def arrows(self):
        return arcat.arrows(self.n)


def _zero(r, c):
    return [[0] * c for _ in range(r)]


def _freeze(M):
    return tuple(tuple(row) for row in M)


def direct_sum(a: FFRep, b: FFRep) -> FFRep:
    if a.field != b.field:
        raise FieldMismatch("direct sum over different fields")
    maps = []
    for (s, t), A, B in zip(a.arrows, a.maps, b.maps):
        M = _zero(a.dims[t] + b.dims[t], a.dims[s] + b.dims[s])
        for i, row in enumerate(A):
            M[i][: len(row)] = list(row)
        for i, row in enumerate(B):
            M[a.dims[t] + i][a.dims[s]:] = list(row)
        maps.append(_freeze(M))
    return FFRep(a.field, a.n, tuple(x + y for x, y in zip(a.dims, b.dims)), tuple(maps))


def _edge_forward(N: int, z: int) -> bool:
    """Cover edge between z and z+1 points right, except above the short arrow."""
    return z % N != N - 1


def string_interval(td: TypeData, c: Obj) -> tuple[int, int]:
    """Cover interval [a, b] of the string module of a canonical T or R object."""
    N = td.size
    dim = arcat.object_dim(td, c)
    L = sum(dim) - 1
    if c.kind == "R":
        b = c.args[0] - 1
        cand = [(b - L, b)]
    elif c.kind == "T" and c.args[1] != -1:
        cand = [(a, a + L) for a in range(N)]
    else:
        raise NoStringFound(f"{c} is not a string module")
    for a, b in cand:
        prof = [0] * N
        for z in range(a, b + 1):
            prof[z % N] += 1
        if tuple(prof) == dim:
            return a, b
    raise NoStringFound(f"no string with dimension vector {dim}")


def string_module(td: TypeData, a: int, b: int, F: SmallField) -> FFRep:
    N = td.size
    pos: dict[int, tuple[int, int]] = {}
    dims = [0] * N
    for z in range(a, b + 1):
        v = z % N
        pos[z] = (v, dims[v])
        dims[v] += 1
    mats = [_zero(dims[t], dims[s]) for s, t in arcat.arrows(td.n)]
    short = N - 1  # index of the short arrow in arcat.arrows
    for z in range(a, b):
        if _edge_forward(N, z):
            src, tgt, arrow = z, z + 1, z % N
        else:
            src, tgt, arrow = z + 1, z, short
        (vs, is_), (vt, it) = pos[src], pos[tgt]
        mats[arrow][it][is_] = 1
    return FFRep(F, td.n, tuple(dims), tuple(_freeze(M) for M in mats))


def band_module(td: TypeData, m: int, F: SmallField, lam: int = 1) -> FFRep:
    """R_{E(lam), m}: identities along the long path, J_m(lam) on the arrow 1 -> 2n."""
    N = td.size
    ident = [[int(i == j) for j in range(m)] for i in range(m)]
    J = [[lam if i == j else (1 if j == i + 1 else 0) for j in range(m)] for i in range(m)]
    mats = [ident] * (N - 1) + [J]
    return FFRep(F, td.n, (m,) * N, tuple(_freeze(M) for M in mats))


def build_module(td: TypeData, obj: Obj, F: SmallField, lam: int = 1) -> FFRep:
    c = arcat.canon(td, obj)
    parts = arcat.summands(c)
    reps = []
    for p in parts:
        if arcat.is_shifted(p):
            raise ValueError("shifted projectives have no representation")
        if p.kind == "H":
            reps.append(band_module(td, p.args[0], F, lam))
        else:
            reps.append(string_module(td, *string_interval(td, p), F))
    out = reps[0]
    for r in reps[1:]:
        out = direct_sum(out, r)
    return out


# ---------------------------------------------------------------------------
# counting


def _check_order(rep: FFRep):
    for s, t in rep.arrows:
        if s >= t:
            raise ValueError("vertex order is not topological")


def count_subreps(rep: FFRep, e: Sequence[int]) -> int:
    """Number of subrepresentations with dimension vector e."""
    e = tuple(e)
    if any(x < 0 or x > d for x, d in zip(e, rep.dims)):
        return 0
    if _is_band_shaped(rep):
        return _band_count(rep, e)
    return _brute_count(rep, e)


def _brute_count(rep: FFRep, e: tuple[int, ...]) -> int:
    _check_order(rep)
    F, N = rep.field, len(rep.dims)
    incoming = [[] for _ in range(N)]
    for (s, t), M in zip(rep.arrows, rep.maps):
        incoming[t].append((s, M))

    def required(t, chosen):
        imgs = []
        for s, M in incoming[t]:
            for u in chosen[s]:
                imgs.append(mat_vec(F, M, u))
        return rref(F, imgs, rep.dims[t])

    def rec(t, chosen):
        base, piv = required(t, chosen)
        if len(base) > e[t]:
            return 0
        if t == N - 1:
            return gaussian_binomial_int(rep.dims[t] - len(base), e[t] - len(base), F.size)
        total = 0
        for U in subspaces_containing(F, rep.dims[t], e[t], base, piv):
            chosen.append(U)
            total += rec(t + 1, chosen)
            chosen.pop()
        return total

    return rec(0, [])


def _is_band_shaped(rep: FFRep) -> bool:
    m = rep.dims[0]
    if any(d != m for d in rep.dims) or m == 0:
        return False
    ident = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    return all(M == ident for M in rep.maps[:-1])


def _band_fibers(rep: FFRep, e1: int) -> Counter:
    """w -> number of e1-dim subspaces U of the first vertex with dim(U + TU) = w."""
    F, m = rep.field, rep.dims[0]
    T = rep.maps[-1]
    out: Counter = Counter()
    for U in subspaces_containing(F, m, e1, [], []):
        imgs = [mat_vec(F, T, u) for u in U]
        w = len(rref(F, list(U) + imgs, m)[0])
        out[w] += 1
    return out


def _band_chain_factor(e: Sequence[int]) -> tuple[int, ...] | None:
    """Chains U_1 <= ... <= U_N inside a fixed U_N, given U_1 (polynomial in s)."""
    N = len(e)
    if any(e[j] > e[j + 1] for j in range(N - 1)):
        return None
    poly: tuple[int, ...] = (1,)
    for j in range(1, N - 1):
        poly = poly_mul(poly, gaussian_binomial_poly(e[N - 1] - e[j - 1], e[j] - e[j - 1]))
    return poly


def _band_count(rep: FFRep, e: tuple[int, ...]) -> int:
    chain = _band_chain_factor(e)
    if chain is None:
        return 0
    s, m, top = rep.field.size, rep.dims[0], e[-1]
    fib = _band_fibers(rep, e[0])
    inner = sum(cnt * gaussian_binomial_int(m - w, top - w, s) for w, cnt in fib.items())
    return poly_eval(chain, s) * inner


# ---------------------------------------------------------------------------
# polynomials in s


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def poly_shift(a: Sequence[int], k: int) -> tuple[int, ...]:
    return _trim([0] * k + list(a))


def poly_eval(a: Sequence[int], s: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * s + c
    return acc


def _trim(a) -> tuple[int, ...]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return tuple(a) if a else (0,)


def interpolate(points: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """Exact Lagrange interpolation; raises if coefficients are not integers."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t in range(k):
            coeffs[t] += yi * basis[t] / denom
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationMismatch("interpolated coefficients are not integers")
    return _trim(int(c) for c in coeffs)


@dataclass(frozen=True)
class CountPolynomial:
    coeffs: tuple[int, ...]
    method: str
    samples: tuple[tuple[int, int], ...] = ()
    checked: bool = False

    def __call__(self, s: int) -> int:
        return poly_eval(self.coeffs, s)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def to_json_obj(self) -> dict:
        return {"coeffs": list(self.coeffs), "method": self.method,
                "samples": [list(p) for p in self.samples], "checked": self.checked}


def degree_bound(rep: FFRep, e: Sequence[int]) -> int:
    """sum_j (e_j - a_j)(v_j - e_j), with a_j a lower bound for the forced part at j."""
    F = rep.field
    N = len(rep.dims)
    forced = [0] * N
    for (s, t), M in zip(rep.arrows, rep.maps):
        rank = len(rref(F, [list(col) for col in zip(*M)] if M and M[0] else [], rep.dims[t])[0]) if rep.dims[s] and rep.dims[t] else 0
        kernel = rep.dims[s] - rank
        forced[t] = max(forced[t], e[s] - kernel)
    return sum(max(e[j] - forced[j], 0) * (rep.dims[j] - e[j]) for j in range(N))


def fit_counts(count_at, deg: int, method: str, sizes: Sequence[int] | None = None) -> CountPolynomial:
    """Sample count_at(s) at deg + 2 prime-square sizes; the last one checks the fit."""
    sizes = list(sizes or SAMPLE_SIZES)
    if len(sizes) < deg + 2:
        raise CapExceeded(f"need {deg + 2} sample fields, have {len(sizes)}")
    pts = [(s, count_at(s)) for s in sizes[: deg + 2]]
    poly = interpolate(pts[:-1])
    s_x, c_x = pts[-1]
    if poly_eval(poly, s_x) != c_x:
        raise InterpolationMismatch(f"extra sample s={s_x}: fitted {poly_eval(poly, s_x)}, counted {c_x}")
    if any(c < 0 for _, c in pts):
        raise InterpolationMismatch("negative count")
    return CountPolynomial(poly, method, tuple(pts), True)


# ---------------------------------------------------------------------------
# fixed points for rigid strings


def _hom_shift_count(N: int, I: tuple[int, int], J: tuple[int, int], sign: int) -> int:
    """#{k with sign(k) = sign : Hom(I, J - N k) has a graph map}, intervals on the cover."""
    i1, i2 = I
    j1, j2 = J
    kmin = -((i2 - j1) // N)  # ceil((j1 - i2) / N)
    kmax = (j2 - i1) // N
    total = 0
    for k in range(kmin, kmax + 1):
        if k == 0 or (k > 0) != (sign > 0):
            continue
        a, b = j1 - N * k, j2 - N * k
        if i1 < a and _edge_forward(N, a - 1):
            continue
        if a < i1 and not _edge_forward(N, i1 - 1):
            continue
        if b < i2 and not _edge_forward(N, b):
            continue
        if i2 < b and _edge_forward(N, i2):
            continue
        total += 1
    return total


def string_fixed_points(N: int, a: int, b: int) -> dict[tuple[int, ...], tuple[Counter, Counter]]:
    """For each e, the multisets of positive and negative tangent weights counts.

    Fixed points are the successor-closed subsets S of [a, b]. The tangent space
    Hom(U, M/U) splits into graph maps between runs of S and runs of the
    complement, shifted by multiples of N; the sign of the shift gives the weight.
    """
    caps = get_caps()
    f_plus = lru_cache(maxsize=None)(lambda I, J: _hom_shift_count(N, I, J, 1))
    f_minus = lru_cache(maxsize=None)(lambda I, J: _hom_shift_count(N, I, J, -1))
    out: dict[tuple[int, ...], tuple[Counter, Counter]] = {}
    e = [0] * N
    ins: list[tuple[int, int]] = []
    outs: list[tuple[int, int]] = []
    leaves = 0

    def close(run, member, plus, minus):
        if member:
            minus += sum(f_minus(run, J) for J in outs)
            ins.append(run)
        else:
            plus += sum(f_plus(I, run) for I in ins)
            outs.append(run)
        return plus, minus

    def unclose(member):
        (ins if member else outs).pop()

    def rec(z, member, start, plus, minus):
        nonlocal leaves
        if member:
            e[z % N] += 1
        if z == b:
            p2, m2 = close((start, z), member, plus, minus)
            key = tuple(e)
            slot = out.get(key)
            if slot is None:
                slot = out[key] = (Counter(), Counter())
            slot[0][p2] += 1
            slot[1][m2] += 1
            unclose(member)
            leaves += 1
            if leaves > caps["fixed_points"]:
                raise CapExceeded("too many fixed points")
        else:
            fwd = _edge_forward(N, z)
            options = ([True] if member else [False, True]) if fwd else ([True, False] if member else [False])
            for nxt in options:
                if nxt == member:
                    rec(z + 1, nxt, start, plus, minus)
                else:
                    p2, m2 = close((start, z), member, plus, minus)
                    rec(z + 1, nxt, z + 1, p2, m2)
                    unclose(member)
        if member:
            e[z % N] -= 1

    import sys

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * (b - a) + 1000))
    for first in (False, True):
        rec(a, first, a, 0, 0)
    return out


def _counter_poly(c: Counter) -> tuple[int, ...]:
    out = [0] * (max(c) + 1)
    for k, x in c.items():
        out[k] += x
    return _trim(out)


def _fixed_point_table(td: TypeData, c: Obj) -> dict[tuple[int, ...], CountPolynomial]:
    a, b = string_interval(td, c)
    v = arcat.object_dim(td, c)
    raw = string_fixed_points(td.size, a, b)
    table = {}
    for e, (plus, minus) in raw.items():
        if plus != minus:
            raise InterpolationMismatch(f"opposite cell decompositions disagree at e={e}")
        dim = arcat.ordinary_euler(td, e, [x - y for x, y in zip(v, e)])
        if max(plus) + min(minus) != dim or max(minus) + min(plus) != dim:
            raise InterpolationMismatch(f"cell dimensions do not add up at e={e}")
        table[e] = CountPolynomial(_counter_poly(plus), "fixed-point", (), True)
    return table


# ---------------------------------------------------------------------------
# tables of count polynomials


def _all_dims(v: Sequence[int]):
    return itertools.product(*(range(x + 1) for x in v))


def _band_table(td: TypeData, m: int) -> dict[tuple[int, ...], CountPolynomial]:
    """|Gr_e R_{E(lam), m}|: chain factor times a sum over w of fiber counts."""
    table = {}
    fib_polys: dict[tuple[int, int], tuple[int, ...]] = {}
    for e1 in range(m + 1):
        deg = e1 * (m - e1)
        fibs = {}

        def fib_at(s, e1=e1, fibs=fibs):
            F = small_field(s)
            rep = band_module(td, m, F)
            fibs[s] = _band_fibers(rep, e1)
            return sum(fibs[s].values())

        fit_counts(fib_at, deg, "band")
        ws = sorted({w for c in fibs.values() for w in c})
        for w in ws:
            pts = [(s, fibs[s][w]) for s in sorted(fibs)]
            poly = interpolate(pts[:-1])
            if poly_eval(poly, pts[-1][0]) != pts[-1][1]:
                raise InterpolationMismatch(f"band fiber e1={e1} w={w}")
            fib_polys[(e1, w)] = poly
    N = td.size
    for e in _all_dims((m,) * N):
        chain = _band_chain_factor(e)
        if chain is None:
            continue
        inner: tuple[int, ...] = (0,)
        for (e1, w), p in fib_polys.items():
            if e1 == e[0] and w <= e[-1]:
                inner = poly_add(inner, poly_mul(p, gaussian_binomial_poly(m - w, e[-1] - w)))
        total = poly_mul(chain, inner)
        if total != (0,):
            table[tuple(e)] = CountPolynomial(total, "band", (), True)
    return table


def _brute_table(td: TypeData, c: Obj) -> dict[tuple[int, ...], CountPolynomial]:
    caps = get_caps()
    v = arcat.object_dim(td, c)
    if max(v) > caps["vertex_dim"]:
        raise CapExceeded(f"{c}: dimension {max(v)} exceeds the per-vertex cap {caps['vertex_dim']}")
    reps: dict[int, FFRep] = {}

    def rep_at(s):
        if s not in reps:
            reps[s] = build_module(td, c, small_field(s))
        return reps[s]

    table = {}
    sizes = SAMPLE_SIZES[: caps["samples"]]
    for e in _all_dims(v):
        deg = degree_bound(rep_at(4), e)
        poly = fit_counts(lambda s, e=e: count_subreps(rep_at(s), e), deg, "interpolation", sizes)
        if poly.coeffs != (0,):
            table[tuple(e)] = poly
    return table


def _sum_table(td: TypeData, parts: Sequence[Obj]) -> dict[tuple[int, ...], CountPolynomial] | None:
    """Fold V + W with Ext^1(W, V) = 0:
    |Gr_e(V + W)| = sum |Gr_e' V| |Gr_e'' W| s^{<e'', v - e'>}."""
    order: list[Obj] = []
    rest = list(parts)
    while rest:
        for i, w in enumerate(rest):
            if all(arcat.homext_dims(td, w, x)[1] == 0 for x in order):
                order.append(rest.pop(i))
                break
        else:
            return None
    acc = grassmannian_table(td, order[0])
    vdim = arcat.object_dim(td, order[0])
    for w in order[1:]:
        tw = grassmannian_table(td, w)
        new: dict[tuple[int, ...], tuple[int, ...]] = {}
        for e1, p1 in acc.items():
            rest_v = [x - y for x, y in zip(vdim, e1)]
            for e2, p2 in tw.items():
                k = arcat.ordinary_euler(td, e2, rest_v)
                if k < 0:
                    raise InterpolationMismatch("negative Hom dimension in direct-sum fold")
                key = tuple(x + y for x, y in zip(e1, e2))
                term = poly_shift(poly_mul(p1.coeffs, p2.coeffs), k)
                new[key] = poly_add(new.get(key, (0,)), term)
        acc = {e: CountPolynomial(p, "direct-sum", (), True) for e, p in new.items()}
        vdim = tuple(x + y for x, y in zip(vdim, arcat.object_dim(td, w)))
    return acc


@lru_cache(maxsize=None)
def _table_cached(n: int, c: Obj) -> dict[tuple[int, ...], CountPolynomial]:
    td = arcat.build_data(n)
    parts = arcat.summands(c)
    if len(parts) > 1:
        t = _sum_table(td, parts)
        if t is not None:
            return t
        return _brute_table(td, c)
    if c.kind == "H":
        return _band_table(td, c.args[0])
    if c.kind == "T" or arcat.is_regular_rigid_indecomposable(td, c):
        return _fixed_point_table(td, c)
    return _brute_table(td, c)


def grassmannian_table(td: TypeData, obj: Obj) -> dict[tuple[int, ...], CountPolynomial]:
    """e -> |Gr_e V| as a polynomial in s, for all e with a nonempty Grassmannian."""
    c = arcat.canon(td, obj)
    mods = [p for p in arcat.summands(c) if not arcat.is_shifted(p)]
    if len(mods) != len(arcat.summands(c)):
        raise ValueError("shifted projectives have no quiver Grassmannians")
    return _table_cached(td.n, c)


def count_polynomial(td: TypeData, obj: Obj, e: Sequence[int]) -> CountPolynomial:
    table = grassmannian_table(td, obj)
    return table.get(tuple(e), CountPolynomial((0,), "empty", (), True))


def count_polynomial_sampled(td: TypeData, obj: Obj, e: Sequence[int], sizes: Sequence[int] | None = None) -> CountPolynomial:
    """Interpolate brute-force counts for a single e, whatever the module."""
    c = arcat.canon(td, obj)
    reps: dict[int, FFRep] = {}

    def at(s):
        if s not in reps:
            reps[s] = build_module(td, c, small_field(s))
        return count_subreps(reps[s], e)

    deg = degree_bound(build_module(td, c, small_field(4)), e)
    return fit_counts(at, deg, "interpolation", sizes)


# ---------------------------------------------------------------------------
# Hom spaces


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    A = np.array(rows, dtype=np.int64) % p
    r = 0
    nrows, ncols = A.shape
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i, c]), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        mask = A[:, c] != 0
        mask[r] = False
        if mask.any():
            A[mask] = (A[mask] - np.outer(A[mask, c], A[r])) % p
        r += 1
        if r == nrows:
            break
    return r


def hom_dim(a: FFRep, b: FFRep) -> int:
    """Dimension over the sample field of the space of intertwiners a -> b."""
    if a.field != b.field:
        raise FieldMismatch("Hom between representations over different fields")
    F = a.field
    offs, nvar = [], 0
    for j in range(len(a.dims)):
        offs.append(nvar)
        nvar += a.dims[j] * b.dims[j]

    def var(j, r, c):  # f_j[r][c], r < b.dims[j], c < a.dims[j]
        return offs[j] + r * a.dims[j] + c

    rows = []
    for (s, t), Ma, Mb in zip(a.arrows, a.maps, b.maps):
        for r in range(b.dims[t]):
            for c in range(a.dims[s]):
                row = [0] * nvar
                for x in range(a.dims[t]):
                    if Ma[x][c]:
                        row[var(t, r, x)] = F.add[row[var(t, r, x)]][Ma[x][c]]
                for y in range(b.dims[s]):
                    if Mb[r][y]:
                        row[var(s, y, c)] = F.add[row[var(s, y, c)]][F.neg[Mb[r][y]]]
                if any(row):
                    rows.append(row)
    if all(x < F.p for row in rows for x in row):
        # rank is unchanged by extending scalars from the prime field
        rank = _rank_mod_p(rows, F.p)
    else:
        rank = len(rref(F, rows, nvar)[0])
    return nvar - rank
