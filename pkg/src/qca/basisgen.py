"""The bases B (first-kind Chebyshev) and S (second-kind), their Z^{2n}
indexing, standard-monomial expansion, and positivity/atomicity probes."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import arcat
from .arcat import Obj, TypeData
from .character import char_of, x_delta
from .chebyshev import cheb_first, cheb_second, eval_at
from .seed import expand_in_cluster, explore, initial_seed
from .torus import ScalarLaurent, TorusElement


class NotInSpan(ArithmeticError):
    pass


class BoxError(ValueError):
    pass


Vec = tuple[int, ...]


def r_weight(a: Sequence[int]) -> int:
    return sum(x for x in a if x > 0)


@dataclass(frozen=True)
class BasisElement:
    kind: str                      # "rigid" or "chebyshev"
    summands: tuple[Obj, ...]      # rigid summands (rigid) or regular rigid E (chebyshev)
    element: TorusElement = field(compare=False, repr=False)
    index: Vec
    cheb: tuple[str, int] | None = None  # ("F" | "S", m)

    @property
    def label(self) -> str:
        body = " + ".join(arcat.format_obj(s) for s in self.summands)
        if self.kind == "rigid":
            return f"X[{body}]" if body else "1"
        k, m = self.cheb
        return f"{k}_{m}(X_delta)" + (f" * X[{body}]" if body else "")

    def to_json_obj(self) -> dict:
        out = {"label": self.label, "kind": self.kind, "index": list(self.index),
               "element": self.element.to_json_obj()}
        if self.cheb:
            out["chebyshev"] = {"kind": self.cheb[0], "m": self.cheb[1]}
        return out


# ---------------------------------------------------------------------------
# enumeration


def parse_box(text: str, size: int) -> tuple[Vec, Vec]:
    """'-2..2' (every coordinate) or '-1..1,0..2,...' (per coordinate)."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == 1:
        parts = parts * size
    if len(parts) != size:
        raise BoxError(f"box needs 1 or {size} ranges")
    lo, hi = [], []
    for p in parts:
        try:
            a, b = p.split("..")
            lo.append(int(a))
            hi.append(int(b))
        except ValueError as exc:
            raise BoxError(f"bad range {p!r}") from exc
        if lo[-1] > hi[-1]:
            raise BoxError(f"empty range {p!r}")
    return tuple(lo), tuple(hi)


def _in_box(v, lo, hi) -> bool:
    return all(a <= x <= b for x, a, b in zip(v, lo, hi))


def _rigid_candidates(td: TypeData, bound: Vec) -> list[Obj]:
    """Indecomposable rigid modules with dimension vector <= bound."""
    out = arcat.transjective_modules(td, bound)
    if td.n >= 2:
        for l in range(1, arcat.tube_rank(td)):
            for i in range(1, arcat.tube_rank(td) + 1):
                o = Obj("R", (i, l))
                if all(x <= y for x, y in zip(arcat.object_dim(td, o), bound)):
                    out.append(o)
    return sorted(set(out))


def _compatible(td: TypeData, a: Obj, b: Obj) -> bool:
    return arcat.homext_dims(td, a, b)[1] == 0 and arcat.homext_dims(td, b, a)[1] == 0


def rigid_modules(td: TypeData, bound: Vec, pool: Sequence[Obj] | None = None) -> list[tuple[Obj, ...]]:
    """Multisets of pairwise Ext-orthogonal rigid indecomposables with dim <= bound."""
    cands = list(pool) if pool is not None else _rigid_candidates(td, bound)
    cands = [c for c in cands if _compatible(td, c, c)]
    dims = {c: arcat.object_dim(td, c) for c in cands}
    out: list[tuple[Obj, ...]] = []

    def rec(start, chosen, total):
        out.append(tuple(chosen))
        for k in range(start, len(cands)):
            c = cands[k]
            new = tuple(x + y for x, y in zip(total, dims[c]))
            if any(x > y for x, y in zip(new, bound)):
                continue
            if c not in chosen and not all(_compatible(td, c, d) for d in set(chosen)):
                continue
            chosen.append(c)
            rec(k, chosen, new)
            chosen.pop()

    rec(0, [], (0,) * td.size)
    return out


def _rigid_element(td: TypeData, parts: tuple[Obj, ...]) -> TorusElement:
    if not parts:
        return TorusElement.one(td.lam)
    return char_of(td, arcat.DirectSum(*parts))


def chebyshev_element(td: TypeData, kind: str, m: int, E: tuple[Obj, ...]) -> TorusElement:
    """P_m(X_delta) X_E with the commutation twist q^{-Lambda(A m delta, A dim E)/2}."""
    poly = cheb_first(m) if kind == "F" else cheb_second(m)
    xe = _rigid_element(td, E)
    dimE = arcat.object_dim(td, arcat.DirectSum(*E)) if E else (0,) * td.size
    twist = td.lam.pair(td.a_map([m] * td.size), td.a_map(dimE))
    return (eval_at(poly, x_delta(td)) * xe).shift(-twist)


def enumerate_basis(td: TypeData, box: tuple[Vec, Vec], which: str = "B") -> list[BasisElement]:
    """All elements of B (which='B') or S (which='S') with index in the box."""
    if which not in ("B", "S"):
        raise ValueError("which must be 'B' or 'S'")
    lo, hi = box
    N = td.size
    bound = tuple(max(h, 0) for h in hi)
    out: list[BasisElement] = []
    for mods in rigid_modules(td, bound):
        v = arcat.object_dim(td, arcat.DirectSum(*mods)) if mods else (0,) * N
        zero = [j for j in range(N) if v[j] == 0]
        ranges = [range(0, max(-lo[j], 0) + 1) if j in zero else range(0, 1) for j in range(N)]
        for mult in itertools.product(*ranges):
            idx = tuple(v[j] - mult[j] for j in range(N))
            if not _in_box(idx, lo, hi):
                continue
            shifted = tuple(arcat.ShiftProj(j + 1) for j in range(N) for _ in range(mult[j]))
            parts = tuple(sorted(mods + shifted))
            out.append(BasisElement("rigid", parts, _rigid_element(td, parts), idx))
    if td.n >= 1:
        pool = [c for c in _rigid_candidates(td, bound) if c.kind == "R"]
        regular = rigid_modules(td, bound, pool) if pool else [()]
        for m in itertools.count(1):
            if m > max(hi):
                break
            for E in regular:
                dimE = arcat.object_dim(td, arcat.DirectSum(*E)) if E else (0,) * N
                idx = tuple(m + x for x in dimE)
                if _in_box(idx, lo, hi):
                    out.append(BasisElement("chebyshev", tuple(E), chebyshev_element(td, "F" if which == "B" else "S", m, tuple(E)),
                                            idx, ("F" if which == "B" else "S", m)))
    out.sort(key=lambda b: (r_weight(b.index), b.index))
    seen = {}
    for b in out:
        if b.index in seen:
            raise AssertionError(f"index {b.index} hit twice: {seen[b.index].label}, {b.label}")
        seen[b.index] = b
    return out


def box_points(box: tuple[Vec, Vec]) -> Iterable[Vec]:
    lo, hi = box
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


# ---------------------------------------------------------------------------
# standard monomials


@lru_cache(maxsize=None)
def _standard_factor(n: int, i: int, sign: int) -> TorusElement:
    td = arcat.build_data(n)
    if sign > 0:
        return char_of(td, arcat.Simple(i))
    return char_of(td, arcat.ShiftProj(i))


@lru_cache(maxsize=None)
def _standard_monomial(n: int, a: Vec) -> TorusElement:
    td = arcat.build_data(n)
    out = TorusElement.one(td.lam)
    for i, x in enumerate(a):
        if x > 0:
            out = out * _standard_factor(n, i + 1, 1) ** x
    for i, x in enumerate(a):
        if x < 0:
            out = out * _standard_factor(n, i + 1, -1) ** (-x)
    return out


def standard_monomial(td: TypeData, a: Sequence[int]) -> TorusElement:
    """prod_i X_{S_i}^{[a_i]+} prod_i X_{P_i[1]}^{[-a_i]+}, in this order."""
    return _standard_monomial(td.n, tuple(int(x) for x in a))


def g_vector(td: TypeData, a: Sequence[int]) -> Vec:
    """Exponent of the extremal term of the standard monomial a."""
    out = np.zeros(td.size, dtype=np.int64)
    for i, x in enumerate(a):
        if x > 0:
            out -= x * td.A[:, i]
        elif x < 0:
            out[i] += -x
    return tuple(int(v) for v in out)


@lru_cache(maxsize=None)
def _g_inverse_data(n: int):
    td = arcat.build_data(n)
    N = td.size
    mats = []
    for pattern in itertools.product((1, -1), repeat=N):
        cols = [(-td.A[:, i]) if s > 0 else np.eye(N, dtype=np.int64)[:, i] for i, s in enumerate(pattern)]
        M = np.stack(cols, axis=1)
        mats.append((pattern, np.linalg.inv(M.astype(float)), M))
    return mats


def solve_g(td: TypeData, g: Sequence[int]) -> Vec:
    """The unique a with g_vector(a) = g."""
    gv = np.asarray(g, dtype=np.int64)
    for pattern, Minv, M in _g_inverse_data(td.n):
        c = np.rint(Minv @ gv).astype(np.int64)
        if not np.array_equal(M @ c, gv) or (c < 0).any():
            continue
        a = tuple(int(x) if s > 0 else -int(x) for x, s in zip(c, pattern))
        if tuple(g_vector(td, a)) == tuple(int(x) for x in g):
            return a
    raise NotInSpan(f"{tuple(g)} is not the g-vector of a standard monomial")


@lru_cache(maxsize=None)
def _phi_matrix(n: int) -> np.ndarray:
    td = arcat.build_data(n)
    return -np.linalg.inv(td.B.astype(float))


def standard_expand(td: TypeData, elem: TorusElement, max_steps: int = 5000) -> list[tuple[Vec, ScalarLaurent]]:
    """Coefficients of elem in the standard monomial basis.

    Every standard monomial is pointed: X^{g(a)} plus terms X^{g(a) - B e},
    e >= 0. The term of elem minimizing sum(-B^{-1} w) is therefore some
    g(a) with no cancellation, and is peeled off first.
    """
    phi = _phi_matrix(td.n)
    rem = elem
    out: dict[Vec, ScalarLaurent] = {}
    steps = 0
    while not rem.is_zero():
        steps += 1
        if steps > max_steps:
            raise NotInSpan("standard-monomial reduction did not terminate")
        supp = rem.support()
        scores = (phi @ np.array(supp, dtype=float).T).sum(axis=0)
        best = min(range(len(supp)), key=lambda k: (round(scores[k], 6), supp[k]))
        w = supp[best]
        a = solve_g(td, w)
        mono = standard_monomial(td, a)
        lead = mono.coefficient(w)
        if not lead.is_unit():
            raise NotInSpan(f"standard monomial {a} has non-unit extremal coefficient")
        c = rem.coefficient(w).exact_div_unit(lead)
        out[a] = out.get(a, ScalarLaurent()) + c
        rem = rem - mono.scale(c)
    return sorted(((a, c) for a, c in out.items() if not c.is_zero()), key=lambda t: (-r_weight(t[0]), t[0]))


@dataclass(frozen=True)
class ShapeReport:
    top: Vec
    top_coefficient: ScalarLaurent
    pure_power: bool
    lower_ok: bool
    keys: int

    @property
    def ok(self) -> bool:
        return self.pure_power and self.lower_ok


def expansion_shape(td: TypeData, obj: Obj) -> ShapeReport:
    """Leading key dim M with coefficient q^{l/2}; every other key has smaller r."""
    dim = arcat.object_dim(td, obj)
    exp = dict(standard_expand(td, char_of(td, obj)))
    top = exp.get(dim, ScalarLaurent())
    pure = len(top.terms) == 1 and next(iter(top.terms.values())) == 1
    lower = all(r_weight(a) < r_weight(dim) for a in exp if a != dim)
    return ShapeReport(dim, top, pure, lower, len(exp))


# ---------------------------------------------------------------------------
# probes


@dataclass
class PositivityReport:
    seeds: int
    negatives: list = field(default_factory=list)  # (mutation sequence, exponent, coefficient)

    @property
    def ok(self) -> bool:
        return not self.negatives

    def to_json_obj(self) -> dict:
        return {"seeds": self.seeds, "ok": self.ok,
                "negatives": [{"sequence": list(s), "a": list(a), "coeff": repr(c)} for s, a, c in self.negatives]}


@lru_cache(maxsize=None)
def _seeds(n: int, depth: int):
    td = arcat.build_data(n)
    return tuple(explore(initial_seed(td.lam, td.b), depth))


def seeds_within(td: TypeData, depth: int):
    return _seeds(td.n, depth)


def positivity_probe(td: TypeData, elem: TorusElement, depth: int, stop_at_first: bool = False) -> PositivityReport:
    seeds = seeds_within(td, depth)
    rep = PositivityReport(len(seeds))
    for s in seeds:
        exp = expand_in_cluster(elem, s)
        for a in sorted(exp):
            c = exp[a]
            if not c.is_nonnegative():
                rep.negatives.append((s.history, a, c))
                if stop_at_first:
                    return rep
    return rep


@dataclass
class AtomicityReport:
    rows: list = field(default_factory=list)  # (sequence, leading key, labels sharing it)

    def to_json_obj(self) -> dict:
        return {"rows": [{"sequence": list(s), "leading": list(a) if a is not None else None, "shared_by": list(sh)}
                         for s, a, sh in self.rows]}


def atomicity_probe(td: TypeData, elem: BasisElement, candidates, others: Sequence[BasisElement]) -> AtomicityReport:
    """Per cluster: is elem's lex-leading monomial present in another element's expansion?"""
    rep = AtomicityReport()
    for s in candidates:
        exp = expand_in_cluster(elem.element, s)
        keys = [a for a, c in exp.items() if c.at_one() != 0 or not c.is_zero()]
        if not keys:
            rep.rows.append((s.history, None, []))
            continue
        lead = max(keys)
        shared = []
        for o in others:
            if o.index == elem.index:
                continue
            if lead in expand_in_cluster(o.element, s):
                shared.append(o.label)
        rep.rows.append((s.history, lead, shared))
    return rep
