"""Registry of exact checks.

Each check is data: an id, a family, parameters, witness objects and a builder.
Builders return an ``Identity`` (two TorusElements compared exactly) or a
``Predicate`` (a boolean with a short detail string). Left and right sides
come from different code paths: products of characters against characters of
other objects, Chebyshev evaluation against characters, sigma via frame
substitution against characters of shifted objects, and so on.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from . import arcat
from .arcat import (
    DirectSum,
    HomRegular,
    Inj,
    Obj,
    PreInj,
    PreProj,
    Proj,
    ShiftProj,
    Simple,
    TauPower,
    Transjective,
    TubeE,
    TubeRegular,
    TypeData,
)
from .basisgen import (
    box_points,
    chebyshev_element,
    enumerate_basis,
    expansion_shape,
    parse_box,
    positivity_probe,
    seeds_within,
)
from .character import char_of, x_delta
from .chebyshev import cheb_first, cheb_second, eval_at
from .seed import check_compatible, expand_in_cluster, explore, initial_seed, is_sink_or_source, mutate
from .shiftauto import sigma_apply
from .torus import ScalarLaurent, TorusElement


class UnknownCheck(KeyError):
    pass


@dataclass
class Identity:
    lhs: TorusElement
    rhs: TorusElement


@dataclass
class Predicate:
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CheckSpec:
    id: str
    family: str
    n: int
    params: tuple = ()
    witnesses: tuple = ()
    builder: Callable = field(default=None, compare=False, repr=False)
    description: str = ""

    def build(self):
        return self.builder(arcat.build_data(self.n), **dict(self.params))


@dataclass
class CheckResult:
    id: str
    family: str
    n: int
    passed: bool
    detail: str = ""
    diff: TorusElement | None = None
    seconds: float = 0.0

    def to_json_obj(self) -> dict:
        out = {"id": self.id, "family": self.family, "n": self.n, "status": "pass" if self.passed else "fail",
               "detail": self.detail, "seconds": round(self.seconds, 4)}
        if self.diff is not None:
            out["diff"] = self.diff.to_json_obj()
        return out


# ---------------------------------------------------------------------------
# helpers


def _X(td, o):
    return char_of(td, o)


def _v(k):
    return ScalarLaurent.v(k)


def _comb(td, *pairs) -> TorusElement:
    """sum of v^k X_o over (k, o)."""
    out = TorusElement.zero(td.lam)
    for k, o in pairs:
        out = out + _X(td, o).scale(_v(k))
    return out


def _lam_dims(td, a, b) -> int:
    """Lambda((Id - R^T) a, (Id - R^T) b)."""
    return td.lam.pair(td.a_map(a), td.a_map(b))


def _dim(td, o) -> tuple:
    return arcat.object_dim(td, o)


def _maybe_sum(*objs):
    objs = [o for o in objs if o is not None]
    if not objs:
        return None
    return objs[0] if len(objs) == 1 else DirectSum(*objs)


def _X_or_one(td, o):
    return TorusElement.one(td.lam) if o is None else _X(td, o)


def _inj_shift(td, inj_index_list):
    """I[-1] for a direct sum of indecomposable injectives, as shifted projectives."""
    return [ShiftProj(i) for i in inj_index_list]


def _end_dim(td, o) -> int:
    return arcat.homext_dims(td, o, o)[0]


# ---------------------------------------------------------------------------
# builders


def b_involution(td, depth):
    s0 = initial_seed(td.lam, td.b)
    bad = 0
    seeds = explore(s0, depth)
    for s in seeds:
        for k in range(1, td.size + 1):
            if not mutate(mutate(s, k), k).same_as(s):
                bad += 1
    return Predicate(bad == 0, f"{len(seeds)} seeds, {bad} failures")


def b_compatible(td, depth):
    s0 = initial_seed(td.lam, td.b)
    bad = 0
    seeds = explore(s0, depth)
    for s in seeds:
        d = check_compatible(s.pair.lam, s.pair.b)
        if d != (2,) * td.size:
            bad += 1
    return Predicate(bad == 0, f"{len(seeds)} seeds, B^T Lambda = 2 Id in all but {bad}")


@lru_cache(maxsize=None)
def _bfs_variables(n: int, depth: int) -> frozenset:
    td = arcat.build_data(n)
    seeds = explore(initial_seed(td.lam, td.b), depth, is_sink_or_source)
    return frozenset(x for s in seeds for x in s.vars)


def b_t21(td, obj):
    x = _X(td, obj)
    ok = x in _bfs_variables(td.n, 6 * td.n)
    return Predicate(ok, "character found among mutation-generated cluster variables" if ok else "not found")


def b_t22(td, V, W, E, A=None, D=None, I=()):
    """X_V X_W = q^{L/2} X_E + q^{L/2 + <V,W>/2 - <A,D>/2} X_{D + A + I[-1]}."""
    dv, dw = _dim(td, V), _dim(td, W)
    L = _lam_dims(td, dv, dw)
    vw = arcat.euler_form(td, dv, dw)
    ad = arcat.euler_form(td, _dim(td, A), _dim(td, D)) if A is not None and D is not None else 0
    hyp = []
    ext = arcat.homext_dims(td, V, W)[1]
    if ext != _end_dim(td, V):
        hyp.append(f"dim_End Ext^1(V,W) = {ext}/{_end_dim(td, V)}")
    for x in (A, D):
        for i in I:
            if x is not None and arcat.homext_dims(td, x, Inj(i))[0]:
                hyp.append("Hom(A + D, I) != 0")
    if A is not None and D is not None and arcat.homext_dims(td, A, D)[1]:
        hyp.append("Ext^1(A, D) != 0")
    lhs = _X(td, V) * _X(td, W)
    second = _maybe_sum(D, A, *_inj_shift(td, I))
    rhs = _X(td, E).scale(_v(L)) + _X_or_one(td, second).scale(_v(L + vw - ad))
    if hyp:
        return Predicate(False, "hypotheses fail: " + "; ".join(hyp))
    return Identity(lhs, rhs)


def b_t23(td, W, I, G=None, I2=(), P2=(), F=None):
    """X_W X_{I[-1]} = q^{-L/2} X_{G + I'[-1]} + q^{-L/2 - dim End(I)/2} X_{F + P'[1]}."""
    dw, di = _dim(td, W), _dim(td, Inj(I))
    L = _lam_dims(td, dw, di)
    end = _end_dim(td, Inj(I))
    hyp = []
    if arcat.homext_dims(td, W, Inj(I))[0] != end:
        hyp.append("Hom(W, I) is not one-dimensional over End(I)")
    if arcat.homext_dims(td, Proj(I), W)[0] != _end_dim(td, Proj(I)):
        hyp.append("Hom(P, W) is not one-dimensional over End(P)")
    for p in P2:
        if F is not None and arcat.homext_dims(td, Proj(p), F)[0]:
            hyp.append("Hom(P', F) != 0")
    for i in I2:
        if G is not None and arcat.homext_dims(td, G, Inj(i))[0]:
            hyp.append("Hom(G, I') != 0")
    if hyp:
        return Predicate(False, "hypotheses fail: " + "; ".join(hyp))
    lhs = _X(td, W) * _X(td, ShiftProj(I))
    a = _maybe_sum(G, *_inj_shift(td, I2))
    b = _maybe_sum(F, *[ShiftProj(p) for p in P2])
    rhs = _X_or_one(td, a).scale(_v(-L)) + _X_or_one(td, b).scale(_v(-L - end))
    return Identity(lhs, rhs)


def b_t24(td, V, W):
    dv, dw = _dim(td, V), _dim(td, W)
    L = _lam_dims(td, dv, dw)
    xv, xw = _X(td, V), _X(td, W)
    if arcat.homext_dims(td, V, W)[1]:
        return Predicate(False, "Ext^1(V, W) != 0")
    first = xv * xw == _X(td, DirectSum(V, W)).scale(_v(L))
    if arcat.homext_dims(td, W, V)[1]:
        return Predicate(first, "product formula only (Ext^1(W, V) != 0)")
    second = xv * xw == (xw * xv).scale(_v(2 * L))
    return Predicate(first and second, "product formula and quasi-commutation")


def b_t25(td, V, I):
    dv = _dim(td, V)
    di = tuple(sum(x) for x in zip(*(arcat.inj_dim(td, i) for i in I)))
    L = _lam_dims(td, dv, di)
    mono = TorusElement.monomial(td.lam, td.a_map(di))
    xv = _X(td, V)
    a = xv * mono == _X(td, DirectSum(V, *_inj_shift(td, I))).scale(_v(-L))
    b = xv * mono == (mono * xv).scale(_v(-2 * L))
    return Predicate(a and b, "shifted product formula and quasi-commutation")


def b_p31(td):
    xd = x_delta(td)
    return Identity(xd.bar(), xd)


def b_p32(td):
    N = td.size
    lhs = _X(td, Inj(1)) * _X(td, Proj(2))
    rhs = x_delta(td).scale(_v(1)) + (_X(td, ShiftProj(N)) * _X(td, Proj(3))).scale(_v(-2))
    return Identity(lhs, rhs)


def b_c33(td):
    N = td.size
    pool = _bfs_variables(td.n, 6 * td.n)
    parts = [_X(td, Inj(1)), _X(td, Proj(2)), _X(td, ShiftProj(N)), _X(td, Proj(3))]
    if not all(p in pool for p in parts):
        return Predicate(False, "a factor is not a mutation-generated cluster variable")
    expr = (parts[0] * parts[1]).scale(_v(-1)) - (parts[2] * parts[3]).scale(_v(-3))
    return Identity(expr, x_delta(td))


def b_l341(td, l):
    val = _lam_dims(td, _dim(td, PreProj(1, l)), arcat.delta(td))
    return Predicate(val == -1, f"Lambda = {val}")


def b_l342(td, E):
    val = _lam_dims(td, _dim(td, E), arcat.delta(td))
    return Predicate(val == 0, f"Lambda = {val}")


def b_p35(td, i, E):
    el = x_delta(td) ** i * (_X(td, E) if E is not None else TorusElement.one(td.lam))
    return Identity(el.bar(), el)


def b_cheb_bar(td, kind, m, E):
    el = _cheb_at_delta(td.n, kind, m) * _X(td, E)
    return Identity(el.bar(), el)


def b_l35(td, part, l=None):
    N, xd = td.size, x_delta(td)
    if part == 1:
        return Identity(xd * _X(td, ShiftProj(1)), _comb(td, (1, PreProj(1, 0)), (-1, ShiftProj(N))))
    if part == 2:
        return Identity(xd * _X(td, PreProj(1, 0)), _comb(td, (1, PreProj(1, 1)), (-1, ShiftProj(1))))
    return Identity(xd * _X(td, PreProj(1, l)), _comb(td, (1, PreProj(1, l + 1)), (-1, PreProj(1, l - 1))))


def b_l36(td, part, l=None):
    N, xd = td.size, x_delta(td)
    if part == 1:
        return Identity(_X(td, ShiftProj(N)) * xd, _comb(td, (1, Inj(N - 1)), (-1, ShiftProj(1))))
    if part == 2:
        return Identity(_X(td, Inj(N - 1)) * xd, _comb(td, (1, PreInj(N, 1)), (-1, ShiftProj(N))))
    return Identity(_X(td, PreInj(N, l)) * xd, _comb(td, (1, PreInj(N, l + 1)), (-1, PreInj(N, l - 1))))


@lru_cache(maxsize=None)
def _cheb_at_delta(n: int, kind: str, m: int) -> TorusElement:
    td = arcat.build_data(n)
    return eval_at(cheb_first(m) if kind == "F" else cheb_second(m), x_delta(td))


def b_t38(td, part, m, i=None):
    N = td.size
    Fm = _cheb_at_delta(td.n, "F", m)
    if part == 1:
        return Identity(Fm * _X(td, ShiftProj(1)), _comb(td, (m, PreProj(1, m - 1)), (-m, PreInj(N, m - 2))))
    if part == 2:
        return Identity(Fm * _X(td, ShiftProj(i)), _comb(td, (m, PreProj(i, m - 1)), (-m, PreInj(i, m - 1))))
    return Identity(Fm * _X(td, ShiftProj(N)), _comb(td, (m, PreProj(1, m - 2)), (-m, PreInj(N, m - 1))))


def b_p37(td):
    xd = x_delta(td)
    return Identity(sigma_apply(td, xd), xd)


def b_p37_pre(td):
    N = td.size
    return Identity(_X(td, Inj(N)) * x_delta(td), _comb(td, (1, TauPower(Inj(N - 1), 1)), (-1, Inj(1))))


def b_t310(td, i, m):
    n = td.n
    F = _cheb_at_delta(n, "F", 2 * n)
    lhs = F * _X(td, TauPower(Inj(i), m))
    rhs = _comb(td, (2 * n, TauPower(Proj(i), m - 2 * n + 3)), (-2 * n, TauPower(Inj(i), m + 2 * n - 1)))
    return Identity(lhs, rhs)


def b_l43(td, part, m, l=None):
    N = td.size
    T = lambda o: TauPower(o, m)
    if part == 1:
        return Identity(_X(td, T(Inj(1))) * _X(td, T(Simple(2))), _comb(td, (1, T(Inj(2))), (-1, TauPower(Inj(N), m - 1))))
    if part == 2:
        return Identity(_X(td, T(Inj(l))) * _X(td, T(Simple(l + 1))), _comb(td, (1, T(Inj(l + 1))), (-1, T(Inj(l - 1)))))
    if part == 3:
        return Identity(_X(td, T(Inj(N - 1))) * _X(td, T(TubeE(1))), _comb(td, (1, T(Inj(N))), (-1, T(Inj(N - 2)))))
    return Identity(_X(td, T(Inj(N))) * _X(td, T(Simple(2))), _comb(td, (1, TauPower(Inj(1), m + 1)), (-1, T(Inj(N - 1)))))


def b_l44(td, obj):
    rep = expansion_shape(td, obj)
    return Predicate(rep.ok, f"top {rep.top} coefficient {rep.top_coefficient!r}, {rep.keys} keys, "
                             f"pure={rep.pure_power}, lower={rep.lower_ok}")


def _basis_report(td, box, which):
    lo_hi = parse_box(box, td.size)
    els = enumerate_basis(td, lo_hi, which)
    idx = [b.index for b in els]
    distinct = len(set(idx)) == len(idx)
    complete = set(idx) == set(box_points(lo_hi))
    barinv = all(b.element.is_bar_invariant() for b in els)
    return els, distinct, complete, barinv


def b_basis(td, box, which):
    els, distinct, complete, barinv = _basis_report(td, box, which)
    return Predicate(distinct and complete and barinv,
                     f"{len(els)} elements; distinct={distinct} complete={complete} bar-invariant={barinv}")


def b_unitriangular(td, box):
    """B-elements in terms of S-elements: F_1 = S_1 and F_m = S_m - S_{m-2} for m >= 2."""
    lo_hi = parse_box(box, td.size)
    S = {b.index: b.element for b in enumerate_basis(td, lo_hi, "S")}
    B = enumerate_basis(td, lo_hi, "B")
    bad = 0
    for b in B:
        expected = S[b.index]
        if b.kind == "chebyshev" and b.cheb[1] >= 2:
            expected = expected - chebyshev_element(td, "S", b.cheb[1] - 2, b.summands)
        bad += expected != b.element
    return Predicate(bad == 0, f"{len(B)} elements, {bad} mismatches")


def b_positivity(td, what, depth, m=None, sample=None, box="-1..1", seed=0):
    if what in ("F", "S"):
        el = _cheb_at_delta(td.n, what, m)
        rep = positivity_probe(td, el, depth)
        return Predicate(rep.ok, f"{rep.seeds} seeds, {len(rep.negatives)} negative witnesses")
    els = [b for b in enumerate_basis(td, parse_box(box, td.size), "B") if len(b.element) > 1]
    rng = random.Random(seed)
    pick = sorted(rng.sample(range(len(els)), min(sample, len(els))))
    neg = 0
    for k in pick:
        rep = positivity_probe(td, els[k].element, depth)
        neg += len(rep.negatives)
    return Predicate(neg == 0, f"{len(pick)} elements over {len(seeds_within(td, depth))} seeds, {neg} negative witnesses")


def b_p49(td, m, E=None):
    Sm = _cheb_at_delta(td.n, "S", m)
    if E is None:
        return Identity(Sm, _X(td, HomRegular(m)))
    return Identity(Sm * _X(td, E), _X(td, DirectSum(HomRegular(m), E)))


def b_p49_rec(td, m):
    lhs = _X(td, HomRegular(m)) * x_delta(td)
    rhs = _X(td, HomRegular(m + 1)) + (_X(td, HomRegular(m - 1)) if m > 1 else TorusElement.one(td.lam))
    return Identity(lhs, rhs)


def b_a1(td, part, samples=100, seed=0):
    rng = random.Random(seed * 1000 + td.n)
    N, L, A = td.size, td.lam, td.a_map
    bad = 0
    total = 0
    if part == 2:
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                total += 1
                soc = arcat.soc_top(td, j)[0]
                lhs = L.pair(A(arcat.inj_dim(td, j)), A(arcat.inj_dim(td, i)))
                rhs = L.pair(A(arcat.inj_dim(td, j)), A(arcat.proj_dim(td, i))) - 2 * sum(
                    s * p for s, p in zip(soc, arcat.proj_dim(td, i)))
                bad += lhs != rhs
        return Predicate(bad == 0, f"{total} pairs, {bad} failures")
    for _ in range(samples):
        M = [rng.randint(0, 8) for _ in range(N)]
        Nv = [rng.randint(0, 8) for _ in range(N)]
        tM = arcat.tau_dim(td, M)
        if part == 1:
            total += 1
            bad += L.pair(A(tM), A(arcat.tau_dim(td, Nv))) != L.pair(A(M), A(Nv))
            continue
        for i in range(1, N + 1):
            total += 1
            I, P = arcat.inj_dim(td, i), arcat.proj_dim(td, i)
            lhs = L.pair(A(I), A(tM))
            if part == 3:
                soc = arcat.soc_top(td, i)[0]
                bad += lhs != L.pair(A(M), A(I)) + 2 * sum(s * x for s, x in zip(soc, M))
            else:
                bad += lhs != L.pair(A(M), A(P))
    return Predicate(bad == 0, f"{total} instances, {bad} failures")


@lru_cache(maxsize=None)
def _variable_pool(n: int, depth: int) -> tuple:
    td = arcat.build_data(n)
    seeds = explore(initial_seed(td.lam, td.b), depth)
    seen, out = set(), []
    for s in seeds:
        for x in s.vars:
            if x not in seen:
                seen.add(x)
                out.append(x)
    return tuple(out)


def b_a2_mult(td, k, seed=0):
    pool = _variable_pool(td.n, 3)
    rng = random.Random(seed * 7919 + k)
    a, b = rng.sample(range(len(pool)), 2)
    x, y = pool[a], pool[b]
    return Identity(sigma_apply(td, x * y), sigma_apply(td, x) * sigma_apply(td, y))


def b_a2_bar(td, k, seed=0):
    pool = _variable_pool(td.n, 3)
    rng = random.Random(seed * 104729 + k)
    a, b = rng.sample(range(len(pool)), 2)
    el = pool[a] * pool[b]
    return Identity(sigma_apply(td, el.bar()), sigma_apply(td, el).bar())


def b_a2_cheb(td, m):
    F = _cheb_at_delta(td.n, "F", m)
    return Identity(sigma_apply(td, F), F)


def b_a2_objects(td, obj):
    """sigma(X_M) = X_{M[1]} on rigid indecomposables."""
    from .shiftauto import sigma_object

    return Identity(sigma_apply(td, _X(td, obj)), _X(td, sigma_object(td, obj)))


def b_l45(td, obj, depth=3):
    """In a seed containing X_M, no other basis element of the box uses that monomial."""
    x = _X(td, obj)
    seeds = [s for s in seeds_within(td, depth) if x in s.vars]
    if not seeds:
        return Predicate(True, "informational: no seed within depth contains X_M")
    s = seeds[0]
    k = s.vars.index(x)
    key = tuple(int(j == k) for j in range(td.size))
    box = parse_box("-1..1", td.size)
    shared = []
    for b in enumerate_basis(td, box, "B"):
        if b.element == x:
            continue
        if key in expand_in_cluster(b.element, s):
            shared.append(b.label)
    return Predicate(not shared, f"seed {list(s.history)}; shared by {shared[:3]}")


def b_negative(td, which):
    """Negative controls: the correct identity with a perturbed q-power."""
    N = td.size
    if which == "P3.2":
        lhs = _X(td, Inj(1)) * _X(td, Proj(2))
        rhs = x_delta(td).scale(_v(3)) + (_X(td, ShiftProj(N)) * _X(td, Proj(3))).scale(_v(-2))
        return Identity(lhs, rhs)
    if which == "L3.5.1":
        return Identity(x_delta(td) * _X(td, ShiftProj(1)), _comb(td, (1, PreProj(1, 0)), (1, ShiftProj(N))))
    if which == "T3.8":
        F2 = _cheb_at_delta(td.n, "F", 2)
        return Identity(F2 * _X(td, ShiftProj(1)), _comb(td, (2, PreProj(1, 1)), (-4, PreInj(N, 0))))
    if which == "P3.7":
        return Identity(sigma_apply(td, x_delta(td)), x_delta(td).scale(_v(2)))
    raise UnknownCheck(which)


# ---------------------------------------------------------------------------
# registry


def _spec(id, family, n, builder, params=(), witnesses=(), description=""):
    return CheckSpec(id, family, n, tuple(params), tuple(witnesses), builder, description)


def _fmt(o):
    return arcat.format_obj(o).replace(" ", "")


def _small_rigid(td, bound):
    out = [o for o in arcat.transjective_modules(td, bound)]
    if td.n >= 2:
        for l in range(1, arcat.tube_rank(td)):
            for i in range(1, arcat.tube_rank(td) + 1):
                o = TubeRegular(i, l)
                if all(x <= y for x, y in zip(_dim(td, o), bound)):
                    out.append(o)
    return sorted(set(out))


def checks_for(n: int, families: Iterable[str] | None = None, tau_range: int = 2, m_max: int = 5,
               l_max: int = 3, depth: int = 3, seed: int = 0) -> list[CheckSpec]:
    td = arcat.build_data(n)
    N = td.size
    out: list[CheckSpec] = []
    add = out.append

    add(_spec("S.involution", "S", n, b_involution, [("depth", 3)], description="mu_k mu_k = id on seeds within depth 3"))
    add(_spec("S.compatible", "S", n, b_compatible, [("depth", 3)], description="B^T Lambda = 2 Id after mutation"))

    for j in list(range(-2 - tau_range, -1)) + list(range(0, tau_range + 1)):
        for i in range(1, N + 1):
            o = Transjective(i, j)
            add(_spec(f"T2.1.{_fmt(o)}", "T2.1", n, b_t21, [("obj", o)]))

    if n >= 2:
        t22 = [
            ("L4.3.1", dict(V=Inj(1), W=Simple(2), E=Inj(2), I=(N,))),
            ("L3.5.2", dict(V=HomRegular(1), W=Proj(2), E=PreProj(1, 1), I=(1,))),
            ("P3.7", dict(V=Inj(N), W=HomRegular(1), E=TauPower(Inj(N - 1), 1), A=Inj(1))),
        ]
        for l in range(1, l_max + 1):
            t22.append((f"L3.5.3.l{l}", dict(V=HomRegular(1), W=PreProj(1, l), E=PreProj(1, l + 1), D=PreProj(1, l - 1))))
        for i in range(1, N):
            for r in range(1, N - 2):
                i1 = arcat.tube_index(td, i + 1)
                w = dict(V=TubeRegular(i, r), W=TubeE(i1), E=TubeRegular(i1, r + 1))
                if r >= 2:
                    w["A"] = TubeRegular(arcat.tube_index(td, i - 1), r - 1)
                t22.append((f"tube.i{i}r{r}", w))
        for name, w in t22:
            add(_spec(f"T2.2.{name}", "T2.2", n, b_t22, list(w.items()), list(w.items())))
        t23 = [("L3.5.1", dict(W=HomRegular(1), I=1, G=Proj(2), P2=(N,))),
               ("L3.6.1", dict(W=HomRegular(1), I=N, I2=(1,), F=Inj(N - 1)))]
        for i in range(2, N):
            t23.append((f"T3.8.2.i{i}", dict(W=HomRegular(1), I=i, G=PreProj(i, 0), F=PreInj(i, 0))))
        for name, w in t23:
            add(_spec(f"T2.3.{name}", "T2.3", n, b_t23, list(w.items()), list(w.items())))

    bound = (2,) * N
    small = _small_rigid(td, bound)
    size = {o: sum(_dim(td, o)) for o in small}
    for V, W in itertools.product(small, small):
        if size[V] + size[W] > 7:
            continue  # direct sums beyond this fall back to brute-force counting
        if arcat.homext_dims(td, V, W)[1] == 0:
            add(_spec(f"T2.4.{_fmt(V)}.{_fmt(W)}", "T2.4", n, b_t24, [("V", V), ("W", W)]))
    for V in small:
        dv = _dim(td, V)
        free = [i for i in range(1, N + 1) if dv[i - 1] == 0]
        for k in (1, 2):
            for I in itertools.combinations(free, k):
                add(_spec(f"T2.5.{_fmt(V)}.I{''.join(map(str, I))}", "T2.5", n, b_t25, [("V", V), ("I", I)]))

    add(_spec("P3.1", "P3.1", n, b_p31))
    # families whose statements still make sense at n = 1
    for l in range(0, 5):
        add(_spec(f"L3.4.1.l{l}", "L3.4", n, b_l341, [("l", l)]))
    for i in range(0, 4):
        add(_spec(f"P3.5.i{i}.0", "P3.5", n, b_p35, [("i", i), ("E", None)]))
    add(_spec("L3.5.1", "L3.5", n, b_l35, [("part", 1)]))
    add(_spec("L3.5.2", "L3.5", n, b_l35, [("part", 2)]))
    for l in range(1, l_max + 1):
        add(_spec(f"L3.5.3.l{l}", "L3.5", n, b_l35, [("part", 3), ("l", l)]))
    add(_spec("L3.6.1", "L3.6", n, b_l36, [("part", 1)]))
    add(_spec("L3.6.2", "L3.6", n, b_l36, [("part", 2)]))
    for l in range(1, l_max + 1):
        add(_spec(f"L3.6.3.l{l}", "L3.6", n, b_l36, [("part", 3), ("l", l)]))
    for m in range(1, m_max + 1):
        add(_spec(f"T3.8.1.m{m}", "T3.8", n, b_t38, [("part", 1), ("m", m)]))
        for i in range(2, N):
            add(_spec(f"T3.8.2.i{i}m{m}", "T3.8", n, b_t38, [("part", 2), ("m", m), ("i", i)]))
        add(_spec(f"T3.8.3.m{m}", "T3.8", n, b_t38, [("part", 3), ("m", m)]))
    add(_spec("P3.7", "P3.7", n, b_p37))
    add(_spec("P3.7.pre", "P3.7", n, b_p37_pre))
    for m in range(-2, 3):
        for i in range(1, N + 1):
            add(_spec(f"T3.10.i{i}m{m}", "T3.10", n, b_t310, [("i", i), ("m", m)]))
    rigid_ind = [Transjective(i, j) for j in range(-2 - tau_range, tau_range + 1) for i in range(1, N + 1)]
    regular = [TubeRegular(i, r) for r in range(1, N - 1) for i in range(1, N)] if n >= 2 else []
    for o in rigid_ind + regular:
        add(_spec(f"L4.4.{_fmt(o)}", "L4.4", n, b_l44, [("obj", o)]))
    add(_spec("P4.1.basis", "P4.1", n, b_basis, [("box", "-1..1"), ("which", "B")]))
    for m in range(1, 5):
        add(_spec(f"T4.6.pos.F{m}", "T4.6", n, b_positivity, [("what", "F"), ("m", m), ("depth", depth)]))
    add(_spec("T4.6.pos.basis", "T4.6", n, b_positivity, [("what", "B"), ("sample", 20), ("depth", depth), ("seed", seed)]))
    add(_spec("T4.8.basis", "T4.8", n, b_basis, [("box", "-1..1"), ("which", "S")]))
    add(_spec("T4.8.unitriangular", "T4.8", n, b_unitriangular, [("box", "-1..2")]))
    for m in range(1, 5):
        add(_spec(f"T4.8.pos.S{m}", "T4.8", n, b_positivity, [("what", "S"), ("m", m), ("depth", depth)]))
    for m in range(1, 4):
        add(_spec(f"P4.9.m{m}", "P4.9", n, b_p49, [("m", m)]))
        for i in range(1, N if n >= 2 else 1):
            add(_spec(f"P4.9.m{m}.E{i}", "P4.9", n, b_p49, [("m", m), ("E", TubeE(i))]))
        if m < 3:  # m = 3 would need the band H(4), far slower to count
            add(_spec(f"P4.9.rec.m{m}", "P4.9", n, b_p49_rec, [("m", m)]))
    for o in (Proj(2), Inj(1), Proj(N)):
        add(_spec(f"L4.5.{_fmt(o)}", "L4.5", n, b_l45, [("obj", o), ("depth", depth)]))
    if n >= 2:
        add(_spec("P3.2", "P3.2", n, b_p32))
        add(_spec("C3.3", "C3.3", n, b_c33))
        for E in regular:
            add(_spec(f"L3.4.2.{_fmt(E)}", "L3.4", n, b_l342, [("E", E)]))
        for i in range(0, 4):
            for E in regular:
                add(_spec(f"P3.5.i{i}.{_fmt(E)}", "P3.5", n, b_p35, [("i", i), ("E", E)]))
        for kind in ("F", "S"):
            for m in range(1, 5):
                for E in [TubeE(i) for i in range(1, N)]:
                    add(_spec(f"P3.5.{kind}{m}.{_fmt(E)}", "P3.5", n, b_cheb_bar, [("kind", kind), ("m", m), ("E", E)]))
        for m in range(-2, 3):
            add(_spec(f"L4.3.1.m{m}", "L4.3", n, b_l43, [("part", 1), ("m", m)]))
            for l in range(2, N - 1):
                add(_spec(f"L4.3.2.l{l}m{m}", "L4.3", n, b_l43, [("part", 2), ("m", m), ("l", l)]))
            add(_spec(f"L4.3.3.m{m}", "L4.3", n, b_l43, [("part", 3), ("m", m)]))
            add(_spec(f"L4.3.4.m{m}", "L4.3", n, b_l43, [("part", 4), ("m", m)]))
    for part in (1, 2, 3, 4):
        add(_spec(f"A1.{part}", "A1", n, b_a1, [("part", part), ("samples", 100), ("seed", seed)]))
    for k in range(20):
        add(_spec(f"A2.mult.k{k}", "A2", n, b_a2_mult, [("k", k), ("seed", seed)]))
    for k in range(5):
        add(_spec(f"A2.bar.k{k}", "A2", n, b_a2_bar, [("k", k), ("seed", seed)]))
    for m in range(1, 4):
        add(_spec(f"A2.cheb.m{m}", "A2", n, b_a2_cheb, [("m", m)]))
    for j in range(-2 - tau_range, tau_range):
        for i in range(1, N + 1):
            o = Transjective(i, j)
            add(_spec(f"A2.obj.{_fmt(o)}", "A2", n, b_a2_objects, [("obj", o)]))
    if families is not None:
        fam = set(families)
        out = [c for c in out if c.family in fam or any(c.id.startswith(f) for f in fam)]
    return out


def negative_checks(n: int) -> list[CheckSpec]:
    return [_spec(f"NEG.{w}", "NEG", n, b_negative, [("which", w)]) for w in ("P3.2", "L3.5.1", "T3.8", "P3.7")]


SMOKE_FAMILIES = ("S.compatible", "P3.2", "C3.3", "A1")


def suite(n: int, name: str = "all", seed: int = 0) -> list[CheckSpec]:
    if name == "all":
        return checks_for(n, seed=seed)
    if name == "smoke":
        return checks_for(n, SMOKE_FAMILIES, seed=seed)
    if name == "negative":
        return negative_checks(n)
    return checks_for(n, [f.strip() for f in name.split(",") if f.strip()], seed=seed)


def run_spec(spec: CheckSpec) -> CheckResult:
    t0 = time.perf_counter()
    try:
        out = spec.build()
    except Exception as exc:  # a crashing builder is a failed check, not a crashed suite
        return CheckResult(spec.id, spec.family, spec.n, False, f"{type(exc).__name__}: {exc}", None,
                           time.perf_counter() - t0)
    dt = time.perf_counter() - t0
    if isinstance(out, Identity):
        diff = out.lhs - out.rhs
        ok = diff.is_zero()
        return CheckResult(spec.id, spec.family, spec.n, ok, "exact identity" if ok else f"{len(diff)} differing terms",
                           None if ok else diff, dt)
    return CheckResult(spec.id, spec.family, spec.n, out.ok, out.detail, None, dt)


def run_check(id: str, n: int = 2, **overrides) -> CheckResult:
    for spec in checks_for(n) + negative_checks(n):
        if spec.id == id:
            if overrides:
                params = dict(spec.params)
                params.update(overrides)
                spec = CheckSpec(spec.id, spec.family, n, tuple(params.items()), spec.witnesses, spec.builder,
                                 spec.description)
            return run_spec(spec)
    raise UnknownCheck(id)


@dataclass
class SuiteReport:
    n: int
    suite: str
    results: list[CheckResult]
    seconds: float

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json_obj(self) -> dict:
        return {"n": self.n, "suite": self.suite, "passed": sum(r.passed for r in self.results),
                "failed": sum(not r.passed for r in self.results), "seconds": round(self.seconds, 3),
                "results": [r.to_json_obj() for r in sorted(self.results, key=lambda r: r.id)]}


def run_suite(n: int, name: str = "all", seed: int = 0, progress: Callable | None = None) -> SuiteReport:
    t0 = time.perf_counter()
    results = []
    for spec in suite(n, name, seed):
        r = run_spec(spec)
        results.append(r)
        if progress:
            progress(r)
    return SuiteReport(n, name, results, time.perf_counter() - t0)
