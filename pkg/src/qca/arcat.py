"""Combinatorial model of the cluster category for the affine quiver

    1 -> 2 -> ... -> 2n,   1 -> 2n        (n >= 2)
    1 => 2                                (n = 1, Kronecker)

with all valuations 2.

Objects are named by ``Obj`` values. Every object reduces to a canonical
form: ``T(i, j)`` for the transjective component (j >= 0 is tau^j I_i,
j = -1 is P_i[1], j <= -2 is tau^(j+2) P_i), ``R(i, l)`` for the exceptional
tube (quasi-socle E_i, quasi-length l), ``H(m)`` for the homogeneous tube
and ``Sum`` for direct sums.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .torus import SkewForm

Vec = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class UnknownObject(ValueError):
    pass


@dataclass(frozen=True)
class TypeData:
    n: int
    lam: SkewForm
    b: Matrix
    r: Matrix
    d: Vec
    euler: Matrix

    @property
    def size(self) -> int:
        return 2 * self.n

    @cached_property
    def A(self) -> np.ndarray:
        """Id - R^T, which sends dim I to dim soc I."""
        return np.eye(self.size, dtype=np.int64) - np.array(self.r, dtype=np.int64).T

    @cached_property
    def A_inv(self) -> np.ndarray:
        return _int_inv(self.A)

    @cached_property
    def C(self) -> np.ndarray:
        """Id - R, which sends dim P to dim top P."""
        return np.eye(self.size, dtype=np.int64) - np.array(self.r, dtype=np.int64)

    @cached_property
    def C_inv(self) -> np.ndarray:
        return _int_inv(self.C)

    @cached_property
    def B(self) -> np.ndarray:
        return np.array(self.b, dtype=np.int64)

    def a_map(self, v: Sequence[int]) -> Vec:
        return tuple(int(x) for x in self.A @ np.asarray(v, dtype=np.int64))

    def b_map(self, v: Sequence[int]) -> Vec:
        return tuple(int(x) for x in self.B @ np.asarray(v, dtype=np.int64))


def _int_inv(M: np.ndarray) -> np.ndarray:
    inv = np.linalg.inv(M.astype(float))
    out = np.rint(inv).astype(np.int64)
    if not np.array_equal(M @ out, np.eye(M.shape[0], dtype=np.int64)):
        raise ArithmeticError("matrix is not unimodular")
    return out


def lambda_matrix(n: int) -> list[list[int]]:
    N = 2 * n
    L = [[0] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if (j - i) % 2 == 1:
                L[i][j] = 1 if i < j else -1
    return L


def arrows(n: int) -> list[tuple[int, int]]:
    """0-based (source, target); long arrows first, then the short one."""
    N = 2 * n
    return [(j, j + 1) for j in range(N - 1)] + [(0, N - 1)]


@lru_cache(maxsize=None)
def build_data(n: int) -> TypeData:
    if n < 1:
        raise ValueError("n must be at least 1")
    N = 2 * n
    R = [[0] * N for _ in range(N)]
    for s, t in arrows(n):
        R[t][s] += 1  # r_ij counts arrows j -> i
    B = [[R[j][i] - R[i][j] for j in range(N)] for i in range(N)]
    L = lambda_matrix(n)
    euler = [[2 * (int(i == j) - R[j][i]) for j in range(N)] for i in range(N)]
    td = TypeData(
        n=n,
        lam=SkewForm(L),
        b=tuple(map(tuple, B)),
        r=tuple(map(tuple, R)),
        d=(2,) * N,
        euler=tuple(map(tuple, euler)),
    )
    prod = np.array(B).T @ np.array(L)
    if not np.array_equal(prod, 2 * np.eye(N, dtype=np.int64)):
        raise AssertionError(f"B^T Lambda != 2 Id for n={n}")
    return td


def euler_form(td: TypeData, e: Sequence[int], f: Sequence[int]) -> int:
    """<e, f> = 2 e^T (Id - R^T) f."""
    return int(2 * np.asarray(e, dtype=np.int64) @ td.A @ np.asarray(f, dtype=np.int64))


def ordinary_euler(td: TypeData, e: Sequence[int], f: Sequence[int]) -> int:
    """e^T (Id - R^T) f, the Euler form counted over the representation field."""
    return int(np.asarray(e, dtype=np.int64) @ td.A @ np.asarray(f, dtype=np.int64))


def tau_dim(td: TypeData, e: Sequence[int], direction: int = 1) -> Vec:
    """Dimension vector of tau M (direction=1) or tau^-1 M (direction=-1),
    from (Id - R^T) dim tau M = -(Id - R) dim M."""
    v = np.asarray(e, dtype=np.int64)
    if direction == 1:
        out = -td.A_inv @ (td.C @ v)
    elif direction == -1:
        out = -td.C_inv @ (td.A @ v)
    else:
        raise ValueError("direction must be 1 or -1")
    return tuple(int(x) for x in out)


# ---------------------------------------------------------------------------
# dimension vectors


def unit(td: TypeData, i: int) -> Vec:
    return tuple(int(j == i - 1) for j in range(td.size))


def delta(td: TypeData) -> Vec:
    return (1,) * td.size


def proj_dim(td: TypeData, i: int) -> Vec:
    N = td.size
    if i == 1:
        return tuple(1 if j < N - 1 else 2 for j in range(N))
    return tuple(int(j >= i - 1) for j in range(N))


def inj_dim(td: TypeData, i: int) -> Vec:
    N = td.size
    if i == N:
        return tuple(2 if j == 0 else 1 for j in range(N))
    return tuple(int(j <= i - 1) for j in range(N))


def soc_top(td: TypeData, i: int) -> tuple[Vec, Vec]:
    """(dim soc I_i, dim top P_i), both e_i; computed, not assumed."""
    soc = td.a_map(inj_dim(td, i))
    top = tuple(int(x) for x in td.C @ np.asarray(proj_dim(td, i), dtype=np.int64))
    return soc, top


def nakayama(td: TypeData, i: int) -> tuple[Vec, Vec]:
    """nu P_i = I_i, as the pair of dimension vectors."""
    return proj_dim(td, i), inj_dim(td, i)


def tube_mouth_dim(td: TypeData, i: int) -> Vec:
    N = td.size
    if td.n < 2 or not 1 <= i <= N - 1:
        raise UnknownObject(f"no tube mouth E_{i} for n={td.n}")
    if i == 1:
        return tuple(int(j in (0, N - 1)) for j in range(N))
    return unit(td, i)


def tube_rank(td: TypeData) -> int:
    return td.size - 1


def tube_index(td: TypeData, i: int) -> int:
    """Normalize a tube label into 1..2n-1."""
    r = tube_rank(td)
    return (i - 1) % r + 1


def tube_factors(td: TypeData, i: int, l: int) -> list[int]:
    """Quasi-composition factors of R_{E_i, l}, from the quasi-socle up."""
    return [tube_index(td, i - k) for k in range(l)]


# ---------------------------------------------------------------------------
# objects


@dataclass(frozen=True, order=True)
class Obj:
    kind: str
    args: tuple

    def __str__(self):
        return format_obj(self)


def Proj(i): return Obj("P", (i,))
def Inj(i): return Obj("I", (i,))
def Simple(i): return Obj("S", (i,))
def ShiftProj(i): return Obj("P[1]", (i,))
def TubeE(i): return Obj("E", (i,))
def TubeRegular(i, l): return Obj("R", (i, l))
def HomRegular(m): return Obj("H", (m,))
def PreProj(i, l): return Obj("M", (i, l))
def PreInj(i, l): return Obj("N", (i, l))
def TauPower(base, k): return Obj("tau", (base, k))
def Transjective(i, j): return Obj("T", (i, j))


def DirectSum(*objs) -> Obj:
    flat = []
    for o in objs:
        if o.kind == "Sum":
            flat.extend(o.args)
        else:
            flat.append(o)
    return Obj("Sum", tuple(flat))


def summands(obj: Obj) -> tuple[Obj, ...]:
    return obj.args if obj.kind == "Sum" else (obj,)


@lru_cache(maxsize=None)
def _transjective_dims(n: int, i: int, j: int) -> Vec:
    td = build_data(n)
    if j == -1:
        return tuple(-x for x in unit(td, i))
    if j >= 0:
        v = inj_dim(td, i)
        for _ in range(j):
            v = tau_dim(td, v, 1)
        return v
    v = proj_dim(td, i)
    for _ in range(-j - 2):
        v = tau_dim(td, v, -1)
    return v


def transjective_dim(td: TypeData, i: int, j: int) -> Vec:
    return _transjective_dims(td.n, i, j)


def find_transjective(td: TypeData, dim: Sequence[int], bound: int | None = None) -> Obj:
    dim = tuple(dim)
    if sum(1 for x in dim if x) == 1 and sum(dim) == -1:
        return Transjective(dim.index(-1) + 1, -1)
    if any(x < 0 for x in dim):
        raise UnknownObject(f"{dim} is not the dimension vector of a transjective object")
    bound = bound if bound is not None else sum(dim) + 4
    pre = _defect(td, dim)
    # preprojectives have negative defect, preinjectives positive
    js = range(-2, -2 - bound, -1) if pre < 0 else range(0, bound)
    for j in js:
        for i in range(1, td.size + 1):
            if transjective_dim(td, i, j) == dim:
                return Transjective(i, j)
    raise UnknownObject(f"no transjective object with dimension vector {dim}")


def _defect(td: TypeData, dim: Sequence[int]) -> int:
    # <delta, dim> up to sign: negative on preprojectives
    return ordinary_euler(td, delta(td), dim)


def canon(td: TypeData, obj: Obj) -> Obj:
    """Canonical form of an object (T, R, H or Sum of those)."""
    N = td.size
    k, a = obj.kind, obj.args

    def vertex(i):
        if not 1 <= i <= N:
            raise UnknownObject(f"vertex {i} out of range 1..{N}")
        return i

    if k == "T":
        vertex(a[0])
        return obj
    if k == "P":
        return Transjective(vertex(a[0]), -2)
    if k == "I":
        return Transjective(vertex(a[0]), 0)
    if k == "P[1]":
        return Transjective(vertex(a[0]), -1)
    if k == "S":
        i = vertex(a[0])
        if i == 1:
            return Transjective(1, 0)
        if i == N:
            return Transjective(N, -2)
        return Obj("R", (i, 1))
    if k == "E":
        tube_mouth_dim(td, a[0])
        return Obj("R", (a[0], 1))
    if k == "R":
        i, l = a
        tube_mouth_dim(td, i)
        if l < 1:
            raise UnknownObject("quasi-length must be positive")
        return obj
    if k == "H":
        if a[0] < 1:
            raise UnknownObject("homogeneous quasi-length must be positive")
        return obj
    if k == "M":
        i, l = a
        if not 1 <= i <= N - 1:
            raise UnknownObject(f"M_{i} undefined")
        dim = tuple(x + l for x in proj_dim(td, i + 1))
        return find_transjective(td, dim)
    if k == "N":
        i, l = a
        if not 2 <= i <= N:
            raise UnknownObject(f"N_{i} undefined")
        dim = tuple(x + l for x in inj_dim(td, i - 1))
        return find_transjective(td, dim)
    if k == "tau":
        base, s = a
        return tau_shift(td, canon(td, base), s)
    if k == "Sum":
        parts = []
        for o in a:
            c = canon(td, o)
            parts.extend(summands(c))
        parts.sort()
        if len(parts) == 1:
            return parts[0]
        return Obj("Sum", tuple(parts))
    raise UnknownObject(f"unknown object kind {k!r}")


def tau_shift(td: TypeData, c: Obj, s: int) -> Obj:
    """tau^s in the cluster category, on canonical objects."""
    if c.kind == "T":
        return Transjective(c.args[0], c.args[1] + s)
    if c.kind == "R":
        return Obj("R", (tube_index(td, c.args[0] + s), c.args[1]))
    if c.kind == "H":
        return c
    if c.kind == "Sum":
        return canon(td, Obj("Sum", tuple(tau_shift(td, x, s) for x in c.args)))
    raise UnknownObject(f"not canonical: {c}")


def object_dim(td: TypeData, obj: Obj) -> Vec:
    """Dimension vector; P_i[1] counts as -e_i."""
    c = canon(td, obj)
    if c.kind == "T":
        return transjective_dim(td, *c.args)
    if c.kind == "R":
        i, l = c.args
        out = [0] * td.size
        for f in tube_factors(td, i, l):
            for j, x in enumerate(tube_mouth_dim(td, f)):
                out[j] += x
        return tuple(out)
    if c.kind == "H":
        return tuple(c.args[0] for _ in range(td.size))
    out = [0] * td.size
    for o in c.args:
        for j, x in enumerate(object_dim(td, o)):
            out[j] += x
    return tuple(out)


def is_shifted(c: Obj) -> bool:
    return c.kind == "T" and c.args[1] == -1


def split_module(td: TypeData, obj: Obj) -> tuple[list[Obj], Vec]:
    """(module summands, t_P) where t_P is the top of the shifted part."""
    mods, tp = [], [0] * td.size
    for o in summands(canon(td, obj)):
        if is_shifted(o):
            tp[o.args[0] - 1] += 1
        else:
            mods.append(o)
    return mods, tuple(tp)


def is_regular_rigid_indecomposable(td: TypeData, c: Obj) -> bool:
    return c.kind == "R" and c.args[1] <= tube_rank(td) - 1


# ---------------------------------------------------------------------------
# names


def format_obj(o: Obj) -> str:
    k, a = o.kind, o.args
    if k == "Sum":
        return " + ".join(format_obj(x) for x in a)
    if k == "tau":
        return f"tau^{a[1]}({format_obj(a[0])})"
    if k == "H":
        return "delta" if a[0] == 1 else f"H({a[0]})"
    return f"{k}({','.join(str(x) for x in a)})"


_ATOM = re.compile(r"^(P\[1\]|P|I|S|E|R|H|M|N|T)\((-?\d+(?:\s*,\s*-?\d+)*)\)$")
_TAU = re.compile(r"^tau\^(-?\d+)\((.*)\)$")


def parse_obj(text: str) -> Obj:
    """Parse names such as 'M(1,0)', 'P[1](3)', 'tau^2(I(1))', 'E(1) + delta'."""
    text = text.strip()
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    if len(parts) > 1:
        return DirectSum(*(parse_obj(p) for p in parts))
    t = parts[0].strip()
    if t in ("delta", "X_delta", "E(lambda)"):
        return HomRegular(1)
    m = _TAU.match(t)
    if m:
        return TauPower(parse_obj(m.group(2)), int(m.group(1)))
    m = _ATOM.match(t)
    if not m:
        raise UnknownObject(f"cannot parse object name {text!r}")
    kind = m.group(1)
    nums = tuple(int(x) for x in m.group(2).split(","))
    arity = {"P[1]": 1, "P": 1, "I": 1, "S": 1, "E": 1, "H": 1, "R": 2, "M": 2, "N": 2, "T": 2}[kind]
    if len(nums) != arity:
        raise UnknownObject(f"{kind} takes {arity} argument(s)")
    return Obj(kind, nums)


# ---------------------------------------------------------------------------
# catalog


def catalog(td: TypeData, tau_range: int = 2, max_quasi_length: int | None = None, max_hom: int = 2) -> list[dict]:
    """Indecomposable objects in a window of the AR quiver."""
    out = []
    N = td.size
    for j in range(-2 - tau_range, tau_range + 1):
        for i in range(1, N + 1):
            o = Transjective(i, j)
            out.append({"object": format_obj(_friendly(o)), "canonical": format_obj(o), "dim": list(object_dim(td, o))})
    if td.n >= 2:
        L = max_quasi_length if max_quasi_length is not None else tube_rank(td)
        for l in range(1, L + 1):
            for i in range(1, tube_rank(td) + 1):
                o = Obj("R", (i, l))
                out.append({"object": format_obj(o), "canonical": format_obj(o), "dim": list(object_dim(td, o)),
                            "rigid": l <= tube_rank(td) - 1})
    for m in range(1, max_hom + 1):
        o = HomRegular(m)
        out.append({"object": format_obj(o), "canonical": format_obj(o), "dim": list(object_dim(td, o)), "rigid": False})
    return out


def _friendly(o: Obj) -> Obj:
    i, j = o.args
    if j == 0:
        return Inj(i)
    if j == -1:
        return ShiftProj(i)
    if j == -2:
        return Proj(i)
    return o


def transjective_modules(td: TypeData, dim_bound: Sequence[int]) -> list[Obj]:
    """All transjective modules whose dimension vector is <= dim_bound."""
    out = []
    bound = sum(max(x, 0) for x in dim_bound)
    for j in range(0, bound + 2):
        hit = False
        for i in range(1, td.size + 1):
            d = transjective_dim(td, i, j)
            if sum(d) <= bound:
                hit = True
            if all(x <= y for x, y in zip(d, dim_bound)):
                out.append(Transjective(i, j))
        if not hit:
            break
    for j in range(-2, -bound - 4, -1):
        hit = False
        for i in range(1, td.size + 1):
            d = transjective_dim(td, i, j)
            if sum(d) <= bound:
                hit = True
            if all(x <= y for x, y in zip(d, dim_bound)):
                out.append(Transjective(i, j))
        if not hit:
            break
    return out


# ---------------------------------------------------------------------------
# Hom / Ext


HOM_FIELD = 4


def homext_dims(td: TypeData, a: Obj, b: Obj, field_size: int = HOM_FIELD) -> tuple[int, int]:
    """(dim_F Hom(a, b), dim_F Ext^1(a, b)) for modules a, b."""
    from . import ffrep

    ca, cb = canon(td, a), canon(td, b)
    for c in (ca, cb):
        for s in summands(c):
            if is_shifted(s):
                raise ValueError("homext_dims needs modules, got a shifted projective")
    h = 2 * _hom_dim_cached(td.n, ca, cb, field_size)
    e = h - euler_form(td, object_dim(td, ca), object_dim(td, cb))
    return h, e


@lru_cache(maxsize=None)
def _hom_dim_cached(n: int, a: Obj, b: Obj, field_size: int) -> int:
    from . import ffrep

    td = build_data(n)
    F = ffrep.SmallField(field_size)
    return ffrep.hom_dim(ffrep.build_module(td, a, F), ffrep.build_module(td, b, F))


def ext_vanishes(td: TypeData, a: Obj, b: Obj) -> bool:
    return homext_dims(td, a, b)[1] == 0


def is_rigid(td: TypeData, objs: Iterable[Obj]) -> bool:
    """Ext^1(M, M) = 0 on the module part and Hom(P, M) = 0 for the shifted part."""
    mods: list[Obj] = []
    shifted: list[int] = []
    for o in objs:
        for s in summands(canon(td, o)):
            if is_shifted(s):
                shifted.append(s.args[0])
            else:
                mods.append(s)
    for x in mods:
        d = object_dim(td, x)
        if any(d[i - 1] for i in shifted):
            return False
    uniq = sorted(set(mods))
    for x in uniq:
        for y in uniq:
            if homext_dims(td, x, y)[1]:
                return False
    return True
