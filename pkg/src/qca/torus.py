"""Quantum torus arithmetic.

Scalars live in Z[v, v^-1] with v = q^(1/2), so q^(k/2) is stored as the
single integer exponent k. A torus element is a finite map from exponent
vectors to scalars, multiplied by the twisted rule

    X^e X^f = v^(Lambda(e, f)) X^(e + f).
"""
from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence, Union

Vector = tuple[int, ...]


class ScalarLaurent:
    """Integer Laurent polynomial in v = q^(1/2); zero coefficients are never stored."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._t = {int(k): int(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "ScalarLaurent":
        # caller guarantees d has no zero values and is not shared
        obj = cls.__new__(cls)
        obj._t = d
        obj._hash = None
        return obj

    @classmethod
    def v(cls, k: int = 1, c: int = 1) -> "ScalarLaurent":
        """The scalar c * v^k."""
        return cls({k: c})

    @classmethod
    def coerce(cls, x: Union["ScalarLaurent", int]) -> "ScalarLaurent":
        if isinstance(x, ScalarLaurent):
            return x
        if isinstance(x, int):
            return cls({0: x})
        raise TypeError(f"cannot coerce {type(x).__name__} to ScalarLaurent")

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._t)

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._t.items())

    def is_zero(self) -> bool:
        return not self._t

    def is_unit(self) -> bool:
        """True for +-v^k, the units of Z[v, v^-1]."""
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._t.values())

    def degree_range(self) -> tuple[int, int]:
        if not self._t:
            raise ValueError("zero scalar has no degree")
        return min(self._t), max(self._t)

    def at_one(self) -> int:
        """Specialization q = 1."""
        return sum(self._t.values())

    def bar(self) -> "ScalarLaurent":
        return ScalarLaurent._raw({-k: c for k, c in self._t.items()})

    def shift(self, k: int) -> "ScalarLaurent":
        """Multiply by v^k."""
        if k == 0:
            return self
        return ScalarLaurent._raw({j + k: c for j, c in self._t.items()})

    def __add__(self, other):
        other = ScalarLaurent.coerce(other)
        out = dict(self._t)
        for k, c in other._t.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ScalarLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarLaurent._raw({k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        return self + (-ScalarLaurent.coerce(other))

    def __rsub__(self, other):
        return ScalarLaurent.coerce(other) - self

    def __mul__(self, other):
        other = ScalarLaurent.coerce(other)
        out: dict[int, int] = {}
        for a, x in self._t.items():
            for b, y in other._t.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return ScalarLaurent._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def exact_div_unit(self, unit: "ScalarLaurent") -> "ScalarLaurent":
        """Divide by a unit +-v^k."""
        if not unit.is_unit():
            raise ValueError("divisor is not a unit")
        (k, c), = unit._t.items()
        return ScalarLaurent._raw({j - k: x * c for j, x in self._t.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = ScalarLaurent({0: other})
        if not isinstance(other, ScalarLaurent):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for k, c in self.items():
            if k == 0:
                parts.append(str(c))
            else:
                mono = "v" if k == 1 else f"v^{k}"
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


class SkewForm:
    """Skew-symmetric integer matrix Lambda."""

    __slots__ = ("matrix", "size", "_hash")

    def __init__(self, matrix: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("form matrix must be square")
        for i in range(m):
            for j in range(m):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"form is not skew-symmetric at ({i}, {j})")
        self.matrix = rows
        self.size = m
        self._hash = hash(rows)

    @property
    def n(self) -> int:
        """Half the rank; the JSON schema records this."""
        return self.size // 2

    def pair(self, e: Sequence[int], f: Sequence[int]) -> int:
        if len(e) != self.size or len(f) != self.size:
            raise ValueError(f"expected vectors of length {self.size}")
        lf = self.apply(f)
        return sum(a * b for a, b in zip(e, lf))

    def apply(self, f: Sequence[int]) -> Vector:
        """Lambda f as a tuple."""
        return tuple(sum(r * x for r, x in zip(row, f)) for row in self.matrix)

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.matrix == other.matrix

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SkewForm({[list(r) for r in self.matrix]})"


def skew_eval(form: SkewForm, e: Sequence[int], f: Sequence[int]) -> int:
    """e^T Lambda f."""
    return form.pair(e, f)


class TorusElement:
    """Immutable element of the quantum torus attached to a SkewForm.

    Internally each coefficient is a plain {v-exponent: int} dict; the
    public ``terms`` view wraps them as ScalarLaurent.
    """

    __slots__ = ("form", "_t", "_hash")

    def __init__(self, form: SkewForm, terms: Mapping[Sequence[int], Union[ScalarLaurent, int]] | None = None):
        self.form = form
        t: dict[Vector, dict[int, int]] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != form.size:
                raise ValueError(f"exponent {e} has wrong length")
            c = ScalarLaurent.coerce(c)
            if not c.is_zero():
                t[e] = dict(c._t)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, form: SkewForm, t: dict) -> "TorusElement":
        obj = cls.__new__(cls)
        obj.form = form
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, form: SkewForm) -> "TorusElement":
        return cls._raw(form, {})

    @classmethod
    def one(cls, form: SkewForm) -> "TorusElement":
        return cls.monomial(form, (0,) * form.size)

    @classmethod
    def monomial(cls, form: SkewForm, e: Sequence[int], coeff: Union[ScalarLaurent, int] = 1) -> "TorusElement":
        return cls(form, {tuple(e): coeff})

    @property
    def terms(self) -> dict[Vector, ScalarLaurent]:
        return {e: ScalarLaurent(c) for e, c in sorted(self._t.items())}

    def coefficient(self, e: Sequence[int]) -> ScalarLaurent:
        return ScalarLaurent(self._t.get(tuple(e), {}))

    def support(self) -> list[Vector]:
        return sorted(self._t)

    def __len__(self):
        return len(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def leading(self) -> tuple[Vector, ScalarLaurent]:
        """Largest exponent in lexicographic order with its coefficient."""
        if not self._t:
            raise ValueError("zero element has no leading term")
        e = max(self._t)
        return e, ScalarLaurent(self._t[e])

    def _check(self, other: "TorusElement"):
        if self.form != other.form:
            raise ValueError("torus elements over different forms")

    def _coerce(self, x) -> "TorusElement":
        if isinstance(x, TorusElement):
            self._check(x)
            return x
        return TorusElement.monomial(self.form, (0,) * self.form.size, ScalarLaurent.coerce(x))

    def __add__(self, other):
        other = self._coerce(other)
        out = {e: dict(c) for e, c in self._t.items()}
        for e, c in other._t.items():
            d = out.get(e)
            if d is None:
                out[e] = dict(c)
                continue
            for k, x in c.items():
                s = d.get(k, 0) + x
                if s:
                    d[k] = s
                else:
                    del d[k]
            if not d:
                del out[e]
        return TorusElement._raw(self.form, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement._raw(self.form, {e: {k: -x for k, x in c.items()} for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, s: Union[ScalarLaurent, int]) -> "TorusElement":
        s = ScalarLaurent.coerce(s)
        out = {}
        for e, c in self._t.items():
            d: dict[int, int] = {}
            for k, x in c.items():
                for j, y in s._t.items():
                    d[k + j] = d.get(k + j, 0) + x * y
            d = {k: x for k, x in d.items() if x}
            if d:
                out[e] = d
        return TorusElement._raw(self.form, out)

    def shift(self, k: int) -> "TorusElement":
        """Multiply by v^k."""
        if k == 0:
            return self
        return TorusElement._raw(self.form, {e: {j + k: x for j, x in c.items()} for e, c in self._t.items()})

    def __mul__(self, other):
        if not isinstance(other, TorusElement):
            return self.scale(other)
        self._check(other)
        if not self._t or not other._t:
            return TorusElement.zero(self.form)
        mat = self.form.matrix
        right = []
        for f, c2 in other._t.items():
            lf = tuple(sum(r * x for r, x in zip(row, f)) for row in mat)
            right.append((f, lf, c2))
        acc: dict[Vector, dict[int, int]] = {}
        for e, c1 in self._t.items():
            for f, lf, c2 in right:
                t = sum(a * b for a, b in zip(e, lf))
                g = tuple(a + b for a, b in zip(e, f))
                d = acc.get(g)
                if d is None:
                    d = acc[g] = {}
                for k1, x in c1.items():
                    base = k1 + t
                    for k2, y in c2.items():
                        k = base + k2
                        d[k] = d.get(k, 0) + x * y
        out = {}
        for g, d in acc.items():
            d = {k: x for k, x in d.items() if x}
            if d:
                out[g] = d
        return TorusElement._raw(self.form, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use monomial_inverse")
        out = TorusElement.one(self.form)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def bar(self) -> "TorusElement":
        return TorusElement._raw(self.form, {e: {-k: x for k, x in c.items()} for e, c in self._t.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def is_nonnegative(self) -> bool:
        return all(x > 0 for c in self._t.values() for x in c.values())

    def at_one(self) -> dict[Vector, int]:
        """Specialization q = 1 (commutative Laurent polynomial)."""
        out = {}
        for e, c in self._t.items():
            s = sum(c.values())
            if s:
                out[e] = s
        return out

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.form == other.form and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((e, frozenset(c.items())) for e, c in self._t.items()))
        return self._hash

    def __repr__(self):
        if not self._t:
            return "0"
        parts = []
        for e, c in sorted(self._t.items()):
            parts.append(f"({ScalarLaurent(c)})X^{list(e)}")
        return " + ".join(parts)

    def to_json_obj(self) -> dict:
        return {
            "n": self.form.n,
            "terms": [{"e": list(e), "c": [[k, x] for k, x in sorted(c.items())]} for e, c in sorted(self._t.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict, form: SkewForm) -> "TorusElement":
        if obj.get("n") != form.n:
            raise ValueError(f"JSON element has n={obj.get('n')}, form has n={form.n}")
        t = {}
        for term in obj["terms"]:
            e = tuple(int(x) for x in term["e"])
            if len(e) != form.size:
                raise ValueError("exponent has wrong length")
            d = {int(k): int(x) for k, x in term["c"] if int(x)}
            if d:
                t[e] = d
        return cls._raw(form, t)

    @classmethod
    def from_json(cls, s: str, form: SkewForm) -> "TorusElement":
        return cls.from_json_obj(json.loads(s), form)


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    return a * b


def torus_add(a: TorusElement, b: TorusElement) -> TorusElement:
    return a + b


def torus_sub(a: TorusElement, b: TorusElement) -> TorusElement:
    return a - b


def scalar_scale(s: Union[ScalarLaurent, int], a: TorusElement) -> TorusElement:
    return a.scale(s)


def bar(a: TorusElement) -> TorusElement:
    return a.bar()


def monomial_inverse(m: TorusElement) -> TorusElement:
    """Inverse of a unit-coefficient monomial c v^k X^e."""
    if len(m) != 1:
        raise ValueError("only monomials are invertible")
    (e, c), = m._t.items()
    s = ScalarLaurent(c)
    if not s.is_unit():
        raise ValueError("monomial coefficient is not a unit")
    (k, x), = c.items()
    neg = tuple(-a for a in e)
    # (c v^k X^e)^-1 = c v^-k X^-e since X^e X^-e = X^0
    return TorusElement._raw(m.form, {neg: {-k: x}})


def sum_elements(form: SkewForm, items: Iterable[TorusElement]) -> TorusElement:
    acc: dict[Vector, dict[int, int]] = {}
    for x in items:
        add_into(acc, x._t)
    return TorusElement._raw(form, _clean(acc))


def add_into(acc: dict, t: dict, sign: int = 1) -> None:
    """In-place acc += sign * t on raw term maps (zeros are left for _clean)."""
    for e, c in t.items():
        d = acc.get(e)
        if d is None:
            d = acc[e] = {}
        for k, x in c.items():
            d[k] = d.get(k, 0) + sign * x


def _clean(acc: dict) -> dict:
    out = {}
    for e, d in acc.items():
        d = {k: x for k, x in d.items() if x}
        if d:
            out[e] = d
    return out
