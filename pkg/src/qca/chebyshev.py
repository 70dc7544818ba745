"""Chebyshev polynomials used for the regular part of the bases.

First kind: F_0 = 1, F_1 = x, F_2 = x^2 - 2, F_{m+1} = x F_m - F_{m-1} (m >= 2).
Second kind: S_0 = 1, S_1 = x, S_{m+1} = x S_m - S_{m-1} (m >= 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .torus import TorusElement


@dataclass(frozen=True)
class IntPolynomial:
    coeffs: tuple[int, ...]  # ascending powers of x

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) or (0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def times_x(self) -> "IntPolynomial":
        return IntPolynomial((0,) + self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        L = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (L - len(self.coeffs))
        b = other.coeffs + (0,) * (L - len(other.coeffs))
        return IntPolynomial(tuple(x - y for x, y in zip(a, b)))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            num = str(abs(c)) if (abs(c) != 1 or k == 0) else ""
            sign = "-" if c < 0 else "+"
            parts.append((sign, num + mono))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, t in parts[1:]:
            s += f" {sign} {t}"
        return s


ONE = IntPolynomial((1,))
X = IntPolynomial((0, 1))


@lru_cache(maxsize=None)
def cheb_first(m: int) -> IntPolynomial:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return ONE
    if m == 1:
        return X
    if m == 2:
        return IntPolynomial((-2, 0, 1))
    return cheb_first(m - 1).times_x() - cheb_first(m - 2)


@lru_cache(maxsize=None)
def cheb_second(m: int) -> IntPolynomial:
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return ONE
    if m == 1:
        return X
    return cheb_second(m - 1).times_x() - cheb_second(m - 2)


def eval_at(p: IntPolynomial, a: TorusElement) -> TorusElement:
    """sum_i c_i a^i, by Horner's rule."""
    acc = TorusElement.zero(a.form)
    for c in reversed(p.coeffs):
        acc = acc * a
        if c:
            acc = acc + TorusElement.one(a.form).scale(c)
    return acc
