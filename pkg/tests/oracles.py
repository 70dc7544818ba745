"""Slow, obviously-correct reference computations used by the tests."""
import itertools
from fractions import Fraction

import sympy


def gfp_subspaces(p, dim, k):
    """All k-dimensional subspaces of GF(p)^dim, as frozensets of vectors."""
    vectors = list(itertools.product(range(p), repeat=dim))
    seen = set()
    for basis in itertools.combinations(vectors, k):
        span = set()
        for coeffs in itertools.product(range(p), repeat=k):
            span.add(tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) % p for i in range(dim)))
        if len(span) == p ** k:
            seen.add(frozenset(span))
    if k == 0:
        seen.add(frozenset({(0,) * dim}))
    return list(seen)


def naive_grassmannian(p, dims, arrows, maps, e):
    """Count tuples of subspaces U_i of dim e_i with rho(U_s) inside U_t, over GF(p)."""
    choices = [gfp_subspaces(p, d, k) for d, k in zip(dims, e)]
    count = 0
    for U in itertools.product(*choices):
        ok = True
        for (s, t), M in zip(arrows, maps):
            if not ok:
                break
            for u in U[s]:
                image = tuple(sum(M[r][c] * u[c] for c in range(dims[s])) % p for r in range(dims[t]))
                if image not in U[t]:
                    ok = False
                    break
        count += ok
    return count


def classical_mutation(B, xs, k):
    """Fomin-Zelevinsky mutation of (B, x) in direction k (0-based).

    xs may hold sympy symbols or exact numbers such as Fractions.
    """
    m = len(xs)
    plus = 1
    minus = 1
    for i in range(m):
        if B[i][k] > 0:
            plus *= xs[i] ** B[i][k]
        elif B[i][k] < 0:
            minus *= xs[i] ** (-B[i][k])
    new = list(xs)
    new[k] = (plus + minus) / xs[k]
    if isinstance(new[k], sympy.Basic):
        new[k] = sympy.cancel(new[k])
    B2 = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == k or j == k:
                B2[i][j] = -B[i][j]
            else:
                B2[i][j] = B[i][j] + (abs(B[i][k]) * B[k][j] + B[i][k] * abs(B[k][j])) // 2
    return B2, new


def laurent_at_one(elem, xs):
    """Specialize a TorusElement at v = 1 to a sympy expression."""
    out = sympy.Integer(0)
    for e, c in elem.at_one().items():
        term = sympy.Integer(c)
        for x, a in zip(xs, e):
            term *= x ** a
        out += term
    return sympy.cancel(out)


def laurent_at_point(elem, point):
    """Evaluate a TorusElement at v = 1 and x = point (exact Fractions)."""
    total = Fraction(0)
    for e, c in elem.at_one().items():
        term = Fraction(c)
        for x, a in zip(point, e):
            term *= Fraction(x) ** a
        total += term
    return total
