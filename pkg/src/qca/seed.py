"""Quantum seeds: compatible pairs, mutation, division and cluster expansion.

Directions are 1-based throughout the public API. Cluster variables are
always stored as torus elements in the initial frame.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .torus import ScalarLaurent, SkewForm, TorusElement, Vector, _clean

Matrix = tuple[tuple[int, ...], ...]


class NotCompatible(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class NonUnitLeadingCoefficient(ArithmeticError):
    pass


class NotLaurentInCluster(ArithmeticError):
    pass


class NonUnimodularFrame(ArithmeticError):
    pass


def _mat(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def check_compatible(lam: Sequence[Sequence[int]] | SkewForm, btilde: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Return the diagonal of B^T Lambda, or raise NotCompatible."""
    L = lam.matrix if isinstance(lam, SkewForm) else _mat(lam)
    B = _mat(btilde)
    m = len(L)
    if len(B) != m or any(len(r) != m for r in B) or any(len(r) != m for r in L):
        raise NotCompatible("matrices must be square of equal size")
    diag = []
    for i in range(m):
        for j in range(m):
            x = sum(B[k][i] * L[k][j] for k in range(m))
            if i != j and x != 0:
                raise NotCompatible(f"B^T Lambda has off-diagonal entry {x} at ({i + 1}, {j + 1})")
            if i == j:
                if x <= 0:
                    raise NotCompatible(f"B^T Lambda has non-positive diagonal entry {x} at ({i + 1}, {i + 1})")
                diag.append(x)
    return tuple(diag)


@dataclass(frozen=True)
class CompatiblePair:
    lam: SkewForm
    b: Matrix

    @property
    def d(self) -> tuple[int, ...]:
        return check_compatible(self.lam, self.b)

    @property
    def size(self) -> int:
        return self.lam.size


@dataclass(frozen=True, eq=False)
class QuantumSeed:
    pair: CompatiblePair
    vars: tuple[TorusElement, ...]
    history: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def form(self) -> SkewForm:
        """Form of the initial frame in which variables are written."""
        return self.vars[0].form

    @property
    def size(self) -> int:
        return self.pair.size

    def same_as(self, other: "QuantumSeed") -> bool:
        """Labelled equality of (Lambda, B, vars)."""
        return self.pair == other.pair and self.vars == other.vars

    def cluster_key(self) -> frozenset:
        return frozenset(self.vars)

    def __eq__(self, other):
        return isinstance(other, QuantumSeed) and self.same_as(other)

    def __hash__(self):
        return hash((self.pair, self.vars))


def initial_seed(lam: SkewForm, b: Sequence[Sequence[int]]) -> QuantumSeed:
    check_compatible(lam, b)
    m = lam.size
    xs = tuple(TorusElement.monomial(lam, tuple(int(i == j) for j in range(m))) for i in range(m))
    return QuantumSeed(CompatiblePair(lam, _mat(b)), xs)


def _check_k(size: int, k: int) -> int:
    if not 1 <= k <= size:
        raise IndexError(f"mutation direction {k} out of range 1..{size}")
    return k - 1


def mutate_matrices(seed: QuantumSeed | CompatiblePair, k: int) -> tuple[SkewForm, Matrix]:
    """(Lambda', B') = mu_k(Lambda, B)."""
    pair = seed.pair if isinstance(seed, QuantumSeed) else seed
    L, B = pair.lam.matrix, pair.b
    m = len(B)
    k0 = _check_k(m, k)
    E = [[int(i == j) for j in range(m)] for i in range(m)]
    for i in range(m):
        E[i][k0] = -1 if i == k0 else max(0, -B[i][k0])
    # Lambda' = E^T Lambda E
    LE = [[sum(L[i][t] * E[t][j] for t in range(m)) for j in range(m)] for i in range(m)]
    L2 = [[sum(E[t][i] * LE[t][j] for t in range(m)) for j in range(m)] for i in range(m)]
    B2 = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == k0 or j == k0:
                row.append(-B[i][j])
            else:
                row.append(B[i][j] + max(B[i][k0], 0) * B[k0][j] + B[i][k0] * max(-B[k0][j], 0))
        B2.append(row)
    lam2 = SkewForm(L2)
    check_compatible(lam2, B2)
    return lam2, _mat(B2)


# ---------------------------------------------------------------------------
# division


def _lead_raw(t: dict) -> Vector:
    return max(t)


def right_divide(numerator: TorusElement, divisor: TorusElement) -> TorusElement:
    """Q with Q * divisor == numerator, by lex leading-term reduction.

    Quotient exponents are confined to the per-coordinate box
    [min(num) - min(div), max(num) - max(div)], which any exact quotient
    must satisfy; leaving it means the division is not exact.
    """
    numerator._check(divisor)
    if divisor.is_zero():
        raise ZeroDivisionError("division by zero torus element")
    if numerator.is_zero():
        return TorusElement.zero(numerator.form)
    form = numerator.form
    m = form.size
    d_lead = max(divisor._t)
    d_coef = ScalarLaurent(divisor._t[d_lead])
    if not d_coef.is_unit():
        raise NonUnitLeadingCoefficient(f"divisor leading coefficient {d_coef} is not a unit")
    (dk, dc), = d_coef._t.items()
    lo = [min(e[i] for e in numerator._t) - min(e[i] for e in divisor._t) for i in range(m)]
    hi = [max(e[i] for e in numerator._t) - max(e[i] for e in divisor._t) for i in range(m)]
    lam_dlead = form.apply(d_lead)
    div_terms = [(f, form.apply(f), c) for f, c in divisor._t.items()]
    rem = {e: dict(c) for e, c in numerator._t.items()}
    quot: dict[Vector, dict[int, int]] = {}
    while rem:
        t = max(rem)
        c = rem[t]
        g = tuple(a - b for a, b in zip(t, d_lead))
        if any(g[i] < lo[i] or g[i] > hi[i] for i in range(m)):
            raise NotDivisible(f"quotient exponent {g} leaves the admissible box")
        # X^g X^dlead = v^{Lambda(g, dlead)} X^t
        tw = sum(a * b for a, b in zip(g, lam_dlead))
        qc = {k - tw - dk: x * dc for k, x in c.items()}
        quot[g] = qc
        # rem -= (qc X^g) * divisor
        for f, lf, fc in div_terms:
            h = tuple(a + b for a, b in zip(g, f))
            tw2 = sum(a * b for a, b in zip(g, lf))
            d = rem.get(h)
            if d is None:
                d = rem[h] = {}
            for k1, x in qc.items():
                for k2, y in fc.items():
                    kk = k1 + k2 + tw2
                    s = d.get(kk, 0) - x * y
                    if s:
                        d[kk] = s
                    else:
                        del d[kk]
            if not d:
                del rem[h]
        if t in rem:
            raise AssertionError("leading term failed to cancel")
    return TorusElement._raw(form, quot)


# ---------------------------------------------------------------------------
# mutation of variables, cluster monomials


def _var_power(seed: QuantumSeed, i: int, p: int) -> TorusElement:
    cache = seed._cache.setdefault("pow", {})
    key = (i, p)
    if key not in cache:
        if p == 0:
            cache[key] = TorusElement.one(seed.form)
        elif p == 1:
            cache[key] = seed.vars[i]
        else:
            cache[key] = _var_power(seed, i, p - 1) * seed.vars[i]
    return cache[key]


def _normalizing_exponent(L: Matrix, a: Sequence[int]) -> int:
    m = len(a)
    return -sum(a[i] * a[j] * L[i][j] for i in range(m) for j in range(i + 1, m))


def cluster_monomial(seed: QuantumSeed, a: Sequence[int]) -> TorusElement:
    """Bar-invariant normalized monomial Y^a for a >= 0."""
    a = tuple(int(x) for x in a)
    if any(x < 0 for x in a):
        raise ValueError("cluster monomials need nonnegative exponents")
    cache = seed._cache.setdefault("mono", {})
    if a in cache:
        return cache[a]
    out = TorusElement.one(seed.form)
    for i, p in enumerate(a):
        if p:
            out = out * _var_power(seed, i, p)
    out = out.shift(_normalizing_exponent(seed.pair.lam.matrix, a))
    cache[a] = out
    return out


def mutate_variable(seed: QuantumSeed, k: int) -> TorusElement:
    """New k-th variable: twisted exchange sum right-divided by Y_k."""
    m = seed.size
    k0 = _check_k(m, k)
    B = seed.pair.b
    lam = seed.pair.lam
    bp = tuple(max(B[i][k0], 0) for i in range(m))
    bm = tuple(max(-B[i][k0], 0) for i in range(m))
    ek = tuple(int(i == k0) for i in range(m))
    # Y^{c - e_k} = v^{Lambda'(c, e_k)} Y^c Y_k^{-1}
    num = cluster_monomial(seed, bp).shift(lam.pair(bp, ek)) + cluster_monomial(seed, bm).shift(lam.pair(bm, ek))
    new = right_divide(num, seed.vars[k0])
    if not new.is_bar_invariant():
        raise AssertionError(f"mutated variable in direction {k} is not bar-invariant")
    return new


def mutate(seed: QuantumSeed, k: int) -> QuantumSeed:
    lam2, b2 = mutate_matrices(seed, k)
    new = mutate_variable(seed, k)
    xs = list(seed.vars)
    xs[k - 1] = new
    return QuantumSeed(CompatiblePair(lam2, b2), tuple(xs), seed.history + (k,))


def mutate_sequence(seed: QuantumSeed, seq: Sequence[int]) -> QuantumSeed:
    for k in seq:
        seed = mutate(seed, k)
    return seed


# ---------------------------------------------------------------------------
# expansion in a cluster


def _inverse_unimodular(G: Sequence[Sequence[int]]) -> Matrix:
    m = len(G)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(G)]
    det = Fraction(1)
    for c in range(m):
        p = next((r for r in range(c, m) if A[r][c] != 0), None)
        if p is None:
            raise NonUnimodularFrame("leading exponents are linearly dependent")
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        piv = A[c][c]
        det *= piv
        A[c] = [x / piv for x in A[c]]
        for r in range(m):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    if abs(det) != 1:
        raise NonUnimodularFrame(f"leading exponent matrix has determinant {det}")
    return tuple(tuple(int(x) for x in row[m:]) for row in A)


def leading_exponents(seed: QuantumSeed) -> Matrix:
    """Columns are lead(Y_i)."""
    leads = [max(x._t) for x in seed.vars]
    m = seed.size
    return tuple(tuple(leads[j][i] for j in range(m)) for i in range(m))


def _frame_solver(seed: QuantumSeed):
    if "ginv" not in seed._cache:
        seed._cache["ginv"] = _inverse_unimodular(leading_exponents(seed))
    return seed._cache["ginv"]


def expand_in_cluster(elem: TorusElement, seed: QuantumSeed, max_rounds: int = 40) -> dict[Vector, ScalarLaurent]:
    """Coefficients c_a with elem = sum_a c_a Y^a (Y^a normalized, a in Z^m).

    elem is first multiplied by Y^d with d >= 0 large enough to make it a
    polynomial in the cluster; d grows whenever the reduction meets a
    leading exponent that needs a negative power.
    """
    ginv = _frame_solver(seed)
    m = seed.size
    lam = seed.pair.lam
    if elem.is_zero():
        return {}
    d = [0] * m
    for _ in range(max_rounds):
        P = elem * cluster_monomial(seed, d)
        rem = {e: dict(c) for e, c in P._t.items()}
        found: dict[Vector, dict[int, int]] = {}
        restart = False
        while rem:
            t = max(rem)
            a = tuple(sum(ginv[i][j] * t[j] for j in range(m)) for i in range(m))
            if any(x < 0 for x in a):
                for i in range(m):
                    if a[i] < 0:
                        d[i] += -a[i]
                restart = True
                break
            mono = cluster_monomial(seed, a)
            lc = mono._t.get(t)
            if lc is None or len(lc) != 1:
                raise NotLaurentInCluster("frame monomial has an unexpected leading term")
            (lk, lx), = lc.items()
            if abs(lx) != 1:
                raise NonUnitLeadingCoefficient("frame monomial leading coefficient is not a unit")
            coef = {k - lk: x * lx for k, x in rem[t].items()}
            found[a] = coef
            for f, fc in mono._t.items():
                dd = rem.get(f)
                if dd is None:
                    dd = rem[f] = {}
                for k1, x in coef.items():
                    for k2, y in fc.items():
                        kk = k1 + k2
                        s = dd.get(kk, 0) - x * y
                        if s:
                            dd[kk] = s
                        else:
                            del dd[kk]
                if not dd:
                    del rem[f]
        if restart:
            continue
        # elem = sum_a c_a Y^a Y^{-d} = sum_a c_a v^{-Lambda'(a, d)} Y^{a - d}
        out = {}
        for a, c in found.items():
            tw = -lam.pair(a, d)
            out[tuple(x - y for x, y in zip(a, d))] = ScalarLaurent({k + tw: x for k, x in c.items()})
        return dict(sorted(out.items()))
    raise NotLaurentInCluster(f"no Laurent expansion found within {max_rounds} denominator rounds")


def frame_monomial(seed: QuantumSeed, a: Sequence[int]) -> TorusElement:
    """Y^a for arbitrary a, as a torus element when it is one (a >= 0), else
    the value Y^{a+d} right-divided by Y^d."""
    a = tuple(a)
    if all(x >= 0 for x in a):
        return cluster_monomial(seed, a)
    d = tuple(max(0, -x) for x in a)
    p = tuple(x + y for x, y in zip(a, d))
    num = cluster_monomial(seed, p).shift(seed.pair.lam.pair(p, d))
    return right_divide(num, cluster_monomial(seed, d))


def is_positive_in(elem: TorusElement, seed: QuantumSeed) -> bool:
    return all(c.is_nonnegative() for c in expand_in_cluster(elem, seed).values())


# ---------------------------------------------------------------------------
# exchange graph


def explore(
    seed0: QuantumSeed,
    max_depth: int,
    admissible: Callable[[QuantumSeed, int], bool] | None = None,
) -> list[QuantumSeed]:
    """Breadth-first search of the exchange graph up to max_depth.

    Seeds are identified by their unlabelled cluster. ``admissible`` may
    restrict which directions are followed.
    """
    seen = {seed0.cluster_key(): seed0}
    order = [seed0]
    queue = deque([(seed0, 0)])
    while queue:
        s, dist = queue.popleft()
        if dist >= max_depth:
            continue
        for k in range(1, s.size + 1):
            if s.history and s.history[-1] == k:
                continue
            if admissible is not None and not admissible(s, k):
                continue
            t = mutate(s, k)
            key = t.cluster_key()
            if key in seen:
                continue
            seen[key] = t
            order.append(t)
            queue.append((t, dist + 1))
    return order


def iter_cluster_variables(seeds: Sequence[QuantumSeed]) -> Iterator[tuple[TorusElement, QuantumSeed]]:
    seen = set()
    for s in seeds:
        for x in s.vars:
            if x not in seen:
                seen.add(x)
                yield x, s


def is_sink_or_source(seed: QuantumSeed, k: int) -> bool:
    """Direction k is a sink or source of the current exchange quiver."""
    col = [seed.pair.b[i][k - 1] for i in range(seed.size)]
    return all(x >= 0 for x in col) or all(x <= 0 for x in col)
