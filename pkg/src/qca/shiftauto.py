"""The automorphism sigma induced by the shift functor.

sigma sends the initial cluster variable X_i to X_{I_i}. It is applied to an
arbitrary element by frame substitution: clear denominators with a monomial
X^d, substitute the injective cluster (whose quasi-commutation matrix is the
initial one), then divide by the image of X^d on the right.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import arcat
from .arcat import Obj, TypeData
from .character import char_of
from .seed import (
    CompatiblePair,
    QuantumSeed,
    cluster_monomial,
    explore,
    initial_seed,
    is_sink_or_source,
    right_divide,
)
from .torus import TorusElement, add_into, _clean


class NotFoundWithinDepth(RuntimeError):
    pass


def sigma_object(td: TypeData, obj: Obj) -> Obj:
    """tau in the cluster category: P[1] -> I, P -> P[1], tubes rotate."""
    c = arcat.canon(td, obj)
    out = arcat.tau_shift(td, c, 1)
    return arcat._friendly(out) if out.kind == "T" else out


@dataclass(frozen=True)
class SigmaData:
    sequence: tuple[int, ...]
    permutation: tuple[int, ...]  # permutation[i] = 0-based slot holding X_{I_{i+1}}
    seed: QuantumSeed             # the located seed, with variables reordered as X_{I_1}, ...

    def to_json_obj(self) -> dict:
        return {"sequence": list(self.sequence), "permutation": [p + 1 for p in self.permutation]}


def _reorder(seed: QuantumSeed, perm: tuple[int, ...]) -> QuantumSeed:
    L = seed.pair.lam.matrix
    B = seed.pair.b
    lam = type(seed.pair.lam)([[L[perm[i]][perm[j]] for j in range(len(perm))] for i in range(len(perm))])
    b = tuple(tuple(B[perm[i]][perm[j]] for j in range(len(perm))) for i in range(len(perm)))
    return QuantumSeed(CompatiblePair(lam, b), tuple(seed.vars[p] for p in perm), seed.history)


@lru_cache(maxsize=None)
def _locate(n: int, max_depth: int) -> SigmaData:
    td = arcat.build_data(n)
    targets = [char_of(td, arcat.Inj(i)) for i in range(1, td.size + 1)]
    key = frozenset(targets)
    s0 = initial_seed(td.lam, td.b)
    for admissible in (is_sink_or_source, None):
        for s in explore(s0, max_depth, admissible):
            if s.cluster_key() == key:
                perm = tuple(s.vars.index(t) for t in targets)
                out = _reorder(s, perm)
                if out.pair.lam != td.lam:
                    raise AssertionError("the injective cluster does not share the initial skew form")
                return SigmaData(s.history, perm, out)
    raise NotFoundWithinDepth(f"no seed with the injective cluster within depth {max_depth}")


def locate_sigma_cluster(td: TypeData, max_depth: int | None = None) -> SigmaData:
    return _locate(td.n, max_depth if max_depth is not None else 2 * td.size)


def sigma_apply(td: TypeData, elem: TorusElement) -> TorusElement:
    """sigma(elem) for any Laurent polynomial in the initial cluster."""
    data = locate_sigma_cluster(td)
    if elem.is_zero():
        return elem
    N = td.size
    d = [0] * N
    for e in elem.support():
        for i, x in enumerate(e):
            d[i] = max(d[i], -x)
    d = tuple(d)
    X_d = TorusElement.monomial(td.lam, d)
    P = elem * X_d
    acc: dict = {}
    for a, c in P.terms.items():
        # X^a is the normalized monomial in the initial variables
        img = cluster_monomial(data.seed, a).scale(c)
        add_into(acc, img._t)
    image = TorusElement._raw(td.lam, _clean(acc))
    return right_divide(image, cluster_monomial(data.seed, d))
