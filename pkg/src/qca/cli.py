"""Command-line front end. Every subcommand writes JSON to stdout or to --json.

Exit codes: 0 on success (or all checks pass), 1 when a check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from . import arcat, ffrep
from .basisgen import enumerate_basis, parse_box, positivity_probe
from .character import character, x_delta
from .chebyshev import cheb_first, cheb_second, eval_at
from .seed import initial_seed, mutate_sequence
from .shiftauto import locate_sigma_cluster, sigma_apply
from .torus import TorusElement


class UsageError(ValueError):
    pass


@dataclass
class Config:
    n: int = 2
    caps: dict = field(default_factory=ffrep.get_caps)
    fields: tuple[int, ...] = ffrep.SAMPLE_SIZES
    output: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        bad = [k for k, v in self.caps.items() if v <= 0]
        if bad:
            raise UsageError(f"caps must be positive: {bad}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


_FACTOR = re.compile(r"^(F|S)\((\d+)\)(?:\((?:X_)?delta\))?$")
_VAR = re.compile(r"^(?:X_|x)(\d+)$")
_MONO = re.compile(r"^X\(([-\d,\s]+)\)$")


def parse_element(td: arcat.TypeData, text: str) -> TorusElement:
    """Product of factors separated by '*'.

    Factors: F(m) or S(m) (a Chebyshev polynomial evaluated at X_delta),
    X_i or x_i (initial variable), X(a1,...,a2n) (torus monomial), or any
    object name understood by the catalog, e.g. 'delta', 'M(1,0)', 'E(1) + I(2)'.
    """
    out = TorusElement.one(td.lam)
    for raw in text.split("*"):
        tok = raw.strip()
        if not tok:
            raise UsageError(f"empty factor in {text!r}")
        m = _FACTOR.match(tok)
        if m:
            poly = cheb_first(int(m.group(2))) if m.group(1) == "F" else cheb_second(int(m.group(2)))
            out = out * eval_at(poly, x_delta(td))
            continue
        m = _VAR.match(tok)
        if m:
            i = int(m.group(1))
            if not 1 <= i <= td.size:
                raise UsageError(f"variable index {i} out of range")
            out = out * TorusElement.monomial(td.lam, arcat.unit(td, i))
            continue
        m = _MONO.match(tok)
        if m:
            e = tuple(int(x) for x in m.group(1).split(","))
            if len(e) != td.size:
                raise UsageError(f"monomial needs {td.size} exponents")
            out = out * TorusElement.monomial(td.lam, e)
            continue
        try:
            obj = arcat.parse_obj(tok)
        except arcat.UnknownObject as exc:
            raise UsageError(str(exc)) from exc
        out = out * character(td, obj).element
    return out


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _obj(td, text):
    try:
        obj = arcat.parse_obj(text)
        arcat.canon(td, obj)
    except (arcat.UnknownObject, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    return obj


# ---------------------------------------------------------------------------
# subcommands


def cmd_mutate(cfg, args):
    td = arcat.build_data(cfg.n)
    seq = _ints(args.seq) if args.seq else ()
    if any(not 1 <= k <= td.size for k in seq):
        raise UsageError(f"mutation directions must lie in 1..{td.size}")
    s = mutate_sequence(initial_seed(td.lam, td.b), seq)
    return {"n": cfg.n, "sequence": list(seq), "lambda": [list(r) for r in s.pair.lam.matrix],
            "btilde": [list(r) for r in s.pair.b], "vars": [x.to_json_obj() for x in s.vars]}, 0


def cmd_char(cfg, args):
    td = arcat.build_data(cfg.n)
    res = character(td, _obj(td, args.object), args.convention)
    return res.to_json_obj(), 0


def cmd_grcount(cfg, args):
    td = arcat.build_data(cfg.n)
    obj = arcat.canon(td, _obj(td, args.object))
    e = _ints(args.e)
    dims = arcat.object_dim(td, obj)
    if len(e) != td.size or any(not 0 <= a <= b for a, b in zip(e, dims)):
        raise UsageError(f"need 0 <= e <= dim = {list(dims)}")
    try:
        sizes = _ints(args.fields) if args.fields else cfg.fields
        reps = {s: ffrep.build_module(td, obj, ffrep.small_field(s)) for s in sizes}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    deg = ffrep.degree_bound(reps[sizes[0]], e)
    if len(sizes) < deg + 2:
        raise UsageError(f"need at least {deg + 2} field sizes for degree bound {deg}")
    if not args.fields:
        sizes = sizes[: deg + 2]  # deg + 1 to fit, one to check
    counts = {s: ffrep.count_subreps(reps[s], e) for s in sizes}
    poly = ffrep.fit_counts(lambda s: counts[s], deg, "interpolation", sizes)
    table = ffrep.count_polynomial(td, obj, e)
    return {"object": arcat.format_obj(obj), "e": list(e), "counts": {str(s): c for s, c in counts.items()},
            "polynomial": poly.to_json_obj(), "table": table.to_json_obj(),
            "agree": poly.coeffs == table.coeffs}, 0


def cmd_cheby(cfg, args):
    p = cheb_first(args.m) if args.kind == "first" else cheb_second(args.m)
    return {"kind": args.kind, "m": args.m, "coeffs": list(p.coeffs), "text": str(p)}, 0


def cmd_basis(cfg, args):
    td = arcat.build_data(cfg.n)
    try:
        box = parse_box(args.box, td.size)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    els = enumerate_basis(td, box, args.which)
    return {"n": cfg.n, "which": args.which, "box": [list(box[0]), list(box[1])],
            "elements": [b.to_json_obj() for b in els]}, 0


def cmd_positivity(cfg, args):
    td = arcat.build_data(cfg.n)
    el = parse_element(td, args.element)
    rep = positivity_probe(td, el, args.depth)
    out = rep.to_json_obj()
    out.update({"element": args.element, "depth": args.depth})
    return out, 0


def cmd_sigma(cfg, args):
    td = arcat.build_data(cfg.n)
    el = parse_element(td, args.element)
    data = locate_sigma_cluster(td)
    return {"element": args.element, "image": sigma_apply(td, el).to_json_obj(), "sigma": data.to_json_obj()}, 0


def cmd_verify(cfg, args):
    from . import verify

    if cfg.n >= 3 and not args.slow:
        raise UsageError("n >= 3 runs need --slow")
    rep = verify.run_suite(cfg.n, args.suite, seed=cfg.seed)
    if args.suite != "negative":
        return rep.to_json_obj(), 0 if rep.ok else 1
    # negative controls are expected to fail
    out = rep.to_json_obj()
    out["expected"] = "fail"
    return out, 0 if not any(r.passed for r in rep.results) else 1


def cmd_catalog(cfg, args):
    td = arcat.build_data(cfg.n)
    return {"n": cfg.n, "objects": arcat.catalog(td, args.tau_range, args.max_quasi_length)}, 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qca", description="Exact computations in the quantum cluster algebra of type A~(2n-1,1).")
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--json", metavar="PATH", help="write JSON here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for random-instance checks")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("mutate", parents=[common])
    s.add_argument("--seq", default="")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("char", parents=[common])
    s.add_argument("--object", required=True)
    s.add_argument("--convention", choices=["quadratic", "base"], default="quadratic")
    s.set_defaults(func=cmd_char)

    s = sub.add_parser("grcount", parents=[common])
    s.add_argument("--object", required=True)
    s.add_argument("--e", required=True)
    s.add_argument("--fields", default="")
    s.set_defaults(func=cmd_grcount)

    s = sub.add_parser("cheby", parents=[common])
    s.add_argument("--kind", choices=["first", "second"], default="first")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_cheby)

    s = sub.add_parser("basis", parents=[common])
    s.add_argument("--which", choices=["B", "S"], default="B")
    s.add_argument("--box", default="-1..1")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("positivity", parents=[common])
    s.add_argument("--element", required=True)
    s.add_argument("--depth", type=int, default=3)
    s.set_defaults(func=cmd_positivity)

    s = sub.add_parser("sigma", parents=[common])
    s.add_argument("--element", required=True)
    s.set_defaults(func=cmd_sigma)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", default="all", help="all, smoke, negative, or comma-separated families")
    s.add_argument("--slow", action="store_true", help="allow n >= 3")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", parents=[common])
    s.add_argument("--tau-range", type=int, default=2)
    s.add_argument("--max-quasi-length", type=int, default=None)
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        try:
            caps = ffrep.get_caps()
        except ValueError as exc:
            raise UsageError(f"QCA_CAPS must be a JSON object of integers: {exc}") from exc
        cfg = Config(n=args.n, caps=caps, output=args.json, seed=args.seed)
        if args.cmd == "cheby" and args.m < 0:
            raise UsageError("--m must be nonnegative")
        out, code = args.func(cfg, args)
    except UsageError as exc:
        print(f"qca: error: {exc}", file=sys.stderr)
        return 2
    except ffrep.CapExceeded as exc:
        print(f"qca: cap exceeded: {exc} (raise it with QCA_CAPS)", file=sys.stderr)
        return 2
    text = json.dumps(out, indent=1, sort_keys=False)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
