"""Command-line front end.

Every subcommand prints one result in text form, or the JSON mirror of it with
``--json``.  Exit status: 0 on success, 1 on a domain error, 2 on unreadable
input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from . import arithmetic as ar
from . import freeprob as fp
from . import ncp, selftest, tamari
from .algebras import MomentTable
from .errors import ArithmetreeError, ParseError
from .trees import Grove, Name, Tree, as_grove, check_candidate, dagger, exp_of, name_of, tree_of

_VECTOR_RE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")


def parse_vector(text: str) -> tuple[int, ...]:
    """Read ``(a,b,...)``; the vector need not be a name."""
    text = text.strip()
    if text == "(0)":
        return ()
    m = _VECTOR_RE.fullmatch(text)
    if m is None:
        raise ParseError(f"not a vector: {text!r}")
    try:
        return check_candidate(int(x) for x in m.group(1).split(","))
    except ArithmetreeError as exc:
        raise ParseError(str(exc)) from exc


class Result:
    """Text and JSON renderings of one command result."""

    def __init__(self, text: str, obj):
        self.text = text
        self.obj = obj


def _name(v: Name) -> Result:
    return Result(str(v), list(v.coords))


def _grove(g: Grove) -> Result:
    return Result(str(g), g.to_json_obj())


def _bool(x: bool) -> Result:
    return Result("true" if x else "false", x)


def _table(t: MomentTable) -> Result:
    return Result(t.format(), {w: str(x) for w, x in t.items() if w})


def _read_table(path: str) -> MomentTable:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return MomentTable.parse(text)


def _named_tree(t: Tree) -> Result:
    v = name_of(t)
    return Result(f"{v}\n{t.to_json()}", {"name": list(v.coords), "tree": t.to_json_obj()})


# subcommand handlers


def cmd_name(a):
    return _name(name_of(Tree.from_json(a.tree)))


def cmd_tree(a):
    return _named_tree(tree_of(parse_vector(a.vector), strict=a.strict))


def cmd_exp(a):
    mono = exp_of(tree_of(parse_vector(a.vector)))
    return Result(str(mono), str(mono))


def cmd_dagger(a):
    return _name(dagger(Name.parse(a.v)))


def cmd_leq(a):
    return _bool(tamari.leq(Name.parse(a.v), Name.parse(a.w)))


def cmd_interval(a):
    return _grove(Grove(tamari.interval(Name.parse(a.v), Name.parse(a.w))))


def cmd_mobius(a):
    v = Name.parse(a.v)
    if a.w is None:
        m = tamari.mobius_closed(v)
    else:
        m = tamari.mobius_poset(v, Name.parse(a.w))
    return Result(str(m), m)


def _grove_op(fn):
    def handler(a):
        return _grove(fn(Grove.parse(a.g), Grove.parse(a.h)))

    return handler


def cmd_over(a):
    return _name(ar.over(Name.parse(a.v), Name.parse(a.w)))


def cmd_under(a):
    return _name(ar.under(Name.parse(a.v), Name.parse(a.w)))


def cmd_prod(a):
    return _grove(ar.ltimes(Grove.parse(a.g), Grove.parse(a.v)))


def cmd_lmul(a):
    return _name(ar.l_mult(Name.parse(a.v), Name.parse(a.w)))


def cmd_omega(a):
    v = Name.parse(a.v)
    expr = ar.varpi_expr(v) if a.varpi else ar.omega_expr(v)
    return Result(str(expr), str(expr))


def cmd_decompose(a):
    d = ar.decompose_grove(Grove.parse(a.g))
    return Result(str(d), d.to_json_obj())


def cmd_solve(a):
    return _grove(ar.solve_left(Name.parse(a.v), Grove.parse(a.g)))


def cmd_prime(a):
    return _bool(ar.is_prime(Name.parse(a.v)))


def cmd_to_ncp(a):
    p = ncp.to_partition(Name.parse(a.v).tree())
    return Result(str(p), p.to_json_obj())


def cmd_from_ncp(a):
    return _named_tree(ncp.from_partition(ncp.NCPartition.parse(a.partition)))


def cmd_cycles(a):
    p = ncp.NCPartition.parse(a.partition)
    return Result(ncp.to_cycles(p), p.to_json_obj())


def cmd_cumulants(a):
    return _table(fp.cumulants_from_moments(_read_table(a.moments), a.n))


def cmd_moments(a):
    kappa = _read_table(a.cumulants)
    kappa.values.pop("", None)
    return _table(fp.moments_from_cumulants(kappa, a.n))


def _load_free_spec(path: str):
    try:
        spec = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg}") from exc
    if not isinstance(spec, dict) or not isinstance(spec.get("subalgebras"), dict):
        raise ParseError('expected an object with a "subalgebras" member')
    n = spec.get("n", 5)
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError('"n" must be an integer')
    tables = {str(k): MomentTable.from_json_obj(v) for k, v in spec["subalgebras"].items()}
    mixed = None
    if "mixed" in spec:
        mixed = MomentTable.from_json_obj(spec["mixed"])
    elif "identify" in spec:
        mapping = spec["identify"]
        if not isinstance(mapping, dict):
            raise ParseError('"identify" must map letters to letters')
        merged = MomentTable({w: x for t in tables.values() for w, x in t.values.items()})
        alphabet = "".join(sorted({c for t in tables.values() for c in t.alphabet}))
        mixed = fp.identify(merged, mapping, alphabet, n)
    return tables, n, mixed


def cmd_free_check(a):
    tables, n, mixed = _load_free_spec(a.spec)
    report = fp.freeness_check(tables, n=n, mixed=mixed)
    return Result(report.text(), report.to_json_obj())


def cmd_selftest(a):
    checks = list(selftest.run(a.degree))
    lines = [f"{'PASS' if ok else 'FAIL'} {label} ({detail})" for label, ok, detail in checks]
    passed = sum(ok for _, ok, _ in checks)
    lines.append(f"{passed}/{len(checks)} suites passed")
    obj = {
        "degree": a.degree,
        "suites": [{"label": l, "ok": ok, "detail": d} for l, ok, d in checks],
        "passed": passed == len(checks),
    }
    res = Result("\n".join(lines), obj)
    res.failed = passed != len(checks)
    return res


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")

    p = argparse.ArgumentParser(prog="arithmetree", description="Arithmetic of planar binary trees.")
    p.add_argument("--json", action="store_true", help="print JSON")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_text, *args):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for arg in args:
            sp.add_argument(arg)
        sp.set_defaults(handler=fn)
        return sp

    add("name", cmd_name, "name of a tree given as JSON (leaf 0, node [l,r])", "tree")
    sp = add("tree", cmd_tree, "decode a vector into a tree", "vector")
    sp.add_argument("--strict", action="store_true", help="reject vectors that are not names")
    add("exp", cmd_exp, "bracketing of x1..x(n+1) for a vector", "vector")
    add("dagger", cmd_dagger, "mirror image", "v")
    add("leq", cmd_leq, "Tamari comparison", "v", "w")
    add("interval", cmd_interval, "Tamari interval [v, w]", "v", "w")
    sp = add("mobius", cmd_mobius, "Möbius value from the minimum, or between two names", "v")
    sp.add_argument("w", nargs="?")
    add("sum", _grove_op(ar.star), "dendriform sum ∔", "g", "h")
    add("left", _grove_op(ar.dend_left), "left product ⊣", "g", "h")
    add("right", _grove_op(ar.dend_right), "right product ⊢", "g", "h")
    add("over", cmd_over, "v ↗ w", "v", "w")
    add("under", cmd_under, "v ↘ w", "v", "w")
    add("prod", cmd_prod, "dendriform product ⋉", "g", "v")
    add("lmul", cmd_lmul, "L-multiplication ×̃", "v", "w")
    sp = add("omega", cmd_omega, "universal expression of a name", "v")
    sp.add_argument("--varpi", action="store_true", help="use ↗/↘ instead of ≻/≺")
    add("decompose", cmd_decompose, "split a grove into dendriform sums", "g")
    add("solve", cmd_solve, "solve v ∔ X = G for X", "v", "g")
    add("prime", cmd_prime, "primality for ⋉", "v")
    add("to-ncp", cmd_to_ncp, "noncrossing partition of a name", "v")
    add("from-ncp", cmd_from_ncp, "tree of a noncrossing partition", "partition")
    add("cycles", cmd_cycles, "cycle notation of a partition", "partition")
    sp = add("cumulants", cmd_cumulants, "free cumulants from a moment table")
    sp.add_argument("--moments", required=True, metavar="FILE")
    sp.add_argument("--n", type=int, required=True)
    sp = add("moments", cmd_moments, "moments from a cumulant table")
    sp.add_argument("--cumulants", required=True, metavar="FILE")
    sp.add_argument("--n", type=int, required=True)
    sp = add("free-check", cmd_free_check, "desk-scale freeness check")
    sp.add_argument("--spec", required=True, metavar="FILE")
    sp = add("selftest", cmd_selftest, "run the invariant suites")
    sp.add_argument("--degree", type=int, default=5)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        res = args.handler(args)
    except ParseError as exc:
        print(f"arithmetree: {exc}", file=sys.stderr)
        return 2
    except ArithmetreeError as exc:
        print(f"arithmetree: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(res.obj, ensure_ascii=False))
    else:
        print(res.text)
    return 1 if getattr(res, "failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
