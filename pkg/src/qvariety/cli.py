"""qvariety command line.

Every command prints one JSON document on stdout.  Exit status: 0 when all
witnesses hold (or are explicitly unknown), 1 when some witness is verified
false, 2 on usage, parse or precondition errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from qvariety import kernels, linalg
from qvariety.errors import ParseError, QVarietyError
from qvariety.generators import (CobordismSpec, cobordism_bookkeeping, cobordism_generator, grassmannian,
                                 milnor_hypersurface, mu, universal_bundle)
from qvariety.harness import run_selftest
from qvariety.interp import (delta_compliant, interp_constants, lagrange_interpolant,
                             point_mover, simplest_between, verify_bound)
from qvariety.overt import certify_form, is_projectively_closed, overtness, verify_witness
from qvariety.qset import (compose, disjoint_glue, graph, intersect, product, pullback, qregular_extend,
                           translate, union)
from qvariety.ratpoly import as_fraction, format_point, format_poly, format_rational, norm_squared, parse_point
from qvariety.regstar import certify_reg_star
from qvariety.serialize import (divisibility_to_json, dumps, loads, map_from_json, map_to_json, read_poly_text,
                                set_from_json, set_to_json)
from qvariety.surgery import (adjunction, blow_down, closeness, compactify_inversion, decompactify,
                              stereographic_witnesses)

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandResult:
    payload: dict = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)
    error: tuple[str, str] | None = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_USAGE
        if any(w.get("verdict") is False for w in self.witnesses):
            return EXIT_FALSE
        return EXIT_OK

    def to_json(self) -> dict:
        if self.error is not None:
            code, message = self.error
            return {"status": "error", "code": code, "message": message}
        status = "ok" if self.exit_code == EXIT_OK else "false"
        return {"status": status, "payload": self.payload, "witnesses": self.witnesses}


def _w(name: str, verdict, **detail) -> dict:
    doc = {"name": name, "verdict": verdict}
    if detail:
        doc["detail"] = detail
    return doc


# ---------------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _poly_arg(value: str, nvars: int | None = None):
    """A polynomial given inline or as the path of a text file."""
    text = _read(value) if os.path.exists(value) else value
    return read_poly_text(text, nvars)


def _set_arg(path: str):
    return set_from_json(loads(_read(path)))


def _map_arg(path: str):
    return map_from_json(loads(_read(path)))


def _points_arg(path: str) -> list[tuple[Fraction, ...]]:
    doc = loads(_read(path))
    if isinstance(doc, dict):
        doc = doc.get("points")
    if not isinstance(doc, list):
        raise ParseError(f"{path}: expected a list of points")
    out = []
    for p in doc:
        if isinstance(p, str):
            out.append(parse_point(p))
        elif isinstance(p, list):
            try:
                out.append(tuple(as_fraction(x) for x in p))
            except (TypeError, ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"{path}: bad coordinate ({exc})") from exc
        else:
            raise ParseError(f"{path}: a point must be a string or a list")
    return out


def _samples(values: Sequence[str] | None) -> list[tuple[Fraction, ...]]:
    return [parse_point(v) for v in values or ()]


def _rational_list(text: str) -> list[Fraction]:
    return list(parse_point(text)) if text.strip() else []


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _overt_witness(V) -> dict:
    if V.overt is None:
        return _w("overt-form", None, reason="no overt form recorded")
    verdict = certify_form(V.overt)
    return _w("overt-form", True if verdict.is_overt else None, outcome=verdict.outcome)


def _member_witness(name: str, V, point) -> dict:
    return _w(name, V.contains(point), point=format_point(point))


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> CommandResult:
    what = args.what
    wit = []
    if what == "grassmannian":
        V = grassmannian(args.n, args.k)
        D = [[Fraction(int(i == j and i < args.k)) for j in range(args.n)] for i in range(args.n)]
        wit.append(_member_witness("contains-diagonal-projector", V, linalg.flatten(D)))
    elif what == "milnor":
        V = milnor_hypersurface(args.n, args.m)
        x = [Fraction(int(i == 0)) for i in range(args.n + 1)]
        y = [Fraction(int(i == 1)) for i in range(args.m + 1)]
        wit.append(_member_witness("contains-orthogonal-pair", V, linalg.flatten(mu(args.n, x)) + linalg.flatten(mu(args.m, y))))
    elif what == "bundle":
        V = universal_bundle(args.n, args.k)
        D = [[Fraction(int(i == j and i < args.k)) for j in range(args.n)] for i in range(args.n)]
        fibre = [Fraction(int(i < args.k)) for i in range(args.n)]
        wit.append(_member_witness("contains-fibre-point", V, linalg.flatten(D) + tuple(fibre)))
    else:
        if not args.spec:
            raise ParseError("construct cobordism needs --spec")
        doc = loads(_read(args.spec))
        spec = CobordismSpec.from_json(doc)
        d = args.d if args.d is not None else doc.get("d", spec.dimension)
        book = cobordism_bookkeeping(spec, d)
        V = cobordism_generator(spec, d)
        wit.append(_w("embedding-bound", book["N_h"] <= book["estimate_rhs"] <= book["bound"], **book))
    if V.overt is not None:
        wit.insert(0, _overt_witness(V))
    return CommandResult(set_to_json(V), wit)


# ---------------------------------------------------------------------------
# op


def _blowdown(args) -> CommandResult:
    if not (args.s and args.t and args.map):
        raise ParseError("op blowdown needs --s, --t and --map")
    p = _map_arg(args.map)
    s = _poly_arg(args.s, p.nvars)
    t = _poly_arg(args.t, p.arity)
    C2 = _rational(args.c2)
    ys = _samples(args.y_sample)
    if args.a:
        a = _poly_arg(args.a, p.nvars)
        res = adjunction(s, a, t, p, _rational(args.c1), C2, ys)
    else:
        res = blow_down(s, t, p, C2, ys)
    payload = {
        "r": format_poly(res.r),
        "V": set_to_json(res.V),
        "f": map_to_json(res.f),
        "g": map_to_json(res.g),
        "f_inverse": map_to_json(res.f_inverse),
        "bookkeeping": res.bookkeeping,
        "divisibility": [divisibility_to_json(w) for w in res.divisibility],
    }
    if args.report_closeness:
        xs = _samples(args.x_sample)
        payload["closeness"] = format_rational(closeness(res, p, xs)) if xs else None
    return CommandResult(payload, [w.to_json() for w in res.witnesses])


def _compactify(args) -> CommandResult:
    if not args.s or args.d is None:
        raise ParseError("op compactify needs --s and --d")
    s = _poly_arg(args.s, args.nvars)
    res = compactify_inversion(s, args.d)
    payload = {
        "t": format_poly(res.t),
        "theta": map_to_json(res.theta),
        "d_prime": res.d_prime,
        "t_at_origin": format_rational(res.t_at_origin),
        "divisibility": [divisibility_to_json(w) for w in res.divisibility],
    }
    return CommandResult(payload, [w.to_json() for w in res.witnesses])


def _decompactify(args) -> CommandResult:
    if not args.t or args.C is None:
        raise ParseError("op decompactify needs --t and --C")
    t = _poly_arg(args.t, args.nvars)
    V = decompactify(t, norm_squared(t.nvars), _rational(args.C))
    return CommandResult(set_to_json(V), [])


def _sterlift(args) -> CommandResult:
    if not args.p:
        raise ParseError("op sterlift needs --p")
    res = stereographic_witnesses(_poly_arg(args.p, args.nvars))
    return CommandResult({"P": format_poly(res.P), "nvars": res.P.nvars}, [w.to_json() for w in res.witnesses])


def _need(args, count: int, what: str):
    if len(args.inputs) != count:
        raise ParseError(f"op {args.what} needs {count} input file(s): {what}")


def cmd_op(args) -> CommandResult:
    what = args.what
    if what == "blowdown":
        return _blowdown(args)
    if what == "compactify":
        return _compactify(args)
    if what == "decompactify":
        return _decompactify(args)
    if what == "sterlift":
        return _sterlift(args)
    if what in ("union", "product", "intersect"):
        _need(args, 2, "two set files")
        V, W = _set_arg(args.inputs[0]), _set_arg(args.inputs[1])
        out = {"union": union, "product": product, "intersect": intersect}[what](V, W)
        return CommandResult(set_to_json(out), [_overt_witness(out)])
    if what == "translate":
        _need(args, 1, "a set file")
        if not args.v:
            raise ParseError("op translate needs --v")
        out = translate(_set_arg(args.inputs[0]), parse_point(args.v))
        return CommandResult(set_to_json(out), [_overt_witness(out)])
    if what == "graph":
        _need(args, 1, "a map file")
        return CommandResult(set_to_json(graph(_map_arg(args.inputs[0]))), [])
    if what == "extend":
        _need(args, 1, "a map file")
        ext = qregular_extend(_map_arg(args.inputs[0]))
        wit = [_w(w.label, w.verify()) for w in ext.witnesses]
        return CommandResult(map_to_json(ext.map), wit)
    if what == "glue":
        _need(args, 2, "two map files")
        ext = disjoint_glue(_map_arg(args.inputs[0]), _map_arg(args.inputs[1]), _samples(args.sample))
        wit = [_w(w.label, w.verify()) for w in ext.witnesses]
        return CommandResult(map_to_json(ext.map), wit)
    if what == "pullback":
        _need(args, 2, "a map file and a set file")
        return CommandResult(set_to_json(pullback(_map_arg(args.inputs[0]), _set_arg(args.inputs[1]))), [])
    if what == "compose":
        _need(args, 2, "g.json then f.json")
        g, f = _map_arg(args.inputs[0]), _map_arg(args.inputs[1])
        return CommandResult(map_to_json(compose(g, f, _samples(args.sample))), [])
    raise ParseError(f"unknown op {what!r}")


# ---------------------------------------------------------------------------
# check


def cmd_check(args) -> CommandResult:
    what = args.what
    if what == "overt":
        if args.poly:
            p = _poly_arg(args.poly, args.nvars)
            verdict = overtness(p)
            subject = {"poly": format_poly(p)}
        else:
            if not args.input:
                raise ParseError("check overt needs a set file or --poly")
            V = _set_arg(args.input)
            verdict = is_projectively_closed(V)
            subject = {"ambient_dim": V.ambient_dim}
            p = None
        wit = []
        if verdict.outcome == "overt":
            wit.append(_w("overt", True))
        elif verdict.outcome == "not-overt":
            checked = verify_witness(p, verdict.witness) if p is not None else None
            wit.append(_w("overt", False, witness_rechecked=checked))
        else:
            wit.append(_w("overt", None, reason="unknown"))
        return CommandResult({**subject, "verdict": verdict.to_json()}, wit)
    if not args.input:
        raise ParseError(f"check {what} needs a set file")
    V = _set_arg(args.input)
    if not args.point:
        raise ParseError(f"check {what} needs --point")
    a = parse_point(args.point)
    if what == "membership":
        if len(a) != V.ambient_dim:
            raise ParseError(f"point of dimension {len(a)} for a set in R^{V.ambient_dim}")
        return CommandResult({"point": format_point(a), "member": V.contains(a)},
                             [_member_witness("membership", V, a)])
    d = args.dim if args.dim is not None else V.claimed_dim
    if d is None:
        raise ParseError("check regstar needs --dim (the set records no claimed dimension)")
    cert = certify_reg_star(V, a, d)
    return CommandResult(cert.to_json(), [_w("regstar", cert.certified, jacobian_rank=cert.jacobian_rank)])


# ---------------------------------------------------------------------------
# interpolation


def cmd_interp(args) -> CommandResult:
    A, b = _rational_list(args.A), _rational_list(args.b)
    eps = _rational(args.eps)
    bundle = interp_constants(A, b, args.k, args.m, eps)
    if args.c:
        c = _rational_list(args.c)
    else:
        c = [simplest_between(x - bundle.delta, x + bundle.delta) for x in b]
    if len(c) != len(b):
        raise ParseError("--c needs one node per target")
    compliant = delta_compliant(b, c, bundle)
    Lc = lagrange_interpolant(A, b, c, bundle.ell)
    wit = [
        _w("vanishes-on-A", all(Lc(a) == 0 for a in A)),
        _w("interpolates", all(Lc(cj) == bj - cj for bj, cj in zip(b, c))),
        _w("delta-compliant", compliant),
    ]
    bound = verify_bound(Lc, eps, args.k, args.m, samples=c)
    wit.append(_w("derivative-bound", bound.ok, reason=bound.reason))
    payload = {
        "constants": bundle.to_json(),
        "nodes": [format_rational(x) for x in c],
        "L_c": Lc.to_json(),
        "bound": bound.to_json(),
    }
    return CommandResult(payload, wit)


def cmd_move_points(args) -> CommandResult:
    keep = _points_arg(args.keep) if args.keep else []
    targets = _points_arg(args.targets)
    mover = point_mover(keep, targets, _rational(args.eps), args.k, args.m)
    wit = []
    for A in keep:
        wit.append(_w("fixes-kept-point", mover(A) == tuple(A), point=format_point(A)))
    for B in targets:
        c = mover.preimage(B)
        wit.append(_w("hits-target", mover(c) == tuple(B), target=format_point(B), node=format_point(c)))
    for i, coord in enumerate(mover.coordinates):
        wit.append(_w(f"monotone-coordinate-{i + 1}", coord.certificate.ok))
    return CommandResult(mover.to_json(), wit)


def cmd_selftest(args) -> CommandResult:
    report = run_selftest(args.seed)
    return CommandResult({"seed": args.seed, "checks": len(report)}, report)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qvariety", description="Exact constructions on rational algebraic sets.")
    ap.add_argument("--version", action="store_true", help="print the kernel implementation and exit")
    sub = ap.add_subparsers(dest="command")

    c = sub.add_parser("construct", help="build a canonical set")
    c.add_argument("what", choices=["grassmannian", "milnor", "bundle", "cobordism"])
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--m", type=int, default=2)
    c.add_argument("--d", type=int)
    c.add_argument("--spec", help="cobordism spec JSON")
    c.set_defaults(func=cmd_construct)

    o = sub.add_parser("op", help="combinators, maps and surgery")
    o.add_argument("what", choices=["blowdown", "compactify", "decompactify", "sterlift", "union", "product",
                                    "intersect", "translate", "graph", "glue", "extend", "pullback", "compose"])
    o.add_argument("inputs", nargs="*", help="set or map JSON files")
    o.add_argument("--s")
    o.add_argument("--t")
    o.add_argument("--p")
    o.add_argument("--a")
    o.add_argument("--map")
    o.add_argument("--c1", default="1")
    o.add_argument("--c2", default="1")
    o.add_argument("--C")
    o.add_argument("--d", type=int)
    o.add_argument("--v", help="translation vector, e.g. '1,-1/2'")
    o.add_argument("--nvars", type=int)
    o.add_argument("--sample", action="append", help="rational sample point (repeatable)")
    o.add_argument("--y-sample", action="append", help="sample point of Y for the fibre witness")
    o.add_argument("--x-sample", action="append", help="sample point of X for --report-closeness")
    o.add_argument("--report-closeness", action="store_true")
    o.set_defaults(func=cmd_op)

    k = sub.add_parser("check", help="verdicts and certificates")
    k.add_argument("what", choices=["overt", "regstar", "membership"])
    k.add_argument("input", nargs="?")
    k.add_argument("--poly", help="check a single polynomial instead of a set")
    k.add_argument("--nvars", type=int)
    k.add_argument("--point")
    k.add_argument("--dim", type=int)
    k.set_defaults(func=cmd_check)

    i = sub.add_parser("interp", help="small Lagrange interpolant with its constants")
    i.add_argument("--A", default="")
    i.add_argument("--b", required=True)
    i.add_argument("--c", help="nodes; defaults to the simplest rationals within delta")
    i.add_argument("--eps", default="1/100")
    i.add_argument("--k", type=int, default=0)
    i.add_argument("--m", type=int, default=0)
    i.set_defaults(func=cmd_interp)

    mp = sub.add_parser("move-points", help="coordinatewise point mover")
    mp.add_argument("--keep")
    mp.add_argument("--targets", required=True)
    mp.add_argument("--eps", default="1/100")
    mp.add_argument("--k", type=int, default=0)
    mp.add_argument("--m", type=int, default=1)
    mp.set_defaults(func=cmd_move_points)

    st = sub.add_parser("selftest", help="seeded property battery")
    st.add_argument("--seed", type=int, default=1)
    st.set_defaults(func=cmd_selftest)
    return ap


def run(argv: Sequence[str] | None = None) -> CommandResult:
    args = build_parser().parse_args(argv)
    if args.version:
        return CommandResult({"kernels": kernels.IMPLEMENTATION})
    if not getattr(args, "func", None):
        return CommandResult(error=("usage", "a subcommand is required"))
    try:
        return args.func(args)
    except QVarietyError as exc:
        return CommandResult(error=(exc.code, str(exc)))


def main(argv: Sequence[str] | None = None) -> int:
    try:
        result = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    sys.stdout.write(dumps(result.to_json()))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
