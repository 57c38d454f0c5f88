"""Command-line front end: ``a1deg gw|degree|mw|transfer ...``.

Exit codes: 0 success, and one code per library error type (see
:mod:`a1deg.errors`).  Output is deterministic; JSON output uses sorted keys
and emits big numbers as strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import A1Error, ParseError, all_error_types
from .forms import BilinearForm, form_to_json
from .gw import (GWElement, format_element, gw_equals, gw_from_form, parse_gw,
                 parse_gw_terms)
from .localdeg import (PolynomialMap, RationalPoint, global_degree_breakdown,
                       local_degree)
from .mwk import (ValuationSpec, cohomological_transfer_form, degree0_to_gw,
                  parse_mw, real_realization, residue)
from .parsing import parse_element, parse_field, parse_point

GW_SCHEMA = {
    "type": "object",
    "required": ["command", "field", "result", "invariants"],
    "properties": {
        "command": {"type": "string"},
        "field": {"type": "string"},
        "result": {"type": "string"},
        "invariants": {
            "type": "object",
            "required": ["rank", "disc"],
            "properties": {
                "rank": {"type": "integer"},
                "sig": {"type": "integer"},
                "disc": {"type": "string"},
                "hasse": {"type": "object", "additionalProperties": {"const": -1}},
            },
        },
        "diagonal": {"type": "array", "items": {"type": "string"}},
    },
}

EQUALS_SCHEMA = {
    "type": "object",
    "required": ["command", "field", "result"],
    "properties": {"command": {"type": "string"}, "field": {"type": "string"},
                   "result": {"type": "boolean"}},
}

DEGREE_SCHEMA = {
    "type": "object",
    "required": ["command", "field", "map", "result", "invariants", "diagonal"],
    "properties": {
        "command": {"type": "string"},
        "field": {"type": "string"},
        "map": {"type": "string"},
        "result": {"type": "string"},
        "invariants": GW_SCHEMA["properties"]["invariants"],
        "diagonal": {"type": "array", "items": {"type": "string"}},
        "fiber": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "dim", "point", "degree"],
                "properties": {
                    "kind": {"enum": ["rational", "closed"]},
                    "dim": {"type": "integer"},
                    "point": {"type": "array", "items": {"type": "string"}},
                    "residue_field": {"type": "string"},
                    "degree": {"type": "string"},
                },
            },
        },
        "diagnostics": {"type": "object"},
    },
}

MW_SCHEMA = {
    "type": "object",
    "required": ["command", "field", "result"],
    "properties": {
        "command": {"type": "string"},
        "field": {"type": "string"},
        "result": {"type": ["string", "integer"]},
        "invariants": GW_SCHEMA["properties"]["invariants"],
    },
}

TRANSFER_SCHEMA = {
    "type": "object",
    "required": ["command", "from", "to", "result", "invariants", "diagonal"],
    "properties": {
        "command": {"type": "string"},
        "from": {"type": "string"},
        "to": {"type": "string"},
        "result": {"type": "string"},
        "invariants": GW_SCHEMA["properties"]["invariants"],
        "diagonal": {"type": "array", "items": {"type": "string"}},
        "gram": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["type", "message", "code"],
            "properties": {"type": {"type": "string"}, "message": {"type": "string"},
                           "code": {"type": "integer"}},
        }
    },
}

SCHEMAS = {"gw": GW_SCHEMA, "gw equals": EQUALS_SCHEMA, "degree": DEGREE_SCHEMA,
           "mw": MW_SCHEMA, "transfer": TRANSFER_SCHEMA, "error": ERROR_SCHEMA}


def exit_code_table():
    return {cls.__name__: cls.exit_code for cls in all_error_types()}


class Response:
    def __init__(self, payload, lines, code=0):
        self.payload = payload
        self.lines = lines
        self.code = code


def _payload(text):
    if text == "-":
        return sys.stdin.read().strip()
    return text


def _diagonal(x: GWElement):
    return [str(a) for a in x.plus] + [f"-({a})" for a in x.minus]


def _gw_summary(x: GWElement):
    nf = x.normal_form()
    return {"result": format_element(x), "invariants": nf.to_json(), "diagonal": _diagonal(x)}


def _gw_lines(x: GWElement):
    return [format_element(x), str(x.normal_form())]


# ---------------------------------------------------------------- commands

def cmd_gw(args) -> Response:
    field = parse_field(args.field)
    if args.action == "equals":
        x = parse_gw(field, _payload(args.expr))
        y = parse_gw(field, _payload(args.other))
        eq = gw_equals(x, y)
        return Response({"command": "gw equals", "field": str(field), "result": eq},
                        ["true" if eq else "false"])
    x = parse_gw(field, _payload(args.expr))
    payload = {"command": f"gw {args.action}", "field": str(field), **_gw_summary(x)}
    if args.action == "normalize":
        lines = [format_element(x)]
        if args.verbose:
            lines.append(str(x.normal_form()))
    else:
        lines = [str(x.normal_form())]
    return Response(payload, lines)


def _point_strings(pt):
    return [str(c) for c in pt.coords]


def cmd_degree(args) -> Response:
    field = parse_field(args.field)
    f = PolynomialMap.parse(field, _payload(args.map))
    base = {"command": f"degree {args.action}", "field": str(field), "map": str(f)}
    if args.action == "local":
        if args.point is None:
            raise ParseError("degree local needs --point")
        pt = parse_point(field, _payload(args.point))
        if len(pt) != f.n:
            raise ParseError(f"point has {len(pt)} coordinates, map has {f.n}")
        deg, details = local_degree(f, RationalPoint(tuple(pt)), with_details=True)
        Q = details["algebra"]
        diag = {"local_dim": Q.dim, "basis": Q.basis_strings(),
                "eta": details["eta"].describe(Q.labels)}
        payload = {**base, "point": [str(c) for c in pt], **_gw_summary(deg),
                   "diagnostics": diag}
        lines = _gw_lines(deg)
        if args.verbose:
            lines.append(f"local algebra: dim {Q.dim}, basis {', '.join(diag['basis'])}")
            lines.append(diag["eta"])
            lines.append("gram: " + json.dumps(form_to_json(details["form"])["gram"]))
        return Response(payload, lines)
    if args.value is None:
        raise ParseError("degree global needs --value")
    y = parse_point(field, _payload(args.value))
    if len(y) != f.n:
        raise ParseError(f"value has {len(y)} coordinates, map has {f.n}")
    pieces = global_degree_breakdown(f, RationalPoint(tuple(y)))
    total = GWElement.zero(field)
    fiber = []
    lines = []
    for p in pieces:
        total = total + p.degree
        entry = {"kind": p.kind, "dim": p.dim, "point": _point_strings(p.point),
                 "degree": format_element(p.degree)}
        if p.kind == "closed":
            entry["residue_field"] = str(p.point.field)
        fiber.append(entry)
        where = f" over {p.point.field}" if p.kind == "closed" else ""
        lines.append(f"  {p.kind} point ({', '.join(entry['point'])}){where}, "
                     f"dim {p.dim}: {entry['degree']}")
    payload = {**base, "value": [str(c) for c in y], **_gw_summary(total), "fiber": fiber}
    return Response(payload, _gw_lines(total) + ["fiber:"] + lines)


def cmd_mw(args) -> Response:
    field = parse_field(args.field)
    x = parse_mw(field, _payload(args.expr))
    action = "realize-real" if args.action == "realize" else args.action
    base = {"command": f"mw {action}", "field": str(field)}
    if action == "residue":
        if args.prime is None:
            raise ParseError("mw residue needs --prime")
        r = residue(x, ValuationSpec(args.prime))
        payload = {**base, "residue_field": str(r.field), "result": str(r)}
        lines = [str(r)] + ([f"over {r.field}"] if args.verbose else [])
        return Response(payload, lines)
    if action == "to-gw":
        g = degree0_to_gw(x)
        return Response({**base, **_gw_summary(g)}, _gw_lines(g))
    value = real_realization(x)
    return Response({**base, "result": value}, [str(value)])


def cmd_transfer(args) -> Response:
    L = parse_field(args.source)
    K = parse_field(args.target)
    terms = parse_gw_terms(L, _payload(args.expr))
    total = GWElement.zero(K)
    grams = []
    for coeff, body in terms:
        a = parse_element(L, body)
        if a.is_zero():
            raise ParseError("<0> is not allowed")
        form = cohomological_transfer_form(BilinearForm.diagonal(L, [a]), K)
        grams.append((coeff, body, form))
        total = total + gw_from_form(form) * coeff
    payload = {"command": "transfer", "from": str(L), "to": str(K), **_gw_summary(total)}
    lines = _gw_lines(total)
    if args.verbose:
        for coeff, body, form in grams:
            gram = form_to_json(form)["gram"]
            payload.setdefault("gram", gram)
            lines.append(f"gram of Tr<{body}>: {json.dumps(gram)}" +
                         (f" (times {coeff})" if coeff != 1 else ""))
    return Response(payload, lines)


# ---------------------------------------------------------------- parser

def _common(p, toplevel=False):
    kw = {} if toplevel else {"default": argparse.SUPPRESS}
    p.add_argument("--json", action="store_true", help="emit JSON", **kw)
    p.add_argument("--verbose", action="store_true", help="show intermediate data", **kw)


def _field_opt(p, toplevel=False):
    kw = {"default": "Q"} if toplevel else {"default": argparse.SUPPRESS}
    p.add_argument("--field", help="field descriptor: Q, F5, Q[i]/(i^2+1), ...", **kw)


def build_parser():
    parser = argparse.ArgumentParser(prog="a1deg", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"a1deg {__version__}")
    _common(parser, toplevel=True)
    _field_opt(parser, toplevel=True)
    sub = parser.add_subparsers(dest="command", required=True)

    gw = sub.add_parser("gw", help="Grothendieck-Witt ring computations")
    gws = gw.add_subparsers(dest="action", required=True)
    for name in ("normalize", "invariants"):
        p = gws.add_parser(name)
        _common(p)
        _field_opt(p)
        p.add_argument("expr", help="e.g. '15<1>+12<-1>' or '-' for stdin")
    p = gws.add_parser("equals")
    _common(p)
    _field_opt(p)
    p.add_argument("expr")
    p.add_argument("other")

    deg = sub.add_parser("degree", help="local and global A1-degrees")
    degs = deg.add_subparsers(dest="action", required=True)
    for name in ("local", "global"):
        p = degs.add_parser(name)
        _common(p)
        _field_opt(p)
        p.add_argument("--map", required=True, help="components separated by ';' in x1..xn")
        if name == "local":
            p.add_argument("--point", help="comma-separated coordinates")
        else:
            p.add_argument("--value", help="comma-separated coordinates of y")

    mw = sub.add_parser("mw", help="Milnor-Witt K-theory")
    mws = mw.add_subparsers(dest="action", required=True)
    for name, aliases in (("residue", []), ("to-gw", []), ("realize-real", ["realize"])):
        p = mws.add_parser(name, aliases=aliases)
        _common(p)
        _field_opt(p)
        if name == "residue":
            p.add_argument("--prime", type=int, help="odd prime p (uniformizer p on Q)")
        p.add_argument("expr", help="e.g. 'eta^2*[2][3] + 3*[5]'")

    tr = sub.add_parser("transfer", help="trace-form transfer from L down to K")
    _common(tr)
    tr.add_argument("--from", dest="source", required=True)
    tr.add_argument("--to", dest="target", required=True)
    tr.add_argument("expr", help="GW expression over the source field, e.g. '<1>'")
    return parser


COMMANDS = {"gw": cmd_gw, "degree": cmd_degree, "mw": cmd_mw, "transfer": cmd_transfer}


def run_error(exc, args, stdout, stderr):
    if args.json:
        err = {"error": {"type": type(exc).__name__, "message": str(exc),
                         "code": exc.exit_code}}
        stdout.write(json.dumps(err, sort_keys=True) + "\n")
    else:
        stderr.write(f"error ({type(exc).__name__}): {exc}\n")
    return exc.exit_code


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        resp = COMMANDS[args.command](args)
    except A1Error as exc:
        return run_error(exc, args, stdout, stderr)
    except ValueError as exc:
        # malformed input caught below the parsers, e.g. a map with the wrong arity
        return run_error(ParseError(str(exc)), args, stdout, stderr)
    if args.json:
        stdout.write(json.dumps(resp.payload, sort_keys=True, indent=2) + "\n")
    else:
        stdout.write("\n".join(resp.lines) + "\n")
    return resp.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
