"""Command line interface.

Input format, either on stdin or in the file given as positional argument:

    p 101            # modulus header (or use --modulus)
    x^3 + x*y + y^2  # a polynomial expression in x, y

or a monomial list, one term per line after the header: "j i c" meaning
c * x^j * y^i.  Lines starting with '#' are ignored.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    DegenerateInput,
    MinimallyDegenerate,
    ModulusNotPrime,
    NotSeparable,
    ParseError,
    PrecisionTooLow,
    SlopeFactorError,
)
from .ffield import Field
from .slopecore import BiPoly, format_poly
from .polygon import newton_polygon, lower_boundary, lattice_length, volume, lower_volume, minimal_lattice_length
from .facto import facto
from .recomb import factor_minimal, factorization

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_PARSE = 3
EXIT_NOT_SEPARABLE = 4
EXIT_MINIMALLY_DEGENERATE = 5
EXIT_PRECISION = 6
EXIT_VERIFY = 7


# ------------------------------------------------------------------ parsing


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "#":
                while self.pos < len(self.text) and self.text[self.pos] != "\n":
                    self.pos += 1
            elif ch.isspace():
                self.pos += 1
            else:
                break

    def peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, msg):
        line = self.text.count("\n", 0, self.pos) + 1
        col = self.pos - self.text.rfind("\n", 0, self.pos)
        raise ParseError("%s (line %d, column %d)" % (msg, line, col))

    def take_int(self):
        self._skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start or self.text[start:self.pos] == "-":
            self.error("expected an integer")
        return int(self.text[start : self.pos])


def _parse_atom(sc, field):
    ch = sc.peek()
    if ch == "(":
        sc.pos += 1
        out = _parse_sum(sc, field, stop=")")
        if sc.peek() != ")":
            sc.error("expected ')'")
        sc.pos += 1
        if sc.peek() == "^":
            sc.pos += 1
            e = sc.take_int()
            if e < 0:
                sc.error("negative power of a subexpression")
            out = out.pow(e)
        return out
    if ch in ("x", "y"):
        sc.pos += 1
        e = 1
        if sc.peek() == "^":
            sc.pos += 1
            e = sc.take_int()
        if ch == "x":
            return BiPoly.monomial(field, 0, e)
        if e < 0:
            sc.error("negative power of y")
        return BiPoly.monomial(field, e, 0)
    if ch.isdigit() or ch == "-":
        return BiPoly.monomial(field, 0, 0, sc.take_int() % field.p)
    sc.error("expected a coefficient, x or y")


def _parse_term(sc, field):
    out = _parse_atom(sc, field)
    while sc.peek() == "*":
        sc.pos += 1
        out = out * _parse_atom(sc, field)
    return out


def _parse_sum(sc, field, stop=""):
    out = BiPoly.zero(field)
    sign = 1
    if sc.peek() == "+":
        sc.pos += 1
    elif sc.peek() == "-":
        sign = -1
        sc.pos += 1
    while True:
        term = _parse_term(sc, field)
        out = out + (term if sign > 0 else -term)
        ch = sc.peek()
        if ch == "+":
            sign = 1
            sc.pos += 1
        elif ch == "-":
            sign = -1
            sc.pos += 1
        elif ch == stop:
            return out
        else:
            sc.error("expected '+', '-' or end of input")


def parse_expression(text, field):
    return _parse_sum(_Scanner(text), field)


def _looks_like_triples(body):
    for line in body.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            return False
        try:
            [int(t) for t in parts]
        except ValueError:
            return False
    return True


def parse_input(text, modulus=None):
    """(field, BiPoly) from a 'p <modulus>' header plus expression or triples."""
    body = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split()
        if parts[0] == "p" and len(parts) == 2 and modulus is None:
            try:
                modulus = int(parts[1])
            except ValueError:
                raise ParseError("bad modulus %r" % parts[1])
            continue
        body.append(line)
    if modulus is None:
        raise ParseError("no modulus: use a 'p <prime>' header or --modulus")
    field = Field(modulus)
    body_text = "\n".join(body)
    if not body_text.strip():
        raise ParseError("no polynomial given")
    if _looks_like_triples(body_text):
        terms = {}
        for line in body_text.splitlines():
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            j, i, c = (int(t) for t in stripped.split())
            if i < 0:
                raise ParseError("negative power of y in term %r" % stripped)
            c %= field.p
            if c:
                terms[(i, j)] = (terms.get((i, j), 0) + c) % field.p
        return field, BiPoly(field, terms)
    return field, parse_expression(body_text, field)


def _read_source(args):
    if args.input and args.input != "-":
        with open(args.input) as fh:
            return fh.read()
    return sys.stdin.read()


def _poly_json(F):
    return {"terms": [[j, i, c] for (j, i, c) in F.canonical_terms()]}


def _frac_str(x):
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


# --------------------------------------------------------------- subcommands


def _cmd_factor(args):
    field, F = parse_input(_read_source(args), args.modulus)
    if args.minimal:
        res, tau, r0 = factor_minimal(F, seed=args.seed)
    else:
        res = factorization(F, seed=args.seed)
    if args.verify:
        prod = res.product()
        if not prod == F:
            print("verification failed", file=sys.stderr)
            return EXIT_VERIFY
    info = res.info
    if args.json:
        out = {
            "modulus": field.p,
            "unit": res.unit,
            "factors": [_poly_json(G) for G in res.factors],
            "trace": {
                "method": info.get("method"),
                "lambda": _frac_str(info["lam"]) if info.get("lam") is not None else None,
                "sigma": _frac_str(info["sigma"]) if info.get("sigma") is not None else None,
                "s": info.get("s"),
                "recursion_depth": info.get("depth", 0),
            },
        }
        print(json.dumps(out))
    else:
        print("modulus %d" % field.p)
        print("unit %d" % res.unit)
        for G in res.factors:
            print(format_poly(G))
    return EXIT_OK


def _cmd_polygon(args):
    field, F = parse_input(_read_source(args), args.modulus)
    P = newton_polygon(F)
    edges = lower_boundary(P)
    r0, taus = minimal_lattice_length(P)
    out = {
        "vertices": [list(v) for v in P.vertices],
        "lower_edges": [
            {
                "start": list(e.start),
                "end": list(e.end),
                "slope": _frac_str(e.slope),
                "length": e.length,
            }
            for e in edges
        ],
        "lattice_length": lattice_length(P),
        "volume": _frac_str(volume(P)),
        "lower_volume": _frac_str(lower_volume(P)),
        "minimal_lattice_length": r0,
        "minimizing_maps": [
            {"matrix": [list(r) for r in t.matrix], "shift": list(t.shift)}
            for t in taus
        ],
    }
    print(json.dumps(out))
    return EXIT_OK


def _cmd_hensel(args):
    field, F = parse_input(_read_source(args), args.modulus)
    lam = Fraction(args.slope)
    sigma = Fraction(args.sigma)
    res = facto(F, lam, sigma, seed=args.seed)
    out = {
        "modulus": field.p,
        "lambda": _frac_str(lam),
        "sigma": _frac_str(sigma),
        "unit": _poly_json(res.unit),
        "factors": [_poly_json(G) for G in res.factors],
        "recursion_depth": res.trace.depth(),
    }
    print(json.dumps(out))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="slopefactor",
        description="Factor bivariate polynomials over a prime field by Newton polygon slopes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", nargs="?", help="input file ('-' or omitted: stdin)")
        sp.add_argument("--modulus", type=int, help="prime modulus (overrides 'p' header)")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized steps")

    f = sub.add_parser("factor", help="irreducible factorization in K[x,y]")
    common(f)
    f.add_argument("--verify", action="store_true", help="check the product of factors")
    f.add_argument("--minimal", action="store_true", help="minimize the polygon first")
    f.add_argument("--json", action="store_true", help="JSON output")
    f.set_defaults(func=_cmd_factor)

    g = sub.add_parser("polygon", help="Newton polygon report (JSON)")
    common(g)
    g.set_defaults(func=_cmd_polygon)

    h = sub.add_parser("hensel", help="analytic factorization along a given slope (JSON)")
    common(h)
    h.add_argument("--slope", "--lambda", dest="slope", required=True, help="slope m/q")
    h.add_argument("--sigma", required=True, help="relative precision a/b")
    h.set_defaults(func=_cmd_hensel)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ModulusNotPrime) as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    except NotSeparable as exc:
        print("not separable: %s" % exc, file=sys.stderr)
        return EXIT_NOT_SEPARABLE
    except MinimallyDegenerate as exc:
        print("minimally degenerate: %s" % exc, file=sys.stderr)
        return EXIT_MINIMALLY_DEGENERATE
    except PrecisionTooLow as exc:
        print("precision too low: %s" % exc, file=sys.stderr)
        return EXIT_PRECISION
    except (DegenerateInput, SlopeFactorError) as exc:
        print("degenerate input: %s" % exc, file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
