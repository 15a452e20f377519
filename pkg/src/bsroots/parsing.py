"""Parsing of ideal descriptions and b-polynomial expressions."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import bpoly as bp
from .polyhedron import MonomialIdeal, minimalize_generators


class InputError(ValueError):
    pass


def fmt(q) -> str:
    """Exact string for a rational: '-5/6', '-2'."""
    return str(Fraction(q))


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse_ideal(text: str) -> Tuple[Tuple[str, ...], MonomialIdeal]:
    """Parse a term string like ``"x^2*y^7, y^3"`` or a JSON object.

    JSON form: ``{"vars": 2 or ["x", "y"], "generators": [[2, 7], [0, 3]]}``.
    Returns variable names and the minimalized ideal.
    """
    text = text.strip()
    if not text:
        raise InputError("empty ideal description")
    if text.startswith("{"):
        names, gens = _parse_json(text)
    else:
        names, gens = _parse_terms(text)
    ideal = minimalize_generators(gens)
    if ideal.is_unit:
        raise InputError("the unit ideal is not a proper ideal")
    return names, ideal


def _parse_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad JSON: {e}") from None
    if not isinstance(obj, dict) or "generators" not in obj or "vars" not in obj:
        raise InputError('JSON ideal needs "vars" and "generators"')
    v = obj["vars"]
    if isinstance(v, int) and not isinstance(v, bool):
        names = tuple(f"x{i + 1}" for i in range(v))
    elif isinstance(v, list) and all(isinstance(s, str) and _IDENT.match(s) for s in v):
        names = tuple(v)
    else:
        raise InputError('"vars" must be a positive integer or a list of identifiers')
    if not names or len(set(names)) != len(names):
        raise InputError("variable names must be nonempty and distinct")
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise InputError("need a nonempty generator list")
    out = []
    for g in gens:
        if (not isinstance(g, list) or len(g) != len(names)
                or not all(isinstance(c, int) and not isinstance(c, bool) and c >= 0 for c in g)):
            raise InputError(f"generator {g!r} is not a list of {len(names)} nonnegative integers")
        out.append(tuple(g))
    return names, out


_TERM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*$")


def _parse_terms(text):
    names: List[str] = []
    monos = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise InputError("empty generator in list")
        mono = {}
        if chunk == "1":
            monos.append(mono)
            continue
        for factor in chunk.split("*"):
            m = _TERM.match(factor)
            if not m:
                raise InputError(f"cannot parse factor {factor.strip()!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in names:
                names.append(name)
            mono[name] = mono.get(name, 0) + exp
        monos.append(mono)
    if not names:
        raise InputError("the unit ideal is not a proper ideal")
    gens = [tuple(mono.get(v, 0) for v in names) for mono in monos]
    return tuple(names), gens


def ideal_to_json(names: Sequence[str], ideal: MonomialIdeal) -> dict:
    return {"vars": list(names), "generators": [list(g) for g in ideal.generators]}


def ideal_to_terms(names: Sequence[str], ideal: MonomialIdeal) -> str:
    terms = []
    for g in ideal.generators:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, g) if e]
        terms.append("*".join(parts) or "1")
    return ", ".join(terms)


# ---------------------------------------------------------------------------
# b-polynomial expressions

_TOKENS = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]+)|(.))")


def _tokenize(text):
    out = []
    for num, word, sym in _TOKENS.findall(text):
        if num:
            out.append(("num", num))
        elif word:
            out.append(("word", word))
        elif sym.strip():
            out.append(("sym", sym))
    return out


class _Parser:
    INT_FUNCS = {
        "det": (1, 1, lambda a: bp.from_determinant(*a)),
        "arr": (2, 2, lambda a: bp.from_generic_arrangement(*a)),
        "pow": (1, 1, lambda a: bp.from_univariate_power(*a)),
        "brieskorn": (1, None, lambda a: bp.from_brieskorn(a)),
    }
    POLY_FUNCS = {"lcm": bp.lcm, "union_combine": bp.ideal_union_combine}

    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            raise InputError(f"expected {want} at token {self.i}, got {tok[1]!r}")
        self.i += 1
        return tok

    def parse(self):
        b = self.expr()
        if self.peek()[0] is not None:
            raise InputError(f"unexpected trailing input {self.peek()[1]!r}")
        return b

    def expr(self):
        b = self.atom()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("sym", "*"):
                self.take()
                b = bp.tensor(b, self.atom())
            elif (kind, val) == ("sym", "/"):
                self.take()
                b = bp.divide_linear(b, self.linear())
            else:
                return b

    def linear(self):
        # (s+c) or (s-c); returns the root
        self.take("sym", "(")
        self.take("word", "s")
        sign = self.take("sym")[1]
        if sign not in "+-":
            raise InputError("expected (s+c) or (s-c)")
        c = Fraction(self.take("num")[1])
        self.take("sym", ")")
        return -c if sign == "+" else c

    def atom(self):
        kind, val = self.peek()
        if (kind, val) == ("sym", "("):
            self.take()
            b = self.expr()
            self.take("sym", ")")
            return b
        if kind != "word":
            raise InputError(f"expected a constructor, got {val!r}")
        self.take()
        if val in self.INT_FUNCS:
            lo, hi, fn = self.INT_FUNCS[val]
            args = self.int_args()
            if len(args) < lo or (hi is not None and len(args) > hi):
                raise InputError(f"{val} takes {lo if lo == hi else 'at least %d' % lo} argument(s)")
            return fn(args)
        if val in self.POLY_FUNCS:
            self.take("sym", "(")
            a = self.expr()
            self.take("sym", ",")
            b = self.expr()
            self.take("sym", ")")
            return self.POLY_FUNCS[val](a, b)
        raise InputError(f"unknown constructor {val!r}")

    def int_args(self):
        self.take("sym", "(")
        args = [int(self.take("num")[1])]
        while self.peek() == ("sym", ","):
            self.take()
            args.append(int(self.take("num")[1]))
        self.take("sym", ")")
        return args


def parse_bpoly(text: str) -> bp.BPoly:
    """Evaluate an expression such as ``"lcm(pow(2)*pow(3), det(2)) / (s+1)"``."""
    try:
        return _Parser(text).parse()
    except bp.BPolyError as e:
        raise InputError(str(e)) from None
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(str(e)) from None
