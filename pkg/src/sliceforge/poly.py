"""Exact multivariate polynomials over the rationals.

An MPoly is a finite map from exponent vectors to nonzero Fraction
coefficients, together with an ordered tuple of variable names (the
context).  Contexts are unified by *name*: binary operations extend both
operands to the union context, keeping the left operand's variable order
and appending unseen variables of the right one.

All values are immutable after construction; every operation returns a
fresh MPoly.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]


class PolyError(ValueError):
    """Raised on malformed polynomial input or incompatible operations."""


def _frac(c: Coeff) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise PolyError(f"coefficient must be an int or Fraction, got {type(c).__name__}")


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Coeff]):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise PolyError(f"duplicate variable in context {vs}")
        clean = {}
        for exps, c in terms.items():
            e = tuple(int(x) for x in exps)
            if len(e) != len(vs):
                raise PolyError(f"exponent vector {e} does not match context {vs}")
            if any(x < 0 for x in e):
                raise PolyError(f"negative exponent in {e}")
            c = _frac(c)
            if c != 0:
                clean[e] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(variables: Iterable[str] = ()) -> "MPoly":
        return MPoly(variables, {})

    @staticmethod
    def const(c: Coeff, variables: Iterable[str] = ()) -> "MPoly":
        vs = tuple(variables)
        return MPoly(vs, {(0,) * len(vs): _frac(c)})

    @staticmethod
    def var(name: str, variables: Iterable[str] = None) -> "MPoly":
        vs = tuple(variables) if variables is not None else (name,)
        if name not in vs:
            raise PolyError(f"variable {name!r} not in context {vs}")
        e = tuple(1 if v == name else 0 for v in vs)
        return MPoly(vs, {e: Fraction(1)})

    # -- context handling ---------------------------------------------

    def in_context(self, variables: Iterable[str]) -> "MPoly":
        """Re-express this polynomial in a (super)context, matching by name."""
        vs = tuple(variables)
        pos = {}
        for v in self.vars:
            if v not in vs:
                raise PolyError(f"variable {v!r} missing from target context {vs}")
            pos[v] = vs.index(v)
        terms = {}
        for exps, c in self.terms.items():
            e = [0] * len(vs)
            for v, x in zip(self.vars, exps):
                e[pos[v]] = x
            terms[tuple(e)] = c
        return MPoly(vs, terms)

    def _unified(self, other: "MPoly"):
        if self.vars == other.vars:
            return self, other
        union = list(self.vars)
        for v in other.vars:
            if v not in union:
                union.append(v)
        return self.in_context(union), other.in_context(union)

    # -- predicates / accessors -----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise PolyError("not a constant polynomial")
        return next(iter(self.terms.values()), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def weighted_degrees(self, weights: Mapping[str, int]):
        """Set of weighted degrees of the monomials (one element iff homogeneous)."""
        w = [weights[v] for v in self.vars]
        return {sum(x * wi for x, wi in zip(e, w)) for e in self.terms}

    def coeff(self, exps: tuple) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def homogeneous_part(self, degree: int) -> "MPoly":
        return MPoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.vars)
        a, b = self._unified(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return MPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        a, b = self._unified(other)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return MPoly(a.vars, terms)

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "MPoly":
        c = _frac(c)
        return MPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError(f"pow requires a nonnegative integer exponent, got {n!r}")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._unified(other)
        return a.terms == b.terms

    def __hash__(self):
        a = self
        if any(self.degree_in(v) == 0 for v in self.vars):
            used = tuple(v for v in self.vars if self.degree_in(v) > 0)
            a = self.restricted(used)
        return hash((a.vars, frozenset(a.terms.items())))

    def restricted(self, variables: Iterable[str]) -> "MPoly":
        """Drop unused variables from the context (they must not occur)."""
        vs = tuple(variables)
        keep = [self.vars.index(v) for v in vs]
        drop = [i for i, v in enumerate(self.vars) if v not in vs]
        for e in self.terms:
            if any(e[i] for i in drop):
                raise PolyError("cannot drop a variable that occurs in the polynomial")
        return MPoly(vs, {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    # -- calculus / substitution ----------------------------------------

    def diff(self, name: str) -> "MPoly":
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            terms[tuple(d)] = c * e[i]
        return MPoly(self.vars, terms)

    def gradient(self):
        return [self.diff(v) for v in self.vars]

    def subs(self, assignment: Mapping[str, Union["MPoly", Coeff]]) -> "MPoly":
        """Substitute polynomials or rationals for variables, by name."""
        images = {}
        ctx = list(self.vars)
        for name, val in assignment.items():
            if not isinstance(val, MPoly):
                val = MPoly.const(val)
            images[name] = val
            for v in val.vars:
                if v not in ctx:
                    ctx.append(v)
        result = MPoly.zero(ctx)
        cache = {}
        for e, c in self.terms.items():
            term = MPoly.const(c, ctx)
            for v, x in zip(self.vars, e):
                if x == 0:
                    continue
                if v in images:
                    key = (v, x)
                    if key not in cache:
                        cache[key] = images[v] ** x
                    term = term * cache[key]
                else:
                    term = term * MPoly.var(v, ctx) ** x
            result = result + term
        return result

    def evaluate(self, point: Mapping[str, Coeff]) -> Fraction:
        val = self.subs({v: _frac(point[v]) for v in self.vars})
        return val.constant_value()

    # -- normalization --------------------------------------------------

    def content_free(self) -> "MPoly":
        """Primitive integer form: coefficients are coprime integers.

        The sign of the original coefficients is preserved.
        """
        if not self.terms:
            return self
        from math import gcd, lcm
        den = lcm(*(c.denominator for c in self.terms.values()))
        num = gcd(*(abs(c.numerator) for c in self.terms.values()))
        return self.scale(Fraction(den, num))

    # -- text / JSON forms ----------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        def mono_key(e):
            return (-sum(e), tuple(-x for x in e))
        parts = []
        for e in sorted(self.terms, key=mono_key):
            c = self.terms[e]
            factors = []
            for v, x in zip(self.vars, e):
                if x == 1:
                    factors.append(v)
                elif x > 1:
                    factors.append(f"{v}^{x}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({self.vars!r}, {str(self)!r})"

    @staticmethod
    def parse(text: str, variables: Iterable[str] = None) -> "MPoly":
        return _parse(text, variables)

    def to_json(self) -> dict:
        def mono_key(e):
            return (-sum(e), tuple(-x for x in e))
        return {
            "vars": list(self.vars),
            "terms": [
                {"coeff": f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator),
                 "exps": list(e)}
                for e, c in sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))
            ],
        }

    @staticmethod
    def from_json(data: Union[dict, str]) -> "MPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return MPoly(data["vars"], {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]})


# -- parser -------------------------------------------------------------
#
# Grammar: sums/differences of terms; a term is a '*'-separated product of
# rational constants and powers  var^exp ; parenthesized subexpressions are
# allowed, as is juxtaposition-free '*', e.g.  "3/2*x^2*y - z + (x+1)^2".

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise PolyError(f"unexpected character at {text[pos:]!r}")
            break
        pos = m.end()
        if m.group(1):
            tokens.append(("num", Fraction(m.group(1))))
        elif m.group(2):
            tokens.append(("var", m.group(2)))
        else:
            tokens.append((m.group(3), None))
    return tokens


class _Parser:
    def __init__(self, tokens, ctx):
        self.tokens = tokens
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def sum(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        result = self.product().scale(sign)
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next()[0] == "-":
                    sign = -sign
            result = result + self.product().scale(sign)
        return result

    def product(self):
        result = self.power()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.next()
                result = result * self.power()
            elif nxt in ("num", "var", "("):
                result = result * self.power()
            else:
                return result

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "num" or val.denominator != 1:
                raise PolyError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.next()
        if kind == "num":
            return MPoly.const(val)
        if kind == "var":
            return MPoly.var(val)
        if kind == "(":
            inner = self.sum()
            if self.peek() != ")":
                raise PolyError("unbalanced parentheses")
            self.next()
            return inner
        raise PolyError(f"unexpected token {kind!r}")


def _parse(text: str, variables=None) -> MPoly:
    tokens = _tokenize(text)
    if not tokens:
        raise PolyError("empty polynomial text")
    p = _Parser(tokens, variables)
    result = p.sum()
    if p.i != len(tokens):
        raise PolyError(f"trailing input after position {p.i}")
    if variables is not None:
        result = result.in_context(tuple(variables)) if set(result.vars) <= set(variables) else result
        if set(result.vars) - set(variables):
            raise PolyError(f"unexpected variables {set(result.vars) - set(variables)}")
    return result
