"""Buchberger's algorithm over the rationals, with a hard step budget.

Monomial orders: lexicographic and graded reverse lexicographic, both with
an explicit variable priority, plus two-block elimination orders built from
them.  The step budget counts single leading-term reductions; exhausting it
raises BudgetExceeded instead of silently truncating.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .poly import MPoly, PolyError

DEFAULT_BUDGET = 200_000
BUDGET_ENV_VAR = "SLICEFORGE_BUDGET"


class BudgetExceeded(RuntimeError):
    """The configured S-pair/reduction step budget was exhausted."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


class Budget:
    def __init__(self, steps: Optional[int] = None):
        self.limit = default_budget() if steps is None else steps
        self.used = 0

    def tick(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(
                f"reduction budget of {self.limit} steps exhausted; "
                f"raise it via {BUDGET_ENV_VAR} or an explicit budget argument"
            )


# -- monomial orders ------------------------------------------------------


@dataclass(frozen=True)
class Order:
    """A monomial order: 'lex' or 'grevlex', with optional variable priority.

    ``blocks`` splits the priority list into a leading block and a trailing
    block compared first/second; a nonempty leading block makes this an
    elimination order for its variables.
    """

    kind: str = "grevlex"
    priority: Optional[tuple] = None
    blocks: Optional[tuple] = None  # (head_vars, tail_vars)

    def key_for(self, ctx: Sequence[str]) -> Callable[[tuple], tuple]:
        if self.blocks is not None:
            head, tail = self.blocks
            khead = _plain_key(self.kind, head, ctx)
            ktail = _plain_key(self.kind, tail, ctx)
            return lambda e: (khead(e), ktail(e))
        prio = self.priority if self.priority is not None else tuple(ctx)
        return _plain_key(self.kind, prio, ctx)

    def describe(self) -> str:
        if self.blocks is not None:
            return f"block-{self.kind}({','.join(self.blocks[0])} >> {','.join(self.blocks[1])})"
        return self.kind


def _plain_key(kind: str, prio: Sequence[str], ctx: Sequence[str]):
    idx = [ctx.index(v) for v in prio]
    if kind == "lex":
        return lambda e: tuple(e[i] for i in idx)
    if kind == "grevlex":
        rev = list(reversed(idx))
        return lambda e: (sum(e[i] for i in idx), tuple(-e[i] for i in rev))
    raise PolyError(f"unknown monomial order {kind!r}")


def elimination_order(drop: Sequence[str], keep: Sequence[str], kind: str = "grevlex") -> Order:
    return Order(kind=kind, blocks=(tuple(drop), tuple(keep)))


# -- leading terms and reduction -------------------------------------------


def leading(f: MPoly, key):
    e = max(f.terms, key=key)
    return e, f.terms[e]


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(f: MPoly, basis: Sequence[MPoly], key, budget: Budget) -> MPoly:
    """Full remainder of f on division by basis (all terms reduced)."""
    ctx = f.vars
    lead = [(leading(g, key), g) for g in basis if not g.is_zero()]
    remainder_terms = {}
    work = dict(f.terms)
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        if c == 0:
            continue
        for (le, lc), g in lead:
            if _divides(le, e):
                budget.tick()
                factor = c / lc
                shift = tuple(x - y for x, y in zip(e, le))
                for ge, gc in g.terms.items():
                    te = tuple(x + y for x, y in zip(ge, shift))
                    if te == e:
                        continue
                    work[te] = work.get(te, Fraction(0)) - factor * gc
                    if work[te] == 0:
                        del work[te]
                break
        else:
            remainder_terms[e] = remainder_terms.get(e, Fraction(0)) + c
    return MPoly(ctx, remainder_terms)


def s_poly(f: MPoly, g: MPoly, key) -> MPoly:
    (ef, cf), (eg, cg) = leading(f, key), leading(g, key)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = MPoly(f.vars, {tuple(l - a for l, a in zip(lcm, ef)): 1 / cf})
    mg = MPoly(g.vars, {tuple(l - a for l, a in zip(lcm, eg)): 1 / cg})
    return mf * f - mg * g


# -- Buchberger -------------------------------------------------------------


def groebner_basis(
    gens: Sequence[MPoly],
    order: Order = Order(),
    budget: Optional[Budget] = None,
) -> "GroebnerBasis":
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if g is not None]
    if not gens:
        raise PolyError("empty generator list")
    ctx = gens[0].vars
    for g in gens[1:]:
        ctx = _union(ctx, g.vars)
    gens = [g.in_context(ctx) for g in gens]
    gens = [g for g in gens if not g.is_zero()]
    if budget is None:
        budget = Budget()
    key = order.key_for(ctx)
    if not gens:
        return GroebnerBasis(ctx, order, [])

    basis = list(gens)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        pairs.sort(
            key=lambda p: key(_pair_lcm(basis[p[0]], basis[p[1]], key)), reverse=True
        )
        i, j = pairs.pop()
        ei, _ = leading(basis[i], key)
        ej, _ = leading(basis[j], key)
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading monomials: S-poly reduces to zero
        budget.tick()
        r = normal_form(s_poly(basis[i], basis[j], key), basis, key, budget)
        if not r.is_zero():
            basis.append(r)
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    gb = GroebnerBasis(ctx, order, _reduce_basis(basis, key, budget))
    if LOG_BASES:
        LOGGED_BASES.append(gb)
    return gb


#: When True, every computed reduced basis is appended to LOGGED_BASES so a
#: test suite can re-verify the Buchberger criterion on everything it produced.
LOG_BASES = False
LOGGED_BASES: list = []


def _pair_lcm(f, g, key):
    ef, _ = leading(f, key)
    eg, _ = leading(g, key)
    return tuple(max(a, b) for a, b in zip(ef, eg))


def _union(a, b):
    out = list(a)
    for v in b:
        if v not in out:
            out.append(v)
    return tuple(out)


def _reduce_basis(basis, key, budget):
    # minimalize leading monomials, then tail-reduce and normalize monic
    lead = [leading(g, key)[0] for g in basis]
    minimal = []
    for i in range(len(basis)):
        li = lead[i]
        if any(
            _divides(lead[j], li) and (lead[j] != li or j < i)
            for j in range(len(basis))
            if j != i
        ):
            continue
        minimal.append(basis[i])
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        r = normal_form(g, others, key, budget) if others else g
        if r.is_zero():
            continue
        _, lc = leading(r, key)
        reduced.append(r.scale(1 / lc))
    reduced.sort(key=lambda g: key(leading(g, key)[0]))
    return reduced


@dataclass(frozen=True)
class GroebnerBasis:
    ctx: tuple
    order: Order
    basis: list

    def key(self):
        return self.order.key_for(self.ctx)

    def leading_monomials(self):
        key = self.key()
        return [leading(g, key)[0] for g in self.basis]

    def reduce(self, f: MPoly, budget: Optional[Budget] = None) -> MPoly:
        if budget is None:
            budget = Budget()
        return normal_form(f.in_context(self.ctx), self.basis, self.key(), budget)

    def contains(self, f: MPoly) -> bool:
        return self.reduce(f).is_zero()

    def is_trivial(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()


# -- quotient ring ----------------------------------------------------------


def quotient_basis(gb: GroebnerBasis):
    """Standard monomials of the quotient ring, or None if infinite.

    Finite iff every variable has a pure power among the leading monomials.
    Monomials are returned ascending in the basis' order.
    """
    if gb.is_trivial():
        return []
    lms = gb.leading_monomials()
    n = len(gb.ctx)
    bounds = []
    for i in range(n):
        pure = [e[i] for e in lms if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    def rec(prefix):
        if len(prefix) == n:
            if not any(_divides(lm, prefix) for lm in lms):
                out.append(tuple(prefix))
            return
        for x in range(bounds[len(prefix)]):
            rec(prefix + (x,))
    rec(())
    key = gb.key()
    out.sort(key=key)
    return [MPoly(gb.ctx, {e: 1}) for e in out]


def quotient_dimension(gens: Sequence[MPoly], order: Order = Order(), budget=None):
    qb = quotient_basis(groebner_basis(gens, order, budget))
    return None if qb is None else len(qb)


# -- elimination -------------------------------------------------------------


def eliminate(
    gens: Sequence[MPoly],
    drop: Iterable[str],
    budget: Optional[Budget] = None,
) -> list:
    """Generators of the elimination ideal with the ``drop`` variables removed."""
    gens = list(gens)
    ctx = gens[0].vars
    for g in gens[1:]:
        ctx = _union(ctx, g.vars)
    drop = [v for v in ctx if v in set(drop)]
    keep = [v for v in ctx if v not in drop]
    if not keep:
        raise PolyError("cannot eliminate every variable")
    order = elimination_order(drop, keep)
    gb = groebner_basis([g.in_context(tuple(drop) + tuple(keep)) for g in gens], order, budget)
    out = []
    for g in gb.basis:
        if all(all(e[i] == 0 for i in range(len(drop))) for e in g.terms):
            out.append(g.restricted(keep))
    return out
