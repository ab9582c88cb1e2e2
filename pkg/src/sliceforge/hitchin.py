"""Local models over Hitchin bases: cameral curves, local threefolds,
discriminants, family displays with weight ledgers, and the folded-into-
homogeneous restriction checks.

A LocalSection is a single-chart polynomial representative of a section of
the Hitchin base; bundle degrees are tracked symbolically in the ledger.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import dynkin, groebner, liealg, linalg, singularity
from .dynkin import DynkinType
from .liealg import VerificationError
from .poly import MPoly, PolyError


class HitchinError(ValueError):
    pass


# -- univariate helpers -------------------------------------------------------


def _coeffs(f: MPoly, var: str) -> list:
    """Dense coefficient list (ascending) of a univariate polynomial."""
    for v in f.vars:
        if v != var and f.degree_in(v) > 0:
            raise HitchinError(f"{f} is not univariate in {var}")
    if var not in f.vars:
        return [f.constant_value()] if not f.is_zero() else []
    i = f.vars.index(var)
    deg = f.degree_in(var)
    out = [Fraction(0)] * (deg + 1)
    for e, c in f.terms.items():
        out[e[i]] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _from_coeffs(coeffs, var: str) -> MPoly:
    return MPoly((var,), {(i,): c for i, c in enumerate(coeffs) if c != 0})


def _u_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(x != 0 for x in a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _u_gcd(a, b):
    a, b = list(a), list(b)
    while b:
        _, r = _u_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _u_diff(a):
    return [i * c for i, c in enumerate(a)][1:]


def squarefree_decomposition(f: MPoly, var: str) -> list:
    """Yun-style decomposition: [(squarefree factor, multiplicity)], ascending."""
    a = _coeffs(f, var)
    if len(a) <= 1:
        return []
    out = []
    g = _u_gcd(a, _u_diff(a))
    w, _ = _u_divmod(a, g)
    i = 1
    while len(w) > 1:
        y = _u_gcd(w, g)
        factor, _ = _u_divmod(w, y)
        if len(factor) > 1:
            out.append((_from_coeffs(factor, var), i))
        g, _ = _u_divmod(g, y)
        w = y
        i += 1
    return out


def rational_roots(f: MPoly, var: str) -> list:
    """All rational roots with multiplicities: [(root, multiplicity)]."""
    out = []
    for factor, mult in squarefree_decomposition(f, var):
        coeffs = _coeffs(factor, var)
        from math import gcd, lcm
        den = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * den) for c in coeffs]
        if ints[0] == 0:
            out.append((Fraction(0), mult))
            while ints[0] == 0:
                ints.pop(0)
        lead, const = ints[-1], ints[0]
        for p in _divisors(abs(const)):
            for q in _divisors(abs(lead)):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * cand ** i for i, c in enumerate(ints)) == 0:
                        if not any(r == cand for r, _ in out):
                            out.append((cand, mult))
    return sorted(out)


def _divisors(n: int) -> list:
    n = abs(n)
    out = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(out + [n // d for d in out]))


# -- sections ------------------------------------------------------------------


@dataclass(frozen=True)
class LocalSection:
    chart: str
    components: tuple          # univariate MPoly in the chart variable
    degrees: tuple             # invariant degrees d_1 .. d_r

    @staticmethod
    def build(d: DynkinType, components: Sequence, chart: str = "x") -> "LocalSection":
        degrees = dynkin.invariant_degrees(d)
        comps = []
        for c in components:
            if not isinstance(c, MPoly):
                c = MPoly.parse(str(c)) if isinstance(c, str) else MPoly.const(c, (chart,))
            comps.append(c.in_context((chart,)) if set(c.vars) <= {chart} else c)
        if len(comps) != len(degrees):
            raise HitchinError(
                f"section needs {len(degrees)} components for {d}, got {len(comps)}")
        for c in comps:
            if any(v != chart and c.degree_in(v) > 0 for v in c.vars):
                raise HitchinError(f"section component {c} is not univariate in {chart}")
        return LocalSection(chart, tuple(c.in_context((chart,)) for c in comps),
                            tuple(degrees))


# -- cameral curves --------------------------------------------------------------


@dataclass(frozen=True)
class LocalCameralCurve:
    type: DynkinType
    variables: tuple           # (chart, cartan variables...)
    generators: tuple          # q_j(t) - b_j(chart)
    non_reduced: bool

    def to_json(self) -> dict:
        return {"type": str(self.type), "vars": list(self.variables),
                "generators": [str(g) for g in self.generators],
                "non_reduced": self.non_reduced}


def local_cameral(d: DynkinType, b: LocalSection) -> LocalCameralCurve:
    """Fiber product ideal {q_j(t) = b_j(x)} with the restricted invariants
    sign-normalized to positive leading coefficients."""
    varnames, invs, degrees = dynkin.cartan_invariants(d)
    if b.chart in varnames:
        raise HitchinError("chart variable collides with a Cartan variable")
    if tuple(b.degrees) != tuple(degrees):
        raise HitchinError("section degrees do not match the invariant degrees")
    ctx = (b.chart,) + tuple(varnames)
    gens = tuple(
        q.in_context(ctx) - comp.in_context(ctx)
        for q, comp in zip(invs, b.components)
    )
    non_reduced = all(c.is_zero() for c in b.components)
    return LocalCameralCurve(d, ctx, gens, non_reduced)


# -- local threefolds -------------------------------------------------------------


_SLICE_TAGS = {"A1": "sl2", "A3": "sl4", "B2": "so5"}


@dataclass(frozen=True)
class LocalThreefold:
    type: DynkinType
    model: str                 # "slice" or "hypersurface"
    chart: str
    fiber_vars: tuple
    variables: tuple
    generators: tuple

    @property
    def equation(self) -> MPoly:
        if len(self.generators) != 1:
            raise HitchinError("threefold is not a hypersurface")
        return self.generators[0]

    def to_json(self) -> dict:
        return {"type": str(self.type), "model": self.model,
                "chart": self.chart, "vars": list(self.variables),
                "generators": [str(g) for g in self.generators]}


def local_threefold(d: DynkinType, b: LocalSection, model: str = "hypersurface") -> LocalThreefold:
    if model == "slice":
        tag = _SLICE_TAGS.get(str(d))
        if tag is None:
            raise HitchinError(f"no built-in slice for {d}; use the hypersurface model")
        alg, triple = liealg.builtin_triple(tag)
        s = liealg.slodowy_slice(alg, triple)
        q = liealg.adjoint_quotient(s, dynkin.invariant_degrees(d))
        if b.chart in s.params:
            raise HitchinError("chart variable collides with a slice parameter")
        ctx = tuple(s.params) + (b.chart,)
        gens = tuple(
            comp_sigma.in_context(ctx) - comp_b.in_context(ctx)
            for comp_sigma, comp_b in zip(q.components, b.components)
        )
        return LocalThreefold(d, "slice", b.chart, tuple(s.params), ctx, gens)
    if model == "hypersurface":
        family = singularity.semiuniversal_deformation(d)
        chart = b.chart
        comps = b.components
        if chart in ("x", "y", "z"):
            # the fiber coordinates own (x, y, z); move the chart to "s"
            chart = "s"
            comps = tuple(
                c.subs({b.chart: MPoly.var(chart, (chart,))}).restricted((chart,))
                for c in comps)
        ctx = ("x", "y", "z", chart)
        eq = family.equation.subs({
            p: c.in_context((chart,)) for p, c in zip(family.parameters, comps)
        })
        eq = eq.restricted(tuple(v for v in eq.vars if v in ctx)).in_context(ctx)
        return LocalThreefold(d, "hypersurface", chart, ("x", "y", "z"), ctx, (eq,))
    raise HitchinError(f"unknown model tag {model!r}")


# -- discriminant ------------------------------------------------------------------


@dataclass(frozen=True)
class DiscriminantReport:
    in_invariants: MPoly       # product of roots rewritten in s_1..s_r
    polynomial: MPoly          # evaluated at the section: univariate in the chart
    zeros: tuple               # (squarefree factor or chart - root, multiplicity)
    rational_zeros: tuple      # (root, multiplicity)

    @property
    def all_simple(self) -> bool:
        return all(m == 1 for _, m in self.zeros)


_DISC_CACHE: dict = {}


def discriminant_in_invariants(d: DynkinType,
                               budget: Optional[groebner.Budget] = None) -> MPoly:
    """prod_{alpha in R} alpha(t) rewritten as a polynomial in the restricted
    invariants s_1..s_r."""
    key = str(d)
    if key in _DISC_CACHE:
        return _DISC_CACHE[key]
    rs = dynkin.root_system(d)
    varnames, invs, _ = dynkin.cartan_invariants(d)
    _, functionals = dynkin.root_functionals(rs, varnames)
    prod = MPoly.const(1, varnames)
    for f in functionals:
        prod = prod * f
    svars = tuple(f"s{i+1}" for i in range(len(invs)))
    gens = [q.in_context(varnames + svars) - MPoly.var(s, varnames + svars)
            for q, s in zip(invs, svars)]
    order = groebner.elimination_order(list(varnames), list(svars))
    gb = groebner.groebner_basis(gens, order, budget)
    rewritten = gb.reduce(prod.in_context(varnames + svars))
    if any(rewritten.degree_in(v) > 0 for v in varnames):
        raise VerificationError("discriminant could not be rewritten in the invariants")
    result = rewritten.restricted(svars)
    _DISC_CACHE[key] = result
    return result


def discriminant(d: DynkinType, b: LocalSection,
                 budget: Optional[groebner.Budget] = None) -> DiscriminantReport:
    in_inv = discriminant_in_invariants(d, budget)
    svars = in_inv.vars
    poly = in_inv.subs({s: c for s, c in zip(svars, b.components)})
    poly = poly.in_context((b.chart,)) if set(poly.vars) <= {b.chart} \
        else poly.restricted((b.chart,))
    zeros = []
    for factor, mult in squarefree_decomposition(poly, b.chart):
        roots = rational_roots(factor, b.chart)
        remaining = factor
        for root, _ in roots:
            linear = MPoly.var(b.chart) - MPoly.const(root)
            zeros.append((linear, mult))
            quot, rem = _u_divmod(_coeffs(remaining, b.chart), _coeffs(linear, b.chart))
            if rem:
                raise HitchinError("internal factorization error")
            remaining = _from_coeffs(quot, b.chart)
        if remaining.total_degree() >= 1:
            zeros.append((remaining.content_free(), mult))
    rational = []
    for factor, mult in zeros:
        if factor.total_degree() == 1:
            c = _coeffs(factor, b.chart)
            rational.append((-c[0] / c[1], mult))
    return DiscriminantReport(in_inv, poly, tuple(zeros), tuple(sorted(rational)))


# -- smoothness --------------------------------------------------------------------


@dataclass(frozen=True)
class FiberReport:
    point: Fraction
    fiber_type: str
    total_space_singular: bool


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    positive_dimensional: bool
    singular_points: tuple     # tuples of rational coordinates (variable order)
    variables: tuple
    fibers: tuple              # FiberReport per rational discriminant zero

    def verdict(self) -> str:
        if self.smooth:
            return "smooth"
        if self.positive_dimensional:
            return "singular locus is positive-dimensional"
        pts = ", ".join(str(tuple(map(str, p))) for p in self.singular_points)
        return f"singular at {pts}" if pts else "singular (no rational points found)"

    def to_json(self) -> dict:
        return {
            "smooth": self.smooth,
            "positive_dimensional": self.positive_dimensional,
            "singular_points": [[str(x) for x in p] for p in self.singular_points],
            "variables": list(self.variables),
            "fibers": [{"point": str(f.point), "fiber_type": f.fiber_type,
                        "total_space_singular": f.total_space_singular}
                       for f in self.fibers],
        }


def _jacobian_minors(gens, variables):
    jac = [[g.diff(v) for v in variables] for g in gens]
    k = len(gens)
    if k == 1:
        return [e for row in jac for e in row]
    import itertools
    minors = []
    for cols in itertools.combinations(range(len(variables)), k):
        minors.append(_poly_det([[jac[i][j] for j in cols] for i in range(k)]))
    return minors


def _poly_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    det = MPoly.zero(m[0][0].vars)
    for j in range(n):
        minor = [[m[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = m[0][j] * _poly_det(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det


def _rational_points(gens, variables, budget=None):
    """Rational solutions of a zero-dimensional system; None if the locus is
    positive-dimensional, [] if empty."""
    gens = [g.in_context(variables) for g in gens]
    gb = groebner.groebner_basis(gens, budget=budget)
    if gb.is_trivial():
        return []
    if groebner.quotient_basis(gb) is None:
        return None
    candidates = {}
    for v in variables:
        others = [u for u in variables if u != v]
        elim = groebner.eliminate(gens, others, budget=budget)
        uni = [g for g in elim if set(u for u in g.vars if g.degree_in(u) > 0) <= {v}]
        if not uni or all(g.is_zero() for g in uni):
            return None
        roots = set()
        first = True
        for g in uni:
            if g.is_zero():
                continue
            cur = {r for r, _ in rational_roots(g.in_context((v,)), v)}
            if g.is_constant():
                cur = set()
            roots = cur if first else roots & cur
            first = False
        candidates[v] = sorted(roots)
    import itertools
    points = []
    for combo in itertools.product(*(candidates[v] for v in variables)):
        point = dict(zip(variables, combo))
        if all(g.evaluate(point) == 0 for g in gens):
            points.append(tuple(combo))
    return points


def smoothness_report(obj, budget: Optional[groebner.Budget] = None,
                      section: Optional[LocalSection] = None) -> SmoothnessReport:
    """Jacobian-criterion report; for threefolds, the singular fibers over the
    rational discriminant zeros are classified as well."""
    gens = list(obj.generators)
    variables = obj.variables
    sing = [g for g in gens] + [m for m in _jacobian_minors(gens, variables)
                                if not m.is_zero()]
    points = _rational_points(sing, variables, budget)
    positive = points is None
    smooth = points == []
    fibers = []
    if isinstance(obj, LocalThreefold) and section is not None and len(gens) == 1:
        disc = discriminant(obj.type, section, budget)
        eq = gens[0]
        for x0, _ in disc.rational_zeros:
            fiber = eq.subs({obj.chart: x0})
            fiber = fiber.restricted(
                tuple(v for v in fiber.vars if v in obj.fiber_vars)
            ).in_context(obj.fiber_vars)
            fpoints = _rational_points(
                [fiber] + fiber.gradient(), obj.fiber_vars, budget)
            ftype = "smooth"
            singular_here = False
            for p in fpoints or []:
                shifted = fiber.subs({
                    v: MPoly.var(v, obj.fiber_vars) + MPoly.const(c, obj.fiber_vars)
                    for v, c in zip(obj.fiber_vars, p)})
                verdict = singularity.classify_ade(shifted, budget)
                ftype = str(verdict)
                full_point = tuple(list(p) + [x0]) if variables[-1] == obj.chart \
                    else tuple([x0] + list(p))
                singular_here = not smooth and not positive and \
                    any(pt == full_point for pt in points)
            fibers.append(FiberReport(x0, ftype, singular_here))
    return SmoothnessReport(smooth, positive, tuple(points or ()), tuple(variables),
                            tuple(fibers))


# -- family display ------------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    type: DynkinType
    family: singularity.DeformationFamily
    ambient: tuple             # bundle tags for (x, y, z)
    target: str
    base: tuple                # H^0 summand tags

    def display(self) -> str:
        amb = " (+) ".join(self.ambient)
        base = " (+) ".join(self.base)
        return (f"{self.family.equation} = 0 in tot({self.target}), "
                f"ambient tot({amb}), base {base}")

    def to_json(self) -> dict:
        return {"type": str(self.type), "equation": str(self.family.equation),
                "ambient": list(self.ambient), "target": self.target,
                "base": list(self.base),
                "ledger": dict(self.family.ledger), "degree": self.family.degree}


def _bundle_tag(lweight: int) -> str:
    if lweight % 2 == 0:
        half = lweight // 2
        return "K" if half == 1 else f"K^{half}"
    return f"L^{lweight}"


def family_spec(d: DynkinType) -> FamilySpec:
    fam = singularity.semiuniversal_deformation(d)
    ambient = tuple(_bundle_tag(fam.ledger[v]) for v in ("x", "y", "z"))
    target = _bundle_tag(fam.degree)
    degrees = dynkin.invariant_degrees(d)
    base = tuple(f"H^0({_bundle_tag(2 * deg)})" for deg in degrees)
    return FamilySpec(d, fam, ambient, target, base)


# -- restriction of the folded family into the homogeneous one -----------------------


@dataclass(frozen=True)
class RestrictionReport:
    type: DynkinType
    homogeneous: DynkinType
    family_match: bool
    invariant_directions: tuple
    dropped_directions: tuple
    wall_orbits_checked: int
    wall_containment: bool

    @property
    def passed(self) -> bool:
        return self.family_match and self.wall_containment


def restriction_check(d: DynkinType) -> RestrictionReport:
    """Equation-level check that the folded family is the homogeneous family
    with the non-invariant base directions set to zero, plus the root-data
    wall-containment witness (each folded wall is the simultaneous wall of a
    whole automorphism orbit of homogeneous roots)."""
    if d.is_ade:
        fam = singularity.semiuniversal_deformation(d)
        return RestrictionReport(d, d, True, fam.directions, (), 0, True)
    rec = dynkin.associated_pair(d)
    h = rec.homogeneous
    act = singularity.symmetry_action(d)
    fam_h = singularity.semiuniversal_deformation(h)
    fam_d = singularity.semiuniversal_deformation(d)
    invariant, dropped = [], []
    keep = {}
    for p, g in zip(fam_h.parameters, fam_h.directions):
        if all(g.subs(gen) == g for gen in act.generators):
            invariant.append(g)
            keep[p] = g
        else:
            dropped.append(g)
    restricted = fam_h.equation.subs(
        {p: 0 for p in fam_h.parameters if p not in keep})
    # rename surviving homogeneous parameters to the folded ones by matching
    # deformation directions
    rename = {}
    match = len(invariant) == len(fam_d.directions)
    if match:
        for p_h, g in keep.items():
            hits = [p_d for p_d, g_d in zip(fam_d.parameters, fam_d.directions)
                    if g_d == g]
            if len(hits) != 1:
                match = False
                break
            rename[p_h] = MPoly.var(hits[0], fam_d.parameters)
    if match:
        match = restricted.subs(rename) == fam_d.equation
        for p_h, g in keep.items():
            p_d = next(p for p, g_d in zip(fam_d.parameters, fam_d.directions)
                       if g_d == g)
            if fam_h.ledger[p_h] != fam_d.ledger[p_d]:
                match = False
    wall_ok, n_orbits = _wall_containment(rec)
    return RestrictionReport(d, h, match, tuple(invariant), tuple(dropped),
                             n_orbits, wall_ok)


def _wall_containment(rec: dynkin.FoldingRecord):
    """For every automorphism orbit of homogeneous roots: on the invariant
    subspace, the wall of the orbit sum equals the intersection of the walls
    of all orbit members."""
    rs = dynkin.root_system(rec.homogeneous)
    simples = rs.simple
    cols = linalg.transpose(simples)
    # roots in simple-root coordinates
    coords = {alpha: linalg.solve(cols, alpha) for alpha in rs.roots}
    elements = [g.perm for g in rec.generators]
    # close the permutation group
    n = rec.homogeneous.rank
    group = {tuple(range(n))}
    frontier = [tuple(range(n))]
    while frontier:
        g = frontier.pop()
        for h in elements:
            k = tuple(g[h[i]] for i in range(n))
            if k not in group:
                group.add(k)
                frontier.append(k)

    def act(perm, alpha):
        m = coords[alpha]
        moved = [Fraction(0)] * n
        for i in range(n):
            moved[perm[i]] += m[i]
        amb = [sum(moved[i] * simples[i][k] for i in range(n))
               for k in range(len(simples[0]))]
        return tuple(amb)

    # invariant subspace of the Cartan, in simple-root coordinates
    rows = []
    for perm in group:
        for i in range(n):
            row = [Fraction(0)] * n
            row[i] += 1
            row[perm[i]] -= 1
            rows.append(tuple(row))
    inv_basis = linalg.nullspace(tuple(rows))

    def functional(alpha):
        # alpha evaluated on the invariant basis vectors (c-coordinates)
        return tuple(
            sum(c * sum(alpha[k] * simples[i][k] for k in range(len(alpha)))
                for i, c in enumerate(vec))
            for vec in inv_basis
        )

    seen = set()
    n_orbits = 0
    for alpha in rs.roots:
        if alpha in seen:
            continue
        orbit = {alpha}
        frontier = [alpha]
        while frontier:
            beta = frontier.pop()
            for perm in group:
                gamma = act(perm, beta)
                if gamma not in orbit:
                    orbit.add(gamma)
                    frontier.append(gamma)
        seen |= orbit
        n_orbits += 1
        functionals = [functional(beta) for beta in orbit]
        total = tuple(sum(col) for col in zip(*functionals))
        rank_sum = linalg.rank((total,))
        rank_all = linalg.rank(tuple(functionals))
        if rank_sum != rank_all:
            return False, n_orbits
        for f in functionals[1:]:
            if f != functionals[0]:
                return False, n_orbits
    return True, n_orbits
