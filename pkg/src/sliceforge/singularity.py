"""ADE surface singularities: normal forms, Milnor numbers, symmetry actions,
Jacobi rings, semi-universal deformations, and classification.

The deformation weight law 2*d_i + weight(g_i) = d requires the D-series
weights to be taken at twice the printed table normalization (the printed
D_k weights make f homogeneous but are too small by a factor of two for the
parameter ledger); the scaling factor 2*max(d_i)/d is applied uniformly and
equals one for the A and E series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import dynkin, groebner, linalg
from .dynkin import DynkinType
from .liealg import VerificationError
from .poly import MPoly, PolyError

_XYZ = ("x", "y", "z")


class SingularityError(ValueError):
    pass


@dataclass(frozen=True)
class SingularityModel:
    type: DynkinType
    equation: MPoly
    weights: tuple             # printed natural weights of (x, y, z)
    degree: int                # printed total degree d
    homogeneous: bool          # printed weights verified against the equation

    def natural_scale(self) -> int:
        """Factor turning printed weights into ledger weights (2 for D, else 1)."""
        d_top = max(dynkin.invariant_degrees(self.type))
        scale = Fraction(2 * d_top, self.degree)
        if scale.denominator != 1:
            raise SingularityError("weight scale is not integral")
        return int(scale)


def normal_form(h: DynkinType) -> SingularityModel:
    """Normal form f(x,y,z) with its natural weights (w_x, w_y, w_z; d)."""
    if not h.is_ade:
        raise SingularityError(f"{h} is not an ADE type")
    f, r = h.family, h.rank
    x, y, z = (MPoly.var(v, _XYZ) for v in _XYZ)
    if f == "A":
        eq = x ** (r + 1) - y * z
        weights, d = (2, r + 1, r + 1), 2 * (r + 1)
    elif f == "D":
        eq = x * (x ** (r - 2) - y * y) - z * z
        weights, d = (2, r - 2, r - 1), 2 * r - 2
    elif r == 6:
        eq = x ** 4 + y ** 3 + z * z
        weights, d = (6, 8, 12), 24
    elif r == 7:
        eq = x ** 3 * y + y ** 3 + z * z
        weights, d = (8, 12, 18), 36
    else:
        eq = x ** 5 + y ** 3 + z * z
        weights, d = (12, 20, 30), 60
    wmap = dict(zip(_XYZ, weights))
    homogeneous = eq.weighted_degrees(wmap) == {d}
    return SingularityModel(h, eq, weights, d, homogeneous)


def milnor_number(f: MPoly, budget: Optional[groebner.Budget] = None):
    """dim of the quotient by the Jacobian ideal, or None if infinite."""
    if f.evaluate({v: 0 for v in f.vars}) != 0:
        raise SingularityError("f does not vanish at the origin")
    partials = [g for g in f.gradient()]
    if all(g.is_zero() for g in partials):
        return None
    return groebner.quotient_dimension(partials, budget=budget)


# -- symmetry actions ---------------------------------------------------------


@dataclass(frozen=True)
class SymmetryAction:
    group: str
    generators: tuple          # tuple of dicts: variable -> MPoly image

    def apply(self, f: MPoly, which: int = 0) -> MPoly:
        return f.subs(self.generators[which])


def symmetry_action(d: DynkinType, model: Optional[SingularityModel] = None,
                    generators: Optional[Sequence[dict]] = None) -> SymmetryAction:
    """Finite symmetry of the homogeneous singularity realizing the folding.

    Built in for the B series (Z/2 on x^{2k+2} - yz by (x,y,z) -> (-x,z,y));
    other folded types require user-supplied generators, which are verified
    to preserve the equation and to have the right group order.
    """
    if d.is_ade:
        return SymmetryAction("1", ({v: MPoly.var(v, _XYZ) for v in _XYZ},))
    if model is None:
        model = normal_form(associated_homogeneous(d))
    if generators is None:
        if d.family != "B":
            raise SingularityError(
                f"no built-in action for {d}; supply generators explicitly")
        x, y, z = (MPoly.var(v, _XYZ) for v in _XYZ)
        generators = ({"x": -x, "y": z, "z": y},)
        group = "Z/2"
    else:
        generators = tuple(dict(g) for g in generators)
        group = _GROUP_OF_ORDER.get(_group_order(generators), "user")
    for g in generators:
        if model.equation.subs(g) != model.equation:
            raise VerificationError("generator does not preserve the equation")
    expected = dynkin.folding_group_order(d)
    if _group_order(generators) != expected:
        raise VerificationError(
            f"action has order {_group_order(generators)}, expected {expected}")
    return SymmetryAction(_GROUP_OF_ORDER[expected], tuple(generators))


_GROUP_OF_ORDER = {1: "1", 2: "Z/2", 6: "S3"}


def _group_order(generators) -> int:
    ident = {v: MPoly.var(v, _XYZ) for v in _XYZ}

    def key(sub):
        return tuple(str(sub[v].in_context(_XYZ)) for v in _XYZ)

    seen = {key(ident): ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in generators:
            comp = {v: g[v].subs(h) for v in _XYZ}
            k = key(comp)
            if k not in seen:
                seen[k] = comp
                frontier.append(comp)
    return len(seen)


def associated_homogeneous(d: DynkinType) -> DynkinType:
    """The ADE type carrying the folded singularity (identity on ADE)."""
    return d if d.is_ade else dynkin.associated_pair(d).homogeneous


# -- Jacobi ring ---------------------------------------------------------------


@dataclass(frozen=True)
class JacobiRingBasis:
    monomials: tuple           # full staircase basis
    invariant: tuple           # invariant sublist / combinations


def jacobi_basis(m: SingularityModel, act: Optional[SymmetryAction] = None,
                 budget: Optional[groebner.Budget] = None) -> JacobiRingBasis:
    """Monomial basis of the Jacobi ring, plus the invariant part under an
    action (Reynolds averaging reduced against the Jacobian ideal)."""
    gb = groebner.groebner_basis(m.equation.gradient(), budget=budget)
    basis = groebner.quotient_basis(gb)
    if basis is None:
        raise SingularityError("Milnor number is infinite")
    invariant = tuple(basis)
    if act is not None and act.group != "1":
        elements = _all_elements(act)
        reduced = []
        for mono in basis:
            avg = MPoly.zero(_XYZ)
            for g in elements:
                avg = avg + mono.subs(g)
            avg = gb.reduce(avg.scale(Fraction(1, len(elements))))
            if not avg.is_zero():
                reduced.append(avg)
        # independent representatives, preferring plain monomials
        coords = []
        chosen = []
        index = {tuple(mono.terms)[0]: i for i, mono in enumerate(basis)}
        for avg in reduced:
            vec = [Fraction(0)] * len(basis)
            for e, c in avg.in_context(_XYZ).terms.items():
                vec[index[e]] = c
            if linalg.rank(tuple(coords + [tuple(vec)])) > len(coords):
                coords.append(tuple(vec))
                chosen.append(avg)
        invariant = tuple(chosen)
    return JacobiRingBasis(tuple(basis), invariant)


def _all_elements(act: SymmetryAction) -> list:
    ident = {v: MPoly.var(v, _XYZ) for v in _XYZ}

    def key(sub):
        return tuple(str(sub[v].in_context(_XYZ)) for v in _XYZ)

    seen = {key(ident): ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in act.generators:
            comp = {v: g[v].subs(h) for v in _XYZ}
            k = key(comp)
            if k not in seen:
                seen[k] = comp
                frontier.append(comp)
    return list(seen.values())


# -- semi-universal deformation -------------------------------------------------


@dataclass(frozen=True)
class DeformationFamily:
    type: DynkinType
    model: SingularityModel
    parameters: tuple          # b_1 .. b_r
    directions: tuple          # g_1 .. g_r (descending monomial weight)
    equation: MPoly            # F = f + sum b_i g_i
    ledger: dict               # variable/parameter -> ledger weight
    degree: int                # ledger total degree

    def display(self) -> str:
        return f"{self.equation} = 0"


def semiuniversal_deformation(d: DynkinType,
                              act: Optional[SymmetryAction] = None) -> DeformationFamily:
    """F = f + sum b_i g_i over the (invariant) Jacobi basis, g_i sorted by
    descending monomial weight, b_i of weight 2*d_i."""
    homog = associated_homogeneous(d)
    model = normal_form(homog)
    if act is None:
        act = symmetry_action(d, model)
    basis = jacobi_basis(model, act)
    degrees = dynkin.invariant_degrees(d)
    if len(basis.invariant) != len(degrees):
        raise VerificationError(
            f"invariant Jacobi basis has {len(basis.invariant)} elements, "
            f"expected rank {len(degrees)}")
    scale = model.natural_scale()
    wmap = {v: scale * w for v, w in zip(_XYZ, model.weights)}
    d_total = scale * model.degree

    def gweight(g: MPoly) -> int:
        ws = g.weighted_degrees(wmap)
        if len(ws) != 1:
            raise VerificationError("deformation direction is not weighted-homogeneous")
        return next(iter(ws))

    directions = sorted(basis.invariant, key=lambda g: (-gweight(g), str(g)))
    params = tuple(f"b{i+1}" for i in range(len(degrees)))
    ledger = dict(wmap)
    equation = model.equation
    for name, g, deg in zip(params, directions, degrees):
        w = 2 * deg
        if w + gweight(g) != d_total:
            raise VerificationError(
                f"weight law fails: 2*{deg} + {gweight(g)} != {d_total}")
        ledger[name] = w
        equation = equation + MPoly.var(name, params) * g
    full_weights = dict(ledger)
    if equation.weighted_degrees(full_weights) != {d_total}:
        raise VerificationError("family equation violates the weight ledger")
    return DeformationFamily(d, model, params, tuple(directions), equation,
                             ledger, d_total)


# -- classification ---------------------------------------------------------------


def _quadratic_matrix(f: MPoly) -> tuple:
    """Symmetric matrix Q with quadratic part = v^T Q v."""
    n = len(f.vars)
    q = [[Fraction(0)] * n for _ in range(n)]
    for e, c in f.homogeneous_part(2).terms.items():
        idx = [i for i, x in enumerate(e) for _ in range(x)]
        i, j = idx
        if i == j:
            q[i][i] += c
        else:
            q[i][j] += c / 2
            q[j][i] += c / 2
    return tuple(tuple(row) for row in q)


def _congruence_diagonalize(q):
    """P with P^T Q P diagonal (rational congruence)."""
    n = len(q)
    m = [list(row) for row in q]
    p = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for k in range(n):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][i] != 0), None)
            if swap is not None:
                _congr_swap(m, p, k, swap)
            else:
                other = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if other is None:
                    continue
                _congr_add(m, p, k, other, Fraction(1))
        for i in range(k + 1, n):
            if m[i][k] != 0:
                _congr_add(m, p, i, k, -m[i][k] / m[k][k])
    return tuple(tuple(row) for row in p), tuple(m[i][i] for i in range(n))


def _congr_swap(m, p, i, j):
    n = len(m)
    m[i], m[j] = m[j], m[i]
    for r in range(n):
        m[r][i], m[r][j] = m[r][j], m[r][i]
    for r in range(n):
        p[r][i], p[r][j] = p[r][j], p[r][i]


def _congr_add(m, p, i, j, c):
    # column op: col_i += c * col_j (and matching row op), tracked in P
    n = len(m)
    for r in range(n):
        m[r][i] += c * m[r][j]
    for s in range(n):
        m[i][s] += c * m[j][s]
    for r in range(n):
        p[r][i] += c * p[r][j]


def _distinct_linear_factors(cubic: MPoly, u: str, v: str) -> int:
    """Number of distinct linear factors of a nonzero binary cubic."""
    def c(i, j):
        e = tuple(i if name == u else (j if name == v else 0) for name in cubic.vars)
        return cubic.coeff(e)

    a, b, cc, d = c(3, 0), c(2, 1), c(1, 2), c(0, 3)
    disc = (18 * a * b * cc * d - 4 * b ** 3 * d + b ** 2 * cc ** 2
            - 4 * a * cc ** 3 - 27 * a ** 2 * d ** 2)
    if disc != 0:
        return 3
    hessian_zero = (b * b - 3 * a * cc == 0 and b * cc - 9 * a * d == 0
                    and cc * cc - 3 * b * d == 0)
    return 1 if hessian_zero else 2


def classify_ade(f: MPoly, budget: Optional[groebner.Budget] = None):
    """ADE type of an isolated 3-variable hypersurface singularity at the
    origin, or the string "unrecognized"."""
    if len(f.vars) != 3:
        raise SingularityError("classification expects a polynomial in 3 variables")
    mu = milnor_number(f, budget=budget)
    if mu is None:
        raise SingularityError("singularity is not isolated")
    q = _quadratic_matrix(f)
    rank = linalg.rank(q)
    corank = 3 - rank
    if corank == 0:
        return DynkinType("A", 1) if mu == 1 else "unrecognized"
    if corank == 1:
        return DynkinType("A", mu) if mu >= 2 else "unrecognized"
    if corank == 2:
        p, diag = _congruence_diagonalize(q)
        sub = {
            vi: sum((MPoly.var(vj, f.vars).scale(p[i][j]) for j, vj in enumerate(f.vars)
                     if p[i][j] != 0), MPoly.zero(f.vars))
            for i, vi in enumerate(f.vars)
        }
        g = f.subs(sub)
        kernel_vars = [v for v, lam in zip(f.vars, diag) if lam == 0]
        others = [v for v in f.vars if v not in kernel_vars]
        cubic = g.homogeneous_part(3)
        cubic = MPoly(cubic.vars, {
            e: c for e, c in cubic.terms.items()
            if all(e[cubic.vars.index(v)] == 0 for v in others)
        })
        if cubic.is_zero():
            return "unrecognized"
        nfac = _distinct_linear_factors(cubic, kernel_vars[0], kernel_vars[1])
        if nfac == 3:
            return DynkinType("D", 4) if mu == 4 else "unrecognized"
        if nfac == 2:
            return DynkinType("D", mu) if mu >= 4 else "unrecognized"
        if mu in (6, 7, 8):
            return DynkinType("E", mu)
    return "unrecognized"


def detect_odp(f: MPoly) -> bool:
    """True iff f has an ordinary double point at the origin (vanishing
    gradient and nondegenerate Hessian)."""
    origin = {v: 0 for v in f.vars}
    if f.evaluate(origin) != 0:
        raise SingularityError("f does not vanish at the origin")
    if any(g.evaluate(origin) != 0 for g in f.gradient()):
        return False
    n = len(f.vars)
    hess = tuple(
        tuple(f.diff(u).diff(v).evaluate(origin) for v in f.vars)
        for u in f.vars
    )
    return linalg.rank(hess) == n
