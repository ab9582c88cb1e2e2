"""Integral group cohomology of finite cyclic actions, Smith normal form,
and assembly of equivariant-cohomology E2 pages.

Cohomology of Z/m with coefficients in a finitely generated abelian group M
(presented as Z^n / im R with an action matrix tau) is computed from the
2-periodic resolution:

    H^0 = M^tau,   H^odd = ker(N) / im(tau - 1),   H^even = M^tau / N*M,

with N = 1 + tau + ... + tau^(m-1).  All quotients reduce to Smith normal
forms of integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg


class EquivCohError(ValueError):
    pass


# -- integer matrices ---------------------------------------------------------


def _imat(rows) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _ident(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _imul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def smith_normal_form(m):
    """(D, U, V) with D = U*M*V diagonal with a divisibility chain and U, V
    unimodular, over arbitrary-precision integers."""
    m = [list(row) for row in m]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = [list(r) for r in _ident(rows)]
    v = [list(r) for r in _ident(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(i, j, c):  # row_i += c * row_j
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        u[i] = [a + c * b for a, b in zip(u[i], u[j])]

    def add_col(i, j, c):  # col_i += c * col_j
        for r in m:
            r[i] += c * r[j]
        for r in v:
            r[i] += c * r[j]

    def negate_row(i):
        m[i] = [-a for a in m[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a pivot with minimal absolute value
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        dirty = False
        for i in range(t + 1, rows):
            if m[i][t] != 0:
                add_row(i, t, -(m[i][t] // m[t][t]))
                if m[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if m[t][j] != 0:
                add_col(j, t, -(m[t][j] // m[t][t]))
                if m[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if m[t][t] < 0:
            negate_row(t)
        t += 1
    d = tuple(tuple(row) for row in m)
    return d, tuple(tuple(r) for r in u), tuple(tuple(r) for r in v)


def _divisor_chain(d) -> list:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i] != 0]


def integer_kernel(m) -> list:
    """Basis of {x : M x = 0} over Z (columns of V past the rank)."""
    if not m or not m[0]:
        return [tuple(1 if i == j else 0 for j in range(len(m))) for i in range(len(m))]
    d, _, v = smith_normal_form(m)
    rank = len(_divisor_chain(d))
    cols = list(zip(*v))
    return [tuple(col) for col in cols[rank:]]


def lattice_basis(generators) -> list:
    """Basis of the lattice spanned by the given generator columns."""
    if not generators:
        return []
    cols = list(generators)
    n = len(cols[0])
    m = tuple(tuple(col[i] for col in cols) for i in range(n))
    d, u, _ = smith_normal_form(m)
    chain = _divisor_chain(d)
    # M V = U^{-1} D; the lattice of the columns equals that of U^{-1} D.
    uinv = _int_inverse(u)
    basis = []
    for j, dv in enumerate(chain):
        basis.append(tuple(uinv[i][j] * dv for i in range(n)))
    return basis


def _int_inverse(u):
    frac = linalg.inverse(linalg.mat(u))
    out = []
    for row in frac:
        r = []
        for x in row:
            if x.denominator != 1:
                raise EquivCohError("matrix is not unimodular")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


# -- finitely generated abelian groups ------------------------------------------


@dataclass(frozen=True)
class FGAbelianGroup:
    free_rank: int
    torsion: tuple             # elementary divisors >= 2, each dividing the next

    def __post_init__(self):
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise EquivCohError("torsion coefficients must be >= 2")
            if i and self.torsion[i] % self.torsion[i - 1] != 0:
                raise EquivCohError("torsion coefficients must form a divisor chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _group_from_presentation(rank: int, relation_cols) -> FGAbelianGroup:
    """Z^rank modulo the lattice spanned by the relation columns."""
    if rank == 0:
        return FGAbelianGroup(0, ())
    if not relation_cols:
        return FGAbelianGroup(rank, ())
    m = tuple(tuple(col[i] for col in relation_cols) for i in range(rank))
    d, _, _ = smith_normal_form(m)
    chain = _divisor_chain(d)
    torsion = tuple(t for t in chain if t > 1)
    return FGAbelianGroup(rank - len(chain), torsion)


def subquotient(numerator_gens, denominator_gens, ambient_dim: int) -> FGAbelianGroup:
    """(lattice of numerator generators) / (lattice of denominator generators),
    the denominator lattice being contained in the numerator one."""
    basis = lattice_basis(list(numerator_gens))
    if not basis:
        if any(any(x != 0 for x in col) for col in denominator_gens):
            raise EquivCohError("denominator is not contained in the numerator")
        return FGAbelianGroup(0, ())
    b_cols = linalg.transpose(linalg.mat(basis))
    rel = []
    for col in denominator_gens:
        x = linalg.solve(b_cols, tuple(Fraction(c) for c in col))
        if x is None or any(v.denominator != 1 for v in x):
            raise EquivCohError("denominator is not contained in the numerator")
        rel.append(tuple(int(v) for v in x))
    return _group_from_presentation(len(basis), rel)


# -- cyclic actions ---------------------------------------------------------------


@dataclass(frozen=True)
class CyclicAction:
    order: int
    matrix: tuple              # integer action on Z^n (a free presentation)
    relations: tuple = ()      # relation columns; M = Z^n / <relations>

    def __post_init__(self):
        object.__setattr__(self, "matrix", _imat(self.matrix))
        object.__setattr__(self, "relations", tuple(tuple(int(x) for x in c)
                                                    for c in self.relations))
        n = len(self.matrix)
        power = _ident(n)
        for _ in range(self.order):
            power = _imul(power, self.matrix)
        if not self._congruent(power, _ident(n)):
            raise EquivCohError(f"action matrix order does not divide {self.order}")
        for col in self.relations:
            image = tuple(sum(self.matrix[i][j] * col[j] for j in range(n))
                          for i in range(n))
            if not self._in_relation_lattice(image):
                raise EquivCohError("action does not preserve the relation lattice")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def _in_relation_lattice(self, col) -> bool:
        if not self.relations:
            return all(x == 0 for x in col)
        basis = lattice_basis(list(self.relations))
        if not basis:
            return all(x == 0 for x in col)
        b_cols = linalg.transpose(linalg.mat(basis))
        x = linalg.solve(b_cols, tuple(Fraction(c) for c in col))
        return x is not None and all(v.denominator == 1 for v in x)

    def _congruent(self, a, b) -> bool:
        n = len(a)
        for j in range(n):
            col = tuple(a[i][j] - b[i][j] for i in range(n))
            if not self._in_relation_lattice(col):
                return False
        return True

    def matrix_order(self) -> int:
        n = len(self.matrix)
        power = self.matrix
        k = 1
        while not self._congruent(power, _ident(n)):
            power = _imul(power, self.matrix)
            k += 1
            if k > self.order:
                raise EquivCohError("matrix order exceeds the group order")
        return k


def trivial_action(order: int, rank: int, torsion: Sequence[int] = ()) -> CyclicAction:
    n = rank + len(torsion)
    rel = []
    for i, t in enumerate(torsion):
        col = [0] * n
        col[rank + i] = t
        rel.append(tuple(col))
    return CyclicAction(order, _ident(n), tuple(rel))


def group_cohomology_cyclic(act: CyclicAction, p_max: int) -> list:
    """[H^0, ..., H^p_max] for Z/m acting on M = Z^n / relations."""
    n = act.dim
    tau = act.matrix
    tau_minus_1 = tuple(tuple(tau[i][j] - (1 if i == j else 0) for j in range(n))
                        for i in range(n))
    norm = [[0] * n for _ in range(n)]
    power = _ident(n)
    for _ in range(act.order):
        for i in range(n):
            for j in range(n):
                norm[i][j] += power[i][j]
        power = _imul(power, tau)
    norm = tuple(tuple(row) for row in norm)
    rel = list(act.relations)

    def preimage_lattice(phi):
        """Generators of {x in Z^n : phi(x) in <relations>}."""
        if not rel:
            return integer_kernel(phi)
        k = len(rel)
        stacked = tuple(
            tuple(list(phi[i]) + [-rel[c][i] for c in range(k)])
            for i in range(n)
        )
        return [vec[:n] for vec in integer_kernel(stacked)]

    def image_lattice(phi):
        return [tuple(phi[i][j] for i in range(n)) for j in range(n)]

    fixed = preimage_lattice(tau_minus_1)          # M^tau lifted to Z^n
    ker_norm = preimage_lattice(norm)
    im_tau_minus_1 = image_lattice(tau_minus_1) + rel
    im_norm = image_lattice(norm) + rel

    h0 = subquotient(fixed, rel, n)
    h_odd = subquotient(ker_norm, im_tau_minus_1, n)
    h_even = subquotient(fixed, im_norm, n)
    out = [h0]
    for p in range(1, p_max + 1):
        out.append(h_odd if p % 2 == 1 else h_even)
    return out


# -- spectral-sequence pages -------------------------------------------------------


@dataclass(frozen=True)
class CohomologyPage:
    index: int
    p_max: int
    q_max: int
    grid: dict                 # (p, q) -> FGAbelianGroup

    def entry(self, p: int, q: int) -> FGAbelianGroup:
        return self.grid.get((p, q), FGAbelianGroup(0, ()))

    def to_json(self) -> list:
        return [{"p": p, "q": q, **self.grid[(p, q)].to_json()}
                for (p, q) in sorted(self.grid)]

    def render(self) -> str:
        lines = []
        for q in range(self.q_max, -1, -1):
            cells = [f"{str(self.entry(p, q)):>10}" for p in range(self.p_max + 1)]
            lines.append(f"q={q} | " + " ".join(cells))
        lines.append("      " + " ".join(f"{'p=' + str(p):>10}"
                                         for p in range(self.p_max + 1)))
        return "\n".join(lines)


def coefficient_group(act: CyclicAction) -> FGAbelianGroup:
    """The underlying abelian group M = Z^n / relations of an action."""
    return _group_from_presentation(act.dim, list(act.relations))


def e2_page(fiber_cohomology: Sequence, p_max: int) -> CohomologyPage:
    """E_2^{pq} = H^p(Z/m, H^q) from (q, H^q, action-on-H^q) triples with a
    common group order; (q, action) pairs are accepted as well."""
    rows = []
    for item in fiber_cohomology:
        if len(item) == 3:
            q, group, act = item
            if coefficient_group(act) != group:
                raise EquivCohError(f"action at q={q} does not present {group}")
        else:
            q, act = item
        rows.append((q, act))
    orders = {act.order for _, act in rows}
    if len(orders) != 1:
        raise EquivCohError("inconsistent group orders across fiber data")
    grid = {}
    q_max = 0
    for q, act in rows:
        q_max = max(q_max, q)
        for p, group in enumerate(group_cohomology_cyclic(act, p_max)):
            if not group.is_trivial:
                grid[(p, q)] = group
    return CohomologyPage(2, p_max, q_max, grid)


@dataclass(frozen=True)
class DegenerationReport:
    holds: bool
    violations: tuple          # ((p, q), FGAbelianGroup)
    note: str = ("differentials are not computed; a nonzero cell obstructs the "
                 "vanishing-pattern argument, it does not disprove the conclusion")

    def render(self) -> str:
        if self.holds:
            return "pattern holds: H^p-cells vanish for p >= 1, q not in {3,4}"
        cells = "; ".join(f"E^{{{p},{q}}} = {g}" for (p, q), g in self.violations)
        return f"violating cells: {cells} ({self.note})"


def h3_degeneration_report(page: CohomologyPage) -> DegenerationReport:
    """Lists every nonzero cell with p >= 1 and q outside {3, 4}."""
    if page.p_max + page.q_max < 4:
        raise EquivCohError("page must extend through total degree 4")
    violations = tuple(
        ((p, q), g) for (p, q), g in sorted(page.grid.items())
        if p >= 1 and q not in (3, 4) and not g.is_trivial
    )
    return DegenerationReport(not violations, violations)


# -- convenience lattices ------------------------------------------------------------


def lattice_involution(d, swap: bool = True) -> CyclicAction:
    """Z/2 acting on the root lattice of an ADE type by the nontrivial diagram
    automorphism (or trivially when swap is False)."""
    from . import dynkin

    t = d if not isinstance(d, str) else dynkin.DynkinType.parse(d)
    r = t.rank
    if not swap:
        return trivial_action(2, r)
    autos = [g for g in dynkin.diagram_automorphisms(t)
             if not g.is_identity and g.order() == 2]
    if not autos:
        raise EquivCohError(f"{t} has no diagram involution")
    g = autos[0]
    mat = tuple(tuple(1 if g(j) == i else 0 for j in range(r)) for i in range(r))
    return CyclicAction(2, mat)
