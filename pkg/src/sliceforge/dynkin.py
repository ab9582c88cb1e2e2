"""Irreducible Dynkin diagrams, root systems, diagram automorphisms, folding.

Root realizations: A_r lives in the sum-zero hyperplane of r+1 coordinates;
B/C/D use r coordinates; E/F/G use the standard explicit tables.  Folding uses
the orbit-sum convention: a folded simple root is the sum of a vertex orbit, so
orbits of size > 1 give the long roots of the folded diagram.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg


class DynkinError(ValueError):
    pass


_FAMILIES = "ABCDEFG"


@dataclass(frozen=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        if f not in _FAMILIES or r < 1:
            raise DynkinError(f"invalid Dynkin type {f}{r}")
        if f == "A" and r < 1:
            raise DynkinError("A requires rank >= 1")
        if f == "B" and r < 2:
            raise DynkinError("B requires rank >= 2")
        if f == "C" and r < 3:
            raise DynkinError("C requires rank >= 3 (C2 is normalized to B2)")
        if f == "D" and r < 4:
            raise DynkinError("D requires rank >= 4")
        if f == "E" and r not in (6, 7, 8):
            raise DynkinError("E requires rank in {6,7,8}")
        if f == "F" and r != 4:
            raise DynkinError("F requires rank 4")
        if f == "G" and r != 2:
            raise DynkinError("G requires rank 2")

    @staticmethod
    def parse(s: str) -> "DynkinType":
        s = s.strip()
        if len(s) < 2 or s[0].upper() not in _FAMILIES or not s[1:].isdigit():
            raise DynkinError(f"cannot parse Dynkin type {s!r}")
        family, rank = s[0].upper(), int(s[1:])
        if family == "C" and rank == 2:
            family = "B"  # same diagram
        return DynkinType(family, rank)

    @property
    def is_ade(self) -> bool:
        return self.family in "ADE"

    def __str__(self):
        return f"{self.family}{self.rank}"


def _dot(u, v) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def _reflect(v, alpha):
    c = 2 * _dot(v, alpha) / _dot(alpha, alpha)
    return tuple(x - c * a for x, a in zip(v, alpha))


def simple_roots(t: DynkinType) -> list:
    f, r = t.family, t.rank
    F = Fraction

    def e(i, n):
        return tuple(F(1) if j == i else F(0) for j in range(n))

    def diff(i, j, n):
        return tuple(F(1) if k == i else (F(-1) if k == j else F(0)) for k in range(n))

    if f == "A":
        return [diff(i, i + 1, r + 1) for i in range(r)]
    if f == "B":
        return [diff(i, i + 1, r) for i in range(r - 1)] + [e(r - 1, r)]
    if f == "C":
        return [diff(i, i + 1, r) for i in range(r - 1)] + [
            tuple(F(2) if k == r - 1 else F(0) for k in range(r))
        ]
    if f == "D":
        last = tuple(F(1) if k in (r - 2, r - 1) else F(0) for k in range(r))
        return [diff(i, i + 1, r) for i in range(r - 1)] + [last]
    if f == "E":
        # Bourbaki E8 realization; E6/E7 are the first 6/7 simple roots.
        half = F(1, 2)
        a1 = (half, -half, -half, -half, -half, -half, -half, half)
        a2 = tuple(F(x) for x in (1, 1, 0, 0, 0, 0, 0, 0))
        rest = [diff(i, i - 1, 8) for i in range(1, 7)]  # e_i - e_{i-1}
        full = [a1, a2] + rest
        return full[:r]
    if f == "F":
        return [
            tuple(F(x) for x in (0, 1, -1, 0)),
            tuple(F(x) for x in (0, 0, 1, -1)),
            tuple(F(x) for x in (0, 0, 0, 1)),
            (F(1, 2), F(-1, 2), F(-1, 2), F(-1, 2)),
        ]
    if f == "G":
        return [
            tuple(F(x) for x in (1, -1, 0)),
            tuple(F(x) for x in (-2, 1, 1)),
        ]
    raise DynkinError(f"unsupported type {t}")


def cartan_matrix_of_roots(simples: Sequence[tuple]) -> tuple:
    return tuple(
        tuple(2 * _dot(ai, aj) // _dot(ai, ai) if (2 * _dot(ai, aj) % _dot(ai, ai) == 0)
              else _fail_integrality(ai, aj)
              for aj in simples)
        for ai in simples
    )


def _fail_integrality(ai, aj):
    raise DynkinError(f"non-integral Cartan pairing between {ai} and {aj}")


def _root_closure(simples: Sequence[tuple], reflect_by=None) -> list:
    """All roots: closure of the given roots under the given reflections."""
    reflect_by = list(reflect_by) if reflect_by is not None else list(simples)
    seen = set(simples) | {tuple(-x for x in v) for v in simples}
    frontier = list(seen)
    while frontier:
        v = frontier.pop()
        for alpha in reflect_by:
            w = _reflect(v, alpha)
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return sorted(seen)


@dataclass(frozen=True)
class RootSystem:
    type: DynkinType
    simple: tuple
    roots: tuple
    cartan: tuple

    @property
    def rank(self) -> int:
        return len(self.simple)


def root_system(t: DynkinType) -> RootSystem:
    simples = simple_roots(t)
    roots = _root_closure(simples)
    return RootSystem(t, tuple(simples), tuple(roots), cartan_matrix_of_roots(simples))


# --- Weyl group order (orbit-stabilizer; Steinberg's fixed-point theorem:
#     the stabilizer of a vector is generated by the reflections fixing it).

def _weyl_order_of_roots(roots: list) -> int:
    if not roots:
        return 1
    alpha = roots[0]
    # Orbit of alpha under the reflection group of this root set.
    orbit = {alpha}
    frontier = [alpha]
    while frontier:
        v = frontier.pop()
        for beta in roots:
            w = _reflect(v, beta)
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    perp = [beta for beta in roots if _dot(beta, alpha) == 0]
    return len(orbit) * _weyl_order_of_roots(perp)


def weyl_order(t: DynkinType) -> int:
    return _weyl_order_of_roots(list(root_system(t).roots))


def invariant_degrees(t: DynkinType) -> list:
    f, r = t.family, t.rank
    if f == "A":
        return list(range(2, r + 2))
    if f in ("B", "C"):
        return list(range(2, 2 * r + 1, 2))
    if f == "D":
        return sorted(list(range(2, 2 * r - 1, 2)) + [r])
    if f == "E":
        return {6: [2, 5, 6, 8, 9, 12],
                7: [2, 6, 8, 10, 12, 14, 18],
                8: [2, 8, 12, 14, 18, 20, 24, 30]}[r]
    if f == "F":
        return [2, 6, 8, 12]
    if f == "G":
        return [2, 6]
    raise DynkinError(f"unsupported type {t}")


# --- Diagram automorphisms -------------------------------------------------

@dataclass(frozen=True)
class DiagramAutomorphism:
    """Vertex permutation of a diagram, stored as a tuple perm[i] = image of i."""
    perm: tuple

    def __call__(self, i: int) -> int:
        return self.perm[i]

    def compose(self, other: "DiagramAutomorphism") -> "DiagramAutomorphism":
        return DiagramAutomorphism(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity:
            g = g.compose(self)
            n += 1
        return n


def _edge_multiplicities(cartan) -> dict:
    n = len(cartan)
    return {(i, j): cartan[i][j] * cartan[j][i] for i in range(n) for j in range(n) if i != j}


def diagram_automorphisms(t: DynkinType) -> list:
    """The full group Aut_D: graph automorphisms satisfying the Dynkin
    condition (no vertex maps to a direct neighbor)."""
    rs = root_system(t)
    n = rs.rank
    mult = _edge_multiplicities(rs.cartan)
    cart = rs.cartan
    result = []
    for perm in itertools.permutations(range(n)):
        if all(cart[perm[i]][perm[j]] == cart[i][j] for i in range(n) for j in range(n)):
            if all(perm[i] == i or mult[(i, perm[i])] == 0 for i in range(n)):
                result.append(DiagramAutomorphism(perm))
    return result


def _close_group(gens: Sequence[DiagramAutomorphism], n: int) -> list:
    ident = DiagramAutomorphism(tuple(range(n)))
    group = {ident.perm: ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in gens:
            k = g.compose(h)
            if k.perm not in group:
                group[k.perm] = k
                frontier.append(k)
    return list(group.values())


_GROUP_TAGS = {1: "1", 2: "Z/2", 6: "S3"}


@dataclass(frozen=True)
class FoldingRecord:
    folded: DynkinType
    homogeneous: DynkinType
    group: str
    generators: tuple
    orbit_map: tuple  # orbit_map[vertex of homogeneous] = vertex of folded

    def to_json(self) -> dict:
        return {
            "folded": str(self.folded),
            "homogeneous": str(self.homogeneous),
            "group": self.group,
            "generators": [list(g.perm) for g in self.generators],
            "orbit_map": list(self.orbit_map),
        }

    @staticmethod
    def from_json(d: dict) -> "FoldingRecord":
        return FoldingRecord(
            DynkinType.parse(d["folded"]),
            DynkinType.parse(d["homogeneous"]),
            d["group"],
            tuple(DiagramAutomorphism(tuple(p)) for p in d["generators"]),
            tuple(d["orbit_map"]),
        )


def _classify_cartan(cartan) -> DynkinType:
    """Identify a Cartan matrix with a standard type up to vertex relabeling."""
    n = len(cartan)
    candidates = []
    for f in _FAMILIES:
        try:
            candidates.append(DynkinType(f, n))
        except DynkinError:
            pass
    for cand in candidates:
        target = cartan_matrix_of_roots(simple_roots(cand))
        for perm in itertools.permutations(range(n)):
            if all(target[perm[i]][perm[j]] == cartan[i][j] for i in range(n) for j in range(n)):
                return cand
    raise DynkinError("Cartan matrix is not of irreducible finite type")


def fold(h: DynkinType, group: Sequence[DiagramAutomorphism]) -> FoldingRecord:
    """Fold the diagram of h along a subgroup of Aut_D (orbit-sum convention)."""
    n = h.rank
    if not group:
        raise DynkinError("empty group")
    elements = _close_group(list(group), n)
    full = {g.perm for g in diagram_automorphisms(h)}
    for g in elements:
        if g.perm not in full:
            raise DynkinError("generator is not a diagram automorphism satisfying the Dynkin condition")
    nontrivial = any(not g.is_identity for g in elements)
    if nontrivial and not h.is_ade:
        raise DynkinError("nontrivial folding requires an ADE homogeneous type")
    # Vertex orbits, ordered by smallest member.
    orbit_of = {}
    orbits = []
    for i in range(n):
        if i in orbit_of:
            continue
        orb = sorted({g(i) for g in elements})
        for v in orb:
            orbit_of[v] = len(orbits)
        orbits.append(orb)
    simples = simple_roots(h)
    folded_simples = [
        tuple(sum(col) for col in zip(*(simples[v] for v in orb)))
        for orb in orbits
    ]
    cartan = cartan_matrix_of_roots(folded_simples)
    folded = _classify_cartan(cartan)
    gens = tuple(g for g in elements if not g.is_identity) or (DiagramAutomorphism(tuple(range(n))),)
    tag = _GROUP_TAGS.get(len(elements))
    if tag is None:
        raise DynkinError(f"unexpected folding group of order {len(elements)}")
    rec = FoldingRecord(folded, h, tag, gens, tuple(orbit_of[i] for i in range(n)))
    _check_record(rec, elements)
    return rec


def _check_record(rec: FoldingRecord, elements) -> None:
    n_orbits = len(set(rec.orbit_map))
    if rec.folded.rank != n_orbits:
        raise DynkinError("folded rank does not match orbit count")


def associated_pair(d: DynkinType) -> FoldingRecord:
    """The unique (homogeneous type, folding group) with d = folded type."""
    f, r = d.family, d.rank
    if d.is_ade:
        ident = DiagramAutomorphism(tuple(range(r)))
        return fold(d, [ident])
    if f == "B":  # B_{k+1} <- A_{2k+1}, Z/2 end-swap
        m = 2 * r - 1
        flip = DiagramAutomorphism(tuple(m - 1 - i for i in range(m)))
        return fold(DynkinType("A", m), [flip])
    if f == "C":  # C_k <- D_{k+1}, Z/2 swapping the fork
        m = r + 1
        perm = list(range(m))
        perm[m - 2], perm[m - 1] = perm[m - 1], perm[m - 2]
        return fold(DynkinType("D", m), [DiagramAutomorphism(tuple(perm))])
    if f == "F":  # F4 <- E6, Z/2
        # Bourbaki E6 labels (our indices 0..5): flip swaps 0<->5, 2<->4; fixes 1,3.
        return fold(DynkinType("E", 6), [DiagramAutomorphism((5, 1, 4, 3, 2, 0))])
    if f == "G":  # G2 <- D4, S3 on the outer vertices {0, 2, 3}
        three_cycle = DiagramAutomorphism((2, 1, 3, 0))
        swap = DiagramAutomorphism((2, 1, 0, 3))
        return fold(DynkinType("D", 4), [three_cycle, swap])
    raise DynkinError(f"unsupported type {d}")


def folding_group_order(d: DynkinType) -> int:
    if d.is_ade:
        return 1
    return 6 if d.family == "G" else 2


def record_to_json_str(rec: FoldingRecord) -> str:
    return json.dumps(rec.to_json(), indent=2, sort_keys=True)


# --- Restricted invariants on the Cartan ------------------------------------
#
# The Cartan subalgebra is parametrized by the coefficients of the simple
# roots: t(c) = sum_i c_i alpha_i.  Restricted fundamental invariants are
# built from the characteristic polynomial of the defining representation
# (classical families only) and sign-normalized to a positive leading
# grevlex coefficient.

def _cartan_vars(rank: int) -> tuple:
    return ("y",) if rank == 1 else tuple(f"t{i+1}" for i in range(rank))


def _ambient_forms(t: DynkinType, varnames) -> list:
    """Ambient coordinate functions of t(c) as linear MPoly in the c-vars."""
    from .poly import MPoly

    simples = simple_roots(t)
    n_amb = len(simples[0])
    forms = []
    for k in range(n_amb):
        f = MPoly.zero(varnames)
        for name, alpha in zip(varnames, simples):
            if alpha[k] != 0:
                f = f + MPoly.var(name, varnames).scale(alpha[k])
        forms.append(f)
    return forms


def _elementary_symmetric(forms, up_to: int):
    from .poly import MPoly

    ctx = forms[0].vars
    e = [MPoly.const(1, ctx)] + [MPoly.zero(ctx) for _ in range(up_to)]
    for z in forms:
        for j in range(min(up_to, len(forms)), 0, -1):
            e[j] = e[j] + e[j - 1] * z
    return e


def _positive_leading(f):
    if not f.terms:
        return f
    lead = max(f.terms, key=lambda ex: (sum(ex), tuple(-x for x in reversed(ex))))
    return f if f.terms[lead] > 0 else f.scale(-1)


def cartan_invariants(t: DynkinType, varnames=None):
    """(variables, invariants ascending by degree, degrees).

    Classical families only; raises NotImplementedError for E/F/G.
    """
    f, r = t.family, t.rank
    varnames = tuple(varnames) if varnames is not None else _cartan_vars(r)
    if len(varnames) != r:
        raise DynkinError("need one Cartan variable per simple root")
    forms = _ambient_forms(t, varnames)
    if f == "A":
        e = _elementary_symmetric(forms, r + 1)
        invs = [(_positive_leading(e[j]), j) for j in range(2, r + 2)]
    elif f in ("B", "C"):
        squares = [z * z for z in forms]
        e = _elementary_symmetric(squares, r)
        invs = [(_positive_leading(e[j]), 2 * j) for j in range(1, r + 1)]
    elif f == "D":
        squares = [z * z for z in forms]
        e = _elementary_symmetric(squares, r - 1)
        invs = [(_positive_leading(e[j]), 2 * j) for j in range(1, r)]
        prod = forms[0]
        for z in forms[1:]:
            prod = prod * z
        invs.append((_positive_leading(prod), r))
        invs.sort(key=lambda pd: pd[1])
    else:
        raise NotImplementedError(f"restricted invariants for {t} are not implemented")
    return varnames, [p for p, _ in invs], [d for _, d in invs]


def root_functionals(rs: RootSystem, varnames=None):
    """(variables, {(alpha, t(c)) as linear MPoly for each root alpha})."""
    from .poly import MPoly

    varnames = tuple(varnames) if varnames is not None else _cartan_vars(rs.rank)
    out = []
    for alpha in rs.roots:
        form = MPoly.zero(varnames)
        for name, beta in zip(varnames, rs.simple):
            c = _dot(alpha, beta)
            if c != 0:
                form = form + MPoly.var(name, varnames).scale(c)
        out.append(form)
    return varnames, out
