"""Matrix Lie algebras, sl2-triples, Slodowy slices, restricted adjoint
quotients, and finite symmetry actions on slices.

Conventions:
  * chi_j is the coefficient of lambda^(n-j) in det(lambda*I - M), computed
    by Newton's identities on the traces of symbolic matrix powers.
  * Slice parameters carry the C*-weight 2 - (ad(h)-eigenvalue of the kernel
    direction), so the j-th quotient component is weighted-homogeneous of
    weight 2*d_j.
  * so(2n+1) uses the block form with J = [[1,0,0],[0,0,I],[0,I,0]], in
    which diagonal matrices form a Cartan subalgebra.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import dynkin, linalg
from .poly import MPoly, PolyError


class LieAlgError(ValueError):
    pass


class VerificationError(LieAlgError):
    """An exact identity that the input was required to satisfy failed."""


# -- matrix algebras ---------------------------------------------------------


@dataclass(frozen=True)
class MatrixAlgebra:
    descriptor: tuple          # ("sl", n) or ("so_odd", 2n+1)
    size: int                  # matrices are size x size
    basis: tuple               # tuple of rational matrices

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def dynkin_type(self) -> dynkin.DynkinType:
        kind, n = self.descriptor
        if kind == "sl":
            return dynkin.DynkinType("A", n - 1)
        rank = (n - 1) // 2
        return dynkin.DynkinType.parse(f"B{rank}")

    def coordinates(self, m) -> Optional[tuple]:
        """Coordinates of a matrix in the basis, or None if outside."""
        cols = linalg.transpose(tuple(_flatten(b) for b in self.basis))
        return linalg.solve(cols, _flatten(m))

    def contains(self, m) -> bool:
        return self.coordinates(m) is not None


def _flatten(m) -> tuple:
    return tuple(x for row in m for x in row)


def _unit(n, i, j, c=1):
    return tuple(
        tuple(Fraction(c) if (r, s) == (i, j) else Fraction(0) for s in range(n))
        for r in range(n)
    )


def _msum(n, entries) -> tuple:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j, c in entries:
        m[i][j] += Fraction(c)
    return tuple(tuple(row) for row in m)


def build_algebra(descriptor) -> MatrixAlgebra:
    """Construct sl(n) or odd so(2n+1) in the block form with diagonal Cartan."""
    if isinstance(descriptor, str):
        s = descriptor.strip().lower()
        if s.startswith("sl"):
            descriptor = ("sl", int(s[2:]))
        elif s.startswith("so"):
            descriptor = ("so_odd", int(s[2:]))
        else:
            raise LieAlgError(f"unsupported algebra descriptor {descriptor!r}")
    kind, n = descriptor
    if kind == "sl":
        if n < 2:
            raise LieAlgError("sl(n) requires n >= 2")
        basis = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
        basis += [_msum(n, [(i, i, 1), (i + 1, i + 1, -1)]) for i in range(n - 1)]
        alg = MatrixAlgebra(("sl", n), n, tuple(basis))
    elif kind == "so_odd":
        if n < 5 or n % 2 == 0:
            raise LieAlgError("odd-orthogonal descriptor requires odd n >= 5")
        k = (n - 1) // 2
        basis = []
        # u_i: first-row entry i paired with column entry -u_i at (k+i, 0)
        for i in range(1, k + 1):
            basis.append(_msum(n, [(0, i, 1), (k + i, 0, -1)]))
        # v_j
        for j in range(1, k + 1):
            basis.append(_msum(n, [(0, k + j, 1), (j, 0, -1)]))
        # A block (gl_k): E_ij - E_{k+j, k+i}
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                basis.append(_msum(n, [(i, j, 1), (k + j, k + i, -1)]))
        # b block: antisymmetric upper-right
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                basis.append(_msum(n, [(i, k + j, 1), (j, k + i, -1)]))
        # c block: antisymmetric lower-left
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                basis.append(_msum(n, [(k + i, j, 1), (k + j, i, -1)]))
        alg = MatrixAlgebra(("so_odd", n), n, tuple(basis))
    else:
        raise LieAlgError(f"unsupported algebra descriptor {descriptor!r}")
    _verify_bracket_closure(alg)
    return alg


def _verify_bracket_closure(alg: MatrixAlgebra) -> None:
    cols = linalg.transpose(tuple(_flatten(b) for b in alg.basis))
    for i, a in enumerate(alg.basis):
        for b in alg.basis[i + 1:]:
            if linalg.solve(cols, _flatten(linalg.commutator(a, b))) is None:
                raise VerificationError("basis is not closed under the bracket")


# -- sl2 triples -------------------------------------------------------------


@dataclass(frozen=True)
class Sl2Triple:
    x: tuple
    y: tuple
    h: tuple


@dataclass(frozen=True)
class TripleReport:
    ok: bool
    failures: tuple


def verify_sl2_triple(alg: MatrixAlgebra, t: Sl2Triple) -> TripleReport:
    failures = []
    for name, m in (("x", t.x), ("y", t.y), ("h", t.h)):
        if not alg.contains(m):
            failures.append(f"{name} is not in the algebra")
    if any(t.h[i][j] != 0 for i in range(alg.size) for j in range(alg.size) if i != j):
        failures.append("h is not diagonal")
    checks = [
        ("[h,x]=2x", linalg.commutator(t.h, t.x), linalg.scale(t.x, 2)),
        ("[h,y]=-2y", linalg.commutator(t.h, t.y), linalg.scale(t.y, -2)),
        ("[x,y]=h", linalg.commutator(t.x, t.y), t.h),
    ]
    for label, got, want in checks:
        if got != want:
            failures.append(f"{label} fails")
    return TripleReport(not failures, tuple(failures))


# -- built-in triples (the paper's two subregular slices, plus rank one) ------


def _sl4_builtin():
    n = 4
    x = _msum(n, [(1, 2, 1), (2, 3, 1)])
    y = _msum(n, [(2, 1, 2), (3, 2, 2)])
    h = _msum(n, [(1, 1, 2), (3, 3, -2)])
    kernel = (
        _msum(n, [(0, 0, -3), (1, 1, 1), (2, 2, 1), (3, 3, 1)]),  # a
        _unit(n, 0, 1),                                           # b
        _msum(n, [(2, 1, 1), (3, 2, 1)]),                         # c
        _unit(n, 3, 0),                                           # d
        _unit(n, 3, 1),                                           # e
    )
    return Sl2Triple(x, y, h), ("a", "b", "c", "d", "e"), kernel


def _so5_builtin():
    n = 5
    x = _msum(n, [(0, 3, 1), (1, 0, -1), (1, 2, 1), (4, 3, -1)])
    y = _msum(n, [(0, 1, -2), (3, 0, 2), (3, 2, -2), (4, 1, 2)])
    h = _msum(n, [(1, 1, 2), (3, 3, -2)])
    kernel = (
        _msum(n, [(0, 1, -1), (3, 0, 1)]),                        # a
        _msum(n, [(0, 2, -1), (2, 2, -1), (4, 0, 1), (4, 4, 1)]),  # b
        _msum(n, [(2, 1, 1), (3, 4, -1)]),                        # c
        _msum(n, [(3, 2, 1), (4, 1, -1)]),                        # d
    )
    return Sl2Triple(x, y, h), ("a", "b", "c", "d"), kernel


def _sl2_builtin():
    # Rank one: the subregular nilpotent orbit of sl(2) is {0}, so the slice
    # is all of the algebra with coordinates (u, v, w) -> [[u, v], [w, -u]].
    n = 2
    zero = _msum(n, [])
    kernel = (
        _msum(n, [(0, 0, 1), (1, 1, -1)]),  # u
        _unit(n, 0, 1),                     # v
        _unit(n, 1, 0),                     # w
    )
    return Sl2Triple(zero, zero, zero), ("u", "v", "w"), kernel


_BUILTINS = {"sl4": ("sl4", _sl4_builtin), "so5": ("so5", _so5_builtin),
             "sl2": ("sl2", _sl2_builtin)}


def builtin_triple(tag: str):
    """(algebra, triple) for tags sl4 / so5 / sl2."""
    if tag not in _BUILTINS:
        raise LieAlgError(f"unknown builtin {tag!r} (expected sl4, so5 or sl2)")
    alg = build_algebra(tag)
    triple, _, _ = _BUILTINS[tag][1]()
    return alg, triple


# -- Slodowy slices ----------------------------------------------------------


@dataclass(frozen=True)
class SlodowySlice:
    algebra: MatrixAlgebra
    triple: Sl2Triple
    params: tuple              # parameter names
    kernel: tuple              # matrices spanning ker ad(y), one per parameter
    family: tuple              # matrix of MPoly: x + sum p_i * K_i
    param_weights: dict        # name -> C*-weight (2 - ad(h)-eigenvalue)

    @property
    def dimension(self) -> int:
        return len(self.params)

    def to_json(self) -> dict:
        return {
            "params": list(self.params),
            "weights": {p: self.param_weights[p] for p in self.params},
            "family": [[str(e) for e in row] for row in self.family],
        }


def _ad_matrix(alg: MatrixAlgebra, m) -> tuple:
    """Matrix of ad(m) on the algebra's basis (columns = images)."""
    cols = linalg.transpose(tuple(_flatten(b) for b in alg.basis))
    images = []
    for b in alg.basis:
        co = linalg.solve(cols, _flatten(linalg.commutator(m, b)))
        if co is None:
            raise VerificationError("ad image leaves the algebra")
        images.append(co)
    return linalg.transpose(tuple(images))


def _adh_eigenvalue(h, k) -> Optional[Fraction]:
    """lambda with [h,k] = lambda*k, or None if k is not an eigenvector."""
    com = linalg.commutator(h, k)
    lam = None
    for i, row in enumerate(k):
        for j, x in enumerate(row):
            if x != 0:
                v = com[i][j] / x
                if lam is None:
                    lam = v
                elif lam != v:
                    return None
    if lam is None:
        return None
    return lam if linalg.sub(com, linalg.scale(k, lam)) == linalg.zeros(len(k), len(k)) else None


def slodowy_slice(alg: MatrixAlgebra, t: Sl2Triple) -> SlodowySlice:
    """x + ker ad(y) with named parameters.

    The kernel bases of the built-in triples are seeded so the family matrix
    matches the reference coordinates letter for letter; the seeds are
    verified (commutation, independence, count = nullity), never assumed.
    For other triples the kernel is ordered by descending ad(h)-eigenvalue,
    then by first-nonzero position, and named a, b, c, ...
    """
    report = verify_sl2_triple(alg, t)
    if not report.ok:
        raise VerificationError("; ".join(report.failures))
    ady = _ad_matrix(alg, t.y)
    null = linalg.nullspace(ady)
    seed = None
    for tag, make in _BUILTINS.values():
        trip, names, kernel = make()
        if trip == t and alg.descriptor == build_algebra(tag).descriptor:
            seed = (names, kernel)
            break
    if seed is not None:
        names, kernel = seed
        if len(kernel) != len(null):
            raise VerificationError("seeded kernel basis has the wrong size")
        flat = tuple(_flatten(k) for k in kernel)
        if linalg.rank(flat) != len(kernel):
            raise VerificationError("seeded kernel basis is not independent")
        zero = linalg.zeros(alg.size, alg.size)
        for k in kernel:
            if linalg.commutator(t.y, k) != zero:
                raise VerificationError("seeded kernel element does not commute with y")
            if not alg.contains(k):
                raise VerificationError("seeded kernel element is outside the algebra")
    else:
        vecs = []
        for co in null:
            k = _combine(alg, co)
            lam = _adh_eigenvalue(t.h, k)
            vecs.append((k, lam))
        if any(lam is None for _, lam in vecs):
            vecs = _eigen_split(alg, t, null)
        vecs.sort(key=lambda kl: (-kl[1], _first_pos(kl[0])))
        kernel = tuple(k for k, _ in vecs)
        names = tuple(_param_names(len(kernel)))
    weights = {}
    for name, k in zip(names, kernel):
        lam = _adh_eigenvalue(t.h, k)
        if lam is None or lam.denominator != 1:
            raise VerificationError("kernel direction is not an ad(h)-eigenvector")
        weights[name] = 2 - int(lam)
    family = _family_matrix(alg.size, t.x, names, kernel)
    return SlodowySlice(alg, t, tuple(names), kernel, family, weights)


def _combine(alg: MatrixAlgebra, coords) -> tuple:
    m = linalg.zeros(alg.size, alg.size)
    for c, b in zip(coords, alg.basis):
        if c != 0:
            m = linalg.add(m, linalg.scale(b, c))
    return m


def _first_pos(m) -> tuple:
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x != 0:
                return (i, j)
    return (len(m), len(m))


def _eigen_split(alg, t, null):
    """Refine a kernel basis into ad(h)-eigenvectors (ad(h) preserves it)."""
    adh = _ad_matrix(alg, t.h)
    cols = linalg.transpose(tuple(null))
    # T = matrix of ad(h) restricted to ker ad(y), in the nullspace basis.
    t_cols = []
    for vec in null:
        img = linalg.matvec(adh, vec)
        co = linalg.solve(cols, img)
        if co is None:
            raise VerificationError("ad(h) does not preserve ker ad(y)")
        t_cols.append(co)
    tmat = linalg.transpose(tuple(t_cols))
    d = len(null)
    # ad(h)-eigenvalues are differences of diagonal entries of h
    diag = [t.h[i][i] for i in range(alg.size)]
    candidates = sorted({a - b for a in diag for b in diag}, reverse=True)
    out = []
    for lam in candidates:
        shifted = linalg.sub(tmat, linalg.scale(linalg.eye(d), lam))
        for co in linalg.nullspace(shifted):
            vec = linalg.matvec(cols, co)
            out.append((_combine(alg, vec), lam))
    if len(out) != d:
        raise VerificationError("could not split ker ad(y) into ad(h)-eigenvectors")
    return out


def _param_names(n: int):
    letters = [c for c in string.ascii_lowercase if c not in ("l",)]
    if n <= len(letters):
        return letters[:n]
    return [f"p{i+1}" for i in range(n)]


def _family_matrix(n, x, names, kernel):
    ctx = tuple(names)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = MPoly.const(x[i][j], ctx)
            for name, k in zip(names, kernel):
                if k[i][j] != 0:
                    entry = entry + MPoly.var(name, ctx).scale(k[i][j])
            row.append(entry)
        rows.append(tuple(row))
    return tuple(rows)


# -- adjoint quotient --------------------------------------------------------


@dataclass(frozen=True)
class InvariantTuple:
    components: tuple          # MPoly in the slice parameters
    degrees: tuple             # invariant degrees d_j
    weights: tuple             # C*-weights 2 d_j

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees),
                "weights": list(self.weights),
                "components": [str(c) for c in self.components]}


def _pmat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), MPoly.zero(a[0][0].vars))
              for j in range(n))
        for i in range(n)
    )


def _pmat_trace(a):
    t = MPoly.zero(a[0][0].vars)
    for i in range(len(a)):
        t = t + a[i][i]
    return t


def char_coefficients(matrix, up_to: int) -> list:
    """[chi_1 .. chi_up_to] with chi_j the coefficient of lambda^(n-j) in
    det(lambda*I - M), via Newton's identities on power traces."""
    powers = [matrix]
    traces = [_pmat_trace(matrix)]
    for _ in range(1, up_to):
        powers.append(_pmat_mul(powers[-1], matrix))
        traces.append(_pmat_trace(powers[-1]))
    e = [MPoly.const(1, matrix[0][0].vars)]
    for k in range(1, up_to + 1):
        acc = MPoly.zero(matrix[0][0].vars)
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        e.append(acc.scale(Fraction(1, k)))
    return [e[j] if j % 2 == 0 else -e[j] for j in range(1, up_to + 1)]


def adjoint_quotient(s: SlodowySlice, degrees: Sequence[int]) -> InvariantTuple:
    """Characteristic-polynomial coefficients of the slice family at the
    listed invariant degrees.  For so(2n+1) the odd coefficients are checked
    to vanish identically."""
    expected = dynkin.invariant_degrees(s.algebra.dynkin_type)
    if list(degrees) != expected:
        raise LieAlgError(f"degree list {list(degrees)} does not match {expected}")
    chis = char_coefficients(s.family, max(degrees))
    if s.algebra.descriptor[0] == "so_odd":
        for j in range(1, max(degrees) + 1, 2):
            if not chis[j - 1].is_zero():
                raise VerificationError(f"odd coefficient chi_{j} does not vanish")
    components = tuple(chis[d - 1] for d in degrees)
    for comp, d in zip(components, degrees):
        wdeg = comp.weighted_degrees(s.param_weights)
        if wdeg and wdeg != {2 * d}:
            raise VerificationError(
                f"component of degree {d} is not weighted-homogeneous of weight {2*d}")
    return InvariantTuple(components, tuple(degrees), tuple(2 * d for d in degrees))


# -- central fiber -----------------------------------------------------------


@dataclass(frozen=True)
class CentralFiber:
    equation: MPoly            # canonical hypersurface equation in 3 parameters
    substitutions: dict        # eliminated parameter -> its value
    variables: tuple


def _canonical_sign(f: MPoly) -> MPoly:
    """Primitive integer form, sign-normalized on the display-final term."""
    g = f.content_free()
    if not g.terms:
        return g
    last = max(g.terms, key=lambda e: (-sum(e), tuple(-x for x in e)))
    return g if g.terms[last] < 0 else g.scale(-1)


def central_fiber(s: SlodowySlice, q: InvariantTuple) -> CentralFiber:
    """sigma^{-1}(0): eliminate parameters appearing linearly with constant
    coefficient until a single equation in 3 parameters remains."""
    if s.dimension != len(q.degrees) + 2:
        raise LieAlgError("slice is not of subregular type (parameters != rank + 2)")
    eqs = list(q.components)
    subs: dict = {}
    progress = True
    while len(eqs) > 1 and progress:
        progress = False
        for idx, eq in enumerate(eqs):
            done = False
            for p in s.params:
                if p in subs or p not in eq.vars or eq.degree_in(p) != 1:
                    continue
                coeff = eq.diff(p)
                if not coeff.is_constant() or coeff.is_zero():
                    continue
                rest = eq.subs({p: 0})
                value = rest.scale(Fraction(-1) / coeff.constant_value())
                subs[p] = value
                eqs.pop(idx)
                eqs = [e.subs({p: value}) for e in eqs]
                subs = {k: v.subs({p: value}) for k, v in subs.items()}
                progress = done = True
                break
            if done:
                break
    if len(eqs) != 1:
        raise VerificationError("elimination does not reach a principal equation")
    final = eqs[0]
    used = tuple(v for v in final.vars if final.degree_in(v) > 0)
    if len(used) != 3:
        raise VerificationError(
            f"central fiber lives in {len(used)} variables, not 3 (non-subregular input?)")
    return CentralFiber(_canonical_sign(final.restricted(used)), subs, used)


# -- finite actions on slices -------------------------------------------------


@dataclass(frozen=True)
class FiniteActionOnSlice:
    group: str
    generators: tuple          # tuple of dicts: parameter -> MPoly image

    def apply(self, f: MPoly, which: int = 0) -> MPoly:
        return f.subs(self.generators[which])


def _negative_transpose(m):
    return linalg.scale(linalg.transpose(m), -1)


def _slice_coords_of(s: SlodowySlice, image_family):
    """Express an image family matrix as x + sum s_i K_i; the s_i are the
    parameter substitutions.  Raises if the image leaves the slice."""
    flat_kernel = tuple(_flatten(k) for k in s.kernel)
    b_cols = linalg.transpose(flat_kernel)      # (size^2) x k
    _, pivots = linalg.rref(flat_kernel)        # pivot coordinates of the kernel rows
    square = tuple(tuple(b_cols[i][j] for j in range(len(s.kernel))) for i in pivots)
    inv = linalg.inverse(square)
    n = s.algebra.size
    flat_image = [image_family[i // n][i % n] - s.triple.x[i // n][i % n]
                  for i in range(n * n)]
    picked = [flat_image[i] for i in pivots]
    images = []
    for row in inv:
        acc = MPoly.zero(s.params)
        for c, g in zip(row, picked):
            if c != 0:
                acc = acc + g.scale(c)
        images.append(acc)
    # verify the reconstruction is exact on every matrix entry
    for i in range(n * n):
        acc = MPoly.const(s.triple.x[i // n][i % n], s.params)
        for co, img in zip((b_cols[i][j] for j in range(len(s.kernel))), images):
            if co != 0:
                acc = acc + img.scale(co)
        if acc != flat_image[i] + MPoly.const(s.triple.x[i // n][i % n], s.params):
            raise VerificationError("the supplied symmetry does not preserve the slice")
    return dict(zip(s.params, images))


def slice_action(s: SlodowySlice, which: str = "auto",
                 generators: Optional[Sequence] = None) -> FiniteActionOnSlice:
    """Finite symmetry action on a slice, as substitutions on parameters.

    which: "sl4-appendix" (tau = Ad(g0) after negative transpose),
    "so5-appendix" (Ad(D)), or "user" with generators = [(g, outer_flag)]
    where outer_flag applies the negative transpose before Ad(g).
    """
    if which == "auto":
        which = {"sl": "sl4-appendix", "so_odd": "so5-appendix"}.get(
            s.algebra.descriptor[0], "user")
    ops = []
    if which == "sl4-appendix":
        g0 = linalg.mat([[1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0], [0, -1, 0, 0]])
        ops.append((g0, True))
        tag = "Z/2"
    elif which == "so5-appendix":
        d = linalg.mat([
            [1, 0, 0, 0, 2],
            [0, -1, 0, 0, 0],
            [2, 0, -1, 0, 2],
            [0, 0, 0, -1, 0],
            [0, 0, 0, 0, -1],
        ])
        ops.append((d, False))
        tag = "Z/2"
    elif which == "user":
        if not generators:
            raise LieAlgError("user-supplied action requires generators")
        ops = [(linalg.mat(g), bool(outer)) for g, outer in generators]
        tag = "Z/2" if len(ops) == 1 else "user"
    else:
        raise LieAlgError(f"unknown action tag {which!r}")
    gens = []
    for g, outer in ops:
        ginv = linalg.inverse(g)
        n = s.algebra.size
        # apply the automorphism entrywise to the polynomial family matrix
        fam = s.family
        if outer:
            fam = tuple(tuple(-fam[j][i] for j in range(n)) for i in range(n))
        image = tuple(
            tuple(
                sum((fam[a][b].scale(g[i][a] * ginv[b][j]) for a in range(n)
                     for b in range(n) if g[i][a] != 0 and ginv[b][j] != 0),
                    MPoly.zero(s.params))
                for j in range(n))
            for i in range(n))
        gens.append(_slice_coords_of(s, image))
    act = FiniteActionOnSlice(tag, tuple(gens))
    if tag == "Z/2":
        sub = gens[0]
        twice = {p: v.subs(sub) for p, v in sub.items()}
        ident = all(twice[p] == MPoly.var(p, s.params) for p in s.params)
        if not ident:
            raise VerificationError("generator squared is not the identity")
    return act


def base_action(q: InvariantTuple, act: FiniteActionOnSlice) -> list:
    """Pullback of each quotient component through each generator, expressed
    as a signed permutation of the components."""
    out = []
    for gen in act.generators:
        row = []
        for comp in q.components:
            pulled = comp.subs(gen)
            hit = None
            for k, other in enumerate(q.components):
                if pulled == other:
                    hit = (1, k)
                    break
                if pulled == -other:
                    hit = (-1, k)
                    break
            if hit is None:
                raise VerificationError(
                    "pullback of a quotient component is not a signed component")
            row.append(hit)
        out.append(row)
    return out


# -- Lemma-style rank checks ---------------------------------------------------


@dataclass(frozen=True)
class RankReport:
    kernel_dimension: int
    jacobian_rank: Optional[int]
    consistent: bool


def rank_dq(t_point: Sequence, rs: dynkin.RootSystem) -> RankReport:
    """rk(dq_t) as the dimension of the intersection of the kernels of the
    vanishing roots, cross-checked against the symbolic Jacobian rank of the
    restricted invariants at the same point (classical types)."""
    point = tuple(Fraction(x) for x in t_point)
    simples = rs.simple
    # coordinates of the point in the simple-root parametrization
    cols = linalg.transpose(simples)
    coords = linalg.solve(cols, point)
    if coords is None:
        raise LieAlgError("point is not in the Cartan (span of the simple roots)")
    vanishing = [alpha for alpha in rs.roots
                 if sum(a * x for a, x in zip(alpha, point)) == 0]
    if vanishing:
        pairing = tuple(
            tuple(sum(a * b for a, b in zip(alpha, s)) for s in simples)
            for alpha in vanishing)
        kernel_dim = rs.rank - linalg.rank(pairing)
    else:
        kernel_dim = rs.rank
    jac_rank = None
    try:
        varnames, invs, _ = dynkin.cartan_invariants(rs.type)
    except NotImplementedError:
        invs = None
    if invs is not None:
        at = dict(zip(varnames, coords))
        jac = tuple(
            tuple(inv.diff(v).evaluate(at) for v in varnames)
            for inv in invs)
        jac_rank = linalg.rank(jac)
    return RankReport(kernel_dim, jac_rank, jac_rank is None or jac_rank == kernel_dim)


@dataclass(frozen=True)
class TransversalityReport:
    entries: tuple             # (factor as str, multiplicity, transversal)

    @property
    def all_transversal(self) -> bool:
        return all(t for _, _, t in self.entries)


def transversality_check(b: Sequence[MPoly], rs: dynkin.RootSystem) -> TransversalityReport:
    """Transversality of a local section to the discriminant: a zero of the
    discriminant polynomial is transversal exactly when it is simple."""
    from . import hitchin  # deferred: hitchin imports this module

    section = hitchin.LocalSection.build(rs.type, list(b))
    disc = hitchin.discriminant(rs.type, section)
    entries = tuple(
        (str(factor), mult, mult == 1) for factor, mult in disc.zeros)
    return TransversalityReport(entries)
