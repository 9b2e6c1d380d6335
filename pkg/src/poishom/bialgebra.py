"""Lie bialgebras: cocommutators, dual algebras, and the double.

The cocommutator delta: g -> Lambda^2 g and the dual bracket determine each
other by transposition, <[xi, zeta]_*, X> = (delta X)(xi, zeta).  A
``LieBialgebra`` always carries both and validates on construction that delta
is a 1-cocycle and that the dual satisfies the Jacobi identity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .exterior import (
    ExteriorElement,
    ad_extension,
    is_ad_invariant,
    schouten_square,
)
from .lie import Covector, LieAlgebra, Vector
from .linalg import frac


class CocommutatorMap:
    """Linear map g -> Lambda^2 g given by its images on the basis."""

    def __init__(self, algebra: LieAlgebra, images: Sequence[ExteriorElement]):
        if len(images) != algebra.dim:
            raise ValueError("one image per basis vector is required")
        for im in images:
            if im.dual or im.degree != 2 or im.algebra is not algebra:
                raise ValueError("images must be degree-2 primal elements")
        self.algebra = algebra
        self.images = tuple(images)

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "CocommutatorMap":
        return cls(algebra, [ExteriorElement.zero(algebra, 2, False)] * algebra.dim)

    @classmethod
    def from_rmatrix(cls, algebra: LieAlgebra, r: ExteriorElement) -> "CocommutatorMap":
        """Coboundary cocommutator delta(X) = ad_X r."""
        if r.dual or r.degree != 2:
            raise ValueError("r must be a degree-2 primal element")
        return cls(
            algebra,
            [ad_extension(algebra, algebra.basis_vector(i), r) for i in range(algebra.dim)],
        )

    @classmethod
    def from_images(cls, algebra: LieAlgebra, table: dict) -> "CocommutatorMap":
        """table maps basis index (or label) to {(i, j): coeff} with i < j."""
        images = [ExteriorElement.zero(algebra, 2, False) for _ in range(algebra.dim)]
        for key, terms in table.items():
            idx = algebra.index(key) if isinstance(key, str) else key
            images[idx] = ExteriorElement(algebra, 2, terms, False)
        return cls(algebra, images)

    def apply(self, x: Vector) -> ExteriorElement:
        out = ExteriorElement.zero(self.algebra, 2, False)
        for i, c in enumerate(x.coords):
            if c:
                out = out + c * self.images[i]
        return out

    def is_zero(self) -> bool:
        return all(im.is_zero() for im in self.images)

    def __eq__(self, other):
        return (
            isinstance(other, CocommutatorMap)
            and self.algebra is other.algebra
            and self.images == other.images
        )


def cocycle_check(g: LieAlgebra, delta: CocommutatorMap) -> Optional[tuple[int, int]]:
    """First basis pair violating
    delta([X, Y]) = ad_X(delta Y) - ad_Y(delta X), or None."""
    for i in range(g.dim):
        xi = g.basis_vector(i)
        for j in range(i + 1, g.dim):
            xj = g.basis_vector(j)
            lhs = delta.apply(g.bracket(xi, xj))
            rhs = ad_extension(g, xi, delta.images[j]) - ad_extension(g, xj, delta.images[i])
            if lhs != rhs:
                return (i, j)
    return None


def dual_constants(delta: CocommutatorMap) -> LieAlgebra:
    """The bracket on g* transposed from delta:
    [X^i, X^j]_* = sum_k (delta X_k)^{ij} X^k."""
    g = delta.algebra
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for k in range(g.dim):
        for (i, j), c in delta.images[k].terms.items():
            brackets.setdefault((i, j), {})[k] = c
    return LieAlgebra(g.dual_labels, brackets)


def delta_from_dual(g: LieAlgebra, dual: LieAlgebra) -> CocommutatorMap:
    """Transpose a dual-algebra bracket table back to a cocommutator on g."""
    if dual.dim != g.dim:
        raise ValueError("dimension mismatch")
    images = []
    for k in range(g.dim):
        terms = {}
        for i in range(g.dim):
            for j in range(i + 1, g.dim):
                c = dual.structure_constant(i, j, k)
                if c:
                    terms[(i, j)] = c
        images.append(ExteriorElement(g, 2, terms, False))
    return CocommutatorMap(g, images)


class LieBialgebra:
    """A compatible pair (g, delta), with the derived dual algebra."""

    def __init__(self, g: LieAlgebra, delta: CocommutatorMap, check: bool = True):
        if delta.algebra is not g:
            raise ValueError("cocommutator is over a different algebra")
        self.g = g
        self.delta = delta
        self.dual = dual_constants(delta)
        self.yang_baxter: Optional[str] = None  # set for coboundary structures
        if check:
            bad = self.dual.jacobi_check()
            if bad is not None:
                raise ValueError(f"dual constants fail the Jacobi identity at {bad}")
            bad = cocycle_check(g, delta)
            if bad is not None:
                raise ValueError(f"cocommutator fails the 1-cocycle condition at {bad}")

    @classmethod
    def trivial(cls, g: LieAlgebra) -> "LieBialgebra":
        return cls(g, CocommutatorMap.zero(g))

    @classmethod
    def from_rmatrix(cls, g: LieAlgebra, r: ExteriorElement) -> "LieBialgebra":
        b = cls(g, CocommutatorMap.from_rmatrix(g, r))
        square = schouten_square(g, r)
        if square.is_zero():
            b.yang_baxter = "cybe"
        elif is_ad_invariant(g, square):
            b.yang_baxter = "mcybe"
        else:
            b.yang_baxter = "other"
        return b

    @property
    def dim(self) -> int:
        return self.g.dim

    def dual_modular_character(self) -> Vector:
        """chi_{g*} reinterpreted as an element of g via the canonical pairing."""
        return Vector(self.g, self.dual.modular_character().coords)

    def zero_double(self) -> "DoubleElement":
        return DoubleElement(self, self.g.zero_vector(), self.g.zero_covector())

    def double_element(self, x: Vector | None = None, xi: Covector | None = None):
        return DoubleElement(
            self,
            x if x is not None else self.g.zero_vector(),
            xi if xi is not None else self.g.zero_covector(),
        )


class DoubleElement:
    """Element X + xi of g (+) g*."""

    __slots__ = ("bialgebra", "x", "xi")

    def __init__(self, bialgebra: LieBialgebra, x: Vector, xi: Covector):
        if x.algebra is not bialgebra.g or xi.algebra is not bialgebra.g:
            raise ValueError("components over a different algebra")
        self.bialgebra = bialgebra
        self.x = x
        self.xi = xi

    def __add__(self, other):
        self._check(other)
        return DoubleElement(self.bialgebra, self.x + other.x, self.xi + other.xi)

    def __sub__(self, other):
        self._check(other)
        return DoubleElement(self.bialgebra, self.x - other.x, self.xi - other.xi)

    def __rmul__(self, c):
        return DoubleElement(self.bialgebra, frac(c) * self.x, frac(c) * self.xi)

    def __eq__(self, other):
        return (
            isinstance(other, DoubleElement)
            and self.bialgebra is other.bialgebra
            and self.x == other.x
            and self.xi == other.xi
        )

    def is_zero(self):
        return self.x.is_zero() and self.xi.is_zero()

    def _check(self, other):
        if self.bialgebra is not other.bialgebra:
            raise ValueError("elements of different doubles")

    def __repr__(self):
        return f"({self.x!r}) + ({self.xi!r})"


def _coadjoint_dual_on_g(B: LieBialgebra, xi: Covector, x: Vector) -> Vector:
    """(ad^{g*})*_xi X, the element of g with value <[xi', xi]_*, X> on xi'."""
    dual = B.dual
    comps = []
    for a in range(B.dim):
        bracket = dual.bracket(dual.basis_vector(a), Vector(dual, xi.coords))
        comps.append(sum((c * x.coords[k] for k, c in enumerate(bracket.coords) if c), Fraction(0)))
    return Vector(B.g, comps)


def _coadjoint_g_on_dual(B: LieBialgebra, x: Vector, xi: Covector) -> Covector:
    """(ad^g)*_X xi, the covector with value -<xi, [X, X']> on X'."""
    comps = []
    for a in range(B.dim):
        bracket = B.g.bracket(x, B.g.basis_vector(a))
        comps.append(-sum((c * xi.coords[k] for k, c in enumerate(bracket.coords) if c), Fraction(0)))
    return Covector(B.g, comps)


def double_bracket(B: LieBialgebra, a: DoubleElement, b: DoubleElement) -> DoubleElement:
    """Bracket of the double g (+) g*:

    [X1+xi1, X2+xi2] = [X1,X2] + ad*_{xi1} X2 - ad*_{xi2} X1
                     + [xi1,xi2]_* + ad*_{X1} xi2 - ad*_{X2} xi1.
    """
    if a.bialgebra is not B or b.bialgebra is not B:
        raise ValueError("elements of a different double")
    dual = B.dual
    g_part = (
        B.g.bracket(a.x, b.x)
        + _coadjoint_dual_on_g(B, a.xi, b.x)
        - _coadjoint_dual_on_g(B, b.xi, a.x)
    )
    dual_bracket = dual.bracket(Vector(dual, a.xi.coords), Vector(dual, b.xi.coords))
    dual_part = (
        Covector(B.g, dual_bracket.coords)
        + _coadjoint_g_on_dual(B, a.x, b.xi)
        - _coadjoint_g_on_dual(B, b.x, a.xi)
    )
    return DoubleElement(B, g_part, dual_part)


def double_algebra(B: LieBialgebra) -> LieAlgebra:
    """The double as a structure-constant algebra on basis (e_1..e_m, e^1..e^m)."""
    m = B.dim
    basis = [B.double_element(x=B.g.basis_vector(i)) for i in range(m)] + [
        B.double_element(xi=B.g.basis_covector(i)) for i in range(m)
    ]
    labels = list(B.g.labels) + list(B.g.dual_labels)
    brackets = {}
    for i in range(2 * m):
        for j in range(i + 1, 2 * m):
            out = double_bracket(B, basis[i], basis[j])
            entry = {}
            for k, c in enumerate(out.x.coords):
                if c:
                    entry[k] = c
            for k, c in enumerate(out.xi.coords):
                if c:
                    entry[m + k] = c
            if entry:
                brackets[(i, j)] = entry
    return LieAlgebra(labels, brackets)


def double_jacobi_check(B: LieBialgebra) -> Optional[tuple[int, int, int]]:
    """Jacobi identity of the double on all basis triples (None when it holds)."""
    return double_algebra(B).jacobi_check()


# ---------------------------------------------------------------------------
# sl(n, R) with its standard bialgebra structure, generated from the
# triangular-splitting map R (R = -1 on strict upper, 0 on diagonal, +1 on
# strict lower part) via [A, B]_* = [RA, B] + [A, RB] under the trace pairing.
# ---------------------------------------------------------------------------


def sln_basis_matrices(n: int) -> tuple[list[str], list[list[list[Fraction]]]]:
    """Labels and matrices for the split basis of sl(n): traceless diagonals
    D_k, symmetric S_ij and antisymmetric Q_ij off-diagonal pairs."""
    labels: list[str] = []
    mats: list[list[list[Fraction]]] = []

    def zero():
        return [[Fraction(0)] * n for _ in range(n)]

    for k in range(n - 1):
        m = zero()
        m[k][k] = Fraction(1)
        m[k + 1][k + 1] = Fraction(-1)
        labels.append(f"D{k+1}")
        mats.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = zero()
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(1)
            labels.append(f"S{i+1}{j+1}")
            mats.append(m)
    for i in range(n):
        for j in range(i + 1, n):
            m = zero()
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(-1)
            labels.append(f"Q{i+1}{j+1}")
            mats.append(m)
    return labels, mats


def _mat_commutator(a, b):
    n = len(a)
    ab = [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]


def _sln_coords(m, n: int) -> list[Fraction]:
    """Coordinates of a traceless matrix on the D/S/Q basis."""
    coords: list[Fraction] = []
    partial = Fraction(0)
    for k in range(n - 1):
        partial += m[k][k]
        coords.append(partial)
    for i in range(n):
        for j in range(i + 1, n):
            coords.append((m[i][j] + m[j][i]) / 2)
    for i in range(n):
        for j in range(i + 1, n):
            coords.append((m[i][j] - m[j][i]) / 2)
    return coords


def sln_algebra(n: int) -> LieAlgebra:
    labels, mats = sln_basis_matrices(n)
    dim = len(labels)
    brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            coords = _sln_coords(_mat_commutator(mats[i], mats[j]), n)
            entry = {k: c for k, c in enumerate(coords) if c}
            if entry:
                brackets[(i, j)] = entry
    return LieAlgebra(labels, brackets)


def _triangular_split(m, n: int):
    """R(M) = lower(M) - upper(M) on strict triangular parts."""
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i > j:
                out[i][j] = m[i][j]
            elif i < j:
                out[i][j] = -m[i][j]
    return out


def sln_standard_bialgebra(n: int, eta=1) -> LieBialgebra:
    """Standard bialgebra on sl(n): dual bracket from the triangular R-map,
    transferred to dual-basis coordinates through the trace pairing and
    scaled by eta."""
    eta = frac(eta)
    g = sln_algebra(n)
    labels, mats = sln_basis_matrices(n)
    dim = len(labels)
    gram = [
        [
            sum(mats[a][i][j] * mats[b][j][i] for i in range(n) for j in range(n))
            for b in range(dim)
        ]
        for a in range(dim)
    ]
    gram_inv = linalg.invert(gram)

    def covector_matrix(coords):
        w = linalg.mat_vec(gram_inv, list(coords))
        return [
            [sum(w[a] * mats[a][i][j] for a in range(dim)) for j in range(n)]
            for i in range(n)
        ]

    dual_brackets = {}
    for a in range(dim):
        ma = covector_matrix([Fraction(1 if t == a else 0) for t in range(dim)])
        for b in range(a + 1, dim):
            mb = covector_matrix([Fraction(1 if t == b else 0) for t in range(dim)])
            res = [
                [x + y for x, y in zip(r1, r2)]
                for r1, r2 in zip(
                    _mat_commutator(_triangular_split(ma, n), mb),
                    _mat_commutator(ma, _triangular_split(mb, n)),
                )
            ]
            # back to dual coordinates: component on X^k is Tr(res * e_k)
            entry = {}
            for k in range(dim):
                val = sum(res[i][j] * mats[k][j][i] for i in range(n) for j in range(n))
                if val:
                    entry[k] = eta * val
            if entry:
                dual_brackets[(a, b)] = entry
    dual = LieAlgebra(g.dual_labels, dual_brackets)
    return LieBialgebra(g, delta_from_dual(g, dual))
