"""Integral lattices with exact pairing, divisibility and discriminant data.

The pairing is the symmetric bilinear form given by an integer Gram
matrix.  All arithmetic is exact: integers and Fractions only; wall
incidence and primitivity are discrete questions and must not be
decided in floating point.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import PreconditionError
from .rational import parse_frac

Vector = tuple


def _vec(x) -> tuple:
    if isinstance(x, (list, tuple)):
        return tuple(x)
    return tuple(x)


@dataclass(frozen=True)
class DiscriminantGroup:
    """Cokernel of the Gram matrix in invariant-factor form.

    ``invariant_factors`` lists the factors d_1 | d_2 | ... that exceed 1.
    ``transform`` is the unimodular row transform U of the Smith normal
    form U G V = D; it maps dual-basis coordinates to residue tuples.
    """

    invariant_factors: tuple[int, ...]
    transform: tuple[tuple[int, ...], ...]
    _factors_full: tuple[int, ...]

    def residues(self, dual_coords) -> tuple[int, ...]:
        w = linalg.mat_vec(self.transform, _vec(dual_coords))
        return tuple(int(wi) % f
                     for wi, f in zip(w, self._factors_full) if f > 1)

    @property
    def order(self) -> int:
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n


def is_primitive(coords) -> bool:
    """True iff the integer vector has coordinate gcd 1."""
    v = _vec(coords)
    if all(c == 0 for c in v):
        raise PreconditionError("zero vector")
    return linalg.vec_content(v) == 1


@dataclass(frozen=True)
class IntegralLattice:
    gram: tuple[tuple[int, ...], ...]
    basis_names: tuple[str, ...]
    ambient_ideals: tuple[int, ...] | None = None
    fujiki_constant: Fraction | None = None  # metadata only, never computed with

    def __post_init__(self):
        n = len(self.gram)
        if n < 1:
            raise PreconditionError("rank must be >= 1")
        for row in self.gram:
            if len(row) != n or not all(isinstance(x, int) for x in row):
                raise PreconditionError("gram must be a square integer matrix")
        if self.gram != linalg.transpose(self.gram):
            raise PreconditionError("gram must be symmetric")
        if len(self.basis_names) != n:
            raise PreconditionError("basis_names length must equal rank")
        if self.ambient_ideals is not None:
            if len(self.ambient_ideals) != n or \
               not all(isinstance(a, int) and a > 0 for a in self.ambient_ideals):
                raise PreconditionError("ambient_ideals must be positive integers, one per basis vector")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def pairing(self, x, y):
        x, y = _vec(x), _vec(y)
        if len(x) != self.rank or len(y) != self.rank:
            raise PreconditionError("dimension mismatch")
        return sum(xi * sum(g * yj for g, yj in zip(row, y))
                   for xi, row in zip(x, self.gram))

    def square(self, x):
        return self.pairing(x, x)

    def pairing_row(self, x) -> tuple:
        """Pairings of x against the basis vectors, i.e. G x."""
        return linalg.mat_vec(self.gram, _vec(x))

    def divisibility(self, x) -> int:
        """Positive generator of the pairing ideal of x.

        With no ambient data this is the ideal against this lattice:
        gcd of the pairings with the basis vectors.  When the lattice is
        a sublattice of a bigger one, that ideal can shrink; the optional
        per-basis-vector ambient_ideals record the generator of each basis
        vector's pairing ideal in the ambient lattice, and the divisibility
        becomes gcd_i(ambient_i * x_i).
        """
        v = _vec(x)
        if len(v) != self.rank:
            raise PreconditionError("dimension mismatch")
        if all(c == 0 for c in v):
            raise PreconditionError("zero vector")
        if self.ambient_ideals is not None:
            vals = [a * c for a, c in zip(self.ambient_ideals, v)]
        else:
            vals = self.pairing_row(v)
        g = 0
        for val in vals:
            g = gcd(g, int(val))
        if g == 0:
            raise PreconditionError("vector pairs to zero with the whole lattice")
        return g

    @functools.cache
    def discriminant_group(self) -> DiscriminantGroup:
        if linalg.determinant(self.gram) == 0:
            raise PreconditionError("degenerate lattice")
        u, d, _v = linalg.smith_normal_form(self.gram)
        factors = tuple(d[i][i] for i in range(self.rank))
        return DiscriminantGroup(
            invariant_factors=tuple(f for f in factors if f > 1),
            transform=u,
            _factors_full=factors,
        )

    def discriminant_image(self, x) -> tuple[int, ...]:
        """Residue tuple of x/d(x) in the discriminant group, up to global sign.

        The tuple and its negation describe the same wall; the smaller of
        the two (lexicographically) is returned.
        """
        v = _vec(x)
        if not is_primitive(v):
            raise PreconditionError("class must be primitive")
        d = self.divisibility(v)
        row = self.pairing_row(v)
        dual = []
        for p in row:
            p = int(p)
            if p % d:
                raise PreconditionError("divisibility does not divide the pairing row")
            dual.append(p // d)
        disc = self.discriminant_group()
        plus = disc.residues(dual)
        minus = disc.residues([-w for w in dual])
        return min(plus, minus)

    def signature(self) -> tuple[int, int, int]:
        """Inertia (n_plus, n_minus, n_zero) by exact congruence diagonalization."""
        _t, diag = linalg.congruence_diagonalize(self.gram)
        plus = sum(1 for d in diag if d > 0)
        minus = sum(1 for d in diag if d < 0)
        return plus, minus, len(diag) - plus - minus

    @functools.cache
    def diagonalize(self):
        """(T, diag) with T^t G T = diag(diag), exact rationals.

        For Lorentzian input (one positive inertia index) the positive
        entry is listed first.
        """
        t, diag = linalg.congruence_diagonalize(self.gram)
        if any(d == 0 for d in diag):
            raise PreconditionError("degenerate lattice")
        positives = [i for i, d in enumerate(diag) if d > 0]
        if len(positives) == 1 and positives[0] != 0:
            p = positives[0]
            order = [p] + [i for i in range(self.rank) if i != p]
            t = tuple(tuple(row[i] for i in order) for row in t)
            diag = tuple(diag[i] for i in order)
        return t, diag

    def positive_reference(self) -> tuple:
        """A fixed rational vector of positive square; tags cone components."""
        t, _diag = self.diagonalize()
        return tuple(row[0] for row in t)


def mod_four_class(lattice: IntegralLattice, x) -> int:
    """Reduction mod 4 of the leading discriminant residue, folded by sign.

    Returns 0, 1 or 2, standing for the classes 0, +-1 and 2 (mod 4).
    Meaningful when the last invariant factor is divisible by 4, which
    holds for the bundled quartic-K3 data; always deterministic.
    """
    image = lattice.discriminant_image(x)
    if not image:
        return 0
    m = image[-1] % 4
    return min(m, (4 - m) % 4)


def make_lattice(gram, basis_names=None, ambient_ideals=None,
                 fujiki_constant=None) -> IntegralLattice:
    gram = linalg.mat(gram)
    if basis_names is None:
        basis_names = tuple(f"e{i + 1}" for i in range(len(gram)))
    return IntegralLattice(
        gram=gram,
        basis_names=tuple(str(n) for n in basis_names),
        ambient_ideals=None if ambient_ideals is None else tuple(int(a) for a in ambient_ideals),
        fujiki_constant=None if fujiki_constant is None else parse_frac(fujiki_constant),
    )


def lattice_from_dict(doc: dict) -> IntegralLattice:
    try:
        gram = doc["gram"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError("lattice document needs a 'gram' matrix") from exc
    return make_lattice(
        gram,
        basis_names=doc.get("basis_names"),
        ambient_ideals=doc.get("ambient_ideals"),
        fujiki_constant=doc.get("fujiki_constant"),
    )


def load_lattice(path) -> IntegralLattice:
    with open(path, "r", encoding="utf-8") as fh:
        return lattice_from_dict(json.load(fh))
