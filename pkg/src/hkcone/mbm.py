"""Orbit-signature tables and recognition of monodromy-rigid wall classes.

Recognition is table driven: a class is matched against rows keyed by
(square, divisibility) and optionally a discriminant residue.  Solving
for a class from prescribed intersection numbers and rescaling to a
primitive representative live here as well.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import linalg
from .errors import PreconditionError
from .lattice import IntegralLattice, is_primitive, _vec


@dataclass(frozen=True)
class OrbitSignature:
    name: str
    square: int
    divisibility: int
    codimension: int
    disc_residue: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.square >= 0:
            raise PreconditionError(f"orbit {self.name!r}: square must be negative")
        if self.divisibility < 1 or self.codimension < 1:
            raise PreconditionError(f"orbit {self.name!r}: divisibility and codimension must be positive")

    @property
    def key(self):
        return (self.square, self.divisibility, self.disc_residue)


@dataclass(frozen=True)
class SignatureTable:
    orbits: tuple[OrbitSignature, ...]

    def __post_init__(self):
        names = [o.name for o in self.orbits]
        if len(set(names)) != len(names):
            raise PreconditionError("orbit names must be unique")
        keys = [o.key for o in self.orbits]
        if len(set(keys)) != len(keys):
            dup = next(k for k in keys if keys.count(k) > 1)
            raise PreconditionError(f"ambiguous signature table: duplicate key {dup}")

    @property
    def squares(self) -> tuple[int, ...]:
        return tuple(sorted({o.square for o in self.orbits}))

    def match(self, square: int, divisibility: int, residue_fn) -> OrbitSignature | None:
        """Unique row for the invariants, or None.

        residue_fn is called lazily, only when some candidate row pins a
        discriminant residue.
        """
        rows = [o for o in self.orbits
                if o.square == square and o.divisibility == divisibility]
        if not rows:
            return None
        pinned = [o for o in rows if o.disc_residue is not None]
        if pinned:
            residue = tuple(residue_fn())
            for o in pinned:
                if o.disc_residue == residue:
                    return o
        for o in rows:
            if o.disc_residue is None:
                return o
        return None

    def by_name(self, name: str) -> OrbitSignature:
        for o in self.orbits:
            if o.name == name:
                return o
        raise KeyError(name)


def codimension_of(sig: OrbitSignature) -> int:
    return sig.codimension


def is_divisorial(sig: OrbitSignature) -> bool:
    return sig.codimension == 1


def classify(lattice: IntegralLattice, table: SignatureTable, x) -> OrbitSignature | None:
    """Table row whose invariants match the class x, or None.

    Invariant under x -> -x: square, divisibility and the sign-folded
    residue all are.
    """
    v = _vec(x)
    if not is_primitive(v):
        raise PreconditionError("class must be primitive")
    square = lattice.square(v)
    if square >= 0:
        raise PreconditionError("class must have negative square")
    d = lattice.divisibility(v)
    return table.match(int(square), d, lambda: lattice.discriminant_image(v))


def dual_solve(lattice: IntegralLattice, constraints) -> tuple[Fraction, ...]:
    """The unique rational x with pairing(x, c_i) = v_i for all (c_i, v_i)."""
    if not constraints:
        raise PreconditionError("no constraints")
    rows = []
    rhs = []
    for cls, value in constraints:
        rows.append(lattice.pairing_row(_vec(cls)))
        rhs.append(Fraction(value))
    try:
        return linalg.solve(rows, rhs)
    except PreconditionError as exc:
        if "underdetermined" in str(exc):
            raise PreconditionError("constraint classes do not span the lattice") from exc
        raise


def primitive_rescale(x) -> tuple[tuple[int, ...], Fraction]:
    """Primitive integral y and scale s > 0 with y = s * x."""
    v = [Fraction(c) for c in _vec(x)]
    if all(c == 0 for c in v):
        raise PreconditionError("zero vector")
    denom = lcm(*(c.denominator for c in v))
    ints = [int(c * denom) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    y = tuple(c // g for c in ints)
    return y, Fraction(denom, g)


def table_from_dict(doc: dict) -> SignatureTable:
    try:
        rows = doc["orbits"]
    except (KeyError, TypeError) as exc:
        raise PreconditionError("signature-table document needs an 'orbits' list") from exc
    orbits = []
    for row in rows:
        residue = row.get("disc_residue")
        orbits.append(OrbitSignature(
            name=str(row["name"]),
            square=int(row["square"]),
            divisibility=int(row["divisibility"]),
            codimension=int(row["codimension"]),
            disc_residue=None if residue is None else tuple(int(r) for r in residue),
        ))
    return SignatureTable(orbits=tuple(orbits))


def load_table(path) -> SignatureTable:
    with open(path, "r", encoding="utf-8") as fh:
        return table_from_dict(json.load(fh))
