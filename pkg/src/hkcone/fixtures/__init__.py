"""Bundled data for the cube of a quartic K3 surface with a line.

The lattice is spanned by the line class C, the elliptic-fiber class F
and half the exceptional class delta; the orbit table lists the five
wall-class orbits.  The ambient pairing ideals (1, 1, 4) record that C
and F sit primitively inside a unimodular summand of the full
second-cohomology lattice while delta spans an orthogonal (-4) summand,
so divisibilities match the ambient lattice, not just the cube's rank-3
Picard lattice.  Chamber points and bounds were picked by chamber
search and are frozen here.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib.resources import files

# bound used when checking enumeration against the |c_i| <= 40 box scan
ENUM_BOUND = Fraction(2)
# bound used for the bundled disk rendering
RENDER_BOUND = Fraction(15)
# bound covering the bundled chamber-to-chamber segments
PATH_BOUND = Fraction(8)


def fixture_path(name: str) -> str:
    return str(files(__package__) / name)


def load_fixture(name: str):
    return json.loads((files(__package__) / name).read_text(encoding="utf-8"))


def quartic_lattice():
    from ..lattice import lattice_from_dict
    return lattice_from_dict(load_fixture("k3_3_quartic.json"))


def orbit_table():
    from ..mbm import table_from_dict
    return table_from_dict(load_fixture("mbm.json"))


def named_classes() -> dict[str, tuple[int, ...]]:
    doc = load_fixture("named_classes.json")
    return {name: tuple(int(c) for c in coords) for name, coords in doc.items()}


def chamber_point(index: int) -> tuple[Fraction, ...]:
    doc = load_fixture(f"chamber{index}.json")
    return tuple(Fraction(c) for c in doc["point"])
