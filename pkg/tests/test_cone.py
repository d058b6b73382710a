import random
from fractions import Fraction

import numpy as np
import pytest

from hkcone import fixtures, linalg
from hkcone.cone import (STATUS_DIVISORIAL, STATUS_OK, STATUS_REGULAR,
                         WallCrossing, component_sign,
                         crossing_parameter, enumerate_wall_classes,
                         enumeration_box, factor_path, factorization_report,
                         group_hu_yau, same_chamber, same_component)
from hkcone.errors import PreconditionError
from hkcone.lattice import make_lattice
from hkcone.mbm import OrbitSignature, SignatureTable

F = Fraction

M1 = (2, F(3, 2), -1)
M2 = (1, 1, F(-3, 5))
M3 = (1, 1, F(-1, 4))
M4 = (1, 2, F(-5, 4))


def oracle_scan(lattice, table, base, bound, box):
    """Independent brute force over the coordinate box |c_i| <= box."""
    g_mat = np.array(lattice.gram, dtype=np.int64)
    p = np.array([int(c) for c in base], dtype=np.int64)
    g = int(p @ g_mat @ p)
    gp = g_mat @ p
    r = np.arange(-box, box + 1, dtype=np.int64)
    grids = np.meshgrid(*([r] * lattice.rank), indexing="ij")
    x = np.stack(grids, axis=-1).reshape(-1, lattice.rank)
    s = np.einsum("ij,jk,ik->i", x, g_mat, x)
    t = x @ gp
    squares = np.array(sorted({o.square for o in table.orbits}), dtype=np.int64)
    region = bound.denominator * t * t <= bound.numerator * (-s) * g
    canon = np.zeros(len(x), dtype=bool)
    undecided = np.ones(len(x), dtype=bool)
    for col in range(lattice.rank):
        canon |= undecided & (x[:, col] > 0)
        undecided &= x[:, col] == 0
    prim = np.gcd.reduce(np.abs(x), axis=1) == 1
    if lattice.ambient_ideals is not None:
        ideals = np.array(lattice.ambient_ideals, dtype=np.int64)
        div = np.gcd.reduce(np.abs(x) * ideals[None, :], axis=1)
    else:
        div = np.gcd.reduce(np.abs(x @ g_mat), axis=1)
    rows = {(o.square, o.divisibility): o for o in table.orbits
            if o.disc_residue is None}
    hits = []
    for i in np.nonzero(np.isin(s, squares) & region & canon & prim)[0]:
        key = (int(s[i]), int(div[i]))
        if key in rows:
            hits.append((tuple(int(c) for c in x[i]), rows[key]))
    hits.sort(key=lambda item: item[0])
    return hits


class TestSameComponent:
    def test_positive_pairing(self, quartic):
        assert same_component(quartic, (4, 4, -1), (1, 1, 0))

    def test_antipodal(self, quartic):
        assert not same_component(quartic, (4, 4, -1), (-4, -4, 1))

    def test_reflexive(self, quartic):
        assert same_component(quartic, (4, 4, -1), (4, 4, -1))

    def test_requires_lorentzian(self):
        definite = make_lattice([[2, 0], [0, 2]])
        with pytest.raises(PreconditionError):
            same_component(definite, (1, 0), (0, 1))

    def test_component_sign_is_consistent(self, quartic):
        assert component_sign(quartic, (4, 4, -1)) == -component_sign(quartic, (-4, -4, 1))


class TestEnumerate:
    def test_contains_all_named_classes(self, quartic, table, named):
        walls = enumerate_wall_classes(quartic, table, (4, 4, -1), fixtures.ENUM_BOUND)
        classes = {x for x, _ in walls}
        for name in ["delta", "alpha", "eps", "beta", "eta", "zeta", "gamma"]:
            assert named[name] in classes

    def test_tiny_bound_is_empty(self, quartic, table):
        assert enumerate_wall_classes(quartic, table, (4, 4, -1), F(1, 1000)) == []

    def test_restricted_table(self, quartic, table, named):
        sub = SignatureTable(orbits=(table.by_name("codim3"),))
        walls = enumerate_wall_classes(quartic, sub, (4, 4, -1), fixtures.ENUM_BOUND)
        assert walls
        for x, sig in walls:
            assert quartic.square(x) == -12
            assert quartic.divisibility(x) == 2
        assert named["gamma"] in {x for x, _ in walls}

    def test_sorted_and_deterministic(self, quartic, table):
        w1 = enumerate_wall_classes(quartic, table, (4, 4, -1), fixtures.ENUM_BOUND)
        w2 = enumerate_wall_classes(quartic, table, (4, 4, -1), fixtures.ENUM_BOUND)
        assert w1 == w2
        assert [x for x, _ in w1] == sorted(x for x, _ in w1)

    def test_region_inequality_holds(self, quartic, table):
        base = (4, 4, -1)
        qb = quartic.square(base)
        for x, _ in enumerate_wall_classes(quartic, table, base, fixtures.ENUM_BOUND):
            t = quartic.pairing(x, base)
            assert t * t <= fixtures.ENUM_BOUND * abs(quartic.square(x)) * qb

    def test_agrees_with_box_oracle(self, quartic, table):
        walls = enumerate_wall_classes(quartic, table, (4, 4, -1), fixtures.ENUM_BOUND)
        oracle = oracle_scan(quartic, table, (4, 4, -1), fixtures.ENUM_BOUND, 40)
        assert [(x, sig.name) for x, sig in walls] == [(x, sig.name) for x, sig in oracle]

    def test_random_lorentzian_completeness(self, table):
        rng = random.Random(42)
        tested = 0
        while tested < 12:
            gram = [[0] * 3 for _ in range(3)]
            for i in range(3):
                for j in range(i, 3):
                    gram[i][j] = gram[j][i] = rng.randint(-10, 10)
            lat = make_lattice(gram)
            if linalg.determinant(gram) == 0 or lat.signature() != (1, 2, 0):
                continue
            base = None
            for _ in range(50):
                cand = tuple(rng.randint(-4, 4) for _ in range(3))
                if any(cand) and lat.square(cand) > 0:
                    base = cand
                    break
            if base is None:
                continue
            pairs = set()
            for _ in range(200):
                v = tuple(rng.randint(-4, 4) for _ in range(3))
                if not any(v) or lat.square(v) >= 0:
                    continue
                if linalg.vec_content(v) != 1:
                    continue
                pairs.add((int(lat.square(v)), lat.divisibility(v)))
                if len(pairs) >= 3:
                    break
            if not pairs:
                continue
            rows = tuple(OrbitSignature(name=f"o{i}", square=s, divisibility=d,
                                        codimension=(i % 3) + 1)
                         for i, (s, d) in enumerate(sorted(pairs)))
            sub = SignatureTable(orbits=rows)
            bound = F(1)
            box = enumeration_box(lat, base, bound, [r.square for r in rows])
            if max(box) > 25:
                continue
            walls = enumerate_wall_classes(lat, sub, base, bound)
            oracle = oracle_scan(lat, sub, base, bound, max(box) + 5)
            assert [(x, sig.name) for x, sig in walls] == \
                [(x, sig.name) for x, sig in oracle]
            tested += 1

    def test_bad_bound_rejected(self, quartic, table):
        with pytest.raises(PreconditionError):
            enumerate_wall_classes(quartic, table, (4, 4, -1), 0)


class TestCrossingParameter:
    def test_symmetric_configuration(self, quartic):
        t = crossing_parameter(quartic, (0, 0, 1), (1, 1, 1), (1, 1, -1))
        assert t == F(1, 2)

    def test_same_side_is_none(self, quartic):
        assert crossing_parameter(quartic, (0, 0, 1), (1, 1, -1), (2, 2, -1)) is None

    def test_endpoint_on_wall_is_none(self, quartic):
        assert crossing_parameter(quartic, (0, 0, 1), (1, 1, 0), (1, 1, -1)) is None


class TestFactorPath:
    def test_chain_m1_to_m4(self, quartic, table):
        f = factor_path(quartic, table, M1, M4, fixtures.PATH_BOUND)
        assert f.status == STATUS_OK
        assert not f.perturbed
        assert [s.wall_class for s in f.steps] == [(-4, 0, 1), (-2, 0, 1), (0, 4, -3)]
        assert [s.t for s in f.steps] == [F(2, 13), F(1, 2), F(4, 5)]
        assert [(s.signature.square, s.signature.divisibility) for s in f.steps] == \
            [(-36, 4), (-12, 2), (-36, 4)]
        assert [s.codimension for s in f.steps] == [2, 3, 2]
        assert f.groups == ((0, 1), (2,))

    def test_adjacent_pairs_cross_one_wall(self, quartic, table):
        for a, b, cls in [(M1, M2, (4, 0, -1)), (M2, M3, (2, 0, -1)), (M3, M4, (0, 4, -3))]:
            f = factor_path(quartic, table, a, b, F(20))
            assert len(f.steps) == 1
            got = f.steps[0].wall_class
            assert got == cls or got == tuple(-c for c in cls)

    def test_equal_endpoints(self, quartic, table):
        f = factor_path(quartic, table, M3, M3, fixtures.PATH_BOUND)
        assert f.steps == () and f.status == STATUS_REGULAR

    def test_alpha_wall_is_divisorial(self, quartic, table):
        f = factor_path(quartic, table, (3, F(17, 8), F(3, 2)), (3, F(15, 8), F(3, 2)),
                        fixtures.PATH_BOUND)
        assert f.status == STATUS_DIVISORIAL
        assert len(f.steps) == 1
        assert f.steps[0].signature.name == "alpha"

    def test_wall_pairing_vanishes_at_crossing(self, quartic, table):
        f = factor_path(quartic, table, M1, M4, fixtures.PATH_BOUND)
        for s in f.steps:
            point = tuple(x + s.t * (y - x) for x, y in zip(f.a, f.b))
            assert quartic.pairing(s.wall_class, point) == 0
            assert quartic.square(point) > 0
            assert quartic.pairing(s.wall_class, f.a) > 0
            assert quartic.pairing(s.wall_class, f.b) < 0
            assert 0 < s.t < 1

    def test_reversal(self, quartic, table):
        fwd = factor_path(quartic, table, M1, M4, fixtures.PATH_BOUND)
        rev = factor_path(quartic, table, M4, M1, fixtures.PATH_BOUND)
        assert [s.t for s in rev.steps] == [1 - s.t for s in reversed(fwd.steps)]
        assert [s.wall_class for s in rev.steps] == \
            [tuple(-c for c in s.wall_class) for s in reversed(fwd.steps)]
        assert [s.signature for s in rev.steps] == \
            [s.signature for s in reversed(fwd.steps)]

    def test_determinism(self, quartic, table):
        f1 = factor_path(quartic, table, M1, M4, fixtures.PATH_BOUND)
        f2 = factor_path(quartic, table, M1, M4, fixtures.PATH_BOUND)
        assert f1 == f2
        assert factorization_report(f1) == factorization_report(f2)

    def test_different_components_rejected(self, quartic, table):
        with pytest.raises(PreconditionError):
            factor_path(quartic, table, M1, tuple(-c for c in M4), fixtures.PATH_BOUND)

    def test_bound_must_cover(self, quartic, table):
        with pytest.raises(PreconditionError):
            factor_path(quartic, table, M3, (1, 2, F(-3, 2)), F(8))

    def test_endpoint_on_wall_perturbs(self, quartic, table):
        f = factor_path(quartic, table, M3, (1, 1, 0), F(8))
        assert f.perturbed
        assert f.b != (1, 1, 0)
        ts = [s.t for s in f.steps]
        assert len(ts) == len(set(ts))

    def test_coincident_crossings_perturb(self, quartic, table):
        # the walls of alpha, beta and gamma share the interior line through
        # (3, 2, 0); a symmetric segment through it crosses them all at t=1/2
        a, b = (F(5, 2), 2, F(-1, 2)), (F(7, 2), 2, F(1, 2))
        f = factor_path(quartic, table, a, b, F(8))
        assert f.perturbed
        ts = [s.t for s in f.steps]
        assert len(ts) == len(set(ts)) and len(ts) >= 3

    def test_report_schema(self, quartic, table):
        f = factor_path(quartic, table, M1, M4, fixtures.PATH_BOUND)
        rep = factorization_report(f)
        assert rep["a"] == ["2", "3/2", "-1"]
        assert rep["status"] == "ok"
        assert rep["groups"] == [[0, 1], [2]]
        assert rep["steps"][2] == {"class": [0, 4, -3], "square": -36,
                                   "divisibility": 4, "codimension": 2,
                                   "t": "4/5", "orbit": "codim2"}


class TestGroupHuYau:
    def _steps(self, codims, table):
        by_codim = {1: table.by_name("delta"), 2: table.by_name("codim2"),
                    3: table.by_name("codim3")}
        return [WallCrossing(wall_class=(i + 1, 0, 0), t=F(i + 1, len(codims) + 1),
                             signature=by_codim[c])
                for i, c in enumerate(codims)]

    def test_paper_chain(self, table):
        assert group_hu_yau(self._steps([2, 3, 2], table)) == ((0, 1), (2,))

    def test_single_codim2(self, table):
        assert group_hu_yau(self._steps([3, 2, 3], table)) == ((0, 1, 2),)

    def test_singleton(self, table):
        assert group_hu_yau(self._steps([2], table)) == ((0,),)

    def test_longer_mix(self, table):
        assert group_hu_yau(self._steps([3, 2, 3, 2, 2, 3], table)) == \
            ((0, 1, 2), (3,), (4, 5))

    def test_blocks_partition_and_have_one_codim2(self, table):
        rng = random.Random(6)
        for _ in range(100):
            codims = [rng.choice([2, 3]) for _ in range(rng.randint(1, 10))]
            if 2 not in codims:
                continue
            steps = self._steps(codims, table)
            blocks = group_hu_yau(steps)
            flat = [i for b in blocks for i in b]
            assert flat == list(range(len(steps)))
            for b in blocks:
                assert sum(1 for i in b if codims[i] == 2) == 1

    def test_no_codim2_rejected(self, table):
        with pytest.raises(PreconditionError, match="regular in codimension two"):
            group_hu_yau(self._steps([3, 3], table))

    def test_divisorial_rejected(self, table):
        with pytest.raises(PreconditionError):
            group_hu_yau(self._steps([1, 2], table))


class TestRandomSegments:
    def test_random_pairs_stress(self, quartic, table):
        rng = random.Random(99)

        def rand_point():
            while True:
                p = tuple(F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
                if quartic.square(p) > 0:
                    return p

        pairs = 0
        while pairs < 50:
            a, b = rand_point(), rand_point()
            qab = quartic.pairing(a, b)
            if qab <= 0:
                continue
            need = F(qab * qab, quartic.square(a) * quartic.square(b))
            if need > 6:
                continue
            bound = max(F(1), need) + 1
            f = factor_path(quartic, table, a, b, bound)
            ts = [s.t for s in f.steps]
            assert ts == sorted(ts) and len(ts) == len(set(ts))
            for s in f.steps:
                pt = tuple(x + s.t * (y - x) for x, y in zip(f.a, f.b))
                assert quartic.pairing(s.wall_class, pt) == 0
                assert quartic.square(pt) > 0
                assert quartic.pairing(s.wall_class, f.a) > 0 > quartic.pairing(s.wall_class, f.b)
                assert 0 < s.t < 1
            g = factor_path(quartic, table, b, a, bound)
            if not f.perturbed and not g.perturbed:
                # exact reversal only makes sense in general position: the
                # perturbation rule moves the segment end, so perturbed runs
                # are allowed to differ
                assert [s.t for s in g.steps] == [1 - s.t for s in reversed(f.steps)]
                assert [s.wall_class for s in g.steps] == \
                    [tuple(-c for c in s.wall_class) for s in reversed(f.steps)]
            pairs += 1

    def test_perturbation_from_multiwall_point(self, quartic, table):
        # (2, 4/3, 0) spans the same ray as (3, 2, 0) and lies on six walls
        # whose normals have disjoint coordinate support; clearing it needs
        # compounded shifts
        a = (2, F(4, 3), 0)
        b = (1, 2, F(-1, 3))
        f = factor_path(quartic, table, a, b, F(4))
        assert f.perturbed
        ts = [s.t for s in f.steps]
        assert len(ts) == len(set(ts))
        f2 = factor_path(quartic, table, a, b, F(4))
        assert f == f2


class TestSameChamber:
    def test_scaling_stays(self, quartic, table):
        assert same_chamber(quartic, table, M3, tuple(2 * c for c in M3), F(8))

    def test_equal_points(self, quartic, table):
        assert same_chamber(quartic, table, M3, M3, F(8))

    def test_eta_separates(self, quartic, table):
        assert quartic.pairing((0, 4, -3), M3) > 0 > quartic.pairing((0, 4, -3), M4)
        assert not same_chamber(quartic, table, M3, M4, F(20))
