import random

import pytest

from qtorus import (
    Frac1,
    LatticeLocalSystem,
    SymmetricForm,
    TwistedCochain,
    class_of,
    coboundary,
    cocycle_check,
    cohomology_presentations,
    cup_evaluate,
    holonomies,
    polarize,
    quad_from_bilinear,
    triangulate,
)
from qtorus.errors import NotACocycle, NotInKernel, ShapeMismatch, UnsupportedGenus
from qtorus.forms import ZERO

from helpers import random_invariant_level, random_local_system

FIFTH = Frac1(1, 5)


def scalar_pairing(num, den):
    return SymmetricForm(1, ((Frac1(num, den),),))


def sign_rep():
    from qtorus import IntMatrix

    return LatticeLocalSystem(
        1, 1, [IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[-1]])]
    )


def add_cochains(c1, c2):
    vals = {cell: tuple(a + b for a, b in zip(v, c2.value(cell))) for cell, v in c1.values.items()}
    return TwistedCochain(c1.degree, c1.rank, vals)


def basis_vec(n, *idx):
    v = [0] * n
    for i in idx:
        v[i] += 1
    return tuple(v)


class TestTriangulation:
    def test_cell_counts(self):
        for g in (1, 2, 3):
            t = triangulate(g)
            assert len(t.cells_of_degree(0)) == 2
            assert len(t.cells_of_degree(1)) == 6 * g
            assert len(t.cells_of_degree(2)) == 4 * g
            # closed orientable surface: V - E + F = 2 - 2g
            assert 2 - 6 * g + 4 * g == 2 - 2 * g

    def test_genus_zero_rejected(self):
        with pytest.raises(UnsupportedGenus):
            triangulate(0)

    def test_degree_out_of_range(self):
        with pytest.raises(ShapeMismatch):
            triangulate(1).cells_of_degree(3)

    def test_fundamental_cycle_signs(self):
        # half the triangles run with the polygon, half against
        t = triangulate(2)
        assert sum(tri.sign for tri in t.triangles) == 0
        assert sum(abs(tri.sign) for tri in t.triangles) == 8


class TestCoboundary:
    def test_vertex_cochain_gives_cocycle(self):
        rng = random.Random(3)
        for _ in range(10):
            g, r = rng.randint(1, 2), rng.randint(1, 2)
            rho = random_local_system(rng, g, r)
            t = triangulate(g)
            c0 = TwistedCochain(
                0,
                r,
                {cell: tuple(rng.randint(-3, 3) for _ in range(r)) for cell in t.cells_of_degree(0)},
            )
            assert cocycle_check(coboundary(c0, t, rho), t, rho)

    def test_no_coboundary_in_top_degree(self):
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        c2 = TwistedCochain(2, 1, {cell: (1,) for cell in t.cells_of_degree(2)})
        with pytest.raises(ShapeMismatch):
            coboundary(c2, t, rho)

    def test_top_degree_vacuously_closed(self):
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        c2 = TwistedCochain(2, 1, {cell: (7,) for cell in t.cells_of_degree(2)})
        assert cocycle_check(c2, t, rho)

    def test_missing_cell_rejected(self):
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        with pytest.raises(ShapeMismatch):
            cocycle_check(TwistedCochain(1, 1, {("gen", 0): (1,)}), t, rho)

    def test_wrong_rank_rejected(self):
        rho = LatticeLocalSystem.trivial(2, 1)
        t = triangulate(1)
        cells = t.cells_of_degree(1)
        with pytest.raises(ShapeMismatch):
            cocycle_check(TwistedCochain(1, 1, {c: (0,) for c in cells}), t, rho)


class TestClassOf:
    def test_zero_class(self):
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        c = class_of((0, 0), t, rho)
        assert all(v == (0,) for v in c.values.values())

    def test_holonomy_round_trip(self):
        rng = random.Random(7)
        for _ in range(15):
            g, r = rng.randint(1, 2), rng.randint(1, 2)
            rho = random_local_system(rng, g, r)
            t = triangulate(g)
            pres = cohomology_presentations(rho)
            for vec in pres.h1.all_gens():
                c = class_of(vec, t, rho)
                assert holonomies(c, t) == tuple(vec)
                assert cocycle_check(c, t, rho)

    def test_not_in_kernel(self):
        # sign representation: the a-holonomy must vanish mod nothing: d1 = (2 0)
        t = triangulate(1)
        with pytest.raises(NotInKernel):
            class_of((1, 0), t, sign_rep())
        c = class_of((0, 1), t, sign_rep())
        assert cocycle_check(c, t, sign_rep())

    def test_wrong_length(self):
        t = triangulate(1)
        with pytest.raises(ShapeMismatch):
            class_of((1, 0, 0), t, LatticeLocalSystem.trivial(1, 1))

    def test_genus_mismatch(self):
        with pytest.raises(ShapeMismatch):
            class_of((0, 0), triangulate(2), LatticeLocalSystem.trivial(1, 1))


class TestCup:
    def test_orientation_normalization(self):
        # a cup b = +1 at genus one with trivial coefficients
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        p = scalar_pairing(1, 5)
        a = class_of((1, 0), t, rho)
        b = class_of((0, 1), t, rho)
        assert cup_evaluate(a, b, p, t, rho) == FIFTH
        assert cup_evaluate(b, a, p, t, rho) == Frac1(4, 5)

    def test_cup_squares_vanish(self):
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        p = scalar_pairing(1, 5)
        for vec in ((1, 0), (0, 1), (2, 3)):
            c = class_of(vec, t, rho)
            assert cup_evaluate(c, c, p, t, rho) == ZERO

    def test_symplectic_intersection_form(self):
        # trivial coefficients: the generator loops pair symplectically
        for g in (1, 2):
            rho = LatticeLocalSystem.trivial(1, g)
            t = triangulate(g)
            p = scalar_pairing(1, 5)
            classes = [class_of(basis_vec(2 * g, j), t, rho) for j in range(2 * g)]
            for i in range(2 * g):
                for j in range(2 * g):
                    got = cup_evaluate(classes[i], classes[j], p, t, rho)
                    if i % 2 == 0 and j == i + 1:
                        assert got == FIFTH
                    elif j % 2 == 0 and i == j + 1:
                        assert got == Frac1(4, 5)
                    else:
                        assert got == ZERO

    def test_bilinear_and_antisymmetric(self):
        rng = random.Random(11)
        for _ in range(8):
            g, r = rng.randint(1, 2), rng.randint(1, 2)
            rho = random_local_system(rng, g, r)
            level = random_invariant_level(rng, rho)
            p = polarize(quad_from_bilinear(level))
            t = triangulate(g)
            gens = cohomology_presentations(rho).h1.all_gens()
            if not gens:
                continue
            classes = [class_of(v, t, rho) for v in gens]
            for u in classes:
                for v in classes:
                    uv = cup_evaluate(u, v, p, t, rho)
                    vu = cup_evaluate(v, u, p, t, rho)
                    assert uv + vu == ZERO
            # additivity in the first slot
            for iu in range(len(classes)):
                for iv in range(len(classes)):
                    for iw in range(len(classes)):
                        s = tuple(a + b for a, b in zip(gens[iu], gens[iv]))
                        left = cup_evaluate(class_of(s, t, rho), classes[iw], p, t, rho)
                        right = cup_evaluate(classes[iu], classes[iw], p, t, rho) + cup_evaluate(
                            classes[iv], classes[iw], p, t, rho
                        )
                        assert left == right

    def test_coboundary_insensitive(self):
        rng = random.Random(13)
        for _ in range(10):
            g, r = rng.randint(1, 2), rng.randint(1, 2)
            rho = random_local_system(rng, g, r)
            level = random_invariant_level(rng, rho)
            p = polarize(quad_from_bilinear(level))
            t = triangulate(g)
            gens = cohomology_presentations(rho).h1.all_gens()
            if len(gens) < 2:
                continue
            u = class_of(gens[0], t, rho)
            v = class_of(gens[1], t, rho)
            c0 = TwistedCochain(
                0,
                r,
                {cell: tuple(rng.randint(-2, 2) for _ in range(r)) for cell in t.cells_of_degree(0)},
            )
            shifted = add_cochains(u, coboundary(c0, t, rho))
            assert cup_evaluate(shifted, v, p, t, rho) == cup_evaluate(u, v, p, t, rho)
            assert cup_evaluate(v, shifted, p, t, rho) == cup_evaluate(v, u, p, t, rho)

    def test_rejects_non_cocycles(self):
        rho = sign_rep()
        t = triangulate(1)
        p = scalar_pairing(1, 2)
        cells = t.cells_of_degree(1)
        bad = TwistedCochain(1, 1, {c: ((1,) if c == ("gen", 0) else (0,)) for c in cells})
        good = class_of((0, 1), t, rho)
        with pytest.raises(NotACocycle):
            cup_evaluate(bad, good, p, t, rho)
        with pytest.raises(NotACocycle):
            cup_evaluate(good, bad, p, t, rho)

    def test_rejects_wrong_degree(self):
        rho = LatticeLocalSystem.trivial(1, 1)
        t = triangulate(1)
        p = scalar_pairing(1, 2)
        c0 = TwistedCochain(0, 1, {c: (0,) for c in t.cells_of_degree(0)})
        c1 = class_of((0, 0), t, rho)
        with pytest.raises(NotACocycle):
            cup_evaluate(c0, c1, p, t, rho)


class TestHolonomies:
    def test_reads_generator_cells(self):
        rho = LatticeLocalSystem.trivial(2, 1)
        t = triangulate(1)
        c = class_of((1, 2, 3, 4), t, rho)
        assert holonomies(c, t) == (1, 2, 3, 4)

    def test_wrong_degree(self):
        t = triangulate(1)
        c0 = TwistedCochain(0, 1, {cell: (0,) for cell in t.cells_of_degree(0)})
        with pytest.raises(ShapeMismatch):
            holonomies(c0, t)
