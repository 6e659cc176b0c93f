"""Shared generators for randomized tests. Everything is seed-driven."""

import random

from qtorus import (
    BilinearData,
    Frac1,
    IntMatrix,
    LatticeLocalSystem,
    invariance_check,
    quad_from_bilinear,
)


def rand_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    """Product of elementary row operations applied to the identity."""
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        kind = rng.randrange(3)
        i = rng.randrange(n)
        j = rng.randrange(n)
        if kind == 0 and i != j:
            k = rng.randint(-2, 2)
            rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
        elif kind == 1:
            rows[i], rows[j] = rows[j], rows[i]
        else:
            rows[i] = [-a for a in rows[i]]
    return IntMatrix.from_rows(rows)


def rand_matrix(rng: random.Random, rows: int, cols: int, lo: int, hi: int) -> IntMatrix:
    return IntMatrix(rows, cols, [rng.randint(lo, hi) for _ in range(rows * cols)])


def random_local_system(rng: random.Random, genus: int, rank: int) -> LatticeLocalSystem:
    """A valid system drawn from a few structurally different families."""
    if genus == 0:
        return LatticeLocalSystem.trivial(rank, genus)
    family = rng.randrange(4)
    if family == 0:
        return LatticeLocalSystem.trivial(rank, genus)
    if family == 1:
        # diagonal signs commute, so every pair satisfies the relation
        mats = [
            IntMatrix(rank, rank, [
                (rng.choice((1, -1)) if i == j else 0)
                for i in range(rank)
                for j in range(rank)
            ])
            for _ in range(2 * genus)
        ]
        return LatticeLocalSystem(rank, genus, mats)
    if family == 2:
        # commuting family conjugated by a random unimodular change of basis
        t = rand_unimodular(rng, rank)
        t_inv = _inverse(t)
        base = [
            _int_power(_shear(rank), rng.randint(-2, 2)) for _ in range(2 * genus)
        ]
        return LatticeLocalSystem(rank, genus, [t @ m @ t_inv for m in base])
    if genus == 2:
        # [P,Q][Q,P] = 1 for any P, Q: a genuinely noncommuting family
        p = rand_unimodular(rng, rank)
        q = rand_unimodular(rng, rank)
        return LatticeLocalSystem(rank, genus, [p, q, q, p])
    # genus 1 fallback: a commuting pair of shear powers
    s = _shear(rank)
    return LatticeLocalSystem(
        rank, genus, [_int_power(s, rng.randint(-2, 2)), _int_power(s, rng.randint(-2, 2))]
    )


def _shear(rank: int) -> IntMatrix:
    if rank == 1:
        return IntMatrix(1, 1, [-1])
    e = [[1 if i == j else 0 for j in range(rank)] for i in range(rank)]
    e[0][1] = 1
    return IntMatrix.from_rows(e)


def _int_power(m: IntMatrix, k: int) -> IntMatrix:
    from qtorus import inverse_unimodular

    out = IntMatrix.identity(m.rows)
    base = m if k >= 0 else inverse_unimodular(m)
    for _ in range(abs(k)):
        out = out @ base
    return out


def _inverse(m: IntMatrix) -> IntMatrix:
    from qtorus import inverse_unimodular

    return inverse_unimodular(m)


def random_invariant_level(
    rng: random.Random, rho: LatticeLocalSystem, max_den: int = 6
) -> BilinearData:
    """Random level preserved by the monodromy; trivial level as a safety net."""
    r = rho.rank
    for _ in range(60):
        den = rng.randint(1, max_den)
        num = rng.randrange(den) if den > 1 else 0
        zeta = Frac1(num, den)
        c = rand_matrix(rng, r, r, -3, 3)
        level = BilinearData(c, zeta)
        if invariance_check(quad_from_bilinear(level), rho.mon):
            return level
    return BilinearData(rand_matrix(rng, r, r, -3, 3), Frac1(0, 1))
