"""Graphs shared by the test modules, plus a seeded generator of valid graphs."""

import random

from torusgraph import lattice as lat
from torusgraph.constructions import (cpn, cp3_rank2, m1, m2, product, sphere,
                                      square4, triangle4)
from torusgraph.graph import apply_basis, blow_up


def torus_corpus() -> dict:
    """Graphs that describe torus manifolds (k = n)."""
    graphs = {
        "sphere": sphere(),
        "cp2": cpn(2),
        "cp3": cpn(3),
        "triangle4": triangle4(),
        "triangle4_skew": triangle4((2, 1), (1, 1)),
        "square4_m0": square4(m=0),
        "square4_m2": square4(m=2),
        "square4_m-3": square4(m=-3),
        "m1_0": m1(0),
        "m1_1": m1(1),
        "m1_-3": m1(-3),
        "m2_0_0": m2(0, 0),
        "m2_2_-1": m2(2, -1),
        "m2_-1_3": m2(-1, 3),
        "m1_2_skew": m1(2, (1, 1, 0), (0, 1, 0), (1, 1, 1)),
        "cp3_blowup": blow_up(cpn(3), "p0"),
        "s2xs2": product(sphere(), sphere()),
        "cp2xs2": product(cpn(2), sphere()),
    }
    return graphs


def n3_corpus() -> dict:
    return {k: g for k, g in torus_corpus().items() if g.half_dim == 3}


def gkm_corpus() -> dict:
    return {"cp3_rank2": cp3_rank2()}


def random_unimodular(k: int, rng: random.Random, steps: int = 4) -> lat.Matrix:
    """Product of random elementary matrices and a signed permutation."""
    m = [list(r) for r in lat.identity(k)]
    for _ in range(steps):
        if k == 1:
            break
        i, j = rng.sample(range(k), 2)
        t = rng.choice((-1, 1))
        m[i] = [a + t * b for a, b in zip(m[i], m[j])]
    perm = list(range(k))
    rng.shuffle(perm)
    signs = [rng.choice((-1, 1)) for _ in range(k)]
    return tuple(tuple(signs[r] * m[perm[r]][c] for c in range(k)) for r in range(k))


_BASES = [
    lambda rng: sphere(),
    lambda rng: cpn(2),
    lambda rng: cpn(3),
    lambda rng: triangle4(),
    lambda rng: square4(m=rng.randint(-3, 3)),
    lambda rng: m1(rng.randint(-3, 3)),
    lambda rng: m2(rng.randint(-2, 2), rng.randint(-2, 2)),
]


def random_valid_graph(rng: random.Random, max_dim: int = 4, max_vertices: int = 16):
    """A torus-manifold graph built from constructors by products, blow-ups
    and basis changes; all three operations preserve validity."""
    g = rng.choice(_BASES)(rng)
    for _ in range(rng.randint(0, 3)):
        op = rng.random()
        if op < 0.35 and g.half_dim < max_dim:
            room = max_dim - g.half_dim
            other = rng.choice([b for b in (sphere(), cpn(2), triangle4(), square4(m=1))
                                if b.half_dim <= room])
            if len(g.vertices) * len(other.vertices) <= max_vertices:
                g = product(g, other) if rng.random() < 0.5 else product(other, g)
        elif op < 0.7 and g.half_dim >= 2:
            if len(g.vertices) + g.half_dim - 1 <= max_vertices:
                g = blow_up(g, rng.choice(g.vertices))
        else:
            g = apply_basis(g, random_unimodular(g.rank, rng))
    return g
