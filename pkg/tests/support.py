"""Shared random generators for the fuzz and acceptance suites."""

from __future__ import annotations

import random

from asphere import (
    AddMultiple,
    BaseChange,
    Invert,
    Letter,
    NegateRow,
    Presentation,
    RightMultiply,
    RowOpLog,
    SparseIntMatrix,
    Swap,
    SwapRows,
    Word,
    apply_base_change,
    apply_row_ops,
    smith_normal_form,
)
from asphere.complexes import Filtration, SubcomplexSpec


def random_word(rng: random.Random, n_gens: int, max_len: int) -> Word:
    length = rng.randint(0, max_len)
    return Word.from_pairs(
        (rng.randint(1, n_gens), rng.choice((1, -1))) for _ in range(length)
    )


def random_letters(rng: random.Random, n_gens: int, max_len: int) -> list[Letter]:
    length = rng.randint(0, max_len)
    return [
        Letter(rng.randint(1, n_gens), rng.choice((1, -1))) for _ in range(length)
    ]


def random_row_op(rng: random.Random, n: int):
    kind = rng.randrange(3)
    if kind == 0 and n >= 2:
        i, j = rng.sample(range(1, n + 1), 2)
        return SwapRows(i, j)
    if kind == 1:
        return NegateRow(rng.randint(1, n))
    if n >= 2:
        t, s = rng.sample(range(1, n + 1), 2)
        return AddMultiple(t, s, rng.choice((-3, -2, -1, 1, 2, 3)))
    return NegateRow(1)


def random_row_ops(rng: random.Random, n: int, count: int) -> RowOpLog:
    return RowOpLog(tuple(random_row_op(rng, n) for _ in range(count)))


def random_unimodular(rng: random.Random, n: int, max_ops: int) -> SparseIntMatrix:
    log = random_row_ops(rng, n, rng.randint(0, max_ops))
    return apply_row_ops(log, SparseIntMatrix.identity(n))


def random_non_unimodular(rng: random.Random, max_size: int) -> SparseIntMatrix:
    """Rejection-sample dense square matrices until the SNF oracle says some
    diagonal entry differs from 1."""
    while True:
        n = rng.randint(1, max_size)
        m = SparseIntMatrix.from_rows(
            [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        )
        diagonal, _, _ = smith_normal_form(m)
        if any(d != 1 for d in diagonal):
            return m


def random_nielsen_move(rng: random.Random, n: int):
    kind = rng.randrange(3)
    if kind == 0 and n >= 2:
        i, j = rng.sample(range(1, n + 1), 2)
        return Swap(i, j)
    if kind == 1 or n < 2:
        return Invert(rng.randint(1, n))
    i, j = rng.sample(range(1, n + 1), 2)
    return RightMultiply(i, j)


def random_base_change(rng: random.Random, n: int, max_moves: int) -> BaseChange:
    return BaseChange(
        tuple(random_nielsen_move(rng, n) for _ in range(rng.randint(0, max_moves)))
    )


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def random_trivialish_presentation(
    rng: random.Random, n: int, max_moves: int = 12
) -> Presentation:
    """Balanced presentation with unimodular exponent matrix.

    Starts from relators x_j padded with random commutators (exponent
    matrix = identity) and scrambles by a random base change.
    """
    relators = []
    for j in range(1, n + 1):
        r = Word.from_pairs([(j, 1)])
        for _ in range(rng.randint(0, 2)):
            c = commutator(random_word(rng, n, 3), random_word(rng, n, 3))
            r = r * c
        relators.append(r)
    bc = random_base_change(rng, n, max_moves)
    return Presentation(n, tuple(apply_base_change(bc, r) for r in relators))


def random_presentation(rng: random.Random, n_gens: int, n_rels: int, max_len: int = 8) -> Presentation:
    return Presentation(
        n_gens, tuple(random_word(rng, n_gens, max_len) for _ in range(n_rels))
    )


def random_filtration(rng: random.Random, p: Presentation, n_stages: int) -> Filtration:
    """Increasing chain of closed subcomplex specs ending at the whole
    complex."""
    n_gens, n_rels = p.n_generators, len(p.relators)
    rel_order = list(range(1, n_rels + 1))
    rng.shuffle(rel_order)
    cuts = sorted(rng.randint(0, n_rels) for _ in range(n_stages - 1)) + [n_rels]

    stages = []
    gens: set[int] = set()
    for k, cut in enumerate(cuts):
        rels = set(rel_order[:cut])
        for j in rels:
            gens |= p.relators[j - 1].indices()
        extra = rng.randint(0, n_gens)
        gens |= set(rng.sample(range(1, n_gens + 1), extra))
        if k == len(cuts) - 1:
            gens = set(range(1, n_gens + 1))
        stages.append(SubcomplexSpec(frozenset(gens), frozenset(rels), n_gens, n_rels))
    return Filtration(p, tuple(stages))
