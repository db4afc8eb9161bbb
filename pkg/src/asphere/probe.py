"""Small-instance falsifier for asphericity claims.

Bounded HLT coset enumeration detects finite quotients; the free
differential calculus lifts the boundary matrix over the group ring, which
the left-regular representation turns into an integer block matrix whose
rational kernel rank bounds the rank of the second homotopy group from
below when the fundamental group is the enumerated finite group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .intmat import SparseIntMatrix, kernel_basis, mat_vec
from .presentations import Presentation
from .words import Letter, Word


class IncompleteTable(Exception):
    """The operation needs a completed coset table."""


@dataclass(frozen=True)
class CosetTable:
    """Permutation action of the generators on cosets of the trivial
    subgroup; complete tables enumerate the whole finite group.

    `action[c][k]` is the 1-based image of coset c+1 under column k, where
    columns alternate g1, g1^-1, g2, g2^-1, ...  `status` is "complete" or
    "overflow"; only complete tables carry an action.
    """

    n_generators: int
    limit: int
    status: str
    n_cosets: int
    action: tuple[tuple[int, ...], ...] = ()

    @property
    def is_complete(self) -> bool:
        return self.status == "complete"

    def act(self, coset: int, letter: Letter) -> int:
        col = 2 * (letter.index - 1) + (0 if letter.sign > 0 else 1)
        return self.action[coset - 1][col]

    def trace(self, coset: int, w: Word) -> int:
        for letter in w:
            coset = self.act(coset, letter)
        return coset

    def representatives(self) -> tuple[Word, ...]:
        """Breadth-first representative word per coset, from coset 1."""
        if not self.is_complete:
            raise IncompleteTable("cannot take representatives of an overflow table")
        reps: dict[int, Word] = {1: Word()}
        queue = deque([1])
        order = [
            Letter(i, s) for i in range(1, self.n_generators + 1) for s in (1, -1)
        ]
        while queue:
            c = queue.popleft()
            for letter in order:
                image = self.act(c, letter)
                if image not in reps:
                    reps[image] = reps[c] * Word((letter,))
                    queue.append(image)
        return tuple(reps[c] for c in range(1, self.n_cosets + 1))


class _Overflow(Exception):
    pass


def coset_enumerate(p: Presentation, limit: int) -> CosetTable:
    """HLT enumeration over the trivial subgroup with a hard coset limit.

    Relators are scanned coset by coset in definition order, filling and
    recording deductions; remaining undefined slots are then defined in
    lexicographic column order.  Coincidences are merged eagerly.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    n = p.n_generators
    ncols = 2 * n
    rels = [[2 * (l.index - 1) + (0 if l.sign > 0 else 1) for l in w] for w in p.relators]

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]
    queue: deque[int] = deque()

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(alpha: int, x: int) -> None:
        if len(table) >= limit:
            raise _Overflow
        table.append([None] * ncols)
        parent.append(len(table) - 1)
        new = len(table) - 1
        table[alpha][x] = new
        table[new][x ^ 1] = alpha

    def merge(a: int, b: int) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            parent[b] = a
            queue.append(b)

    def process_coincidences() -> None:
        while queue:
            e = queue.popleft()
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][x ^ 1] == e:
                    table[f][x ^ 1] = None
                e1, f1 = rep(e), rep(f)
                g = table[e1][x]
                if g is not None:
                    merge(f1, g)
                else:
                    h = table[f1][x ^ 1]
                    if h is not None:
                        merge(e1, h)
                    else:
                        table[e1][x] = f1
                        table[f1][x ^ 1] = e1

    def scan_and_fill(alpha: int, rel: list[int]) -> None:
        while True:
            front, i = alpha, 0
            while i < len(rel):
                nxt = table[front][rel[i]]
                if nxt is None:
                    break
                front, i = nxt, i + 1
            if i == len(rel):
                if front != alpha:
                    merge(front, alpha)
                    process_coincidences()
                return
            back, j = alpha, len(rel) - 1
            while j >= i:
                prv = table[back][rel[j] ^ 1]
                if prv is None:
                    break
                back, j = prv, j - 1
            if j < i:
                merge(front, back)
                process_coincidences()
                return
            if j == i:
                table[front][rel[i]] = back
                table[back][rel[i] ^ 1] = front
                return
            define(front, rel[i])

    try:
        alpha = 0
        while alpha < len(table):
            if rep(alpha) == alpha:
                for rel in rels:
                    if rep(alpha) != alpha:
                        break
                    scan_and_fill(alpha, rel)
                if rep(alpha) == alpha:
                    for x in range(ncols):
                        if table[alpha][x] is None:
                            define(alpha, x)
            alpha += 1
    except _Overflow:
        live = sum(1 for k in range(len(table)) if rep(k) == k)
        return CosetTable(n, limit, "overflow", live)

    live = [k for k in range(len(table)) if rep(k) == k]
    renumber = {k: idx for idx, k in enumerate(live, start=1)}
    action = tuple(
        tuple(renumber[rep(table[k][x])] for x in range(ncols)) for k in live
    )
    return CosetTable(n, limit, "complete", len(live), action)


# ---------------------------------------------------------------------------
# Free differential calculus.


def fox_derivative(r: Word, i: int) -> dict[Word, int]:
    """Formal combination satisfying the product rule with d(x_i)/d(x_i) = 1
    and d(x_i^-1)/d(x_i) = -x_i^-1."""
    terms: dict[Word, int] = {}
    prefix: list[Letter] = []
    for letter in r:
        if letter.index == i:
            if letter.sign > 0:
                key, coeff = Word(tuple(prefix)), 1
            else:
                key, coeff = Word(tuple(prefix) + (letter,)), -1
            terms[key] = terms.get(key, 0) + coeff
        prefix.append(letter)
    return {w: c for w, c in terms.items() if c}


def lifted_boundary(p: Presentation, t: CosetTable) -> SparseIntMatrix:
    """Block matrix of the derivatives under the left-regular representation.

    Block (i, j) realizes d(r_j)/d(x_i) on the N cosets of a complete
    table; with N = 1 this collapses to the exponent matrix.
    """
    if not t.is_complete:
        raise IncompleteTable("lifted boundary needs a complete coset table")
    n, m, size = p.n_generators, len(p.relators), t.n_cosets
    reps = t.representatives()
    entries: dict[tuple[int, int], int] = {}
    for j, r in enumerate(p.relators, start=1):
        for i in range(1, n + 1):
            for w, coeff in fox_derivative(r, i).items():
                base = t.trace(1, w)
                for alpha in range(1, size + 1):
                    target = t.trace(base, reps[alpha - 1])
                    key = ((i - 1) * size + target, (j - 1) * size + alpha)
                    v = entries.get(key, 0) + coeff
                    if v:
                        entries[key] = v
                    else:
                        entries.pop(key, None)
    return SparseIntMatrix(n * size, m * size, entries)


# ---------------------------------------------------------------------------
# Verdicts.


@dataclass(frozen=True)
class Verdict:
    """`status` is "aspherical", "not_aspherical", or "inconclusive"."""

    status: str
    cosets: int | None
    kernel_rank: int | None
    witness: tuple[int, ...] | None
    reason: str

    def to_json(self) -> dict:
        return {
            "verdict": self.status,
            "cosets": self.cosets,
            "kernel_rank": self.kernel_rank,
            "witness": list(self.witness) if self.witness is not None else None,
            "reason": self.reason,
        }


def asphericity_verdict(p: Presentation, limit: int) -> Verdict:
    """Sound falsification probe.

    A nonzero rational kernel of the lifted boundary over a completed table
    is a second-homotopy witness (re-multiplied through the matrix before it
    is reported).  A zero kernel certifies asphericity only when the group
    is trivial; a finite nontrivial quotient with zero kernel, or overflow,
    stays inconclusive.
    """
    if not p.relators:
        return Verdict("aspherical", None, None, None, "no 2-cells: the complex is a graph")
    t = coset_enumerate(p, limit)
    if not t.is_complete:
        return Verdict(
            "inconclusive", None, None, None, f"coset enumeration exceeded limit {limit}"
        )
    boundary = lifted_boundary(p, t)
    basis = kernel_basis(boundary)
    if basis:
        witness = basis[0]
        if any(mat_vec(boundary, witness)):
            raise AssertionError("kernel witness failed re-multiplication")
        return Verdict(
            "not_aspherical",
            t.n_cosets,
            len(basis),
            witness,
            "lifted boundary has nonzero rational kernel",
        )
    if t.n_cosets == 1:
        return Verdict(
            "aspherical", 1, 0, None, "trivial group and injective lifted boundary"
        )
    return Verdict(
        "inconclusive",
        t.n_cosets,
        0,
        None,
        "finite nontrivial fundamental group with zero rational kernel",
    )
