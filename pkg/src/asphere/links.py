"""Symbolic surgery codes for ribbon sphere/disk-links.

A surgery code keeps one handle per generator and one loop word per
relator, normalized so that the exponent sum of generator i in component j
is the Kronecker delta.  Sublink filling adds the meridian words of the
filled components as relators of the free exterior group, and selections
correspond bijectively to 1-full subcomplexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .complexes import SubcomplexSpec
from .presentations import Presentation, WindowMismatch, is_homology_trivial_unit
from .words import Word


class NotHomologyTrivialUnit(Exception):
    """The presentation fails the identity-exponent normalization."""


class BadSelection(Exception):
    """A sublink selection references a missing component."""


class NotOneFull(Exception):
    """The subcomplex does not contain the whole 1-skeleton."""


@dataclass(frozen=True)
class SurgeryCode:
    """One handle per generator; one component loop word per relator."""

    n_handles: int
    components: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.n_handles:
            raise ValueError(
                f"{len(self.components)} components vs {self.n_handles} handles"
            )
        for j, k in enumerate(self.components, start=1):
            if k.max_index() > self.n_handles:
                raise ValueError(f"component {j} touches a missing handle")
            for i in k.indices() | {j}:
                want = 1 if i == j else 0
                if k.exponent_sum(i) != want:
                    raise ValueError(
                        f"component {j} has intersection number "
                        f"{k.exponent_sum(i)} with handle {i}, expected {want}"
                    )

    def to_json(self) -> dict:
        from .words import word_to_text

        return {
            "handles": self.n_handles,
            "components": [word_to_text(k) for k in self.components],
        }


@dataclass(frozen=True)
class ExteriorPresentation:
    """Free exterior group data: rank plus one meridian word per component."""

    free_rank: int
    meridians: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "meridians", tuple(self.meridians))
        for j, w in enumerate(self.meridians, start=1):
            if w.max_index() > self.free_rank:
                raise ValueError(f"meridian {j} exceeds the free rank")


@dataclass(frozen=True)
class SublinkSelection:
    """The component indices whose disk bundles are glued back."""

    fill: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "fill", frozenset(self.fill))


def build_surgery_code(p: Presentation) -> SurgeryCode:
    """Realize a homology-trivial unit-group presentation as a surgery code.

    Component j is the relator word r_j verbatim; the identity exponent
    matrix is exactly the intersection-number normalization.
    """
    try:
        ok = is_homology_trivial_unit(p)
    except WindowMismatch as exc:
        raise NotHomologyTrivialUnit(str(exc)) from exc
    if not ok:
        raise NotHomologyTrivialUnit("exponent matrix is not the identity")
    return SurgeryCode(p.n_generators, p.relators)


def exterior_group(sc: SurgeryCode) -> ExteriorPresentation:
    """The free exterior group with the meridian word of each component."""
    return ExteriorPresentation(sc.n_handles, sc.components)


def _check_selection(sc: SurgeryCode, sel: SublinkSelection) -> None:
    for j in sel.fill:
        if not 1 <= j <= len(sc.components):
            raise BadSelection(f"component index {j} outside 1..{len(sc.components)}")


def exterior(sc: SurgeryCode, sel: SublinkSelection) -> Presentation:
    """Fill the selected components: their meridian words become relators.

    The empty selection gives the free group of rank n; the full selection
    returns the original presentation.
    """
    _check_selection(sc, sel)
    relators = tuple(sc.components[j - 1] for j in sorted(sel.fill))
    return Presentation(sc.n_handles, relators)


def subcomplex_to_sublink(s: SubcomplexSpec) -> SublinkSelection:
    """The unique sublink matching a 1-full subcomplex: fill = its relators."""
    if not s.is_1_full:
        raise NotOneFull(
            f"{len(s.gens)} of {s.ambient_gens} generators selected; "
            "take the 1-full hull first"
        )
    return SublinkSelection(frozenset(s.rels))


def sublink_to_subcomplex(
    sel: SublinkSelection, n_generators: int, n_components: int
) -> SubcomplexSpec:
    """Inverse transport: the 1-full subcomplex whose relators are the fill."""
    for j in sel.fill:
        if not 1 <= j <= n_components:
            raise BadSelection(f"component index {j} outside 1..{n_components}")
    return SubcomplexSpec(
        frozenset(range(1, n_generators + 1)), sel.fill, n_generators, n_components
    )


def verify_meridian_correspondence(sc: SurgeryCode, p: Presentation) -> bool:
    """Component loop words equal relator words index by index (as reduced
    words)."""
    if len(sc.components) != len(p.relators):
        return False
    return all(k == r for k, r in zip(sc.components, p.relators))
