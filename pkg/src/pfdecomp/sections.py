"""Sections (nested subspace pairs) and the disjoint / covering predicates.

``covers`` and ``strongly_covers`` quantify over every subspace of the
ambient space, so they enumerate exhaustively and refuse ambients beyond a
size bound. They are verification tools for small cases, not a production
path.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .barcode import Interval
from .cuts import im_pair, ker_pair
from .exactla import (
    LinAlgError,
    Subspace,
    complement_in,
    enumerate_subspaces,
    intersect,
    rank,
    subspace_sum,
)
from .persmod import PersistenceModule


@dataclass(frozen=True)
class Section:
    lo: Subspace
    hi: Subspace

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise LinAlgError("section needs lo contained in hi")

    @property
    def ambient_dim(self) -> int:
        return self.hi.ambient_dim


def _sections(fam: Iterable) -> list[Section]:
    # accept bare sections or (label, section) pairs
    return [s if isinstance(s, Section) else s[1] for s in fam]


def _common_ambient(fam: Sequence[Section]) -> None:
    if len({(s.hi.ambient_dim, s.hi.p) for s in fam}) > 1:
        raise LinAlgError("sections live in different ambient spaces")


def is_disjoint(fam) -> bool:
    fam = _sections(fam)
    _common_ambient(fam)
    for f, g in itertools.combinations(fam, 2):
        if not (f.hi <= g.lo or g.hi <= f.lo):
            return False
    return True


def covers(fam, ambient_dim: int, p: int, bound: int = 4096) -> bool:
    """Every proper subspace ``X`` has some section with ``X + lo != X + hi``."""
    fam = _sections(fam)
    _common_ambient(fam)
    for X in enumerate_subspaces(ambient_dim, p, bound):
        if X.is_full:
            continue
        # lo <= hi, so the two sums differ exactly when their dimensions do
        if not any(subspace_sum(X, s.lo).dim != subspace_sum(X, s.hi).dim for s in fam):
            return False
    return True


def strongly_covers(fam, ambient_dim: int, p: int, bound: int = 4096) -> bool:
    """Every ``Z`` not inside ``Y`` has a section with ``Y + (lo & Z) != Y + (hi & Z)``."""
    fam = _sections(fam)
    _common_ambient(fam)
    subspaces = enumerate_subspaces(ambient_dim, p, bound)
    for Y, Z in itertools.product(subspaces, repeat=2):
        if Z <= Y:
            continue
        if not any(
            subspace_sum(Y, intersect(s.lo, Z)).dim != subspace_sum(Y, intersect(s.hi, Z)).dim
            for s in fam
        ):
            return False
    return True


def refine(famF, famG) -> list[Section]:
    """Sections ``(F- + G- & F+, F- + G+ & F+)`` in ``(F, G)`` lexicographic order."""
    famF, famG = _sections(famF), _sections(famG)
    _common_ambient(famF + famG)
    return [
        Section(subspace_sum(f.lo, intersect(g.lo, f.hi)), subspace_sum(f.lo, intersect(g.hi, f.hi)))
        for f in famF
        for g in famG
    ]


def image_sections(V: PersistenceModule, t: int) -> list[tuple[int, Section]]:
    """``(Im-, Im+)`` for every cut ``c <= t``."""
    return [(c, Section(*im_pair(V, c, t))) for c in range(t + 1)]


def kernel_sections(V: PersistenceModule, t: int) -> list[tuple[int, Section]]:
    """``(Ker-, Ker+)`` for every cut ``c > t``."""
    return [(c, Section(*ker_pair(V, c, t))) for c in range(t + 1, V.n + 1)]


def f_sections(V: PersistenceModule, t: int) -> list[tuple[Interval, Section]]:
    """``F-+ = Im- + (Ker-+ & Im+)`` for every interval containing ``t``."""
    out = []
    for a in range(t + 1):
        im_lo, im_hi = im_pair(V, a, t)
        for b in range(t, V.n):
            ker_lo, ker_hi = ker_pair(V, b + 1, t)
            out.append(
                (
                    Interval(a, b),
                    Section(
                        subspace_sum(im_lo, intersect(ker_lo, im_hi)),
                        subspace_sum(im_lo, intersect(ker_hi, im_hi)),
                    ),
                )
            )
    return out


def section_complements(fam) -> list[Subspace]:
    """A complement ``W`` of ``lo`` in ``hi`` for each section."""
    return [complement_in(s.lo, s.hi) for s in _sections(fam)]


def is_direct_sum(spaces: Sequence[Subspace], ambient_dim: int, p: int) -> bool:
    """True iff the ``spaces`` are independent and together span F_p^ambient_dim."""
    rows = [s.rows for s in spaces if s.dim]
    total = sum(s.dim for s in spaces)
    if total != ambient_dim:
        return False
    if total == 0:
        return True
    return rank(np.vstack(rows), p) == ambient_dim
