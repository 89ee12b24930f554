"""Persistence modules from filtered simplicial complexes.

Text format: one simplex per line, ``<value> <v0> <v1> ... <vk>``; blank
lines and lines starting with ``#`` are ignored. The index set of the module
is the sorted list of distinct values, carried along as labels.

Homology at each threshold is represented inside the cycle space: the
canonical complement of the boundaries among the cycles gives one
representative cycle per basis class, and induced maps come from solving
``rep = R' x + B' y`` in the larger complex.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .exactla import (
    FieldPrime,
    Subspace,
    complement_in,
    image,
    kernel,
    solve,
    zeros,
)
from .persmod import PersistenceModule

Simplex = tuple[int, ...]


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class Filtration:
    """Simplices sorted by ``(value, dimension, vertices)``."""

    simplices: tuple[tuple[float, Simplex], ...]

    def __post_init__(self):
        ordered = tuple(sorted(self.simplices, key=lambda s: (s[0], len(s[1]), s[1])))
        object.__setattr__(self, "simplices", ordered)
        _check_faces(ordered)

    @property
    def values(self) -> list[float]:
        return sorted({v for v, _ in self.simplices})

    @property
    def max_dim(self) -> int:
        return max((len(s) - 1 for _, s in self.simplices), default=-1)


def _check_faces(simplices) -> None:
    value = {}
    for v, s in simplices:
        if s in value:
            raise FiltrationError(f"duplicate simplex {list(s)}")
        value[s] = v
    for v, s in simplices:
        if len(s) < 2:
            continue
        # codimension-one faces suffice: the check then holds for all faces by induction
        for face in itertools.combinations(s, len(s) - 1):
            if face not in value:
                raise FiltrationError(f"face {list(face)} of simplex {list(s)} is missing")
            if value[face] > v:
                raise FiltrationError(
                    f"face {list(face)} enters at {value[face]}, after simplex {list(s)} at {v}"
                )


def parse_filtration(text: str) -> Filtration:
    simplices = []
    seen = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            value = float(fields[0])
            verts = [int(x) for x in fields[1:]]
        except ValueError:
            raise FiltrationError(f"line {lineno}: expected '<value> <v0> ... <vk>', got {line!r}") from None
        if not math.isfinite(value):
            raise FiltrationError(f"line {lineno}: value must be finite")
        if not verts:
            raise FiltrationError(f"line {lineno}: simplex has no vertices")
        if any(x < 0 for x in verts):
            raise FiltrationError(f"line {lineno}: vertex ids must be non-negative")
        if len(set(verts)) != len(verts):
            raise FiltrationError(f"line {lineno}: repeated vertex in {verts}")
        s = tuple(sorted(verts))
        if s in seen:
            raise FiltrationError(f"line {lineno}: duplicate simplex {list(s)} (first on line {seen[s]})")
        seen[s] = lineno
        simplices.append((value, s))
    return Filtration(tuple(simplices))


@dataclass
class Snapshot:
    """The subcomplex of simplices with value at most ``threshold``."""

    threshold: float
    p: int
    simplices: dict[int, list[Simplex]] = field(default_factory=dict)

    def count(self, k: int) -> int:
        return len(self.simplices.get(k, []))


def snapshot(filt: Filtration, threshold: float, p: int) -> Snapshot:
    snap = Snapshot(threshold, p)
    for v, s in filt.simplices:
        if v <= threshold:
            snap.simplices.setdefault(len(s) - 1, []).append(s)
    return snap


def boundary_matrix(snap: Snapshot, k: int) -> np.ndarray:
    """Matrix of the boundary map from ``k``-chains to ``(k-1)``-chains.

    Removing the ``i``-th vertex contributes sign ``(-1)^i``, reduced mod p.
    """
    if k < 1:
        raise ValueError("boundary_matrix needs k >= 1")
    rows = snap.simplices.get(k - 1, [])
    cols = snap.simplices.get(k, [])
    where = {s: i for i, s in enumerate(rows)}
    d = zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            d[where[face], j] = (-1) ** i % snap.p
    return d


def cycles(snap: Snapshot, k: int) -> Subspace:
    if k == 0:
        return Subspace.full(snap.count(0), snap.p)
    return kernel(boundary_matrix(snap, k), snap.p)


def boundaries(snap: Snapshot, k: int) -> Subspace:
    return image(boundary_matrix(snap, k + 1), snap.p)


def homology_basis(snap: Snapshot, k: int) -> tuple[np.ndarray, Subspace]:
    """Representative cycles (as columns) and the boundary subspace."""
    B = boundaries(snap, k)
    return complement_in(B, cycles(snap, k)).basis, B


def induced_map(src: Snapshot, dst: Snapshot, k: int) -> np.ndarray:
    """Matrix of ``H_k(src) -> H_k(dst)`` in the representative bases.

    ``src`` must be a subcomplex of ``dst`` built from the same filtration, so
    its ``k``-simplices are a prefix of those of ``dst``.
    """
    R_src, _ = homology_basis(src, k)
    R_dst, B_dst = homology_basis(dst, k)
    padded = zeros(dst.count(k), R_src.shape[1])
    padded[: R_src.shape[0]] = R_src
    system = np.hstack([R_dst, B_dst.basis])
    x = solve(system, padded, dst.p)
    return x[: R_dst.shape[1]]


def module_from_filtration(filt: Filtration, k: int, p: int) -> PersistenceModule:
    """Degree-``k`` persistent homology over F_p, indexed by the critical values."""
    p = FieldPrime(p)
    if k < 0:
        raise ValueError("homology degree must be non-negative")
    values = filt.values
    if not values:
        raise FiltrationError("empty filtration")
    snaps = [snapshot(filt, v, p) for v in values]
    dims = tuple(homology_basis(s, k)[0].shape[1] for s in snaps)
    steps = tuple(induced_map(snaps[i], snaps[i + 1], k) for i in range(len(snaps) - 1))
    return PersistenceModule(p, dims, steps, tuple(values))


def betti_numbers(snap: Snapshot) -> list[int]:
    top = max(snap.simplices, default=-1)
    return [homology_basis(snap, k)[0].shape[1] for k in range(top + 1)]
