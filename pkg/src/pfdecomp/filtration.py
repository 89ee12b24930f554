"""Interval subspaces ``V-_{I,t} <= V+_{I,t}`` and the barcode they produce.

For an interval ``I = [a, b]`` with lower cut ``a`` and upper cut ``b + 1``::

    V+ = Im+ & Ker+
    V- = (Im- & Ker+) + (Im+ & Ker-)

The quotient ``V+/V-`` has the same dimension at every ``t`` in ``I`` (the
structure maps induce isomorphisms), and that dimension is the multiplicity of
``k_I`` in the module. Over a finite index set the limit over ``I`` is
therefore evaluated at ``t = a``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

from .barcode import Barcode, Interval
from .cuts import im_pair, ker_pair
from .exactla import Subspace, intersect, subspace_sum
from .persmod import PersistenceModule


def as_interval(I) -> Interval:
    return I if isinstance(I, Interval) else Interval(*I)


def v_pair(V: PersistenceModule, I, t: int) -> tuple[Subspace, Subspace]:
    """``(V-_{I,t}, V+_{I,t})`` for ``t`` in ``I``."""
    I = as_interval(I)
    if t not in I or I.b >= V.n:
        raise ValueError(f"index {t} not in interval {I} (n={V.n})")
    im_lo, im_hi = im_pair(V, I.lower, t)
    ker_lo, ker_hi = ker_pair(V, I.upper, t)
    hi = intersect(im_hi, ker_hi)
    lo = subspace_sum(intersect(im_lo, ker_hi), intersect(im_hi, ker_lo))
    return lo, hi


def multiplicity(V: PersistenceModule, I) -> int:
    I = as_interval(I)
    lo, hi = v_pair(V, I, I.a)
    return hi.dim - lo.dim


def _row(V: PersistenceModule, a: int) -> list[tuple[tuple[int, int], int]]:
    return [((a, b), multiplicity(V, Interval(a, b))) for b in range(a, V.n)]


def barcode(V: PersistenceModule, parallel: bool = False, workers: int | None = None) -> Barcode:
    """Every interval with positive multiplicity.

    With ``parallel=True`` the rows ``a = 0..n-1`` are split over threads; the
    composite-map memo is filled first so workers only read shared state.
    """
    if parallel:
        V.precompute()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda a: _row(V, a), range(V.n)))
    else:
        rows = [_row(V, a) for a in range(V.n)]
    pairs = [entry for row in rows for entry in row]
    return Barcode.from_pairs(V.field, V.n, pairs, V.labels)
