"""Cuts of ``{0, ..., n-1}`` and the image/kernel subspaces attached to them.

A cut is encoded by an integer ``c`` in ``[0, n]``: the lower part is
``{0, ..., c-1}`` and the upper part ``{c, ..., n-1}``. For a finite order,
the union of the increasing image chain over the lower part is attained at
its largest element ``c - 1``, and the intersection over the upper part at
its smallest element ``c``; the kernel subspaces are realised the same way.
"""

from __future__ import annotations

from .exactla import Subspace
from .persmod import PersistenceModule


def check_cut(V: PersistenceModule, c: int) -> None:
    if not 0 <= c <= V.n:
        raise ValueError(f"cut {c} outside [0, {V.n}]")


def im_pair(V: PersistenceModule, c: int, t: int) -> tuple[Subspace, Subspace]:
    """``(Im-, Im+)`` of cut ``c`` at an index ``t`` in the upper part (``t >= c``).

    ``Im- = Im rho(t, c-1)`` (zero when the lower part is empty) and
    ``Im+ = Im rho(t, c)``.
    """
    check_cut(V, c)
    if not c <= t < V.n:
        raise ValueError(f"im_pair needs c <= t < n, got c={c}, t={t}")
    lo = V.image_of(t, c - 1) if c > 0 else V.zero_space(t)
    hi = V.image_of(t, c)
    return lo, hi


def ker_pair(V: PersistenceModule, c: int, t: int) -> tuple[Subspace, Subspace]:
    """``(Ker-, Ker+)`` of cut ``c`` at an index ``t`` in the lower part (``t < c``).

    ``Ker- = Ker rho(c-1, t)`` (zero when ``c - 1 == t``) and
    ``Ker+ = Ker rho(c, t)``, which is all of ``V_t`` when ``c == n``.
    """
    check_cut(V, c)
    if not 0 <= t < c:
        raise ValueError(f"ker_pair needs 0 <= t < c, got c={c}, t={t}")
    lo = V.kernel_of(c - 1, t)
    hi = V.kernel_of(c, t) if c < V.n else V.space(t)
    return lo, hi
