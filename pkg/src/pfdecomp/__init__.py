"""Interval decomposition of pointwise finite-dimensional persistence modules.

Modules live on a finite index set ``0 < 1 < ... < n-1`` with coefficients in
a prime field F_p. :func:`barcode` computes bar multiplicities from image and
kernel filtrations, :func:`certificate` builds the explicit change of basis,
and :func:`rank_barcode` is an independent rank-formula oracle.
"""

from .barcode import Barcode, Interval
from .decomp import Certificate, certificate, verify_decomposition, w0_basis, w_spaces
from .exactla import FieldPrime, Subspace
from .filtration import barcode, multiplicity, v_pair
from .oracle import check_equal, rank_barcode
from .persmod import (
    BarSpec,
    PersistenceModule,
    base_change,
    direct_sum,
    interval_module,
    random_interval_sum,
    random_module,
)

__all__ = [
    "BarSpec",
    "Barcode",
    "Certificate",
    "FieldPrime",
    "Interval",
    "PersistenceModule",
    "Subspace",
    "barcode",
    "base_change",
    "certificate",
    "check_equal",
    "direct_sum",
    "interval_module",
    "multiplicity",
    "random_interval_sum",
    "random_module",
    "rank_barcode",
    "v_pair",
    "verify_decomposition",
    "w0_basis",
    "w_spaces",
]
