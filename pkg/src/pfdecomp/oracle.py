"""Independent barcode oracle from ranks of composite maps.

The multiplicity of ``[a, b]`` is the inclusion-exclusion

    r(b, a) - r(b, a-1) - r(b+1, a) + r(b+1, a-1)

where ``r(t, s)`` is the rank of ``V_s -> V_t`` and out-of-range terms are
zero. Composites are multiplied out here from the stored steps rather than
taken from the module's memo, and no subspace machinery is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .barcode import Barcode
from .exactla import identity, matmul, rank
from .persmod import PersistenceModule


class OracleError(RuntimeError):
    pass


def rank_table(V: PersistenceModule) -> list[list[int]]:
    """``r[t][s] = rank rho(t, s)`` for ``s <= t`` (0 elsewhere)."""
    n, p = V.n, V.p
    r = [[0] * n for _ in range(n)]
    for s in range(n):
        m = identity(V.dims[s])
        r[s][s] = V.dims[s]
        for t in range(s + 1, n):
            m = matmul(V.steps[t - 1], m, p)
            r[t][s] = rank(m, p)
    return r


def rank_barcode(V: PersistenceModule) -> Barcode:
    n = V.n
    r = rank_table(V)

    def rk(t, s):
        if s < 0 or t > n - 1:
            return 0
        return r[t][s]

    pairs = []
    for a in range(n):
        for b in range(a, n):
            m = rk(b, a) - rk(b, a - 1) - rk(b + 1, a) + rk(b + 1, a - 1)
            if m < 0:
                raise OracleError(f"negative multiplicity {m} for [{a},{b}]: rank bug")
            pairs.append(((a, b), m))
    return Barcode.from_pairs(V.field, n, pairs, V.labels)


@dataclass
class Comparison:
    equal: bool
    diff: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.equal


def check_equal(x: Barcode, y: Barcode, limit: int = 5) -> Comparison:
    """Exact multiset comparison; ``diff`` names up to ``limit`` discrepancies."""
    if x.n != y.n or x.field != y.field:
        raise ValueError(f"barcodes over different settings: (n={x.n}, p={x.field}) vs (n={y.n}, p={y.field})")
    diff = []
    for I in sorted(set(x.bars) | set(y.bars)):
        mx, my = x.bars.get(I, 0), y.bars.get(I, 0)
        if mx != my:
            diff.append(f"{I}: {mx} vs {my}")
    return Comparison(not diff, diff[:limit])
