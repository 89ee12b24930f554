"""Persistence modules over the finite index set ``0 < 1 < ... < n-1``.

Only the consecutive structure maps ``rho(i+1, i)`` are stored; composites
are formed on demand and memoised, so the functor laws hold by construction.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .barcode import Barcode, Interval
from .exactla import (
    FieldPrime,
    LinAlgError,
    Subspace,
    identity,
    image,
    inverse,
    is_invertible,
    kernel,
    matmul,
    zeros,
)

FORMAT = "pfd-module"
VERSION = 1


class ModuleError(ValueError):
    """A module (or module file) violates the shape rules."""

    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


@dataclass(frozen=True)
class BarSpec:
    a: int
    b: int
    multiplicity: int = 1

    def __post_init__(self):
        if not 0 <= self.a <= self.b:
            raise ValueError(f"bad bar [{self.a},{self.b}]")
        if self.multiplicity < 1:
            raise ValueError(f"bar multiplicity must be >= 1, got {self.multiplicity}")


@dataclass(frozen=True, eq=False)
class PersistenceModule:
    """Spaces ``F_p^dims[t]`` with ``steps[i]`` the matrix of ``rho(i+1, i)``.

    ``steps[i]`` has shape ``dims[i+1] x dims[i]``. ``labels`` are display
    values only.
    """

    field: int
    dims: tuple[int, ...]
    steps: tuple[np.ndarray, ...]
    labels: tuple[float, ...] | None = None
    _memo: dict = field(default_factory=dict, init=False, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "field", FieldPrime(self.field))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        steps = []
        for s in self.steps:
            s = np.array(s, dtype=np.int64)
            s.flags.writeable = False
            steps.append(s)
        object.__setattr__(self, "steps", tuple(steps))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(float(x) for x in self.labels))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def p(self) -> int:
        return int(self.field)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceModule):
            return NotImplemented
        return (
            self.field == other.field
            and self.dims == other.dims
            and self.labels == other.labels
            and len(self.steps) == len(other.steps)
            and all(np.array_equal(a, b) for a, b in zip(self.steps, other.steps))
        )

    __hash__ = None

    def fresh(self) -> "PersistenceModule":
        """Same module with an empty memo."""
        return PersistenceModule(self.field, self.dims, self.steps, self.labels)

    def _cached(self, key, compute):
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    def rho(self, t: int, s: int) -> np.ndarray:
        """Matrix of the structure map ``V_s -> V_t`` for ``s <= t``."""
        if s > t:
            raise ValueError(f"rho({t}, {s}) needs s <= t")
        if s < 0 or t >= self.n:
            raise IndexError(f"index out of range for n={self.n}: ({t}, {s})")
        if s == t:
            return identity(self.dims[t])
        if t == s + 1:
            return self.steps[s]
        return self._cached(
            ("rho", t, s), lambda: matmul(self.steps[t - 1], self.rho(t - 1, s), self.p)
        )

    def image_of(self, t: int, s: int) -> Subspace:
        """``Im rho(t, s)`` inside ``V_t``."""
        return self._cached(("im", t, s), lambda: image(self.rho(t, s), self.p))

    def kernel_of(self, t: int, s: int) -> Subspace:
        """``Ker rho(t, s)`` inside ``V_s``."""
        return self._cached(("ker", t, s), lambda: kernel(self.rho(t, s), self.p))

    def space(self, t: int) -> Subspace:
        return Subspace.full(self.dims[t], self.p)

    def zero_space(self, t: int) -> Subspace:
        return Subspace.zero(self.dims[t], self.p)

    def precompute(self) -> None:
        """Fill the composite-map memo so concurrent readers never write."""
        for s in range(self.n):
            for t in range(s, self.n):
                self.rho(t, s)


def validate(V: PersistenceModule) -> list[str]:
    """Every shape violation in ``V``; an empty list means the module is fine."""
    problems = []
    if V.n < 1:
        problems.append("module needs at least one index (n >= 1)")
    for t, d in enumerate(V.dims):
        if d < 0:
            problems.append(f"dims[{t}] = {d} is negative")
    if len(V.steps) != max(V.n - 1, 0):
        problems.append(f"expected {max(V.n - 1, 0)} maps, got {len(V.steps)}")
    for i, s in enumerate(V.steps[: max(V.n - 1, 0)]):
        want = (V.dims[i + 1], V.dims[i])
        if s.ndim != 2 or s.shape != want:
            problems.append(f"maps[{i}] has shape {s.shape}, expected {want}")
        elif s.size and (s.min() < 0 or s.max() >= V.p):
            problems.append(f"maps[{i}] has entries outside [0, {V.p})")
    if V.labels is not None:
        if len(V.labels) != V.n:
            problems.append(f"expected {V.n} labels, got {len(V.labels)}")
        for i in range(len(V.labels) - 1):
            if not V.labels[i] < V.labels[i + 1]:
                problems.append(f"labels not strictly increasing at position {i + 1}")
    return problems


def check(V: PersistenceModule) -> PersistenceModule:
    problems = validate(V)
    if problems:
        raise ModuleError(problems)
    return V


def rho(V: PersistenceModule, t: int, s: int) -> np.ndarray:
    return V.rho(t, s)


def zero_module(n: int, p: int) -> PersistenceModule:
    return PersistenceModule(p, (0,) * n, tuple(zeros(0, 0) for _ in range(n - 1)))


def interval_module(n: int, a: int, b: int, p: int) -> PersistenceModule:
    """The module ``k_[a,b]``: F_p on ``[a, b]``, identities inside, zero outside."""
    if not 0 <= a <= b <= n - 1:
        raise ValueError(f"interval [{a},{b}] outside 0..{n - 1}")
    dims = tuple(1 if a <= t <= b else 0 for t in range(n))
    steps = tuple(
        identity(1) if a <= i and i + 1 <= b else zeros(dims[i + 1], dims[i])
        for i in range(n - 1)
    )
    return PersistenceModule(p, dims, steps)


def direct_sum(A: PersistenceModule, B: PersistenceModule) -> PersistenceModule:
    """Block-diagonal sum with ``A``'s block first; labels kept from ``A``."""
    if A.n != B.n or A.field != B.field:
        raise ValueError(f"cannot sum modules over (n={A.n}, p={A.p}) and (n={B.n}, p={B.p})")
    dims = tuple(x + y for x, y in zip(A.dims, B.dims))
    steps = []
    for i in range(A.n - 1):
        s = zeros(dims[i + 1], dims[i])
        s[: A.dims[i + 1], : A.dims[i]] = A.steps[i]
        s[A.dims[i + 1] :, A.dims[i] :] = B.steps[i]
        steps.append(s)
    return PersistenceModule(A.field, dims, tuple(steps), A.labels if A.labels is not None else B.labels)


def base_change(V: PersistenceModule, P: Sequence[np.ndarray]) -> PersistenceModule:
    """Isomorphic module with ``steps'[i] = P[i+1] steps[i] P[i]^-1``."""
    if len(P) != V.n:
        raise ValueError(f"need {V.n} change-of-basis matrices, got {len(P)}")
    p = V.p
    for t, m in enumerate(P):
        if m.shape != (V.dims[t], V.dims[t]) or not is_invertible(m, p):
            raise LinAlgError(f"P[{t}] is not an invertible {V.dims[t]}x{V.dims[t]} matrix")
    inv = [inverse(m, p) for m in P]
    steps = tuple(
        matmul(matmul(P[i + 1], V.steps[i], p), inv[i], p) for i in range(V.n - 1)
    )
    return PersistenceModule(V.field, V.dims, steps, V.labels)


def random_invertible(rng: np.random.Generator, d: int, p: int) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(d, d), dtype=np.int64)
        if is_invertible(m, p):
            return m


def random_interval_sum(
    seed: int, n: int, p: int, bars: Sequence[BarSpec], scramble: bool = True
) -> tuple[PersistenceModule, Barcode]:
    """Planted module ``(+) k_I^m`` disguised by a seeded random base change."""
    V = zero_module(n, p)
    for bar in bars:
        if bar.b > n - 1:
            raise ValueError(f"bar [{bar.a},{bar.b}] outside 0..{n - 1}")
        for _ in range(bar.multiplicity):
            V = direct_sum(V, interval_module(n, bar.a, bar.b, p))
    if scramble:
        rng = np.random.default_rng(seed)
        V = base_change(V, [random_invertible(rng, d, p) for d in V.dims])
    planted = Barcode.from_pairs(p, n, [((b.a, b.b), b.multiplicity) for b in bars])
    return V, planted


def random_module(seed: int, n: int, p: int, max_dim: int) -> PersistenceModule:
    """Uniform dims in ``[0, max_dim]`` and uniform step matrices."""
    rng = np.random.default_rng(seed)
    dims = tuple(int(x) for x in rng.integers(0, max_dim + 1, size=n))
    steps = tuple(
        rng.integers(0, p, size=(dims[i + 1], dims[i]), dtype=np.int64) for i in range(n - 1)
    )
    return PersistenceModule(p, dims, steps)


def random_bars(rng: np.random.Generator, n: int, count: int, max_mult: int = 2) -> list[BarSpec]:
    bars = {}
    for _ in range(count):
        a, b = sorted(int(x) for x in rng.integers(0, n, size=2))
        bars[(a, b)] = bars.get((a, b), 0) + int(rng.integers(1, max_mult + 1))
    return [BarSpec(a, b, m) for (a, b), m in sorted(bars.items())]


# ---------------------------------------------------------------------------
# JSON


def to_dict(V: PersistenceModule) -> dict:
    out = {"format": FORMAT, "version": VERSION, "field": V.p}
    if V.labels is not None:
        out["labels"] = list(V.labels)
    out["dims"] = list(V.dims)
    out["maps"] = [s.tolist() for s in V.steps]
    return out


def dumps(V: PersistenceModule) -> str:
    return json.dumps(to_dict(V), separators=(",", ":"))


def from_dict(doc) -> PersistenceModule:
    """Parse and validate a ``pfd-module`` document.

    All problems found are reported together with their JSON position.
    """
    if not isinstance(doc, dict):
        raise ModuleError(["top level must be a JSON object"])
    problems = []
    if doc.get("format") != FORMAT:
        problems.append(f"format: expected {FORMAT!r}, got {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        problems.append(f"version: expected {VERSION}, got {doc.get('version')!r}")
    p = doc.get("field")
    try:
        p = FieldPrime(p)
    except (LinAlgError, TypeError, ValueError) as exc:
        raise ModuleError(problems + [f"field: {exc}"]) from None
    dims = doc.get("dims")
    if not isinstance(dims, list) or not dims or not all(_is_nat(d) for d in dims):
        raise ModuleError(problems + ["dims: expected a non-empty list of non-negative integers"])
    n = len(dims)
    maps = doc.get("maps")
    if not isinstance(maps, list):
        raise ModuleError(problems + ["maps: expected a list of matrices"])
    if len(maps) != n - 1:
        problems.append(f"maps: expected {n - 1} matrices for {n} indices, got {len(maps)}")
    steps = []
    for i, m in enumerate(maps[: n - 1]):
        rows, cols = dims[i + 1], dims[i]
        where = f"maps[{i}]"
        if not isinstance(m, list) or len(m) != rows:
            problems.append(f"{where}: expected {rows} rows (dims[{i + 1}])")
            continue
        bad = False
        for r, row in enumerate(m):
            if not isinstance(row, list) or len(row) != cols:
                problems.append(f"{where}[{r}]: expected {cols} entries (dims[{i}])")
                bad = True
                continue
            for c, x in enumerate(row):
                if not _is_nat(x) or x >= p:
                    problems.append(f"{where}[{r}][{c}]: entry {x!r} not in [0, {p})")
                    bad = True
        if not bad:
            steps.append(np.array(m, dtype=np.int64).reshape(rows, cols))
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in labels
        ):
            problems.append(f"labels: expected {n} numbers")
        else:
            for i in range(n - 1):
                if not labels[i] < labels[i + 1]:
                    problems.append(f"labels[{i + 1}]: not strictly increasing")
    if problems:
        raise ModuleError(problems)
    return PersistenceModule(p, tuple(dims), tuple(steps), labels)


def loads(text: str) -> PersistenceModule:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModuleError([f"invalid JSON: {exc}"]) from None
    return from_dict(doc)


def _is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0
