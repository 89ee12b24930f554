"""Explicit interval decomposition with a change-of-basis certificate.

For each interval ``I = [a, b]`` a complement ``W0`` of ``V-_{I,a}`` in
``V+_{I,a}`` is chosen deterministically; pushing its canonical basis forward
along the structure maps gives, for every basis vector, a copy of ``k_I``
inside the module. Stacking those vectors at each index yields invertible
matrices ``P_t`` that conjugate every step map into the 0/1 block pattern of
``(+)_I k_I^{m_I}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .barcode import Barcode, Interval
from .cuts import im_pair, ker_pair
from .exactla import (
    LinAlgError,
    Subspace,
    complement_in,
    intersect,
    inverse,
    is_invertible,
    matmul,
    subspace_sum,
    zeros,
)
from .filtration import as_interval, barcode, v_pair
from .persmod import PersistenceModule

FORMAT = "pfd-certificate"
VERSION = 1

Label = tuple[int, int, int]  # (a, b, copy) with copy counted from 1


class CertificateError(RuntimeError):
    """A constructed change of basis is singular; indicates a bug."""


@dataclass(eq=False)
class Certificate:
    bars: Barcode
    P: list[np.ndarray]
    labels: list[list[Label]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Certificate):
            return NotImplemented
        return (
            self.bars == other.bars
            and self.labels == other.labels
            and len(self.P) == len(other.P)
            and all(np.array_equal(x, y) for x, y in zip(self.P, other.P))
        )

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "version": VERSION,
            "bars": [{"a": I.a, "b": I.b, "multiplicity": m} for I, m in self.bars.bars.items()],
            "P": [
                {"t": t, "matrix": m.tolist(), "labels": [list(x) for x in lab]}
                for t, (m, lab) in enumerate(zip(self.P, self.labels))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: dict, field: int, n: int) -> "Certificate":
        """Rebuild from JSON; ``field`` and ``n`` come from the module it certifies."""
        if doc.get("format") != FORMAT:
            raise ValueError(f"format: expected {FORMAT!r}, got {doc.get('format')!r}")
        bars = Barcode.from_pairs(field, n, [((e["a"], e["b"]), e["multiplicity"]) for e in doc["bars"]])
        entries = sorted(doc["P"], key=lambda e: e["t"])
        if [e["t"] for e in entries] != list(range(n)):
            raise ValueError(f"P: expected one entry for each t in 0..{n - 1}")
        P, labels = [], []
        for e in entries:
            lab = [tuple(int(v) for v in x) for x in e["labels"]]
            d = len(lab)
            P.append(np.array(e["matrix"], dtype=np.int64).reshape(-1, d) if d else np.zeros((len(e["matrix"]), 0), dtype=np.int64))
            labels.append(lab)
        return cls(bars, P, labels)

    @classmethod
    def from_json(cls, text: str, field: int, n: int) -> "Certificate":
        return cls.from_dict(json.loads(text), field, n)


def w0_basis(V: PersistenceModule, I) -> Subspace:
    """Complement of ``V-`` in ``V+`` at ``a = min I``; its dimension is ``mult(I)``."""
    I = as_interval(I)
    lo, hi = v_pair(V, I, I.a)
    return complement_in(lo, hi)


def _transport(V: PersistenceModule, I: Interval, w0: Subspace) -> dict[int, np.ndarray]:
    """Columns ``rho(t, a) b`` for each basis column ``b`` of ``w0`` and ``t`` in ``I``."""
    B = w0.basis
    return {t: matmul(V.rho(t, I.a), B, V.p) for t in I}


def w_spaces(V: PersistenceModule, I) -> dict[int, Subspace]:
    """The submodule ``W_I``: transported complement inside ``I``, zero outside."""
    I = as_interval(I)
    moved = _transport(V, I, w0_basis(V, I))
    return {
        t: Subspace.span(moved[t], V.p) if t in I else V.zero_space(t)
        for t in range(V.n)
    }


def certificate(V: PersistenceModule, bars: Barcode | None = None, parallel: bool = False) -> Certificate:
    """Change-of-basis matrices exhibiting ``V = (+)_I k_I^{m_I}``.

    Columns of ``P_t`` are ordered by interval ``(a, b)`` and then by position
    in the canonical basis of ``W0_I``.
    """
    if bars is None:
        bars = barcode(V, parallel=parallel)
    cols: list[list[np.ndarray]] = [[] for _ in range(V.n)]
    labels: list[list[Label]] = [[] for _ in range(V.n)]
    for I, m in bars.bars.items():
        w0 = w0_basis(V, I)
        if w0.dim != m:
            raise CertificateError(f"complement for {I} has dimension {w0.dim}, barcode says {m}")
        for t, block in _transport(V, I, w0).items():
            cols[t].append(block)
            labels[t].extend((I.a, I.b, j + 1) for j in range(m))
    P = []
    for t in range(V.n):
        d = V.dims[t]
        Pt = np.hstack(cols[t]) if cols[t] else zeros(d, 0)
        if Pt.shape != (d, d) or not is_invertible(Pt, V.p):
            raise CertificateError(f"change of basis at t={t} is singular (shape {Pt.shape})")
        P.append(Pt)
    return Certificate(bars, P, labels)


@dataclass
class VerificationReport:
    passed: bool
    checks: dict[str, bool] = field(default_factory=dict)
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.passed

    def lines(self) -> list[str]:
        out = [f"{'PASS' if ok else 'FAIL'} {name}" for name, ok in self.checks.items()]
        if self.failure:
            out.append(f"first counterexample: {self.failure}")
        return out


def verify_decomposition(V: PersistenceModule, cert: Certificate) -> VerificationReport:
    """Audit ``cert`` against ``V`` from scratch.

    Checks, in order: (1) every ``P_t`` is square, invertible and carries
    exactly the labels the bars require; (2) ``P_{t+1}^-1 rho P_t`` is the
    0/1 pattern of the interval sum; (3) ``V+ = W + V-`` with ``W & V- = 0``
    for every interval ``I`` and every ``t`` in ``I``, where ``W_{I,t}`` is
    spanned by the columns of ``P_t`` labelled ``I``.
    """
    V = V.fresh()
    report = VerificationReport(True)

    def fail(name: str, why: str) -> VerificationReport:
        report.checks[name] = False
        report.passed = False
        report.failure = report.failure or why
        return report

    p, n = V.p, V.n
    name = "invertible change of basis with correct labels"
    if len(cert.P) != n or len(cert.labels) != n:
        return fail(name, f"certificate covers {len(cert.P)} indices, module has {n}")
    for I in cert.bars.bars:
        if I.b >= n:
            return fail(name, f"bar {I} outside 0..{n - 1}")
    for t in range(n):
        want = [(I.a, I.b, j) for I, m in cert.bars.bars.items() if t in I for j in range(1, m + 1)]
        if sorted(cert.labels[t]) != want or len(set(cert.labels[t])) != len(want):
            return fail(name, f"t={t}: labels {cert.labels[t]} do not match bars {want}")
        Pt = cert.P[t]
        if Pt.shape != (V.dims[t], V.dims[t]):
            return fail(name, f"t={t}: P has shape {Pt.shape}, expected {(V.dims[t],) * 2}")
        if not is_invertible(Pt, p):
            return fail(name, f"t={t}: P is singular")
    report.checks[name] = True

    name = "conjugated steps equal the interval-sum pattern"
    inv = [inverse(Pt, p) for Pt in cert.P]
    for t in range(n - 1):
        conj = matmul(matmul(inv[t + 1], V.steps[t], p), cert.P[t], p)
        rows, cols = cert.labels[t + 1], cert.labels[t]
        pattern = np.array([[int(r == c) for c in cols] for r in rows], dtype=np.int64).reshape(len(rows), len(cols))
        if not np.array_equal(conj, pattern):
            i, j = np.argwhere(conj != pattern)[0]
            return fail(name, f"step {t}->{t + 1}: entry ({rows[i]}, {cols[j]}) is {conj[i, j]}, expected {pattern[i, j]}")
    report.checks[name] = True

    name = "V+ = W (+) V- for every interval and index"
    for t in range(n):
        ok, why = _check_splitting_at(V, cert, t)
        if not ok:
            return fail(name, why)
    report.checks[name] = True
    return report


def _check_splitting_at(V: PersistenceModule, cert: Certificate, t: int) -> tuple[bool, str]:
    p, n = V.p, V.n
    groups: dict[tuple[int, int], list[int]] = {}
    for k, (a, b, _) in enumerate(cert.labels[t]):
        groups.setdefault((a, b), []).append(k)
    # intersections Im(c) & Ker(u) are shared between many intervals
    table: dict[tuple[int, int], Subspace] = {}

    def im(c):
        return im_pair(V, c, t)[1] if c >= 0 else V.zero_space(t)

    def ker(u):
        return ker_pair(V, u, t)[1] if u > t else V.zero_space(t)

    def x(c, u):
        key = (c, u)
        if key not in table:
            table[key] = intersect(im(c), ker(u))
        return table[key]

    for a in range(t + 1):
        for b in range(t, n):
            hi = x(a, b + 1)
            lo = subspace_sum(x(a - 1, b + 1), x(a, b))
            idx = groups.get((a, b), [])
            W = Subspace.span(cert.P[t][:, idx], p) if idx else V.zero_space(t)
            if W.dim != len(idx):
                return False, f"I=[{a},{b}], t={t}: W columns are dependent"
            if subspace_sum(W, lo) != hi or W.dim + lo.dim != hi.dim:
                return False, (
                    f"I=[{a},{b}], t={t}: dim V+ = {hi.dim}, dim V- = {lo.dim}, dim W = {W.dim}"
                )
    return True, ""
