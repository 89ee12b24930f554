"""Intervals of ``{0, ..., n-1}`` and barcodes (multisets of intervals)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

FORMAT = "pfd-barcode"
VERSION = 1


@dataclass(frozen=True, order=True)
class Interval:
    """The index range ``[a, b]``; its lower cut is ``a`` and its upper cut ``b + 1``."""

    a: int
    b: int

    def __post_init__(self):
        if not 0 <= self.a <= self.b:
            raise ValueError(f"invalid interval [{self.a},{self.b}]")

    @property
    def lower(self) -> int:
        return self.a

    @property
    def upper(self) -> int:
        return self.b + 1

    def __contains__(self, t: int) -> bool:
        return self.a <= t <= self.b

    def __iter__(self):
        return iter(range(self.a, self.b + 1))

    def __len__(self) -> int:
        return self.b - self.a + 1

    def __str__(self) -> str:
        return f"[{self.a},{self.b}]"


def all_intervals(n: int) -> list[Interval]:
    return [Interval(a, b) for a in range(n) for b in range(a, n)]


@dataclass(eq=False)
class Barcode:
    field: int
    n: int
    bars: dict[Interval, int] = field(default_factory=dict)
    labels: tuple[float, ...] | None = None

    def __post_init__(self):
        for I, m in self.bars.items():
            if I.b >= self.n:
                raise ValueError(f"bar {I} outside 0..{self.n - 1}")
            if m < 1:
                raise ValueError(f"bar {I} has multiplicity {m}")
        self.bars = dict(sorted(self.bars.items()))

    @classmethod
    def from_pairs(cls, field: int, n: int, pairs: Iterable, labels=None) -> "Barcode":
        bars: dict[Interval, int] = {}
        for (a, b), m in pairs:
            if m:
                I = Interval(a, b)
                bars[I] = bars.get(I, 0) + m
        return cls(field, n, bars, labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.field == other.field and self.n == other.n and self.bars == other.bars

    def __len__(self) -> int:
        return sum(self.bars.values())

    def counts(self) -> list[int]:
        """Number of bars (with multiplicity) alive at each index."""
        out = [0] * self.n
        for I, m in self.bars.items():
            for t in I:
                out[t] += m
        return out

    def to_dict(self) -> dict:
        bars = []
        for I, m in self.bars.items():
            entry = {"a": I.a, "b": I.b}
            if self.labels is not None:
                entry["birth"] = self.labels[I.a]
                entry["death"] = self.labels[I.b]
            entry["multiplicity"] = m
            bars.append(entry)
        return {"format": FORMAT, "version": VERSION, "field": int(self.field), "n": self.n, "bars": bars}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_tsv(self) -> str:
        return "".join(f"{I.a}\t{I.b}\t{m}\n" for I, m in self.bars.items())

    @classmethod
    def from_dict(cls, doc: dict) -> "Barcode":
        if doc.get("format") != FORMAT:
            raise ValueError(f"format: expected {FORMAT!r}, got {doc.get('format')!r}")
        pairs = [((e["a"], e["b"]), e["multiplicity"]) for e in doc["bars"]]
        return cls.from_pairs(doc["field"], doc["n"], pairs)

    @classmethod
    def from_json(cls, text: str) -> "Barcode":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        body = ", ".join(f"{I}:{m}" for I, m in self.bars.items())
        return "{" + body + "}"
