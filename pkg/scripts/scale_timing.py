"""Time barcode, certificate and verification on a dense random module.

    python scripts/scale_timing.py --n 100 --dim 20 --field 2
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from pfdecomp import PersistenceModule, barcode, certificate, verify_decomposition


@dataclass
class ScaleConfig:
    n: int = 100
    dim: int = 20
    field: int = 2
    seed: int = 7


def timed(label, fn):
    start = time.perf_counter()
    out = fn()
    print(f"{label:>12}: {time.perf_counter() - start:6.2f}s")
    return out


def main(cfg: ScaleConfig) -> None:
    rng = np.random.default_rng(cfg.seed)
    steps = tuple(rng.integers(0, cfg.field, size=(cfg.dim, cfg.dim)) for _ in range(cfg.n - 1))
    V = PersistenceModule(cfg.field, (cfg.dim,) * cfg.n, steps)
    bars = timed("barcode", lambda: barcode(V))
    cert = timed("certificate", lambda: certificate(V, bars))
    report = timed("verify", lambda: verify_decomposition(V, cert))
    print(f"{len(bars)} bars over {len(bars.bars)} intervals; verification {'passed' if report else 'FAILED'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--dim", type=int, default=20)
    ap.add_argument("--field", type=int, default=2)
    ap.add_argument("--seed", type=int, default=7)
    a = ap.parse_args()
    main(ScaleConfig(a.n, a.dim, a.field, a.seed))
