"""Sweep random modules and compare the filtration barcode with the rank oracle.

    python scripts/fuzz_oracle.py --count 5000 --max-n 12 --max-dim 6
"""

import argparse
import time
from dataclasses import dataclass

from pfdecomp import barcode, certificate, check_equal, rank_barcode, random_module, verify_decomposition


@dataclass
class SweepConfig:
    count: int = 1000
    max_n: int = 10
    max_dim: int = 6
    primes: tuple[int, ...] = (2, 3, 5)
    seed: int = 0
    certify: bool = False


def run(cfg: SweepConfig) -> int:
    failures = 0
    start = time.perf_counter()
    for i in range(cfg.count):
        seed = cfg.seed + i
        V = random_module(seed, 1 + i % cfg.max_n, cfg.primes[i % len(cfg.primes)], cfg.max_dim)
        cmp = check_equal(barcode(V), rank_barcode(V))
        if not cmp:
            failures += 1
            print(f"seed {seed}: {cmp.diff}")
        if cfg.certify and not verify_decomposition(V, certificate(V)):
            failures += 1
            print(f"seed {seed}: certificate rejected")
    print(f"{cfg.count} modules, {failures} failures, {time.perf_counter() - start:.1f}s")
    return failures


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--max-dim", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--certify", action="store_true")
    a = ap.parse_args()
    raise SystemExit(run(SweepConfig(a.count, a.max_n, a.max_dim, seed=a.seed, certify=a.certify)) > 0)
