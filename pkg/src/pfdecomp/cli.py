"""Command-line interface: ``pfd {decompose,oracle,verify,gen,homology}``.

Exit codes: 0 success, 1 bad input or flags, 2 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import persmod
from .barcode import Barcode, all_intervals
from .decomp import Certificate, CertificateError, certificate, verify_decomposition
from .exactla import LinAlgError, Subspace, matmul
from .filtration import barcode, v_pair
from .homology import FiltrationError, module_from_filtration, parse_filtration
from .oracle import check_equal, rank_barcode


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_module(path: str) -> persmod.PersistenceModule:
    try:
        return persmod.loads(_read(path))
    except persmod.ModuleError as exc:
        raise UsageError(f"{path}: " + "; ".join(exc.problems)) from None


def _format_barcode(bars: Barcode, fmt: str) -> str:
    return bars.to_tsv() if fmt == "tsv" else bars.to_json() + "\n"


def cmd_decompose(args) -> int:
    V = _load_module(args.module)
    bars = barcode(V, parallel=args.parallel)
    if args.certificate:
        try:
            cert = certificate(V, bars)
        except CertificateError as exc:
            print(f"internal error: {exc}", file=sys.stderr)
            return 2
        Path(args.certificate).write_text(cert.to_json() + "\n", encoding="utf-8")
        report = verify_decomposition(V, cert)
        if not report:
            print("\n".join(report.lines()), file=sys.stderr)
            return 2
    _write(_format_barcode(bars, args.format), args.out)
    return 0


def cmd_oracle(args) -> int:
    V = _load_module(args.module)
    _write(_format_barcode(rank_barcode(V), args.format), args.out)
    return 0


def _transport_check(V: persmod.PersistenceModule) -> str | None:
    p = V.p
    for I in all_intervals(V.n):
        pairs = {t: v_pair(V, I, t) for t in I}
        quotient = {t: hi.dim - lo.dim for t, (lo, hi) in pairs.items()}
        if len(set(quotient.values())) > 1:
            return f"{I}: quotient dimensions {quotient}"
        for s in I:
            t = s + 1
            if t not in I:
                continue
            for k in (0, 1):
                moved = Subspace.span(matmul(V.rho(t, s), pairs[s][k].basis, p), p)
                if moved != pairs[t][k]:
                    return f"{I}: transport {s}->{t} of V{'-+'[k]} is not onto"
    return None


def cmd_verify(args) -> int:
    V = _load_module(args.module)
    results: list[tuple[str, bool, str]] = []

    problem = _transport_check(V)
    results.append(("quotient dimension constant along intervals, transport onto", problem is None, problem or ""))

    bars = barcode(V)
    cmp = check_equal(bars, rank_barcode(V))
    results.append(("barcode equals rank oracle", cmp.equal, ", ".join(cmp.diff)))

    counts = bars.counts()
    results.append(("bar counts equal dimensions", counts == list(V.dims), f"{counts} vs {list(V.dims)}"))

    if args.certificate:
        try:
            cert = Certificate.from_json(_read(args.certificate), V.field, V.n)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"{args.certificate}: malformed certificate: {exc}") from None
    else:
        try:
            cert = certificate(V, bars)
        except CertificateError as exc:
            cert = None
            results.append(("certificate construction", False, str(exc)))
    if cert is not None:
        report = verify_decomposition(V, cert)
        for name, ok in report.checks.items():
            results.append((name, ok, "" if ok else report.failure or ""))

    for name, ok, why in results:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        print(line + (f"  ({why})" if not ok and why else ""))
    return 0 if all(ok for _, ok, _ in results) else 2


_BAR = re.compile(r"^(\d+)-(\d+)(?::(\d+))?$")


def _parse_bars(text: str, n: int) -> list[persmod.BarSpec]:
    bars = []
    for item in filter(None, (x.strip() for x in text.split(","))):
        m = _BAR.match(item)
        if not m:
            raise UsageError(f"bad bar {item!r}; expected a-b or a-b:m")
        a, b, mult = int(m[1]), int(m[2]), int(m[3] or 1)
        if not (0 <= a <= b <= n - 1) or mult < 1:
            raise UsageError(f"bar {item!r} invalid for n={n}")
        bars.append(persmod.BarSpec(a, b, mult))
    return bars


def cmd_gen(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    try:
        if args.bars is not None:
            bars = _parse_bars(args.bars, args.n)
            V, planted = persmod.random_interval_sum(args.seed, args.n, args.field, bars)
            if args.planted:
                Path(args.planted).write_text(planted.to_json() + "\n", encoding="utf-8")
        else:
            if args.max_dim < 0:
                raise UsageError("--max-dim must be non-negative")
            V = persmod.random_module(args.seed, args.n, args.field, args.max_dim)
    except LinAlgError as exc:
        raise UsageError(str(exc)) from None
    _write(persmod.dumps(V) + "\n", args.out)
    return 0


def cmd_homology(args) -> int:
    try:
        filt = parse_filtration(_read(args.filtration))
        V = module_from_filtration(filt, args.dim, args.field)
    except (FiltrationError, LinAlgError) as exc:
        raise UsageError(f"{args.filtration}: {exc}") from None
    _write(persmod.dumps(V) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "tsv"], default="json", help="barcode output format")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--parallel", action="store_true", help="compute multiplicities on a thread pool")

    parser = argparse.ArgumentParser(prog="pfd", description="Interval decomposition of persistence modules over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="barcode via the interval filtration")
    p.add_argument("module")
    p.add_argument("--certificate", metavar="PATH", help="also write and verify a change-of-basis certificate")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", parents=[common], help="barcode via the rank formula")
    p.add_argument("module")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="run the invariant checks on a module")
    p.add_argument("module")
    p.add_argument("--certificate", metavar="PATH", help="audit this certificate instead of a fresh one")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", parents=[common], help="generate a random or planted module")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--bars", help='planted bars, e.g. "0-1:1,1-2:1"')
    p.add_argument("--planted", metavar="PATH", help="where to write the planted barcode (--bars mode)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("homology", parents=[common], help="module of H_k of a filtered complex")
    p.add_argument("filtration")
    p.add_argument("--dim", type=int, default=0)
    p.add_argument("--field", type=int, default=2)
    p.set_defaults(func=cmd_homology)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
