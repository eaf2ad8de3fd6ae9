"""``valext`` command line: ``extend`` for one polynomial, ``corpus`` for a JSONL batch."""
from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, TextIO

from ..basefield import make_valuation
from ..errors import InvariantError, NonTerminationError, ValextError
from ..extend import Options, enumerate_extensions
from .parse import parse_poly
from .render import render

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_NONTERMINATION = 3

FORMATS = ("table", "json", "dot")


@dataclass
class RunConfig:
    base: str
    p: int
    poly: str
    format: str = "table"
    seed: int = 0
    max_augmentations: Optional[int] = None
    check_invariants: bool = True


@dataclass
class CorpusCase:
    config: RunConfig
    expect: list = field(default_factory=list)


def _solve(config: RunConfig):
    v = make_valuation(config.base, config.p)
    f = parse_poly(config.poly, v)
    opts = Options(seed=config.seed, max_augmentations=config.max_augmentations,
                   check_invariants=config.check_invariants)
    return enumerate_extensions(f, v, opts)


def run(config: RunConfig) -> tuple[int, str, str]:
    """Return ``(exit_code, stdout_text, stderr_text)``."""
    try:
        report = _solve(config)
    except NonTerminationError as exc:
        return EXIT_NONTERMINATION, "", f"error: {exc}\n"
    except InvariantError as exc:
        return EXIT_INVARIANT, "", f"invariant failure: {exc}\n"
    except (ValextError, ValueError, ZeroDivisionError) as exc:
        return EXIT_INPUT, "", f"error: {exc}\n"
    return EXIT_OK, render(report, config.format), ""


def _efd_key(items) -> Counter:
    return Counter((int(x["e"]), int(x["f"]), int(x["d"])) for x in items)


def parse_case(line: str) -> CorpusCase:
    rec = json.loads(line)
    if not isinstance(rec, dict):
        raise ValueError("record is not a JSON object")
    missing = [k for k in ("base", "p", "poly", "expect") if k not in rec]
    if missing:
        raise ValueError(f"missing field(s): {', '.join(missing)}")
    if not isinstance(rec["expect"], list):
        raise ValueError("'expect' must be a list")
    for item in rec["expect"]:
        if not isinstance(item, dict) or not all(k in item for k in ("e", "f", "d")):
            raise ValueError("each expectation needs e, f and d")
    config = RunConfig(base=rec["base"], p=int(rec["p"]), poly=str(rec["poly"]),
                       seed=int(rec.get("seed", 0)),
                       max_augmentations=rec.get("max_aug"),
                       check_invariants=bool(rec.get("check_invariants", True)))
    return CorpusCase(config, rec["expect"])


def _check_case(case: CorpusCase) -> tuple[bool, str]:
    cfg = case.config
    try:
        report = _solve(cfg)
    except ValextError as exc:
        return False, f"{type(exc).__name__}: {exc}"
    except (ValueError, ZeroDivisionError) as exc:
        return False, f"error: {exc}"
    got = Counter((lf.e, lf.f, lf.d) for lf in report.leaves)
    want = _efd_key(case.expect)
    if got == want:
        return True, ""
    fmt = lambda c: sorted(c.elements())  # noqa: E731
    return False, f"expected {fmt(want)}, got {fmt(got)}"


def run_corpus(path: str, out: Optional[TextIO] = None, jobs: int = 1) -> int:
    """Run every case of a JSONL corpus; print one line per case and a summary."""
    out = out if out is not None else sys.stdout
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=out)
        return EXIT_INPUT
    entries = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            entries.append((lineno, parse_case(line), None))
        except (ValueError, TypeError) as exc:
            entries.append((lineno, None, f"malformed record: {exc}"))

    def work(entry):
        lineno, case, err = entry
        if err is not None:
            return lineno, None, False, err
        ok, why = _check_case(case)
        return lineno, case, ok, why

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(work, entries))
    else:
        results = [work(e) for e in entries]
    passed = 0
    for lineno, case, ok, why in results:
        desc = f"{case.config.base} p={case.config.p} {case.config.poly}" if case else ""
        if ok:
            passed += 1
            print(f"PASS line {lineno}: {desc}", file=out)
        else:
            print(f"FAIL line {lineno}: {desc} {why}".replace("  ", " "), file=out)
    print(f"{passed}/{len(results)} passed", file=out)
    return EXIT_OK if passed == len(results) else EXIT_INPUT


def _seed_default() -> int:
    env = os.environ.get("VALEXT_SEED")
    if env is None or not env.strip():
        return 0
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"error: VALEXT_SEED must be an integer, got {env!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="valext",
        description="Enumerate the extensions of ord_p (on Q) or ord_t (on F_p(t)) "
                    "to K[x]/(f).")
    sub = ap.add_subparsers(dest="command", required=True)
    ext = sub.add_parser("extend", help="extensions along one polynomial")
    ext.add_argument("--base", choices=("q", "fpt"), default="q")
    ext.add_argument("--p", type=int, required=True, help="the prime p")
    ext.add_argument("--poly", required=True, help='polynomial in x, e.g. "x^2 - 2"')
    ext.add_argument("--format", choices=FORMATS, default="table")
    ext.add_argument("--seed", type=int, default=None,
                     help="factorization seed (default: $VALEXT_SEED or 0)")
    ext.add_argument("--max-aug", type=int, default=None,
                     help="augmentation budget per branch (default 16*deg f)")
    ext.add_argument("--no-invariants", action="store_true",
                     help="skip the tree invariant checks")
    cor = sub.add_parser("corpus", help="run a JSONL regression corpus")
    cor.add_argument("path")
    cor.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        return run_corpus(args.path, sys.stdout, args.jobs)
    seed = args.seed if args.seed is not None else _seed_default()
    config = RunConfig(base=args.base, p=args.p, poly=args.poly, format=args.format,
                       seed=seed, max_augmentations=args.max_aug,
                       check_invariants=not args.no_invariants)
    code, out, err = run(config)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
