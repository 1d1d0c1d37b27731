"""Command-line front end.

Exit codes: 0 all hard assertions passed, 1 assertion failure,
2 usage or parse error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from . import kernels, suites
from .antipower import gamma
from .bench import default_cases, format_table, run_bench
from .classify import classify
from .errors import CapExceeded, ClassificationError, NotStabilized, WordError
from .golden import gamma_bounds_report
from .reports import Report, render, to_csv, write_atomic
from .words import FIBONACCI, THUE_MORSE, MorphicWord, parse_morphism, write_prefix_cache

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
CLI_DEFAULT_CAP = 2**24
SUITES = ("fact14", "lemma8", "thm5", "prop16", "prop17", "thm6", "conj18", "complexity")


@dataclass
class RunConfig:
    morphism_text: str
    seed: str
    cap: int
    fmt: str
    out: Optional[str]
    header: bool = True
    params: dict = field(default_factory=dict)

    def word(self) -> MorphicWord:
        return MorphicWord(parse_morphism(self.morphism_text), self.seed, self.cap)


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive), ``a,b,c`` or a single integer."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _range_arg(text: str) -> list[int]:
    try:
        return parse_range(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range {text!r}; use a..b, a,b,c or an integer") from None


def _morphism_text(value: str) -> str:
    if value.startswith("@"):
        try:
            with open(value[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"cannot read morphism file: {exc}") from None
    return value


def default_cap() -> int:
    env = os.environ.get("ANTIPOWER_CAP")
    return int(env) if env else CLI_DEFAULT_CAP


def _emit(config: RunConfig, text: str) -> None:
    if config.out:
        write_atomic(config.out, text)
    else:
        sys.stdout.write(text)


def _emit_report(config: RunConfig, report: Report, started: float) -> int:
    if config.header:
        report.stamp(started, backend=kernels.BACKEND)
    _emit(config, render(report, config.fmt, config.header))
    return report.exit_code


def cmd_gen(config: RunConfig) -> int:
    length = config.params["len"]
    word = config.word().prefix(length)
    if config.params.get("binary"):
        if not config.out:
            raise WordError("--binary needs --out")
        tmp = config.out + ".part"
        write_prefix_cache(tmp, word)
        os.replace(tmp, config.out)
        return EXIT_OK
    _emit(config, str(word) + ("\n" if length else ""))
    return EXIT_OK


def cmd_classify(config: RunConfig) -> int:
    mu = parse_morphism(config.morphism_text)
    seed = mu.seed_id(config.seed)
    verdict = classify(mu, seed, config.params["len"])
    payload = {"schema_version": 1, "morphism": str(mu), "seed": config.seed,
               **verdict.to_dict(mu.alphabet)}
    if config.fmt == "text":
        text = "\n".join(f"{k}: {json.dumps(v)}" for k, v in payload.items()) + "\n"
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    _emit(config, text)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    p = config.params
    suite = p["suite"]
    started = time.perf_counter()
    indices = p["indices"] if p["indices"] is not None else list(range(501))
    if suite == "fact14":
        report = suites.fact14(p["limit"] or 10**6)
    elif suite == "lemma8":
        report = suites.lemma8(config.word(), p["n"] or list(range(3, 9)), p["len"] or 2**20)
    elif suite == "thm5":
        ks = p["k"] or list(range(2, (p["kmax"] or 50) + 1))
        report = suites.thm5(config.word(), ks, indices, p["len"] or 2**14)
    elif suite == "prop16":
        report = suites.prop16(p["n"] or list(range(4, 13)), p["limit"] or 1000)
    elif suite == "prop17":
        report = suites.prop17(p["n"] or list(range(3, 15)), indices)
    elif suite == "thm6":
        report = suites.thm6(p["kmax"] or 500)
    elif suite == "conj18":
        report = suites.conj18(p["n"] or [6, 9, 12])
    else:
        report = suites.complexity(config.word(), p["n"] or list(range(1, 101)), p["expect"])
    return _emit_report(config, report, started)


GAMMA_COLUMNS = ["index", "k", "gamma", "ratio"]


def cmd_gamma(config: RunConfig) -> int:
    p = config.params
    word = config.word()
    indices = p["indices"] if p["indices"] is not None else [0]
    ks = p["k"] if p["k"] is not None else list(range(2, 11))
    started = time.perf_counter()
    fibonacci = word.morphism == parse_morphism(FIBONACCI) and word.seed == 0
    rows, failures = [], []
    for i in indices:
        if fibonacci and not p["mmax"]:
            rep = gamma_bounds_report(i, ks, source=word)
            rows.extend(rep.rows)
            failures.extend(rep.failures)
            continue
        for k in ks:
            mmax = p["mmax"] or 8 * k + 8
            g = gamma(word, i, k, mmax)
            rows.append({"index": i, "k": k, "gamma": g, "ratio": None if g is None else g / k})
    report = Report("gamma", not failures, {"morphism": str(word.morphism), "mmax": p["mmax"]},
                    {"rows": len(rows)}, rows, failures)
    if config.fmt == "csv":
        _emit(config, to_csv(rows, GAMMA_COLUMNS))
        return report.exit_code
    return _emit_report(config, report, started)


def cmd_bench(config: RunConfig) -> int:
    p = config.params
    ks = p["k"] or [2, 10, 100, 1000]
    mmax = p["mmax"] or 3000
    cases = default_cases(ks, mmax)
    if p["family"]:
        cases = [c for c in cases if c.family == p["family"]]
    strategies = p["strategies"].split(",") if p["strategies"] else None
    report = run_bench(cases, strategies, p["repeat"])
    if config.fmt == "text":
        _emit(config, format_table(report))
        return report.exit_code
    return _emit_report(config, report, time.perf_counter())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="antipowers", description=__doc__.splitlines()[0])
    parser.add_argument("--backend", action="store_true", help="print the active kernel backend and exit")
    sub = parser.add_subparsers(dest="command")

    def common(p, morphism_default, fmt_default):
        p.add_argument("--morphism", type=_morphism_text, default=morphism_default,
                       help="morphism DSL text or @file (default: %(default)s)")
        p.add_argument("--seed", default="0", help="seed letter (display character)")
        p.add_argument("--cap", type=int, default=None, help="prefix cap (env ANTIPOWER_CAP)")
        p.add_argument("--format", dest="fmt", choices=["json", "csv", "text"], default=fmt_default)
        p.add_argument("--out", help="output path (written atomically)")
        p.add_argument("--no-header", dest="header", action="store_false",
                       help="omit the volatile header so reruns are byte-identical")

    g = sub.add_parser("gen", help="emit a prefix of mu^omega(seed)")
    common(g, FIBONACCI, "text")
    g.add_argument("--len", "-L", type=int, required=True)
    g.add_argument("--binary", action="store_true", help="write an MWPF prefix cache to --out")

    c = sub.add_parser("classify", help="uniform recurrence / periodicity verdict")
    common(c, THUE_MORSE, "json")
    c.add_argument("--len", "-L", type=int, default=4096, help="prefix length for the periodicity check")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    common(v, None, "json")
    v.add_argument("--len", "-L", type=int, default=None, help="prefix length")
    v.add_argument("--n", type=_range_arg, default=None)
    v.add_argument("--k", type=_range_arg, default=None)
    v.add_argument("--kmax", type=int, default=None)
    v.add_argument("--indices", type=_range_arg, default=None)
    v.add_argument("--limit", type=int, default=None)
    v.add_argument("--expect", choices=["auto", "sturmian", "aperiodic", "none"], default="auto")

    gm = sub.add_parser("gamma", help="table of minimal antipower block lengths")
    common(gm, FIBONACCI, "csv")
    gm.add_argument("--indices", type=_range_arg, default=None)
    gm.add_argument("--k", type=_range_arg, default=None)
    gm.add_argument("--mmax", type=int, default=None, help="largest block length searched")

    b = sub.add_parser("bench", help="compare distinctness strategies")
    common(b, FIBONACCI, "text")
    b.add_argument("--k", type=_range_arg, default=None)
    b.add_argument("--mmax", type=int, default=None)
    b.add_argument("--family", choices=["fibonacci", "thue-morse"], default=None)
    b.add_argument("--strategies", default=None, help="comma list of naive,python,native")
    b.add_argument("--repeat", type=int, default=1)
    return parser


SUITE_MORPHISMS = {"lemma8": THUE_MORSE, "thm5": THUE_MORSE, "complexity": FIBONACCI}
COMMANDS = {"gen": cmd_gen, "classify": cmd_classify, "verify": cmd_verify, "gamma": cmd_gamma,
            "bench": cmd_bench}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.backend:
        print(kernels.BACKEND)
        return EXIT_OK
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    params = {k: v for k, v in vars(args).items()
              if k not in ("morphism", "seed", "cap", "fmt", "out", "header", "command", "backend")}
    morphism = args.morphism or SUITE_MORPHISMS.get(params.get("suite"), FIBONACCI)
    try:
        config = RunConfig(morphism, args.seed, args.cap or default_cap(), args.fmt, args.out, args.header, params)
        return COMMANDS[args.command](config)
    except (CapExceeded, NotStabilized, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ClassificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (WordError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
