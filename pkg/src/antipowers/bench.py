"""Timing comparison of block-distinctness strategies.

Strategies: ``naive`` (pairwise block comparison), ``python`` (dict of
block bytes) and ``native`` (compiled prefix hashing, when built). Results
must agree exactly; timings are reported, never asserted.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import kernels
from .antipower import naive_first_duplicate
from .reports import Report
from .words import fibonacci_word, thue_morse_word

FAMILIES: dict[str, Callable] = {"fibonacci": fibonacci_word, "thue-morse": thue_morse_word}


@dataclass(frozen=True)
class BenchCase:
    family: str
    task: str  # "gamma" or "sweep"
    k: int
    m: int  # gamma: search cap; sweep: block length
    indices: int = 1

    @property
    def length(self) -> int:
        return self.indices - 1 + self.k * self.m


def _naive_gamma(data, k, mmax):
    for m in range(1, mmax + 1):
        if naive_first_duplicate(data, 0, m, k) is None:
            return m
    return None


def _run(case: BenchCase, strategy: str, data: bytes):
    if strategy == "naive":
        if case.task == "gamma":
            return _naive_gamma(data, case.k, case.m)
        return [naive_first_duplicate(data, x, case.m, case.k) for x in range(case.indices)]
    index = kernels.get_backend(strategy).BlockIndex(data)
    if case.task == "gamma":
        return index.gamma(0, case.k, case.m)
    return [index.first_duplicate(x, case.m, case.k) for x in range(case.indices)]


def _summarize(case: BenchCase, result):
    if case.task == "gamma":
        return result
    bad = [x for x, pair in enumerate(result) if pair is not None]
    return {"antipower_windows": len(result) - len(bad), "first_failure": bad[0] if bad else None}


def default_cases(ks: Sequence[int] = (2, 10, 100, 1000), mmax: int = 3000) -> list[BenchCase]:
    cases = [BenchCase("fibonacci", "gamma", 2, 1), BenchCase("thue-morse", "gamma", 2, 1)]
    for family in FAMILIES:
        cases.extend(BenchCase(family, "gamma", k, mmax) for k in ks if k > 2)
    # Fibonacci sweep: 421 blocks of length 2*F_14 = 754
    cases.append(BenchCase("fibonacci", "sweep", 421, 754, indices=200))
    cases.append(BenchCase("thue-morse", "sweep", 8, 1279, indices=500))
    return cases


def run_bench(cases: Iterable[BenchCase] | None = None, strategies: Sequence[str] | None = None,
              repeat: int = 1) -> Report:
    cases = list(cases or default_cases())
    strategies = list(strategies or ["naive", *kernels.available_backends()])
    words = {}
    rows, failures = [], []
    for case in cases:
        word = words.setdefault(case.family, FAMILIES[case.family]())
        data = word.materialize(case.length)[:case.length]
        results = {}
        for strategy in strategies:
            best = None
            for _ in range(repeat):
                start = time.perf_counter()
                result = _run(case, strategy, data)
                elapsed = time.perf_counter() - start
                best = elapsed if best is None else min(best, elapsed)
            results[strategy] = result
            rows.append({"family": case.family, "task": case.task, "k": case.k, "m": case.m,
                         "indices": case.indices, "strategy": strategy, "seconds": round(best, 6),
                         "result": _summarize(case, result)})
        reference = results[strategies[0]]
        mismatched = [s for s in strategies if results[s] != reference]
        if mismatched:
            failures.append({"family": case.family, "task": case.task, "k": case.k, "m": case.m,
                             "mismatched": mismatched})
    return Report("bench", not failures, {"strategies": strategies, "repeat": repeat},
                  {"cases": len(cases), "mismatches": len(failures), "backend": kernels.BACKEND},
                  rows, failures)


def format_table(report: Report) -> str:
    lines = [f"{'family':<11} {'task':<6} {'k':>5} {'m':>5} {'strategy':<8} {'seconds':>10}  result"]
    for row in report.rows:
        lines.append(f"{row['family']:<11} {row['task']:<6} {row['k']:>5} {row['m']:>5} "
                     f"{row['strategy']:<8} {row['seconds']:>10.4f}  {row['result']}")
    lines.append("all strategies agree" if report.passed else f"MISMATCH: {report.failures}")
    return "\n".join(lines) + "\n"
