"""Verification suites: each returns a :class:`Report` with hard pass/fail."""
from __future__ import annotations

from typing import Iterable, Sequence

from .antipower import find_spanning_factor, lemma8_scan, theorem5_plan, verify_theorem5
from .classify import classify, stabilized_factor_complexity
from .errors import ClassificationError
from .golden import (
    conjecture18_check,
    fib,
    fib_digits,
    prop16_holds,
    prop17_k,
    theorem6_sweep,
    verify_prop17,
)
from .reports import Report
from .words import FIBONACCI, MorphicWord, fibonacci_word, parse_morphism

THM6_RATIO_LIMIT = (28945, 10000)  # reported max ratio must not exceed 2.8945


def fact14(limit: int, source: MorphicWord | None = None) -> Report:
    """Digit formula against the morphic expansion for n < limit."""
    source = source or fibonacci_word(max(limit, 1))
    expected = source.materialize(limit)[:limit]
    got = fib_digits(limit)
    mismatch = next((n for n in range(limit) if got[n] != expected[n]), None) if got != expected else None
    failures = [] if mismatch is None else [
        {"index": mismatch, "formula": got[mismatch], "morphic": expected[mismatch]}]
    return Report("fact14", not failures, {"limit": limit},
                  {"compared": limit, "first_mismatch": mismatch}, failures=failures, prefix_length=limit)


def _require_theorem5(source: MorphicWord, length: int) -> None:
    verdict = classify(source.morphism, source.seed, min(length, 4096))
    if not verdict.satisfies_theorem5:
        raise ClassificationError(
            "word is not established aperiodic and uniformly recurrent: "
            f"{verdict.to_dict(source.alphabet)}")


def lemma8(source: MorphicWord, ns: Sequence[int], length: int, spanning_length: int = 1 << 14) -> Report:
    _require_theorem5(source, length)
    t, s = find_spanning_factor(source, min(length, spanning_length))
    rows, failures = [], []
    per_n = {}
    for n in ns:
        rep = lemma8_scan(source, source.morphism, n, s, length)
        per_n[n] = {"occurrences": rep.summary["occurrences"], "residues": rep.summary["residues"],
                    "vacuous": rep.summary["vacuous"]}
        rows.extend({"n": n, **row} for row in rep.rows)
        failures.extend({"n": n, **f} for f in rep.failures)
    return Report("lemma8", not failures,
                  {"r": source.morphism.uniform_radius, "m": source.morphism.size, "t": str(t), "s": str(s),
                   "n": list(ns)},
                  {"per_n": per_n, "violations": len(failures)}, rows, failures, prefix_length=length)


def thm5(source: MorphicWord, ks: Iterable[int], indices: Sequence[int], length: int) -> Report:
    rows, failures, plans = [], [], {}
    max_prefix = length
    for k in ks:
        plan = theorem5_plan(source.morphism, source.seed, k, length, source)
        rep = verify_theorem5(source, plan, indices)
        plans[k] = {key: plan.to_dict()[key] for key in ("r", "m", "n", "y", "block_size")}
        rows.extend(rep.rows)
        failures.extend(rep.failures)
        max_prefix = max(max_prefix, plan.prefix_length)
    return Report("thm5", not failures, {"plans": plans, "indices": [indices[0], indices[-1]] if indices else []},
                  {"windows": len(rows), "failures": len(failures)}, rows, failures, prefix_length=max_prefix)


def prop16(ns: Iterable[int], xmax: int = 1000, spot_check_nmax: int = 10) -> Report:
    """Exact certificate scan for ell = 1..prop17_k(n), with a direct spot check.

    Hard assertions: every ell < prop17_k(n) holds, and no certified ell
    admits equal blocks at distance 2*ell*F_n for x <= xmax (n <= spot_check_nmax).
    """
    rows, failures = [], []
    source = fibonacci_word()
    for n in ns:
        k, size = prop17_k(n), 2 * fib(n)
        for ell in range(1, k + 1):
            cert = prop16_holds(n, ell)
            row = {"n": n, "ell": ell, "holds": cert.holds, "frac_a": str(cert.frac.a),
                   "frac_b": str(cert.frac.b), "frac_approx": float(cert.frac)}
            if ell < k and not cert.holds:
                failures.append({**row, "reason": "certificate fails below prop17 bound"})
            if cert.holds and n <= spot_check_nmax:
                shift = ell * size
                data = source.materialize(xmax + shift + size + 1)
                equal = next((x for x in range(xmax + 1)
                              if data[x:x + size] == data[x + shift:x + shift + size]), None)
                row["spot_check_equal_at"] = equal
                if equal is not None:
                    failures.append({**row, "reason": "certified ell has equal blocks"})
            rows.append(row)
    return Report("prop16", not failures, {"xmax": xmax, "spot_check_nmax": spot_check_nmax},
                  {"certificates": len(rows), "failures": len(failures)}, rows, failures)


def prop17(ns: Iterable[int], indices: Sequence[int]) -> Report:
    rows, failures = [], []
    prefix = 0
    for n in ns:
        rep = verify_prop17(n, indices)
        rows.append({"n": n, **rep.parameters, "pass": rep.passed, "failures": len(rep.failures)})
        failures.extend({"n": n, **f} for f in rep.failures)
        prefix = max(prefix, rep.prefix_length or 0)
    return Report("prop17", not failures, {"indices": [indices[0], indices[-1]] if indices else []},
                  {"n_checked": len(rows), "failures": len(failures)}, rows, failures, prefix_length=prefix)


def thm6(kmax: int) -> Report:
    rep = theorem6_sweep(kmax)
    k, block = rep.summary.get("max_ratio_k"), rep.summary.get("max_ratio_block")
    if k is not None and block * THM6_RATIO_LIMIT[1] > THM6_RATIO_LIMIT[0] * k:
        rep.failures.append({"reason": "max ratio exceeds 2.8945", "k": k, "block": block})
        rep.passed = False
    return rep


def conj18(ns: Iterable[int]) -> Report:
    rows = []
    for n in ns:
        rep = conjecture18_check(n)
        rows.append({"n": n, **rep.parameters, "result": rep.summary["result"],
                     "violating_pair": rep.summary["violating_pair"]})
    return Report("conj18", all(r["result"] == "PASS" for r in rows), {"n": list(ns)},
                  {r["n"]: r["result"] for r in rows}, rows, informational=True)


def complexity(source: MorphicWord, ns: Iterable[int], expect: str = "auto") -> Report:
    """Stabilized factor complexity; ``expect`` is sturmian (p(n) = n+1),
    aperiodic (p(n) >= n+1) or none. ``auto`` picks sturmian for the
    Fibonacci morphism and aperiodic otherwise."""
    if expect == "auto":
        expect = "sturmian" if source.morphism == parse_morphism(FIBONACCI) else "aperiodic"
    rows, failures = [], []
    longest = 0
    for n in ns:
        count, used = stabilized_factor_complexity(source, n)
        longest = max(longest, used)
        ok = {"sturmian": count == n + 1, "aperiodic": count >= n + 1, "none": True}[expect]
        rows.append({"n": n, "count": count, "prefix_length": used, "ok": ok})
        if not ok:
            failures.append(rows[-1])
    return Report("complexity", not failures, {"expect": expect},
                  {"checked": len(rows), "failures": len(failures)}, rows, failures, prefix_length=longest)
