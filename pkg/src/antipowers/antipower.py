"""Antipower predicates, minimal block lengths and the uniform-case construction.

A k-antipower is a concatenation of k pairwise distinct blocks of equal
length. Two distinctness strategies are exposed: ``"naive"`` (pairwise block
comparison, used as the oracle) and ``"accelerated"`` (the active kernel
backend). Both return the same canonical violating pair: the smallest p
that has a later equal block, paired with the first such q.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Tuple, Union

from . import kernels
from .classify import classify, recurrence_constant
from .errors import ClassificationError, WordError
from .reports import Report
from .words import FiniteWord, Morphism, MorphicWord, as_word, iterate, occurrences

Source = Union[MorphicWord, FiniteWord]
Pair = Optional[Tuple[int, int]]
STRATEGIES = ("naive", "accelerated")


@dataclass(frozen=True)
class AntipowerQuery:
    index: int
    k: int
    block_length: int

    def to_dict(self) -> dict:
        return {"index": self.index, "k": self.k, "block_length": self.block_length}


@dataclass(frozen=True)
class AntipowerReport:
    query: AntipowerQuery
    is_antipower: bool
    violating_pair: Pair = None

    def to_dict(self) -> dict:
        return {
            "query": self.query.to_dict(),
            "pass": self.is_antipower,
            "violating_pair": None if self.violating_pair is None else list(self.violating_pair),
        }


@dataclass(frozen=True)
class Theorem5Plan:
    r: int
    m: int
    k: int
    n: int
    t: FiniteWord
    s: FiniteWord
    y: int
    block_size: int
    prefix_length: int
    y_stabilized: bool = True

    def to_dict(self) -> dict:
        return {
            "r": self.r, "m": self.m, "k": self.k, "n": self.n, "y": self.y,
            "block_size": self.block_size, "s": str(self.s), "t": str(self.t),
            "y_stabilized": self.y_stabilized,
        }


def naive_first_duplicate(data: bytes, start: int, m: int, k: int) -> Pair:
    """Pairwise comparison oracle: smallest p, then smallest q, with equal blocks."""
    blocks = [data[start + j * m:start + (j + 1) * m] for j in range(k)]
    for p in range(k - 1):
        rest = blocks[p + 1:]
        if blocks[p] in rest:
            return p, p + 1 + rest.index(blocks[p])
    return None


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")


def _buffer(source: Source, end: int) -> bytes:
    if isinstance(source, MorphicWord):
        return source.materialize(end)
    if end > len(source):
        raise WordError(f"window end {end} exceeds word length {len(source)}")
    return source.letters


def first_duplicate(source: Source, i: int, m: int, k: int, strategy: str = "accelerated") -> Pair:
    _check_k(k)
    if i < 0 or m < 1:
        raise ValueError("need i >= 0 and m >= 1")
    end = i + k * m
    if strategy == "naive":
        return naive_first_duplicate(_buffer(source, end), i, m, k)
    if strategy != "accelerated":
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(source, MorphicWord):
        return source.block_index(end).first_duplicate(i, m, k)
    return kernels.first_duplicate(_buffer(source, end), i, m, k)


def is_antipower(w: FiniteWord | str, k: int) -> bool:
    """True iff ``w`` splits into k pairwise distinct blocks of equal length."""
    w = as_word(w)
    _check_k(k)
    if len(w) % k:
        raise ValueError(f"length {len(w)} is not divisible by k={k}")
    if not len(w):
        return k == 1
    return kernels.first_duplicate(w.letters, 0, len(w) // k, k) is None


def blocks_distinct(source: Source, i: int, m: int, k: int, strategy: str = "accelerated") -> AntipowerReport:
    """Report whether the window w[i, i+km) is a k-antipower with block length m."""
    pair = first_duplicate(source, i, m, k, strategy)
    return AntipowerReport(AntipowerQuery(i, k, m), pair is None, pair)


def gamma(source: Source, i: int, k: int, cap: int, strategy: str = "accelerated") -> Optional[int]:
    """Smallest block length m <= cap starting a k-antipower at index i."""
    _check_k(k)
    if k == 1:
        return 1
    if cap < 1:
        return None
    end = i + k * cap
    if strategy == "naive":
        data = _buffer(source, end)
        for m in range(1, cap + 1):
            if naive_first_duplicate(data, i, m, k) is None:
                return m
        return None
    if strategy != "accelerated":
        raise ValueError(f"unknown strategy {strategy!r}")
    if isinstance(source, MorphicWord):
        index = source.block_index(end)
    else:
        index = kernels.BlockIndex(_buffer(source, end)[:end])
    return index.gamma(i, k, cap)


def find_spanning_factor(source: Source, length: int) -> tuple[FiniteWord, FiniteWord]:
    """Leftmost shortest factor t containing every observed 2-letter factor,
    and s = f t g, an occurrence of t extended by one letter on each side."""
    data = _buffer(source, length)[:length]
    if length < 2:
        raise WordError("need a prefix of length >= 2")
    pairs = [data[j:j + 2] for j in range(length - 1)]
    need = len(set(pairs))
    counts: dict[bytes, int] = {}
    best = None
    lo = 0
    for hi, pair in enumerate(pairs):
        counts[pair] = counts.get(pair, 0) + 1
        while len(counts) == need:
            if best is None or hi - lo < best[1] - best[0]:
                best = (lo, hi)
            left = pairs[lo]
            counts[left] -= 1
            if not counts[left]:
                del counts[left]
            lo += 1
    lo, hi = best
    t = data[lo:hi + 2]
    j = data.find(t, 1, length - 1)
    if j < 0:
        raise WordError(f"no occurrence of {t!r} with room on both sides in the prefix")
    alphabet = source.alphabet
    return FiniteWord(t, alphabet), FiniteWord(data[j - 1:j + len(t) + 1], alphabet)


def lemma8_scan(source: MorphicWord, mu: Morphism, n: int, s: FiniteWord, length: int) -> Report:
    """Check gcd(i, r^n) > r^n/m^2 for every occurrence residue i of mu^n(s)."""
    r = mu.require_uniform()
    m = mu.size
    rn = r**n
    pattern = s.letters
    for _ in range(n):
        pattern = kernels.apply_morphism(pattern, mu.images)
    if len(pattern) > length:
        raise WordError(f"mu^{n}(s) has length {len(pattern)} > prefix length {length}")
    occ = occurrences(source.materialize(length), pattern, length)
    residues: dict[int, int] = {}
    for g in occ:
        residues[g % rn] = residues.get(g % rn, 0) + 1
    rows, failures = [], []
    for i in sorted(residues):
        d = gcd(i, rn)
        ok = d * m * m > rn
        rows.append({"residue": i, "gcd": d, "count": residues[i], "ok": ok})
        if not ok:
            failures.append({"residue": i, "gcd": d, "first_occurrence": next(g for g in occ if g % rn == i)})
    return Report(
        suite="lemma8",
        passed=not failures,
        parameters={"r": r, "m": m, "n": n, "s": str(s)},
        summary={
            "occurrences": len(occ),
            "residues": sorted(residues),
            "bound": f"gcd(i, {rn}) > {rn}/{m * m}",
            "vacuous": rn < m * m,
            "no_occurrences": not occ,
        },
        rows=rows,
        failures=failures,
        prefix_length=length,
    )


def theorem5_plan(mu: Morphism, seed: int | str, k: int, length: int,
                  source: MorphicWord | None = None) -> Theorem5Plan:
    """Block size r^n*y + 2r^n - 1 guaranteeing a k-antipower at every index.

    n is minimal with r^n >= k*m^2; y is the prefix-estimated recurrence
    window of the spanning factor s.
    """
    _check_k(k)
    seed = mu.seed_id(seed)
    r = mu.require_uniform()
    m = mu.size
    verdict = classify(mu, seed, length)
    if not verdict.satisfies_theorem5:
        raise ClassificationError(
            f"word is not established aperiodic and uniformly recurrent "
            f"(uniformly_recurrent={verdict.uniformly_recurrent.value}, "
            f"periodicity={verdict.periodicity.kind})"
        )
    source = source or MorphicWord(mu, seed)
    empty = FiniteWord(b"", mu.alphabet)
    if k == 1:
        return Theorem5Plan(r, m, 1, 0, empty, empty, 0, 1, length)
    n = 0
    while r**n < k * m * m:
        n += 1
    t, s = find_spanning_factor(source, length)
    est = recurrence_constant(source, s, length)
    rn = r**n
    return Theorem5Plan(r, m, k, n, t, s, est.y, rn * est.y + 2 * rn - 1, est.prefix_length, est.stabilized)


def verify_theorem5(source: Source, plan: Theorem5Plan, indices: Iterable[int],
                    strategy: str = "accelerated") -> Report:
    """Check that k blocks of the planned size form an antipower at each index."""
    rows, failures = [], []
    for a in indices:
        rep = blocks_distinct(source, a, plan.block_size, plan.k, strategy)
        row = {"index": a, "k": plan.k, "block_length": plan.block_size,
               "pass": rep.is_antipower, "violating_pair": rep.violating_pair}
        rows.append(row)
        if not rep.is_antipower:
            failures.append(row)
    return Report(
        suite="thm5",
        passed=not failures,
        parameters=plan.to_dict(),
        summary={"indices": len(rows), "failures": len(failures)},
        rows=rows,
        failures=failures,
        prefix_length=plan.prefix_length,
    )
