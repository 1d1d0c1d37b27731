"""Hypothesis checks for uniform morphic words.

Reachability, uniform recurrence (letter-closure criterion), letter-level
injectivity and an exact periodicity classifier, plus the prefix-based
estimates (recurrence window, factor complexity) used by the antipower
constructions.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Optional

from .errors import NotStabilized, WordError
from .words import FiniteWord, Morphism, MorphicWord, factor_count, is_primitive, occurrences


class Tri(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> Tri:
        return cls.YES if flag else cls.NO


@dataclass(frozen=True)
class Periodicity:
    kind: str  # "periodic" | "aperiodic" | "unknown"
    unit: Optional[FiniteWord] = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "unit": None if self.unit is None else str(self.unit)}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class ClassificationVerdict:
    prolongable: bool
    reachable_letters: frozenset
    uniformly_recurrent: Tri
    periodicity: Periodicity
    injective_on_letters: bool
    alphabet_size: int
    uniform_radius: Optional[int]
    prefix_length: int

    @property
    def satisfies_theorem5(self) -> bool:
        """Aperiodic and uniformly recurrent, both established."""
        return self.uniformly_recurrent is Tri.YES and self.periodicity.kind == "aperiodic"

    def to_dict(self, alphabet=None) -> dict:
        letters = sorted(self.reachable_letters)
        if alphabet is not None:
            letters = [alphabet.symbols[a] for a in letters]
        return {
            "prolongable": self.prolongable,
            "reachable_letters": letters,
            "uniformly_recurrent": self.uniformly_recurrent.value,
            "periodicity": self.periodicity.to_dict(),
            "injective_on_letters": self.injective_on_letters,
            "uniform_radius": self.uniform_radius,
            # recurrence criterion uses the reachable count; the full size is kept alongside
            "alphabet_size": self.alphabet_size,
            "reachable_count": len(self.reachable_letters),
            "prefix_length": self.prefix_length,
        }


@dataclass(frozen=True)
class RecurrenceEstimate:
    s: FiniteWord
    y: int
    prefix_length: int
    stabilized: bool


def _letters_of_images(mu: Morphism, letters) -> frozenset:
    return frozenset(c for a in letters for c in mu.images[a])


def reachable_letters(mu: Morphism, seed: int | str) -> frozenset:
    """Letters occurring in mu^omega(seed): closure of {seed} under mu."""
    seed = mu.seed_id(seed)
    reach = frozenset([seed])
    while True:
        grown = reach | _letters_of_images(mu, reach)
        if grown == reach:
            return reach
        reach = grown


def _require_prolongable(mu: Morphism, seed: int) -> None:
    if not mu.is_prolongable(seed):
        raise WordError(f"morphism is not prolongable on {mu.alphabet.symbols[seed]!r}")


def is_uniformly_recurrent(mu: Morphism, seed: int | str) -> bool:
    """True iff mu^(m'-1)(a) contains the seed for every reachable letter a.

    m' is the number of reachable letters; unreachable letters cannot
    influence mu^omega(seed).
    """
    mu.require_uniform()
    seed = mu.seed_id(seed)
    _require_prolongable(mu, seed)
    reach = reachable_letters(mu, seed)
    for a in reach:
        letters = frozenset([a])
        for _ in range(len(reach) - 1):
            letters = _letters_of_images(mu, letters)
        if seed not in letters:
            return False
    return True


def is_injective_on_letters(mu: Morphism) -> bool:
    return len(set(mu.images)) == mu.size


def _unit_is_fixed(mu: Morphism, unit: bytes, r: int) -> bool:
    # unit^omega is a fixed point of mu iff mu(unit[i]) matches the periodic
    # extension of unit starting at i*r mod len(unit)
    ell = len(unit)
    reps = unit * (r // ell + 2)
    return all(mu.images[c] == reps[(i * r) % ell:(i * r) % ell + r] for i, c in enumerate(unit))


def classify_periodicity(mu: Morphism, seed: int | str, length: int,
                         source: MorphicWord | None = None) -> Periodicity:
    """Exact periodicity verdict for mu^omega(seed), mu injective r-uniform.

    Candidate units are prefixes of length ell <= (reachable letters) with
    pairwise distinct letters and gcd(ell, r) = 1. A candidate is accepted
    only if unit^omega is a fixed point of mu starting with the seed, which
    makes the Periodic verdict a proof. When no candidate works the word is
    reported aperiodic only if it is also uniformly recurrent; otherwise it
    could still be eventually periodic and the verdict is Unknown.
    """
    r = mu.require_uniform()
    seed = mu.seed_id(seed)
    _require_prolongable(mu, seed)
    if not is_injective_on_letters(mu):
        return Periodicity("unknown", reason="noninjective morphism")
    m_reach = len(reachable_letters(mu, seed))
    if length < m_reach:
        raise WordError(f"prefix length {length} too short to read units up to {m_reach}")
    source = source or MorphicWord(mu, seed)
    data = source.materialize(length)[:length]
    for ell in range(1, m_reach + 1):
        unit = data[:ell]
        if len(set(unit)) != ell or gcd(ell, r) != 1:
            continue
        if _unit_is_fixed(mu, unit, r):
            if (unit * (length // ell + 1))[:length] != data:
                raise AssertionError("fixed-point unit disagrees with materialized prefix")
            word = FiniteWord(unit, mu.alphabet)
            if not is_primitive(word):
                raise AssertionError("periodic unit is not primitive")
            return Periodicity("periodic", word)
    if is_uniformly_recurrent(mu, seed):
        return Periodicity("aperiodic")
    return Periodicity("unknown", reason="not uniformly recurrent; may be eventually periodic")


def classify(mu: Morphism, seed: int | str, length: int = 4096) -> ClassificationVerdict:
    """Full verdict; non-uniform morphisms get Unknown for the uniform-only checks."""
    seed = mu.seed_id(seed)
    prolongable = mu.is_prolongable(seed)
    reach = reachable_letters(mu, seed)
    injective = is_injective_on_letters(mu)
    radius = mu.uniform_radius
    if not prolongable:
        ur, per = Tri.UNKNOWN, Periodicity("unknown", reason="not prolongable")
    elif radius is None:
        ur, per = Tri.UNKNOWN, Periodicity("unknown", reason="not r-uniform with r >= 2")
    else:
        ur = Tri.of(is_uniformly_recurrent(mu, seed))
        per = classify_periodicity(mu, seed, max(length, len(reach)))
    return ClassificationVerdict(prolongable, reach, ur, per, injective, mu.size, radius, length)


def recurrence_window(data: bytes, pattern: bytes) -> Optional[int]:
    """Minimal y such that every length-y window of ``data`` contains ``pattern``.

    None when ``pattern`` does not occur.
    """
    occ = occurrences(data, pattern)
    if not occ:
        return None
    s = len(pattern)
    y = max(occ[0] + s, len(data) - occ[-1])
    for a, b in zip(occ, occ[1:]):
        y = max(y, b - a - 1 + s)
    return y


def recurrence_constant(source: MorphicWord, s: FiniteWord, length: int,
                        stabilize: bool = True) -> RecurrenceEstimate:
    """Window length y after which ``s`` always occurs, estimated on prefixes.

    With ``stabilize`` the prefix is doubled until y is unchanged over two
    consecutive doublings.
    """
    y = recurrence_window(source.materialize(length)[:length], s.letters)
    if y is None:
        raise WordError(f"{s} does not occur in the length-{length} prefix")
    if not stabilize:
        return RecurrenceEstimate(s, y, length, False)
    history = [y]
    while len(history) < 3 or len(set(history[-3:])) != 1:
        length *= 2
        if length > source.cap:
            raise NotStabilized(f"recurrence window for {s} not stable before cap {source.cap}")
        history.append(recurrence_window(source.materialize(length)[:length], s.letters))
    return RecurrenceEstimate(s, history[-1], length, True)


def stabilized_factor_complexity(source: MorphicWord, n: int, start: int | None = None) -> tuple[int, int]:
    """(count of distinct length-n factors, prefix length used).

    Counts over doubling prefixes until the value repeats twice.
    """
    length = start or max(4 * n, 64)
    history = []
    while True:
        if length > source.cap:
            raise NotStabilized(f"factor count for n={n} not stable before cap {source.cap}")
        history.append(factor_count(source.prefix(length), n))
        if len(history) >= 3 and len(set(history[-3:])) == 1:
            return history[-1], length
        length *= 2
