"""Exact arithmetic in Z[phi] and the Fibonacci-word antipower bounds.

Every floor, fractional part and inequality is decided with integers;
floats appear only in human-readable report columns.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import isqrt
from typing import Iterable, NamedTuple, Optional

from .antipower import blocks_distinct, gamma
from .errors import WordError
from .reports import Report
from .words import DEFAULT_CAP, MorphicWord, fibonacci_word

PHI_APPROX = (1 + 5**0.5) / 2


@total_ordering
class GoldenNumber:
    """a + b*phi with integer a, b, where phi^2 = phi + 1."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = int(a)
        self.b = int(b)

    @classmethod
    def coerce(cls, x) -> GoldenNumber:
        if isinstance(x, GoldenNumber):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to GoldenNumber")

    def __repr__(self):
        return f"GoldenNumber({self.a}, {self.b})"

    def __str__(self):
        return f"{self.a}{self.b:+d}φ"

    def __eq__(self, other):
        try:
            other = GoldenNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return golden_sign(self - GoldenNumber.coerce(other)) < 0

    def __bool__(self):
        return bool(self.a or self.b)

    def __neg__(self):
        return GoldenNumber(-self.a, -self.b)

    def __add__(self, other):
        other = GoldenNumber.coerce(other)
        return GoldenNumber(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-GoldenNumber.coerce(other))

    def __rsub__(self, other):
        return GoldenNumber.coerce(other) - self

    def __mul__(self, other):
        other = GoldenNumber.coerce(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return GoldenNumber(a * c + b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def conjugate(self) -> GoldenNumber:
        """Image under phi -> 1 - phi."""
        return GoldenNumber(self.a + self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> GoldenNumber:
        n = self.norm()
        if n not in (1, -1):
            raise ZeroDivisionError(f"{self} is not a unit of Z[phi]")
        c = self.conjugate()
        return c if n == 1 else -c

    def __pow__(self, e: int) -> GoldenNumber:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = GoldenNumber(1, 0)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __float__(self):
        return self.a + self.b * PHI_APPROX

    def to_dict(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "approx": float(self)}


PHI = GoldenNumber(0, 1)
ONE = GoldenNumber(1, 0)
SQRT5 = GoldenNumber(-1, 2)  # 2*phi - 1


def golden_add(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    return x + y


def golden_mul(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber:
    return x * y


def golden_neg(x: GoldenNumber) -> GoldenNumber:
    return -x


def golden_sign(x: GoldenNumber) -> int:
    """Exact sign of a + b*phi.

    2(a + b*phi) = u + b*sqrt(5) with u = 2a + b; when u and b disagree in
    sign, compare u^2 with 5b^2.
    """
    u, v = 2 * x.a + x.b, x.b
    if u >= 0 and v >= 0:
        return 1 if (u or v) else 0
    if u <= 0 and v <= 0:
        return -1
    d = u * u - 5 * v * v  # never 0: sqrt(5) is irrational
    return (1 if d > 0 else -1) if u > 0 else (1 if d < 0 else -1)


def floor_phi_multiple(k: int) -> int:
    """floor(k*phi) for any integer k."""
    if k >= 0:
        return (k + isqrt(5 * k * k)) // 2
    return -floor_phi_multiple(-k) - 1


def golden_floor(x: GoldenNumber) -> int:
    return x.a + floor_phi_multiple(x.b)


def frac_golden(x: GoldenNumber) -> GoldenNumber:
    """x - floor(x), in [0, 1)."""
    return x - golden_floor(x)


class FibCache:
    """F_1 = F_2 = 1, F_n = F_(n-1) + F_(n-2); F_0 = 0."""

    def __init__(self):
        self._values = [0, 1, 1]

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("negative Fibonacci index")
        values = self._values
        while len(values) <= n:
            values.append(values[-1] + values[-2])
        return values[n]


fib = FibCache()


def fib_digit(n: int) -> int:
    """n-th letter of the Fibonacci word: 2 - (floor((n+2)phi) - floor((n+1)phi))."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return 2 - (floor_phi_multiple(n + 2) - floor_phi_multiple(n + 1))


def fib_digits(limit: int) -> bytes:
    """fib_digit(0..limit-1), sharing floors between neighbours."""
    out = bytearray(limit)
    prev = floor_phi_multiple(1)
    for n in range(limit):
        cur = floor_phi_multiple(n + 2)
        out[n] = 2 - (cur - prev)
        prev = cur
    return bytes(out)


def neg_phi_power(e: int) -> GoldenNumber:
    """(-phi)^e, exact for any integer e."""
    return GoldenNumber(0, -1) ** e


def lemma15_residue(n: int) -> GoldenNumber:
    """-(-phi)^(-n), after checking F_n*phi - F_(n+1) equals it exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    residue = -neg_phi_power(-n)
    if fib(n) * PHI - fib(n + 1) != residue:
        raise ArithmeticError(f"F_{n}*phi - F_{n + 1} != -(-phi)^-{n}")
    return residue


@dataclass(frozen=True)
class Prop16Certificate:
    n: int
    ell: int
    frac: GoldenNumber
    holds: bool

    def to_dict(self) -> dict:
        return {"n": self.n, "ell": self.ell, "frac": self.frac.to_dict(), "holds": self.holds}


def prop16_holds(n: int, ell: int) -> Prop16Certificate:
    """Decide phi^(1-n) <= min({2*ell*F_n*phi}, 1 - {2*ell*F_n*phi}) exactly."""
    if n < 1 or ell < 1:
        raise ValueError("need n >= 1 and ell >= 1")
    fr = frac_golden(GoldenNumber(0, 2 * ell * fib(n)))
    gap = PHI ** (1 - n)
    holds = golden_sign(fr - gap) >= 0 and golden_sign(ONE - fr - gap) >= 0
    return Prop16Certificate(n, ell, fr, holds)


def prop17_k(n: int) -> int:
    """floor(F_n*sqrt(5)/2): block count of the antipower of block length 2F_n.

    Also checks the equality with floor(phi^n / 2).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    k = golden_floor(fib(n) * SQRT5) // 2
    if golden_floor(PHI**n) // 2 != k:
        raise ArithmeticError(f"floor(F_{n} sqrt5/2) != floor(phi^{n}/2)")
    return k


def _fib_source(length: int, source: MorphicWord | None) -> MorphicWord:
    if source is None:
        source = fibonacci_word(max(DEFAULT_CAP, length))
    return source


def verify_prop17(n: int, indices: Iterable[int], source: MorphicWord | None = None,
                  strategy: str = "accelerated") -> Report:
    """At each index, prop17_k(n) blocks of length 2F_n must be pairwise distinct."""
    indices = list(indices)
    k, block = prop17_k(n), 2 * fib(n)
    end = (max(indices) if indices else 0) + k * block
    source = _fib_source(end, source)
    failures = []
    if indices:
        source.materialize(end)
        for x in indices:
            rep = blocks_distinct(source, x, block, k, strategy)
            if not rep.is_antipower:
                failures.append({"index": x, "violating_pair": list(rep.violating_pair)})
    return Report(
        suite="prop17",
        passed=not failures,
        parameters={"n": n, "k": k, "block_length": block},
        summary={"indices": len(indices), "failures": len(failures)},
        failures=failures,
        prefix_length=end,
    )


class Theorem6Result(NamedTuple):
    n: int
    block: int
    ratio_ok: bool


def theorem6_block_length(k: int) -> Theorem6Result:
    """Minimal n with prop17_k(n) >= k, block 2F_n, and whether 2F_n < (4/sqrt5)*phi*k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2
    while prop17_k(n) < k:
        n += 1
    block = 2 * fib(n)
    # 2F_n < 4*phi*k/sqrt5  <=>  4*phi*k - 2F_n*sqrt5 > 0
    ratio_ok = golden_sign(4 * k * PHI - block * SQRT5) > 0
    return Theorem6Result(n, block, ratio_ok)


def theorem6_sweep(kmax: int) -> Report:
    rows, failures = [], []
    worst = None
    for k in range(1, kmax + 1):
        n, block, ok = theorem6_block_length(k)
        rows.append({"k": k, "n": n, "block": block, "ratio": block / k, "ratio_ok": ok})
        if not ok:
            failures.append({"k": k, "n": n, "block": block})
        if worst is None or block * worst[0] > worst[1] * k:
            worst = (k, block)
    summary = {"kmax": kmax, "bound": "(4/sqrt5)*phi ~ 2.8944"}
    if worst:
        summary.update(max_ratio=worst[1] / worst[0], max_ratio_k=worst[0], max_ratio_block=worst[1])
    return Report("thm6", not failures, {"kmax": kmax}, summary, rows, failures)


def gamma_bounds_report(i: int, ks: Iterable[int], cap: Optional[int] = None,
                        source: MorphicWord | None = None, strategy: str = "accelerated") -> Report:
    """gamma_i(k) on the Fibonacci word with the hard bounds k-1 <= gamma <= 2F_n."""
    ks = list(ks)
    source = source or fibonacci_word()
    rows, failures = [], []
    for k in ks:
        upper = theorem6_block_length(k).block
        g = gamma(source, i, k, cap or upper, strategy)
        ok = g is not None and k - 1 <= g <= upper
        rows.append({"index": i, "k": k, "gamma": g, "ratio": None if g is None else g / k,
                     "upper": upper, "ok": ok})
        if not ok:
            failures.append(rows[-1])
    return Report("gamma", not failures, {"index": i, "k": ks[:1] + ks[-1:]},
                  {"rows": len(rows), "failures": len(failures)}, rows, failures)


def conjecture18_check(n: int, source: MorphicWord | None = None) -> Report:
    """Is the prefix of (F_n - 1) blocks of length F_n/2 + F_(n-1) an antipower?

    Informational: the outcome is reported, never treated as a failure.
    """
    if n < 3 or fib(n) % 2:
        raise WordError(f"F_{n} = {fib(n)} is not an even Fibonacci number (need 3 | n)")
    k, block = fib(n) - 1, fib(n) // 2 + fib(n - 1)
    source = _fib_source(k * block, source)
    rep = blocks_distinct(source, 0, block, k)
    return Report(
        suite="conj18",
        passed=rep.is_antipower,
        parameters={"n": n, "F_n": fib(n), "k": k, "block_length": block},
        summary={"result": "PASS" if rep.is_antipower else "FAIL",
                 "violating_pair": rep.violating_pair},
        rows=[rep.to_dict()],
        prefix_length=k * block,
        informational=True,
    )
