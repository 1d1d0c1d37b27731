"""Alphabets, finite words, morphisms and lazily generated pure morphic words.

Letters are byte-sized ids ``0..m-1``; a :class:`FiniteWord` wraps an
immutable ``bytes`` buffer so that slicing, hashing and substring search run
at C speed. Indexing follows the half-open, 0-indexed convention: the factor
``w[i:j]`` starts at ``i`` and ends one before ``j``.
"""
from __future__ import annotations

import struct
import threading
from dataclasses import dataclass
from itertools import product
from os import PathLike
from typing import Iterable, Union

from . import kernels
from .errors import (
    CacheFormatError,
    CapExceeded,
    MorphismSyntaxError,
    NotUniformError,
    RadiusError,
    WordError,
)

DEFAULT_CAP = 2**28
MAX_ALPHABET = 255
DIGITS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

FIBONACCI = "0 -> 01; 1 -> 0"
THUE_MORSE = "0 -> 01; 1 -> 10"


@dataclass(frozen=True)
class Alphabet:
    """Letter ids ``0..size-1`` displayed by the characters of ``symbols``."""

    symbols: str

    def __post_init__(self):
        m = len(self.symbols)
        if not 1 <= m <= MAX_ALPHABET:
            raise WordError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {m}")
        if len(set(self.symbols)) != m:
            raise WordError(f"duplicate display characters in {self.symbols!r}")

    @classmethod
    def digits(cls, m: int) -> Alphabet:
        if m <= len(DIGITS):
            return cls(DIGITS[:m])
        return cls(DIGITS + "".join(chr(0x100 + j) for j in range(m - len(DIGITS))))

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def letter(self, char: str) -> int:
        try:
            return self.symbols.index(char)
        except ValueError:
            raise WordError(f"{char!r} is not in alphabet {self.symbols!r}") from None

    def encode(self, text: str) -> bytes:
        table = {c: j for j, c in enumerate(self.symbols)}
        try:
            return bytes(table[c] for c in text)
        except KeyError as exc:
            raise WordError(f"{exc.args[0]!r} is not in alphabet {self.symbols!r}") from None

    def decode(self, letters: bytes) -> str:
        return "".join(self.symbols[c] for c in letters)


@dataclass(frozen=True, eq=False)
class FiniteWord:
    """Immutable word over an :class:`Alphabet`. Equality is letterwise."""

    letters: bytes
    alphabet: Alphabet

    def __post_init__(self):
        if not isinstance(self.letters, bytes):
            object.__setattr__(self, "letters", bytes(self.letters))
        if self.letters and max(self.letters) >= self.alphabet.size:
            raise WordError("letter id outside alphabet")

    @classmethod
    def from_str(cls, text: str, alphabet: Alphabet | None = None) -> FiniteWord:
        """Build from display characters; default alphabet is ``0-9a-zA-Z``."""
        if alphabet is None:
            try:
                top = max((DIGITS.index(c) for c in text), default=0)
            except ValueError:
                raise WordError(f"cannot infer alphabet for {text!r}") from None
            alphabet = Alphabet.digits(top + 1)
        return cls(alphabet.encode(text), alphabet)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return FiniteWord(self.letters[key], self.alphabet)
        return self.letters[key]

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if isinstance(other, FiniteWord):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self):
        return hash(self.letters)

    def __add__(self, other: FiniteWord) -> FiniteWord:
        alphabet = max(self.alphabet, other.alphabet, key=len)
        return FiniteWord(self.letters + other.letters, alphabet)

    def __str__(self):
        return self.alphabet.decode(self.letters)

    def __repr__(self):
        return f"FiniteWord({str(self)!r})"

    def find(self, sub: FiniteWord, start: int = 0) -> int:
        return self.letters.find(sub.letters, start)


WordLike = Union[FiniteWord, str]


def as_word(w: WordLike, alphabet: Alphabet | None = None) -> FiniteWord:
    if isinstance(w, FiniteWord):
        return w
    return FiniteWord.from_str(w, alphabet)


@dataclass(frozen=True)
class Morphism:
    """Letter-to-word map; ``images[a]`` is the image of letter id ``a``."""

    alphabet: Alphabet
    images: tuple[bytes, ...]

    def __post_init__(self):
        images = tuple(bytes(im) for im in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.alphabet.size:
            raise WordError("need exactly one image per letter")
        for a, im in enumerate(images):
            if not im:
                raise WordError(f"empty image for letter {self.alphabet.symbols[a]!r}")
            if max(im) >= self.alphabet.size:
                raise WordError("image uses a letter outside the alphabet")

    @property
    def size(self) -> int:
        return self.alphabet.size

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(map(len, self.images))

    @property
    def uniform_radius(self) -> int | None:
        """r when every image has length r >= 2, else None."""
        lengths = set(self.lengths)
        if len(lengths) == 1:
            (r,) = lengths
            if r >= 2:
                return r
        return None

    def require_uniform(self) -> int:
        """Return r, raising unless the morphism is r-uniform with r >= 2."""
        lengths = set(self.lengths)
        if len(lengths) != 1:
            raise NotUniformError("morphism is not uniform")
        if lengths == {1}:
            raise RadiusError("1-uniform morphism; r >= 2 is required")
        return lengths.pop()

    def image(self, a: int) -> FiniteWord:
        return FiniteWord(self.images[a], self.alphabet)

    def is_prolongable(self, a: int) -> bool:
        return self.images[a][0] == a

    @property
    def prolongable_seeds(self) -> tuple[int, ...]:
        return tuple(a for a in range(self.size) if self.is_prolongable(a))

    def seed_id(self, seed: int | str) -> int:
        if isinstance(seed, str):
            return self.alphabet.letter(seed)
        if not 0 <= seed < self.size:
            raise WordError(f"seed {seed} outside alphabet")
        return seed

    def __call__(self, w: FiniteWord) -> FiniteWord:
        return apply(self, w)

    def __str__(self):
        sym = self.alphabet.symbols
        return "; ".join(f"{sym[a]} -> {self.alphabet.decode(im)}" for a, im in enumerate(self.images))


def parse_morphism(text: str) -> Morphism:
    """Parse ``<char> -> <string>`` rules separated by newlines or ``;``.

    ``#`` starts a comment. Letter ids are assigned in code-point order of
    the rule left-hand sides.
    """
    rules: dict[str, str] = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "->" not in chunk:
                raise MorphismSyntaxError(f"expected '<char> -> <word>', got {chunk!r}")
            lhs, rhs = (part.strip() for part in chunk.split("->", 1))
            if len(lhs) != 1:
                raise MorphismSyntaxError(f"rule left-hand side must be one character: {lhs!r}")
            if lhs in rules:
                raise MorphismSyntaxError(f"duplicate rule for {lhs!r}")
            if not rhs:
                raise MorphismSyntaxError(f"empty image for {lhs!r}")
            rules[lhs] = rhs
    if not rules:
        raise MorphismSyntaxError("no rules")
    symbols = "".join(sorted(rules))
    for lhs, rhs in rules.items():
        undeclared = sorted(set(rhs) - set(symbols))
        if undeclared:
            raise MorphismSyntaxError(f"rule for {lhs!r} uses undeclared letter(s) {undeclared}")
    alphabet = Alphabet(symbols)
    return Morphism(alphabet, tuple(alphabet.encode(rules[c]) for c in symbols))


def _image_length(mu: Morphism, letters: bytes) -> int:
    return sum(letters.count(a) * n for a, n in enumerate(mu.lengths))


def apply(mu: Morphism, w: FiniteWord) -> FiniteWord:
    """Concatenate the images of the letters of ``w``."""
    if w.letters and max(w.letters) >= mu.size:
        raise WordError("word uses letters outside the morphism alphabet")
    return FiniteWord(kernels.apply_morphism(w.letters, mu.images), mu.alphabet)


def iterate(mu: Morphism, a: int | str, n: int, cap: int = DEFAULT_CAP) -> FiniteWord:
    """Return mu^n(a)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = mu.seed_id(a)
    letters = bytes([a])
    for _ in range(n):
        if _image_length(mu, letters) > cap:
            raise CapExceeded(f"mu^{n}({mu.alphabet.symbols[a]}) exceeds cap {cap}")
        letters = kernels.apply_morphism(letters, mu.images)
    return FiniteWord(letters, mu.alphabet)


class MorphicWord:
    """Lazily materialized prefix of mu^omega(seed).

    Growth appends mu(w_j) for the next unprocessed letter w_j, which is
    valid because w = mu(w) for a prolongable seed. The published buffer is
    replaced atomically, so readers never see a partial extension.
    """

    def __init__(self, morphism: Morphism, seed: int | str = 0, cap: int = DEFAULT_CAP):
        seed = morphism.seed_id(seed)
        if not morphism.is_prolongable(seed):
            raise WordError(f"morphism is not prolongable on {morphism.alphabet.symbols[seed]!r}")
        if len(morphism.images[seed]) < 2:
            raise WordError("seed image has length 1; mu^omega(seed) is finite")
        self.morphism = morphism
        self.seed = seed
        self.cap = cap
        self._buf = bytes([seed])
        self._done = 0  # letters of _buf whose images are already in _buf
        self._lock = threading.Lock()
        self._index = None

    @classmethod
    def from_dsl(cls, text: str, seed: int | str = 0, cap: int = DEFAULT_CAP) -> MorphicWord:
        return cls(parse_morphism(text), seed, cap)

    @property
    def alphabet(self) -> Alphabet:
        return self.morphism.alphabet

    @property
    def materialized(self) -> FiniteWord:
        return FiniteWord(self._buf, self.alphabet)

    def __len__(self):
        return len(self._buf)

    def materialize(self, length: int) -> bytes:
        """Return the raw buffer, grown to at least ``length`` letters."""
        if length > self.cap:
            raise CapExceeded(f"prefix length {length} exceeds cap {self.cap}")
        buf = self._buf
        if len(buf) >= length:
            return buf
        with self._lock:
            buf = bytearray(self._buf)
            done = self._done
            images = self.morphism.images
            while len(buf) < length:
                chunk = bytes(buf[done:min(len(buf), done + length - len(buf))])
                if done == 0:
                    # the first letter is the seed, whose image restarts the word
                    ext = kernels.apply_morphism(chunk, images)[1:]
                else:
                    ext = kernels.apply_morphism(chunk, images)
                buf += ext
                done += len(chunk)
            self._done = done
            self._buf = bytes(buf)
            return self._buf

    def prefix(self, length: int) -> FiniteWord:
        if length < 0:
            raise ValueError("length must be nonnegative")
        return FiniteWord(self.materialize(length)[:length], self.alphabet)

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.stop is None:
                raise ValueError("open-ended slice of an infinite word")
            return self.prefix(key.stop)[key]
        return self.materialize(key + 1)[key]

    def block_index(self, length: int):
        """Kernel block index covering at least the first ``length`` letters."""
        index = self._index
        if index is None or len(index) < length:
            data = self.materialize(length)
            index = kernels.BlockIndex(data)
            self._index = index
        return index

    def __repr__(self):
        return f"MorphicWord({str(self.morphism)!r}, seed={self.alphabet.symbols[self.seed]!r})"


def fibonacci_word(cap: int = DEFAULT_CAP) -> MorphicWord:
    return MorphicWord.from_dsl(FIBONACCI, 0, cap)


def thue_morse_word(cap: int = DEFAULT_CAP) -> MorphicWord:
    return MorphicWord.from_dsl(THUE_MORSE, 0, cap)


def prefix(w: MorphicWord, length: int) -> FiniteWord:
    return w.prefix(length)


def factor_count(w: FiniteWord, n: int) -> int:
    """Number of distinct length-n factors of ``w``."""
    if n < 1:
        raise ValueError("factor length must be positive")
    if n > len(w):
        raise ValueError(f"factor length {n} exceeds word length {len(w)}")
    return kernels.count_factors(w.letters, n)


def border_array(letters: bytes) -> list[int]:
    """KMP failure function: longest proper border of each prefix."""
    fail = [0] * len(letters)
    b = 0
    for j in range(1, len(letters)):
        while b and letters[j] != letters[b]:
            b = fail[b - 1]
        if letters[j] == letters[b]:
            b += 1
        fail[j] = b
    return fail


def minimal_period(w: FiniteWord) -> int:
    if not len(w):
        raise ValueError("empty word has no period")
    return len(w) - border_array(w.letters)[-1]


def is_primitive(w: FiniteWord) -> bool:
    """True iff ``w`` equals none of its nontrivial conjugates."""
    p = minimal_period(w)
    return p == len(w) or len(w) % p != 0


def occurrences(data: bytes, pattern: bytes, end: int | None = None) -> list[int]:
    """Start positions of (possibly overlapping) occurrences of ``pattern``."""
    end = len(data) if end is None else end
    out = []
    j = data.find(pattern, 0, end)
    while j >= 0:
        out.append(j)
        j = data.find(pattern, j + 1, end)
    return out


# -- prefix cache files --------------------------------------------------

CACHE_MAGIC = b"MWPF"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sBBQ")


def write_prefix_cache(path: str | PathLike, word: FiniteWord) -> None:
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, word.alphabet.size, len(word)))
        fh.write(word.letters)


def read_prefix_cache(path: str | PathLike, alphabet: Alphabet | None = None) -> FiniteWord:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise CacheFormatError("truncated header")
        magic, version, m, n = _HEADER.unpack(head)
        if magic != CACHE_MAGIC:
            raise CacheFormatError(f"bad magic {magic!r}")
        if version != CACHE_VERSION:
            raise CacheFormatError(f"unsupported cache version {version}")
        if m == 0:
            raise CacheFormatError("alphabet size 0")
        letters = fh.read(n)
        if len(letters) != n or fh.read(1):
            raise CacheFormatError("payload length does not match header")
    if alphabet is None:
        alphabet = Alphabet.digits(m)
    elif alphabet.size != m:
        raise CacheFormatError(f"alphabet size {alphabet.size} != header {m}")
    return FiniteWord(letters, alphabet)


def words_over(m: int, n: int) -> Iterable[bytes]:
    """All words of length ``n`` over ``m`` letters, in lexicographic order."""
    return (bytes(t) for t in product(range(m), repeat=n))
