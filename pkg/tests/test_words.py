import itertools
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antipowers.errors import CacheFormatError, CapExceeded, MorphismSyntaxError, NotUniformError, RadiusError, WordError
from antipowers.golden import fib
from antipowers.words import (
    FIBONACCI,
    THUE_MORSE,
    Alphabet,
    FiniteWord,
    MorphicWord,
    apply,
    factor_count,
    is_primitive,
    iterate,
    minimal_period,
    parse_morphism,
    read_prefix_cache,
    write_prefix_cache,
)

W = FiniteWord.from_str


def brute_period(s: bytes) -> int:
    return next(p for p in range(1, len(s) + 1) if all(s[i] == s[i + p] for i in range(len(s) - p)))


def brute_primitive(s: bytes) -> bool:
    return all(s[j:] + s[:j] != s for j in range(1, len(s)))


words = st.integers(2, 3).flatmap(lambda m: st.binary(max_size=20).map(lambda b: bytes(c % m for c in b)))


class TestParse:
    def test_thue_morse(self):
        mu = parse_morphism("0 -> 01 ; 1 -> 10")
        assert mu.uniform_radius == 2
        assert str(mu.image(0)) == "01" and str(mu.image(1)) == "10"

    def test_fibonacci_not_uniform(self):
        mu = parse_morphism("0 -> 01 ; 1 -> 0")
        assert mu.uniform_radius is None
        with pytest.raises(NotUniformError):
            mu.require_uniform()

    def test_identity_parses_but_r1_rejected(self):
        mu = parse_morphism("0 -> 0")
        assert mu.uniform_radius is None
        with pytest.raises(RadiusError):
            mu.require_uniform()

    def test_comments_and_newlines(self):
        mu = parse_morphism("# thue-morse\n0 -> 01   # first\n  1->10\n")
        assert mu == parse_morphism(THUE_MORSE)

    def test_letter_ids_follow_code_points(self):
        mu = parse_morphism("b -> ba; a -> ab")
        assert mu.alphabet.symbols == "ab"
        assert str(mu.image(0)) == "ab"

    @pytest.mark.parametrize("text, message", [
        ("0 -> 01; 0 -> 1", "duplicate"),
        ("0 -> 02", "undeclared"),
        ("0 -> ", "empty image"),
        ("01 -> 0", "one character"),
        ("0 = 01", "expected"),
        ("", "no rules"),
    ])
    def test_errors(self, text, message):
        with pytest.raises(MorphismSyntaxError, match=message):
            parse_morphism(text)


class TestApplyIterate:
    def test_apply(self):
        tm, fb = parse_morphism(THUE_MORSE), parse_morphism(FIBONACCI)
        assert str(apply(tm, W("01"))) == "0110"
        assert str(apply(fb, W("010"))) == "01001"
        assert len(apply(tm, W(""))) == 0

    def test_iterate(self):
        assert str(iterate(parse_morphism(THUE_MORSE), 0, 4)) == "0110100110010110"
        fw = iterate(parse_morphism(FIBONACCI), 0, 5)
        assert str(fw) == "0100101001001" and len(fw) == fib(7)
        assert str(iterate(parse_morphism(THUE_MORSE), 1, 0)) == "1"

    def test_iterate_cap(self):
        with pytest.raises(CapExceeded):
            iterate(parse_morphism(THUE_MORSE), 0, 20, cap=1000)

    def test_length_laws(self):
        tm, fb = parse_morphism(THUE_MORSE), parse_morphism(FIBONACCI)
        for n in range(16):
            assert len(iterate(tm, 0, n)) == 2**n
            assert len(iterate(fb, 0, n)) == fib(n + 2)

    def test_prolongable_prefix_chain(self):
        fb = parse_morphism(FIBONACCI)
        for n in range(12):
            a, b = iterate(fb, 0, n), iterate(fb, 0, n + 1)
            assert b.letters.startswith(a.letters)

    @given(words, st.integers(0, 20))
    def test_apply_respects_concatenation(self, letters, cut):
        mu = parse_morphism("0 -> 012; 1 -> 2; 2 -> 10")
        cut = min(cut, len(letters))
        u = FiniteWord(letters[:cut], mu.alphabet)
        v = FiniteWord(letters[cut:], mu.alphabet)
        assert apply(mu, u + v) == apply(mu, u) + apply(mu, v)
        assert len(apply(mu, u + v)) == sum(len(mu.images[c]) for c in letters)


class TestMorphicWord:
    def test_prefixes(self, fib, tm):
        assert str(fib.prefix(8)) == "01001010"
        assert str(tm.prefix(6)) == "011010"
        assert len(fib.prefix(0)) == 0

    def test_matches_iterate(self):
        mu = parse_morphism("0 -> 0121; 1 -> 2; 2 -> 10")
        w = MorphicWord(mu, 0)
        for n in range(8):
            x = iterate(mu, 0, n)
            assert w.prefix(len(x)) == x

    @settings(max_examples=50)
    @given(st.lists(st.integers(0, 5000), min_size=2, max_size=6))
    def test_prefix_monotone(self, lengths):
        w = MorphicWord.from_dsl(FIBONACCI)
        seen = {n: w.prefix(n) for n in lengths}
        for a, b in itertools.combinations(sorted(seen), 2):
            assert seen[b].letters.startswith(seen[a].letters)

    def test_cap(self):
        w = MorphicWord.from_dsl(THUE_MORSE, cap=100)
        w.prefix(100)
        with pytest.raises(CapExceeded):
            w.prefix(101)

    def test_rejects_bad_seeds(self):
        with pytest.raises(WordError, match="prolongable"):
            MorphicWord.from_dsl("0 -> 10; 1 -> 01")
        with pytest.raises(WordError, match="finite"):
            MorphicWord.from_dsl("0 -> 0")

    def test_concurrent_growth(self):
        w = MorphicWord.from_dsl("0 -> 012; 1 -> 02; 2 -> 1")
        reference = MorphicWord.from_dsl("0 -> 012; 1 -> 02; 2 -> 1").prefix(200_000).letters
        errors = []

        def grow(n):
            for length in range(n, 200_000, 9973):
                got = w.materialize(length)
                if not reference.startswith(got[:length]) or len(got) < length:
                    errors.append(length)

        threads = [threading.Thread(target=grow, args=(s,)) for s in (1, 17, 333, 4444)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        assert w.prefix(200_000).letters == reference


class TestFactors:
    def test_examples(self, fib, tm):
        prefix = fib.prefix(10_000)
        assert [factor_count(prefix, n) for n in (1, 2, 3)] == [2, 3, 4]
        assert factor_count(tm.prefix(2**12), 2) == 4
        assert factor_count(W("0000"), 2) == 1

    def test_bounds(self):
        with pytest.raises(ValueError):
            factor_count(W("01"), 3)
        with pytest.raises(ValueError):
            factor_count(W("01"), 0)

    @given(words, st.integers(1, 20))
    def test_against_set_oracle(self, letters, n):
        if not letters:
            return
        n = min(n, len(letters))
        w = FiniteWord(letters, Alphabet.digits(3))
        assert factor_count(w, n) == len({letters[j:j + n] for j in range(len(letters) - n + 1)})


class TestPeriods:
    def test_examples(self):
        assert minimal_period(W("010101")) == 2
        assert minimal_period(W("011000")) == brute_period(b"\0\1\1\0\0\0") == 5
        assert minimal_period(W("0")) == 1
        assert is_primitive(W("0123"))
        assert not is_primitive(W("0101"))
        assert is_primitive(W("001"))

    def test_exhaustive_binary(self):
        for n in range(1, 13):
            for t in itertools.product(b"\0\1", repeat=n):
                s = bytes(t)
                w = FiniteWord(s, Alphabet("01"))
                p = minimal_period(w)
                assert p == brute_period(s)
                assert is_primitive(w) == brute_primitive(s)
                full_power = p < n and n % p == 0
                assert is_primitive(w) == (not full_power)

    @given(st.binary(min_size=1, max_size=16).map(lambda b: bytes(c % 3 for c in b)))
    def test_rotation_oracle(self, s):
        w = FiniteWord(s, Alphabet("012"))
        assert minimal_period(w) == brute_period(s)
        assert is_primitive(w) == brute_primitive(s)


class TestCache:
    def test_round_trip(self, tmp_path, tm):
        path = tmp_path / "tm.mwpf"
        write_prefix_cache(path, tm.prefix(1000))
        raw = path.read_bytes()
        assert raw[:4] == b"MWPF" and raw[4] == 1 and raw[5] == 2
        assert int.from_bytes(raw[6:14], "little") == 1000
        assert read_prefix_cache(path) == tm.prefix(1000)

    def test_rejects_unknown_version(self, tmp_path):
        path = tmp_path / "bad.mwpf"
        path.write_bytes(b"MWPF" + bytes([2, 2]) + (0).to_bytes(8, "little"))
        with pytest.raises(CacheFormatError, match="version"):
            read_prefix_cache(path)

    @pytest.mark.parametrize("blob", [
        b"XXXX" + bytes([1, 2]) + (0).to_bytes(8, "little"),
        b"MWPF" + bytes([1, 2]) + (5).to_bytes(8, "little") + b"\0\1",
        b"MWPF\1",
    ])
    def test_rejects_malformed(self, tmp_path, blob):
        path = tmp_path / "bad.mwpf"
        path.write_bytes(blob)
        with pytest.raises(CacheFormatError):
            read_prefix_cache(path)


def test_alphabet_limits():
    with pytest.raises(WordError):
        Alphabet("")
    with pytest.raises(WordError):
        Alphabet("00")
    assert Alphabet.digits(255).size == 255
    with pytest.raises(WordError):
        Alphabet.digits(256)
    with pytest.raises(WordError):
        FiniteWord(b"\x02", Alphabet("01"))
