import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from antipowers import kernels
from antipowers.antipower import naive_first_duplicate


def test_python_backend_always_available():
    assert "python" in kernels.available_backends()
    assert kernels.BACKEND in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_apply(backend):
    images = [b"\0\1", b"\1\0"]
    assert backend.apply_morphism(b"\0\1", images) == b"\0\1\1\0"
    assert backend.apply_morphism(b"", images) == b""


def test_count_factors(backend):
    assert backend.count_factors(b"\0\0\0\0", 2) == 1
    assert backend.count_factors(b"\0\1\0\0\1", 2) == 3
    with pytest.raises(ValueError):
        backend.count_factors(b"\0\1", 3)


def test_window_bounds(backend):
    with pytest.raises(IndexError):
        backend.first_duplicate(b"\0\1\0", 1, 1, 3)
    index = backend.BlockIndex(b"\0\1\0")
    with pytest.raises(IndexError):
        index.first_duplicate(0, 2, 2)
    assert len(index) == 3


@given(st.integers(2, 4).flatmap(lambda m: st.lists(st.integers(0, m - 1), min_size=1, max_size=60)),
       st.data())
def test_matches_naive(backend, letters, data):
    buf = bytes(letters)
    m = data.draw(st.integers(1, len(buf)))
    k = data.draw(st.integers(1, len(buf) // m))
    i = data.draw(st.integers(0, len(buf) - k * m))
    expected = naive_first_duplicate(buf, i, m, k)
    assert backend.first_duplicate(buf, i, m, k) == expected
    index = backend.BlockIndex(buf)
    assert index.first_duplicate(i, m, k) == expected
    assert index.is_distinct(i, m, k) == (expected is None)


def test_gamma_matches_naive(backend):
    rng = random.Random(7)
    for _ in range(300):
        buf = bytes(rng.randrange(rng.choice((2, 3))) for _ in range(rng.randrange(20, 120)))
        k = rng.randrange(2, 6)
        mmax = len(buf) // k
        expected = next((m for m in range(1, mmax + 1) if naive_first_duplicate(buf, 0, m, k) is None), None)
        assert backend.BlockIndex(buf).gamma(0, k, mmax) == expected


def test_collision_heavy_long_blocks(backend):
    # long blocks differing only in their final letter
    block = bytes(random.Random(1).randrange(2) for _ in range(5000))
    buf = block + block[:-1] + b"\1" + block[:-1] + b"\0" + block
    expected = naive_first_duplicate(buf, 0, 5000, 4)
    assert backend.first_duplicate(buf, 0, 5000, 4) == expected
