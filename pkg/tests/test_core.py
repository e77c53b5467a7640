import random

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistcube.core import BitRangeView, Vertex, kappa, phi, phi_bits, xor_range


def kappa_reference(n):
    # independent evaluation at 80 digits
    if n == 1:
        return 0
    with mpmath.workdps(80):
        lg = mpmath.log(n, 2)
        return max(1, int(mpmath.ceil(lg - 2 * mpmath.log(lg, 2))))


@pytest.mark.parametrize("n, expected", [(1, 0), (2, 1), (3, 1), (4, 1), (16, 1), (96, 2), (99, 2)])
def test_kappa_values(n, expected):
    assert kappa(n) == expected


def test_kappa_switches_to_two_at_80():
    assert [kappa(m) for m in range(2, 80)] == [1] * 78
    assert kappa(80) == 2


def test_kappa_matches_high_precision_reference():
    for n in list(range(1, 3000)) + [2**16, 2**16 + 1, 4096]:
        assert kappa(n) == kappa_reference(n), n


def test_kappa_exact_integer_points():
    # log2 n - 2 log2 log2 n is exactly 0 at n = 4 and exactly 1 at n = 2
    assert kappa(4) == 1 and kappa(2) == 1
    # 2^16: 16 - 2*4 = 8 exactly
    assert kappa(2**16) == 8


@pytest.mark.parametrize("bad", [0, -3])
def test_kappa_domain(bad):
    with pytest.raises(ValueError):
        kappa(bad)


def test_kappa_type():
    with pytest.raises(TypeError):
        kappa(2.0)


def test_phi_examples():
    assert str(phi(Vertex.parse("010"))) == "010"
    assert str(phi(Vertex.parse("10"))) == "10"
    assert str(phi(Vertex.parse("1"))) == "1"
    # kappa(4) = 1: first bit XOR last bit
    assert str(phi(Vertex.parse("0011"))) == "1011"


def test_phi_definition_bitwise():
    rng = random.Random(1)
    for _ in range(500):
        n = rng.randint(1, 200)
        x = rng.getrandbits(n)
        s = format(x, f"0{n}b")
        k = kappa(n)
        want = "".join(str(int(s[j]) ^ int(s[n - k + j])) for j in range(k)) + s[k:]
        assert format(phi_bits(x, n), f"0{n}b") == want


def test_phi_involution_exhaustive():
    for n in range(1, 13):
        for x in range(1 << n):
            assert phi_bits(phi_bits(x, n), n) == x


@given(st.integers(1, 128).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << n) - 1))))
def test_phi_involution_random(case):
    n, x = case
    v = Vertex(n, x)
    assert phi(phi(v)) == v


def test_vertex_parse_and_index():
    v = Vertex.parse("0010")
    assert v.value == 2 and v.n == 4
    assert [v[i] for i in range(1, 5)] == [0, 0, 1, 0]
    assert str(v.range(2, 3)) == "01"
    with pytest.raises(ValueError):
        Vertex.parse("012")
    with pytest.raises(ValueError):
        Vertex.parse("")
    with pytest.raises((IndexError, ValueError)):
        v[0]


def test_bit_range_view_bounds():
    v = Vertex.parse("0110")
    assert BitRangeView(v, 2, 3).width == 2
    with pytest.raises(ValueError):
        BitRangeView(v, 3, 2)
    with pytest.raises(ValueError):
        BitRangeView(v, 1, 5)


@pytest.mark.parametrize("x, a, b, out", [
    ("0101", (1, 2), (3, 4), "00"),
    ("0110", (1, 2), (3, 4), "11"),
    ("01", (1, 1), (2, 2), "1"),
])
def test_xor_range(x, a, b, out):
    v = Vertex.parse(x)
    assert xor_range(v, BitRangeView(v, *a), BitRangeView(v, *b)) == out
    assert xor_range(v, a, b) == out


def test_xor_range_width_mismatch():
    v = Vertex.parse("0110")
    with pytest.raises(ValueError):
        xor_range(v, (1, 2), (2, 4))


def test_vertex_ordering_and_hash():
    a, b = Vertex.parse("001"), Vertex.parse("010")
    assert a < b and len({a, Vertex.parse("001")}) == 1
    assert list(Vertex.zeros(3).bits()) == [0, 0, 0]
