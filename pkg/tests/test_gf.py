import pytest
from hypothesis import given, settings, strategies as st

from pgodd.gf import FieldError, FieldSpec, build_field, cube_extension, norm_group, parse_field_spec

QS = (3, 5, 7, 9, 25, 27, 49)


@pytest.fixture(scope="module", params=QS)
def F(request):
    return build_field(request.param)


def test_order_and_generator(F):
    g = F.generator
    assert F.order(g) == F.q - 1
    assert len(set(F.exp[: F.q - 1].tolist())) == F.q - 1


def test_squares_half(F):
    assert len(F.squares()) == (F.q - 1) // 2
    assert len(F.nonsquares()) == (F.q - 1) // 2
    assert not F.is_square(F.least_nonsquare())


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(QS), st.data())
def test_field_axioms(q, data):
    F = build_field(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == F.element_from_int(1)


def test_prime_field_is_residues():
    F = build_field(7)
    for a in range(7):
        for b in range(7):
            assert F.add(a, b) == (a + b) % 7
            assert F.mul(a, b) == (a * b) % 7


def test_frobenius_fixes_prime_subfield():
    F = build_field(9)
    fixed = [x for x in range(9) if F.frobenius(x) == x]
    assert len(fixed) == 3
    assert sorted(F.subfield(3)) == sorted(fixed)


@pytest.mark.parametrize("q", [2, 4, 6, 12, 1])
def test_rejects_unsupported(q):
    with pytest.raises(FieldError):
        build_field(q)


def test_parse_spec():
    assert parse_field_spec("q=9") == FieldSpec(3, 2)
    s = parse_field_spec("p=3,h=2,modulus=[2,1,1]")
    assert (s.p, s.h, s.modulus) == (3, 2, (2, 1, 1))
    with pytest.raises(FieldError):
        parse_field_spec("nonsense")


def test_non_primitive_modulus_rejected():
    # x^2 + 1 is irreducible over GF(3) but x has order 4, not 8
    with pytest.raises(FieldError):
        build_field(FieldSpec(3, 2, (1, 0, 1)))


def test_cube_extension_order():
    E = cube_extension(build_field(3))
    assert E.q == 27 and E.order(E.generator) == 26


@pytest.mark.parametrize("q", [3, 5, 9, 11])
def test_norm_group_cyclic(q):
    G = norm_group(build_field(q))
    assert G.order == q + 1
    assert len({G.power(k) for k in range(q + 1)}) == q + 1
    for k in range(q + 1):
        assert G.log(G.power(k)) == k
