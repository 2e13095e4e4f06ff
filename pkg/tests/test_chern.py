import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxsub.chern import ChernCharacter, TotalChernClass

from helpers import elements_st, exponential_element, g2_preset

PRESET = g2_preset()
RING = PRESET.ring


def character_from(rank, *part_texts):
    return ChernCharacter(RING, rank, [RING.parse(t) for t in part_texts])


# -- conversion goldens --------------------------------------------------------


def test_universal_bundle_character():
    ch = PRESET.chern_u.character(2)
    assert ch.rank == 2
    assert ch.part(1) == RING.parse("alpha + f")
    assert ch.part(2) == RING.parse("-xi2")
    assert ch.part(3) == RING.parse("-1/12*alpha^3 - 1/4*alpha^2*f")
    assert ch.part(4).is_zero
    assert ch.part(5).is_zero


def test_line_bundle_character():
    ch = PRESET.chern_l.character(1)
    assert ch.rank == 1
    assert ch.part(1) == RING.generator("xi1")
    assert ch.part(2) == RING.parse("-theta*f")
    assert all(ch.part(k).is_zero for k in (3, 4, 5))


def test_trivial_bundle_character():
    c = TotalChernClass(RING)  # total class 1
    ch = c.character(7)
    assert ch.rank == 7
    assert all(p.is_zero for p in ch.parts)


def test_constant_character_has_trivial_class():
    ch = ChernCharacter.constant(RING, RING.parameter("n"))
    c = ch.total_class()
    assert all(p.is_zero for p in c.parts)


def test_class_of_line_bundle_character_roundtrip():
    ch = character_from(1, "xi1", "-theta*f")
    c = ch.total_class()
    assert c.component(1) == RING.generator("xi1")
    assert all(c.component(k).is_zero for k in (2, 3, 4, 5))


def test_top_class_of_displayed_difference():
    # the displayed virtual difference: rank 4 with four graded components
    ch = character_from(
        4,
        "(1/2*n - 2)*alpha + 2*n*theta",
        "-1/4*n*alpha^2 - n*Lambda - n*alpha*theta",
        "(1/6 - 1/24*n)*alpha^3",
        "1/12*n*alpha^3*theta",
        "0",
    )
    c5 = ch.total_class().component(5)
    assert c5 == RING.parse("(1/24*n^5 - 5/12*n^3)*alpha^3*theta^2 + n^3*theta*Lambda^2")


# -- dual, tensor, sum ----------------------------------------------------------


def test_dual_of_line_bundle():
    ch = character_from(1, "xi1", "-theta*f")
    dual = ch.dual()
    assert dual.part(1) == RING.parse("-xi1")
    assert dual.part(2) == RING.parse("-theta*f")
    # oracle: the dual of a line bundle is the exponential of -c_1
    expected = exponential_element(RING.parse("-xi1"))
    for k in range(1, 6):
        assert dual.part(k) == expected.homogeneous_component(2 * k)


def test_dual_fixes_constants():
    ch = ChernCharacter.constant(RING, 5)
    assert ch.dual() == ch


def test_tensor_unit_and_ranks():
    one = ChernCharacter.constant(RING, 1)
    u = PRESET.chern_u.character(2)
    assert u.tensor(one) == u
    n = RING.parameter("n")
    big = ChernCharacter.constant(RING, n)
    assert u.tensor(PRESET.chern_l.character(1), big).rank == 2 * n


def test_subtraction_and_negation():
    u = PRESET.chern_u.character(2)
    diff = u - u
    assert diff.rank == 0
    assert all(p.is_zero for p in diff.parts)
    assert (-u).rank == -2


def test_inhomogeneous_component_rejected():
    with pytest.raises(ValueError):
        ChernCharacter(RING, 1, [RING.parse("alpha + alpha^2")])
    with pytest.raises(ValueError):
        TotalChernClass(RING, [RING.parse("theta^2")])


def test_total_class_requires_unit_constant_term():
    with pytest.raises(ValueError):
        TotalChernClass.from_total_element(RING, RING.parse("2 + alpha"))


# -- law-level checks ------------------------------------------------------------


def random_class_st():
    return elements_st(RING, max_terms=3).map(
        lambda x: TotalChernClass(
            RING,
            [x.homogeneous_component(2 * k) for k in range(1, RING.top_degree // 2 + 1)],
        )
    )


def random_character_st():
    return st.tuples(st.integers(-3, 3), elements_st(RING, max_terms=3)).map(
        lambda pair: ChernCharacter(
            RING,
            pair[0],
            [pair[1].homogeneous_component(2 * k) for k in range(1, RING.top_degree // 2 + 1)],
        )
    )


@given(random_class_st(), st.integers(-3, 3))
def test_roundtrip_class_to_character(c, rank):
    assert c.character(rank).total_class() == c


@given(random_character_st())
def test_roundtrip_character_to_class(ch):
    assert ch.total_class().character(ch.rank) == ch


@given(random_character_st(), random_character_st())
def test_class_multiplicativity(a, b):
    assert (a + b).total_class() == a.total_class() * b.total_class()


@given(random_character_st())
def test_dual_involution(ch):
    assert ch.dual().dual() == ch


@given(random_character_st(), random_character_st())
def test_dual_of_tensor(a, b):
    assert a.tensor(b).dual() == a.dual().tensor(b.dual())


@given(random_character_st(), random_character_st())
def test_tensor_commutative(a, b):
    assert a.tensor(b) == b.tensor(a)


@given(st.sampled_from(["alpha", "theta", "xi1", "f"]), st.integers(-2, 2))
def test_line_bundle_exponential(name, scale):
    x = RING.generator(name) * scale
    one_plus = RING.one() + x
    ch = TotalChernClass.from_total_element(RING, one_plus).character(1)
    expected = exponential_element(x)
    assert ch.rank == 1
    for k in range(1, RING.top_degree // 2 + 1):
        assert ch.part(k) == expected.homogeneous_component(2 * k)
