"""Group ring and cyclotomic arithmetic, all equalities exact."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gspans.algebra import (
    AbelianGroup,
    Character,
    CyclotomicNumber,
    GroupMismatchError,
    GroupRingElement,
    NotASubgroupError,
    average_idempotent,
    cyclotomic_polynomial,
    euler_phi,
)

Z2 = AbelianGroup([2])
Z4 = AbelianGroup([4])
Z2xZ3 = AbelianGroup([2, 3])
TRIVIAL = AbelianGroup([])


def qg(group, *pairs):
    return GroupRingElement(group, {g: Fraction(c) for g, c in pairs})


def test_make_group_examples():
    assert Z2.order == 2 and Z2.elements() == [(0,), (1,)]
    assert TRIVIAL.order == 1 and TRIVIAL.elements() == [()]
    assert Z4.order == 4
    with pytest.raises(ValueError):
        AbelianGroup([0])


def test_group_arithmetic():
    assert Z2xZ3.add((1, 2), (1, 2)) == (0, 1)
    assert Z2xZ3.neg((1, 2)) == (1, 1)
    assert Z2xZ3.elements()[0] == (0, 0)
    assert Z2xZ3.elements() == sorted(Z2xZ3.elements())


def test_ring_add_examples():
    e, s = (0,), (1,)
    a = qg(Z2, (e, 1), (s, 1))
    assert a + qg(Z2, (s, -1)) == qg(Z2, (e, 1))
    assert GroupRingElement.zero(Z2) + a == a
    assert qg(Z2, (e, Fraction(1, 2))) + qg(Z2, (e, Fraction(1, 2))) == qg(Z2, (e, 1))
    with pytest.raises(GroupMismatchError):
        a + GroupRingElement.one(Z4)


def test_ring_mul_examples():
    e, s = (0,), (1,)
    u = average_idempotent(Z2, [e, s])
    assert u * u == u
    a = qg(Z2, (e, 2), (s, 3))
    assert GroupRingElement.one(Z2) * a == a
    # (e + s)^2 = 2e + 2s in QZ2
    both = qg(Z2, (e, 1), (s, 1))
    assert both * both == qg(Z2, (e, 2), (s, 2))


def test_average_idempotent_examples():
    assert average_idempotent(Z2, [(0,)]) == GroupRingElement.one(Z2)
    assert average_idempotent(Z2, [(0,), (1,)]) == qg(
        Z2, ((0,), Fraction(1, 2)), ((1,), Fraction(1, 2))
    )
    # 2Z4 <= Z4
    assert average_idempotent(Z4, [(0,), (2,)]) == qg(
        Z4, ((0,), Fraction(1, 2)), ((2,), Fraction(1, 2))
    )
    with pytest.raises(NotASubgroupError):
        average_idempotent(Z4, [(0,), (1,)])


def test_all_subgroups_z4():
    subs = Z4.all_subgroups()
    assert sorted(len(s) for s in subs) == [1, 2, 4]


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)  # (x^4-1)/(Phi1*Phi2)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert len(cyclotomic_polynomial(12)) - 1 == euler_phi(12)


def test_cyclotomic_residue_arithmetic():
    i = CyclotomicNumber.zeta_power(4, 1)
    assert i * i == CyclotomicNumber.from_rational(4, -1)
    assert CyclotomicNumber.zeta_power(4, 4) == CyclotomicNumber.one(4)
    # Phi_m(zeta_m) = 0 in the residue ring
    for m in range(1, 13):
        z = CyclotomicNumber.zeta_power(m, 1)
        acc = CyclotomicNumber.zero(m)
        for c in reversed(cyclotomic_polynomial(m)):
            acc = acc * z + CyclotomicNumber.from_rational(m, c)
        assert acc.is_zero()


def test_character_examples():
    rho = Character(Z4, (1,))
    assert rho.is_injective()
    # injective rho on Z4 sends g1 to zeta_4 = i
    assert rho.apply(GroupRingElement.basis(Z4, (1,))) == CyclotomicNumber.zeta_power(4, 1)
    # rho of a full nontrivial subgroup average is exactly 0
    u = average_idempotent(Z4, [(0,), (2,)])
    assert rho.apply(u).is_zero()
    # trivial character is the augmentation (as a rational inside Q(zeta_4))
    triv = Character.trivial(Z4)
    x = qg(Z4, ((0,), Fraction(1, 3)), ((3,), Fraction(1, 6)))
    assert triv.apply(x) == CyclotomicNumber.from_rational(4, Fraction(1, 2))
    assert x.augmentation() == Fraction(1, 2)


def test_geometric_sum_vanishes():
    # sum of rho over a subgroup is 0 whenever rho is nontrivial on it
    for group in [Z4, Z2xZ3, AbelianGroup([2, 2])]:
        for sub in group.all_subgroups():
            full = GroupRingElement(group, {g: 1 for g in sub})
            for exps in [tuple(1 for _ in group.orders), tuple(
                n - 1 for n in group.orders
            )]:
                rho = Character(group, exps)
                nontrivial = any(rho.exponent_of(g) != 0 for g in sub)
                total = rho.apply(full)
                if nontrivial:
                    assert total.is_zero()
                else:
                    assert total == CyclotomicNumber.from_rational(
                        rho.conductor, len(sub)
                    )


def test_render_format():
    x = qg(Z2xZ3, ((0, 0), 1), ((1, 2), Fraction(-1, 2)))
    assert x.render() == "1*g(0,0) + -1/2*g(1,2)"
    assert GroupRingElement.zero(Z2).render() == "0"
    one = GroupRingElement.one(TRIVIAL)
    assert one.render() == "1*g()"


# --- randomized laws -------------------------------------------------------

groups = st.sampled_from([Z2, Z4, Z2xZ3, AbelianGroup([2, 2]), TRIVIAL])


def ring_elements(group):
    coeff = st.fractions(
        min_value=-3, max_value=3, max_denominator=4
    )
    els = st.sampled_from(group.elements())
    return st.dictionaries(els, coeff, max_size=4).map(
        lambda d: GroupRingElement(group, d)
    )


@settings(max_examples=120, deadline=None)
@given(groups.flatmap(lambda G: st.tuples(ring_elements(G), ring_elements(G), ring_elements(G))))
def test_ring_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    one = GroupRingElement.one(a.group)
    assert one * a == a


@settings(max_examples=80, deadline=None)
@given(groups.flatmap(lambda G: st.tuples(ring_elements(G), ring_elements(G), st.integers(0, 100))))
def test_character_is_a_ring_map(data):
    a, b, seed = data
    n = len(a.group.orders)
    exps = tuple((seed + 7 * i) % max(o, 1) for i, o in enumerate(a.group.orders))
    rho = Character(a.group, exps) if n else Character.trivial(a.group)
    assert rho.apply(a * b) == rho.apply(a) * rho.apply(b)
    assert rho.apply(a + b) == rho.apply(a) + rho.apply(b)


def test_idempotent_squares_for_all_subgroups():
    for group in [Z2, Z4, Z2xZ3, AbelianGroup([2, 2])]:
        for sub in group.all_subgroups():
            u = average_idempotent(group, sub)
            assert u * u == u
