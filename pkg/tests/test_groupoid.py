"""Groupoid representations, validation, chi, and weightings."""

from fractions import Fraction

import pytest

from gspans.algebra import AbelianGroup
from gspans.constructions import (
    coset_groupoid,
    delooping_bg,
    discrete_groupoid,
)
from gspans.groupoid import (
    ActionGroupoid,
    DisjointUnion,
    SizeGuardError,
    SymmetricGroup,
    check_weighting,
    disjoint_union_tables,
    weighting,
)

Z2 = AbelianGroup([2])
Z4 = AbelianGroup([4])
Z6 = AbelianGroup([6])


def test_delooping_bz2_is_valid():
    bg = delooping_bg(Z2)
    assert bg.validate() == []
    assert len(bg.objects) == 1
    assert len(bg.morphisms) == 2
    assert bg.chi() == Fraction(1, 2)
    assert len(bg.components()) == 1


def test_validation_reports_witnesses():
    bg = delooping_bg(Z4)
    # break associativity indirectly: swap one compose result
    broken = dict(bg.compose)
    (k, v), *_ = [(k, v) for k, v in broken.items() if k[0] != k[1]]
    other = next(m for m in bg.morphisms if m != v)
    broken[k] = other
    import gspans.groupoid as G

    bad = G.TableGroupoid(
        bg.objects, bg.source, bg.target, bg.identity, broken, bg.inverse
    ).validate()
    assert bad, "broken table must be reported"
    # drop an inverse
    inv = dict(bg.inverse)
    mid = next(m for m in bg.morphisms if bg.inverse[m] != m)
    inv[mid] = mid
    bad2 = G.TableGroupoid(
        bg.objects, bg.source, bg.target, bg.identity, bg.compose, inv
    ).validate()
    assert any("inverse" in msg for msg in bad2)


def test_components_and_chi():
    d = discrete_groupoid(5)
    assert len(d.components()) == 5
    assert d.chi() == 5
    assert d.is_discrete
    u = disjoint_union_tables([delooping_bg(Z2), delooping_bg(Z2), delooping_bg(Z4)])
    # chi additive: 1/2 + 1/2 + 1/4
    assert u.chi() == Fraction(5, 4)
    assert u.validate() == []
    empty = discrete_groupoid(0)
    assert empty.chi() == 0 and empty.components() == []


def test_coset_groupoid():
    hg = coset_groupoid(Z4, [(0,), (2,)])
    assert len(hg.objects) == 2
    assert len(hg.components()) == 1  # double cosets are never empty
    assert hg.chi() == Fraction(1, 2)
    # hom-sets are double cosets: here |H| = 2 elements each
    a, b = hg.objects
    assert hg.hom_size(a, b) == 2 and hg.hom_size(a, a) == 2
    t = hg.materialize()
    assert t.validate() == []
    assert t.chi() == Fraction(1, 2)
    with pytest.raises(ValueError):
        coset_groupoid(Z4, [(0,), (1,), (2,)])


def test_regular_action_is_eg():
    eg = coset_groupoid(Z6, [(0,)])
    assert eg.chi() == 1
    assert len(eg.components()) == 1
    assert all(eg.aut_order(x) == 1 for x in eg.objects)


def test_action_groupoid_chi_is_x_over_g():
    sym = SymmetricGroup(3)
    carrier = sym.elements()  # conjugation action on all of S3
    ag = ActionGroupoid(sym, carrier, lambda x, g: sym.op(sym.op(sym.inv(g), x), g))
    assert ag.chi() == Fraction(len(carrier), sym.order)
    t = ag.materialize()
    assert t.validate() == []
    assert t.chi() == ag.chi()
    assert sorted(len(c) for c in ag.components()) == [1, 2, 3]  # conjugacy classes


def test_materialize_guard():
    sym = SymmetricGroup(4)
    ag = ActionGroupoid(
        sym, sym.elements(), lambda x, g: sym.op(sym.op(sym.inv(g), x), g)
    )
    with pytest.raises(SizeGuardError):
        ag.materialize(guard=10)


def test_full_subgroupoid():
    u = disjoint_union_tables([delooping_bg(Z2), discrete_groupoid(2)])
    sub = u.full_subgroupoid(u.objects)
    assert sub.chi() == u.chi()
    assert u.full_subgroupoid([]).chi() == 0
    comp = u.components()[0]
    assert u.full_subgroupoid(comp).chi() == Fraction(1, 2)


def test_weighting_defining_equation():
    for g in [
        delooping_bg(Z4),
        discrete_groupoid(3),
        coset_groupoid(Z4, [(0,), (2,)]).materialize(),
        disjoint_union_tables([delooping_bg(Z2), discrete_groupoid(2)]),
    ]:
        k = weighting(g)
        assert check_weighting(g, k)
        # discrete groupoids have all weights 1
        if g.is_discrete:
            assert all(v == 1 for v in k.values())


def test_weighting_component_sum():
    g = disjoint_union_tables([delooping_bg(Z2), delooping_bg(Z4), discrete_groupoid(1)])
    k = weighting(g)
    total = sum(
        sum(k[o] for o in comp) * g.aut_order(comp[0]) for comp in g.components()
    )
    assert total == len(g.components())


def test_aut_order_constant_on_components():
    hg = coset_groupoid(Z6, [(0,), (3,)]).materialize()
    for comp in hg.components():
        orders = {hg.aut_order(o) for o in comp}
        assert len(orders) == 1
    for a in hg.objects:
        for b in hg.objects:
            same = any(a in c and b in c for c in hg.components())
            assert hg.hom_size(a, b) == (hg.aut_order(a) if same else 0)


def test_chi_additive_over_component_constant_levels():
    u = disjoint_union_tables(
        [delooping_bg(Z2), discrete_groupoid(2), delooping_bg(Z4)]
    )
    comps = u.components()
    level_of = {}
    for idx, comp in enumerate(comps):
        for o in comp:
            level_of[o] = idx % 2
    total = Fraction(0)
    for level in (0, 1):
        objs = [o for o in u.objects if level_of[o] == level]
        total += u.full_subgroupoid(objs).chi()
    assert total == u.chi()


def test_components_canonical_order():
    u = disjoint_union_tables([discrete_groupoid(2), delooping_bg(Z2)])
    comps = u.components()
    assert comps == sorted(comps, key=lambda c: c[0])
    assert all(c[0] == min(c) for c in comps)
    assert u.component_reps() == [c[0] for c in comps]


def test_disjoint_union_view():
    sym = SymmetricGroup(2)
    ag = ActionGroupoid(
        sym, sym.elements(), lambda x, g: sym.op(sym.op(sym.inv(g), x), g)
    )
    u = DisjointUnion([ag, ag])
    assert u.chi() == 2 * ag.chi()
    assert len(u.components()) == 2 * len(ag.components())
    assert {u.aut_order(o) for o in u.objects} == {
        ag.aut_order(x) for x in ag.objects
    }
