"""Groupoid-building recipes: deloopings, cosets, homotopy pullbacks, fibres,
two-sided pullbacks, and Grothendieck constructions of set-valued functors.

The homotopy pullback of M1 --R--> T <--L-- M2 has objects (a1, t, a2) with
t in T(R a1, L a2); a morphism (m1, m2) : (a1,t,a2) -> (b1,u,b2) requires
u o R(m1) = L(m2) o t in T.  Pullback outputs are explicit tables (guarded),
except over a discrete T with action-groupoid legs, where the pullback is
again a disjoint union of action groupoids and stays lazy.
"""

from dataclasses import dataclass
from fractions import Fraction

from gspans.groupoid import (
    ActionGroupoid,
    DisjointUnion,
    ProductGroup,
    SizeGuardError,
    TableBuilder,
    discrete_table,
    size_guard,
    weighting,
)


class FunctorError(ValueError):
    """A would-be functor fails a preservation law; message carries a witness."""


def _as_fn(m):
    return m if callable(m) else m.__getitem__


class GroupoidFunctor:
    """Functor between groupoid views; maps given as dicts or callables.

    Validation is eager by default: a functor failing a preservation check is
    rejected at construction (composition checks are capped by pairs_budget
    on large sources, exhaustive otherwise).
    """

    def __init__(self, source, target, obj_map, mor_map, check=True,
                 pairs_budget=50000):
        self.source = source
        self.target = target
        self.on_obj = _as_fn(obj_map)
        self.on_mor = _as_fn(mor_map)
        if check:
            self.validate(pairs_budget)

    def validate(self, pairs_budget=50000):
        src, tgt = self.source, self.target
        tgt_objects = set(tgt.objects)
        mors = src.all_morphisms()
        for m in mors:
            fm = self.on_mor(m)
            if self.on_obj(src.source_of(m)) != tgt.source_of(fm) or self.on_obj(
                src.target_of(m)
            ) != tgt.target_of(fm):
                raise FunctorError("functor breaks source/target at %r" % (m,))
        for o in src.objects:
            if self.on_obj(o) not in tgt_objects:
                raise FunctorError("functor sends %r outside the target" % (o,))
            if self.on_mor(src.identity_at(o)) != tgt.identity_at(self.on_obj(o)):
                raise FunctorError("functor breaks the identity at %r" % (o,))
        by_src = {}
        for m in mors:
            by_src.setdefault(src.source_of(m), []).append(m)
        seen = 0
        for m1 in mors:
            for m2 in by_src.get(src.target_of(m1), []):
                if self.on_mor(src.compose_m(m2, m1)) != tgt.compose_m(
                    self.on_mor(m2), self.on_mor(m1)
                ):
                    raise FunctorError(
                        "functor breaks composition on (%r, %r)" % (m2, m1)
                    )
                seen += 1
                if seen >= pairs_budget:
                    return

    def then(self, other):
        """other after self."""
        assert self.target is other.source or self.target.objects == other.source.objects
        return GroupoidFunctor(
            self.source,
            other.target,
            lambda o: other.on_obj(self.on_obj(o)),
            lambda m: other.on_mor(self.on_mor(m)),
            check=False,
        )


def identity_functor(view):
    return GroupoidFunctor(view, view, lambda o: o, lambda m: m, check=False)


class GroupValuedFunctor:
    """Functor S -> BG packaged as a G-valued map on morphisms of S."""

    def __init__(self, source, group, mor_map, check=True, pairs_budget=50000):
        self.source = source
        self.group = group
        self._mor_map = _as_fn(mor_map)
        if check:
            self.validate(pairs_budget)

    def value(self, m):
        return self._mor_map(m)

    def validate(self, pairs_budget=50000):
        src, G = self.source, self.group
        for o in src.objects:
            if self.value(src.identity_at(o)) != G.identity:
                raise FunctorError("BG-functor nonzero on identity at %r" % (o,))
        mors = src.all_morphisms()
        by_src = {}
        for m in mors:
            G.check(self.value(m))
            by_src.setdefault(src.source_of(m), []).append(m)
        seen = 0
        for m1 in mors:
            for m2 in by_src.get(src.target_of(m1), []):
                if self.value(src.compose_m(m2, m1)) != G.add(
                    self.value(m2), self.value(m1)
                ):
                    raise FunctorError(
                        "BG-functor breaks composition on (%r, %r)" % (m2, m1)
                    )
                seen += 1
                if seen >= pairs_budget:
                    return

    @classmethod
    def trivial(cls, source, group):
        return cls(source, group, lambda m: group.identity, check=False)

    def extensionally_equals(self, other):
        """Same source objects and equal values on a generating family."""
        if self.group != other.group:
            return False
        if list(self.source.objects) != list(other.source.objects):
            return False
        return all(
            self.value(m) == other.value(m) for m in self.source.morphism_sample()
        )


# ---------------------------------------------------------------------------
# elementary builders


def delooping_bg(group):
    """BG: one object, morphisms the elements of the group."""
    b = TableBuilder()
    b.obj("*")
    for g in group.elements():
        b.mor(g, "*", "*")
    b.set_identity("*", group.identity)
    for g1 in group.elements():
        for g2 in group.elements():
            b.set_compose(g2, g1, group.op(g2, g1))
        b.set_inverse(g1, group.inv(g1))
    t = b.build()
    t.group = group
    return t


def bg_self_functor(bg):
    """The tautological BG -> G valued functor (morphism labels are elements)."""
    return GroupValuedFunctor(
        bg, bg.group, lambda m: bg.morphism_labels[m], check=False
    )


def discrete_groupoid(labels_or_n):
    labels = (
        list(range(labels_or_n)) if isinstance(labels_or_n, int) else list(labels_or_n)
    )
    return discrete_table(labels)


def trivial_subgroupoid(view, d):
    """1{d}: the object d with its identity as only morphism."""
    b = TableBuilder()
    b.obj(d)
    b.mor("id", d, d)
    b.set_identity(d, "id")
    b.set_compose("id", "id", "id")
    b.set_inverse("id", "id")
    return b.build()


def point_inclusion(view, d):
    """1{d} together with its inclusion into the ambient groupoid."""
    one = trivial_subgroupoid(view, d)
    inc = GroupoidFunctor(
        one,
        view,
        lambda o: d,
        lambda m: view.identity_at(d),
        check=False,
    )
    return one, inc


def coset_groupoid(group, subgroup_elements):
    """H\\G as the action groupoid of G on right cosets Hg; hom-sets are
    double cosets.  Cosets are canonicalized to their minimal element."""
    sub = sorted(set(subgroup_elements))
    if group.identity not in sub:
        raise ValueError("subgroup must contain the identity")
    for h1 in sub:
        if group.inv(h1) not in sub:
            raise ValueError("%r is not closed under inverses" % (sub,))
        for h2 in sub:
            if group.op(h1, h2) not in set(sub):
                raise ValueError("%r is not closed under the operation" % (sub,))

    def coset_of(x):
        return min(group.op(h, x) for h in sub)

    carrier = sorted({coset_of(x) for x in group.elements()})

    def act(rep, g):
        return coset_of(group.op(rep, g))

    ag = ActionGroupoid(group, carrier, act)
    ag.coset_of = coset_of
    ag.subgroup = sub
    return ag


# ---------------------------------------------------------------------------
# homotopy pullbacks


@dataclass
class PullbackResult:
    groupoid: object
    p1: GroupoidFunctor
    p2: GroupoidFunctor


def _action_members(view):
    if isinstance(view, ActionGroupoid):
        return None  # bare action legs are wrapped by callers that want lazy
    if isinstance(view, DisjointUnion) and all(
        isinstance(m, ActionGroupoid) for m in view.members
    ):
        return view.members
    return None


def homotopy_pullback(r1, l2, guard=None):
    """Homotopy pullback of the cospan r1: M1 -> T <- M2 : l2.

    Returns a PullbackResult whose groupoid has objects (a1, t, a2).  Uses an
    explicit table when the legs enumerate (guarded), and stays lazy (disjoint
    union of product action groupoids) over a discrete T with action legs.
    """
    T = r1.target
    if (
        T.is_discrete
        and _action_members(r1.source) is not None
        and _action_members(l2.source) is not None
    ):
        return _lazy_discrete_pullback(r1, l2)
    return _table_pullback(r1, l2, guard)


def _table_pullback(r1, l2, guard=None):
    bound = guard if guard is not None else size_guard()
    M1, M2, T = r1.source, l2.source, r1.target
    b = TableBuilder()
    for a1 in M1.objects:
        ra1 = r1.on_obj(a1)
        for a2 in M2.objects:
            for t in T.hom(ra1, l2.on_obj(a2)):
                b.obj((a1, t, a2))
    mors1 = M1.all_morphisms()
    mors2 = M2.all_morphisms()
    count = 0
    for m1 in mors1:
        rm1_inv = T.inverse_m(r1.on_mor(m1))
        s1, t1 = M1.source_of(m1), M1.target_of(m1)
        for m2 in mors2:
            lm2 = l2.on_mor(m2)
            s2, t2 = M2.source_of(m2), M2.target_of(m2)
            for t in T.hom(r1.on_obj(s1), l2.on_obj(s2)):
                u = T.compose_m(T.compose_m(lm2, t), rm1_inv)
                count += 1
                if count > bound:
                    raise SizeGuardError(count, bound)
                b.mor(((m1, t, m2)), (s1, t, s2), (t1, u, t2))
    for a1 in M1.objects:
        for a2 in M2.objects:
            for t in T.hom(r1.on_obj(a1), l2.on_obj(a2)):
                b.set_identity(
                    (a1, t, a2), (M1.identity_at(a1), t, M2.identity_at(a2))
                )
    # compose by chasing each morphism's target triple
    g = b.build()
    lab = g.morphism_labels
    by_src = {}
    for mid in g.morphisms:
        by_src.setdefault(g.source[mid], []).append(mid)
    compose = {}
    for mid1 in g.morphisms:
        m1, t, m2 = lab[mid1]
        for mid2 in by_src.get(g.target[mid1], []):
            n1, u, n2 = lab[mid2]
            comp = (M1.compose_m(n1, m1), t, M2.compose_m(n2, m2))
            compose[(mid2, mid1)] = g.morphism_of_label[comp]
    inverse = {}
    for mid in g.morphisms:
        m1, t, m2 = lab[mid]
        tgt = g.object_labels[g.target[mid]]
        inverse[mid] = g.morphism_of_label[
            (M1.inverse_m(m1), tgt[1], M2.inverse_m(m2))
        ]
    g.compose.update(compose)
    g.inverse.update(inverse)
    p1 = GroupoidFunctor(
        g, M1, lambda o: g.object_labels[o][0], lambda m: lab[m][0], check=False
    )
    p2 = GroupoidFunctor(
        g, M2, lambda o: g.object_labels[o][2], lambda m: lab[m][2], check=False
    )
    return PullbackResult(g, p1, p2)


def _lazy_discrete_pullback(r1, l2):
    """Pullback over a discrete T where both legs are unions of action
    groupoids: stratum (i, j, d) is the product action groupoid on pairs."""
    M1, M2, T = r1.source, l2.source, r1.target
    members1, members2 = M1.members, M2.members
    strata = []
    for i, g1 in enumerate(members1):
        for j, g2 in enumerate(members2):
            group = ProductGroup(g1.group, g2.group)
            for d in T.objects:
                t = T.identity_at(d)
                left = [
                    (i, x) for x in g1.carrier if r1.on_obj((i, x)) == d
                ]
                right = [
                    (j, y) for y in g2.carrier if l2.on_obj((j, y)) == d
                ]
                if not left or not right:
                    continue
                carrier = [(x, t, y) for x in left for y in right]

                def act(point, g, _i=i, _j=j, _g1=g1, _g2=g2):
                    (ii, x), tt, (jj, y) = point
                    return (
                        (ii, _g1.act(x, g[0])),
                        tt,
                        (jj, _g2.act(y, g[1])),
                    )

                strata.append(ActionGroupoid(group, carrier, act))
    union = DisjointUnion(strata)
    p1 = GroupoidFunctor(
        union,
        M1,
        lambda o: o[1][0],
        lambda m: (m[1][0][0][0], (m[1][0][0][1], m[1][1][0])),
        check=False,
    )
    p2 = GroupoidFunctor(
        union,
        M2,
        lambda o: o[1][2],
        lambda m: (m[1][0][2][0], (m[1][0][2][1], m[1][1][1])),
        check=False,
    )
    return PullbackResult(union, p1, p2)


# ---------------------------------------------------------------------------
# homotopy fibres (built directly; spot-checked against the generic pullback)


def left_fibre(l, c, skeleton=False):
    """c\\M for l: M -> S: objects (s, a) with s in S(c, La); a morphism m of M
    acts by (s, a1) -> (L(m) o s, a2).  skeleton=True skips the compose and
    inverse tables (components, aut orders, and chi do not need them)."""
    M, S = l.source, l.target
    b = TableBuilder()
    for a in M.objects:
        for s in S.hom(c, l.on_obj(a)):
            b.obj((s, a))
    for m in M.all_morphisms():
        a1, a2 = M.source_of(m), M.target_of(m)
        lm = l.on_mor(m)
        for s in S.hom(c, l.on_obj(a1)):
            b.mor((m, s), (s, a1), (S.compose_m(lm, s), a2))
    for a in M.objects:
        for s in S.hom(c, l.on_obj(a)):
            b.set_identity((s, a), (M.identity_at(a), s))
    g = b.build()
    if not skeleton:
        _finish_fibre_table(
            g,
            compose=lambda lab2, lab1: (M.compose_m(lab2[0], lab1[0]), lab1[1]),
            inverse=lambda lab, src_lab, tgt_lab: (M.inverse_m(lab[0]), tgt_lab[0]),
        )
    return g


def right_fibre(r, d, skeleton=False):
    """M/d for r: M -> T: objects (a, t) with t in T(Ra, d); a morphism m of M
    acts by (a1, t) -> (a2, t o R(m)^-1)."""
    M, T = r.source, r.target
    b = TableBuilder()
    for a in M.objects:
        for t in T.hom(r.on_obj(a), d):
            b.obj((a, t))
    for m in M.all_morphisms():
        a1, a2 = M.source_of(m), M.target_of(m)
        rm_inv = T.inverse_m(r.on_mor(m))
        for t in T.hom(r.on_obj(a1), d):
            b.mor((m, t), (a1, t), (a2, T.compose_m(t, rm_inv)))
    for a in M.objects:
        for t in T.hom(r.on_obj(a), d):
            b.set_identity((a, t), (M.identity_at(a), t))
    g = b.build()
    if not skeleton:
        _finish_fibre_table(
            g,
            compose=lambda lab2, lab1: (M.compose_m(lab2[0], lab1[0]), lab1[1]),
            inverse=lambda lab, src_lab, tgt_lab: (M.inverse_m(lab[0]), tgt_lab[1]),
        )
    return g


def two_sided_fibre(l, r, c, d, skeleton=False):
    """c\\M/d: objects (s, a, t); a morphism m of M acts by
    (s, a1, t) -> (L(m) o s, a2, t o R(m)^-1)."""
    M, S, T = l.source, l.target, r.target
    b = TableBuilder()
    for a in M.objects:
        la, ra = l.on_obj(a), r.on_obj(a)
        for s in S.hom(c, la):
            for t in T.hom(ra, d):
                b.obj((s, a, t))
    for m in M.all_morphisms():
        a1, a2 = M.source_of(m), M.target_of(m)
        lm = l.on_mor(m)
        rm_inv = T.inverse_m(r.on_mor(m))
        for s in S.hom(c, l.on_obj(a1)):
            s2 = S.compose_m(lm, s)
            for t in T.hom(r.on_obj(a1), d):
                b.mor((m, s, t), (s, a1, t), (s2, a2, T.compose_m(t, rm_inv)))
    for a in M.objects:
        for s in S.hom(c, l.on_obj(a)):
            for t in T.hom(r.on_obj(a), d):
                b.set_identity((s, a, t), (M.identity_at(a), s, t))
    g = b.build()
    if not skeleton:
        _finish_fibre_table(
            g,
            compose=lambda lab2, lab1: (
                M.compose_m(lab2[0], lab1[0]),
                lab1[1],
                lab1[2],
            ),
            inverse=lambda lab, src_lab, tgt_lab: (
                M.inverse_m(lab[0]),
                tgt_lab[0],
                tgt_lab[2],
            ),
        )
    return g


def _finish_fibre_table(g, compose, inverse):
    lab = g.morphism_labels
    by_src = {}
    for mid in g.morphisms:
        by_src.setdefault(g.source[mid], []).append(mid)
    for mid1 in g.morphisms:
        for mid2 in by_src.get(g.target[mid1], []):
            g.compose[(mid2, mid1)] = g.morphism_of_label[
                compose(lab[mid2], lab[mid1])
            ]
    for mid in g.morphisms:
        src_lab = g.object_labels[g.source[mid]]
        tgt_lab = g.object_labels[g.target[mid]]
        g.inverse[mid] = g.morphism_of_label[inverse(lab[mid], src_lab, tgt_lab)]


def two_sided_pullback(r1, l, r, l2):
    """P x_S M x_T Q for P -R1-> S <-L- M -R-> T <-L2- Q: objects
    (x, s, a, t, y); morphisms are triples (u, m, v) with the evident squares
    commuting in S and T."""
    P, S, M, T, Q = r1.source, r1.target, l.source, r.target, l2.source
    b = TableBuilder()
    for x in P.objects:
        for a in M.objects:
            for s in S.hom(r1.on_obj(x), l.on_obj(a)):
                for y in Q.objects:
                    for t in T.hom(r.on_obj(a), l2.on_obj(y)):
                        b.obj((x, s, a, t, y))
    for u in P.all_morphisms():
        r1u_inv = S.inverse_m(r1.on_mor(u))
        for m in M.all_morphisms():
            lm = l.on_mor(m)
            rm_inv = T.inverse_m(r.on_mor(m))
            for v in Q.all_morphisms():
                l2v = l2.on_mor(v)
                x1, x2 = P.source_of(u), P.target_of(u)
                a1, a2 = M.source_of(m), M.target_of(m)
                y1, y2 = Q.source_of(v), Q.target_of(v)
                for s in S.hom(r1.on_obj(x1), l.on_obj(a1)):
                    s2 = S.compose_m(S.compose_m(lm, s), r1u_inv)
                    for t in T.hom(r.on_obj(a1), l2.on_obj(y1)):
                        t2 = T.compose_m(T.compose_m(l2v, t), rm_inv)
                        b.mor(
                            (u, m, v, s, t),
                            (x1, s, a1, t, y1),
                            (x2, s2, a2, t2, y2),
                        )
    for obj_label in list(b._obj):
        x, s, a, t, y = obj_label
        b.set_identity(
            obj_label,
            (P.identity_at(x), M.identity_at(a), Q.identity_at(y), s, t),
        )
    g = b.build()
    lab = g.morphism_labels
    by_src = {}
    for mid in g.morphisms:
        by_src.setdefault(g.source[mid], []).append(mid)
    for mid1 in g.morphisms:
        u1, m1, v1, s, t = lab[mid1]
        for mid2 in by_src.get(g.target[mid1], []):
            u2, m2, v2, _, _ = lab[mid2]
            g.compose[(mid2, mid1)] = g.morphism_of_label[
                (
                    P.compose_m(u2, u1),
                    M.compose_m(m2, m1),
                    Q.compose_m(v2, v1),
                    s,
                    t,
                )
            ]
    for mid in g.morphisms:
        u, m, v, s, t = lab[mid]
        tgt = g.object_labels[g.target[mid]]
        g.inverse[mid] = g.morphism_of_label[
            (P.inverse_m(u), M.inverse_m(m), Q.inverse_m(v), tgt[1], tgt[3])
        ]
    return g


# ---------------------------------------------------------------------------
# Grothendieck constructions


class SetValuedFunctor:
    """Set-valued functor on a groupoid view: a finite set per object and a
    bijective transport per morphism (validated)."""

    def __init__(self, base, value_sets, transport, check=True):
        self.base = base
        self.value_sets = _as_fn(value_sets)
        self._transport = transport if callable(transport) else transport.__getitem__
        if check:
            self.validate()

    def transport(self, m):
        t = self._transport(m)
        return t if callable(t) else t.__getitem__

    def validate(self):
        base = self.base
        for o in base.objects:
            ident = self.transport(base.identity_at(o))
            for x in self.value_sets(o):
                if ident(x) != x:
                    raise FunctorError("transport of identity moves %r" % (x,))
        mors = base.all_morphisms()
        for m in mors:
            f = self.transport(m)
            src_set = list(self.value_sets(base.source_of(m)))
            image = [f(x) for x in src_set]
            tgt_set = set(self.value_sets(base.target_of(m)))
            if len(set(image)) != len(image) or set(image) - tgt_set:
                raise FunctorError("transport of %r is not a bijection" % (m,))
        by_src = {}
        for m in mors:
            by_src.setdefault(base.source_of(m), []).append(m)
        for m1 in mors:
            f1 = self.transport(m1)
            for m2 in by_src.get(base.target_of(m1), []):
                f2 = self.transport(m2)
                f21 = self.transport(base.compose_m(m2, m1))
                for x in self.value_sets(base.source_of(m1)):
                    if f21(x) != f2(f1(x)):
                        raise FunctorError(
                            "transport breaks composition on (%r, %r)" % (m2, m1)
                        )


def grothendieck(sv):
    """Category of elements of a set-valued functor: objects (a, x) with
    x in X(a), morphisms m: (a1, x1) -> (a2, transport(m)(x1))."""
    base = sv.base
    b = TableBuilder()
    for a in base.objects:
        for x in sv.value_sets(a):
            b.obj((a, x))
    for m in base.all_morphisms():
        a1, a2 = base.source_of(m), base.target_of(m)
        f = sv.transport(m)
        for x in sv.value_sets(a1):
            b.mor((m, x), (a1, x), (a2, f(x)))
    for a in base.objects:
        for x in sv.value_sets(a):
            b.set_identity((a, x), (base.identity_at(a), x))
    g = b.build()
    lab = g.morphism_labels
    by_src = {}
    for mid in g.morphisms:
        by_src.setdefault(g.source[mid], []).append(mid)
    for mid1 in g.morphisms:
        m1, x1 = lab[mid1]
        for mid2 in by_src.get(g.target[mid1], []):
            m2, _ = lab[mid2]
            g.compose[(mid2, mid1)] = g.morphism_of_label[
                (base.compose_m(m2, m1), x1)
            ]
    for mid in g.morphisms:
        m, x = lab[mid]
        tgt_lab = g.object_labels[g.target[mid]]
        g.inverse[mid] = g.morphism_of_label[(base.inverse_m(m), tgt_lab[1])]
    return g


def grothendieck_chi_by_weighting(sv):
    """chi of the category of elements via a weighting on the base:
    chi(int X) = sum_a k^a |X(a)|."""
    k = weighting(sv.base)
    return sum(
        (k[a] * len(list(sv.value_sets(a))) for a in sv.base.objects), Fraction(0)
    )


# ---------------------------------------------------------------------------
# the pullback Euler-characteristic identity


def pullback_euler_check(r1, l2, guard=None):
    """Both sides of chi(M1 x_T M2) = sum_d chi(M1/d) chi(T{d}) chi(d\\M2)."""
    T = r1.target
    lhs = homotopy_pullback(r1, l2, guard).groupoid.chi()
    rhs = Fraction(0)
    for d in T.component_reps():
        rhs += (
            right_fibre(r1, d, skeleton=True).chi()
            * Fraction(1, T.aut_order(d))
            * left_fibre(l2, d, skeleton=True).chi()
        )
    return lhs, rhs
