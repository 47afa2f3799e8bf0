"""Executable catalog of concrete spans: subset spans, universal spans, spans
of groups, coset spans, and the Stirling spans over the truncated base 0..N.

The permutation-with-k-cycles and partition-with-m-blocks groupoids are the
skeletal action-groupoid models (conjugation of Sigma(n) on S1(X,k), resp. on
set partitions encoded as restricted-growth strings).  The Stirling span
apexes are their Grothendieck constructions with value Fin(X,X): the action
groupoid of Sigma(n) on pairs (sigma, tau) resp. (rho, tau) under simultaneous
conjugation.  Matrices only see chi of labeled fibres, which is what these
models compute without ever materializing hom-sets.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from gspans.algebra import AbelianGroup, GroupRingElement
from gspans.constructions import (
    GroupoidFunctor,
    GroupValuedFunctor,
    coset_groupoid,
    delooping_bg,
    discrete_groupoid,
)
from gspans.groupoid import (
    ActionGroupoid,
    DisjointUnion,
    ProductGroup,
    Subgroup,
    SymmetricGroup,
    TableBuilder,
    pcompose,
    pinverse,
)
from gspans.gspan import GSpan, SpanMatrix, SpanMorphism


# ---------------------------------------------------------------------------
# permutations with k cycles, partitions with m blocks


def cycle_count(perm):
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


def perms_with_cycles(n, k):
    return sorted(
        p for p in itertools.permutations(range(n)) if cycle_count(p) == k
    )


def rgs_partitions(n):
    """All set partitions of {0..n-1} as restricted-growth strings."""
    if n == 0:
        return [()]
    out = []

    def grow(prefix, top):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(top + 2):
            grow(prefix + [v], max(top, v))

    grow([0], 0)
    return out


def rgs_blocks(rgs):
    return (max(rgs) + 1) if rgs else 0


def partitions_with_blocks(n, m):
    return sorted(r for r in rgs_partitions(n) if rgs_blocks(r) == m)


def _canonical_rgs(labels):
    seen = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


def conjugate_perm(sigma, g):
    """Right action sigma . g = g^-1 sigma g."""
    return pcompose(pinverse(g), pcompose(sigma, g))


def relabel_partition(rgs, g):
    """Right action: i ~ j in rgs.g  iff  g(i) ~ g(j) in rgs."""
    return _canonical_rgs([rgs[g[i]] for i in range(len(g))])


def fin_perm_groupoid(n, k, guard=8):
    """Skeletal model of the groupoid of n-sets with a k-cycle permutation."""
    if not (0 <= k <= n):
        raise ValueError("need 0 <= k <= n")
    if n > guard:
        raise ValueError("n=%d exceeds the guard %d" % (n, guard))
    sym = SymmetricGroup(n)
    return ActionGroupoid(sym, perms_with_cycles(n, k), conjugate_perm)


def fin_rel_groupoid(k, m, guard=8):
    """Skeletal model of the groupoid of k-sets with an m-block partition."""
    if not (0 <= m <= k):
        raise ValueError("need 0 <= m <= k")
    if k > guard:
        raise ValueError("k=%d exceeds the guard %d" % (k, guard))
    sym = SymmetricGroup(k)
    return ActionGroupoid(sym, partitions_with_blocks(k, m), relabel_partition)


# ---------------------------------------------------------------------------
# Stirling spans over the truncated discrete base {0..N}


@dataclass
class StirlingSpanConfig:
    kind: str  # "first" | "second"
    truncation: int
    guard: int = 5

    def __post_init__(self):
        if self.kind not in ("first", "second"):
            raise ValueError("kind must be 'first' or 'second'")
        if self.truncation < 0:
            raise ValueError("truncation must be >= 0")
        if self.truncation > self.guard:
            raise ValueError(
                "truncation %d exceeds the guard %d" % (self.truncation, self.guard)
            )


SIGN_GROUP = AbelianGroup([2])


def _pair_stratum(base_points, act_point, group):
    """Grothendieck construction of Fin(X,X) over a skeletal action model:
    Sigma acts on pairs (point, tau) by (act, conjugation)."""
    carrier = [
        (x, tau)
        for x in base_points
        for tau in sorted(itertools.permutations(range(group.n)))
    ]

    def act(pair, g):
        return (act_point(pair[0], g), conjugate_perm(pair[1], g))

    return ActionGroupoid(group, carrier, act)


def stirling_span(cfg, base=None):
    """The sign-group span whose matrix has entries (n, k) -> S1(n,k) with
    sign label (first kind) or (k, m) -> S2(k,m) (second kind).  Both feet are
    the truncated discrete base {0..N} (pass a shared one to make two spans
    strictly composable)."""
    if isinstance(cfg, str):
        raise TypeError("pass a StirlingSpanConfig")
    N = cfg.truncation
    base = base if base is not None else discrete_groupoid(N + 1)
    G = SIGN_GROUP
    strata = []
    meta = []  # (left value, right value, label) per stratum
    for n in range(N + 1):
        sym = SymmetricGroup(n)
        for k in range(0 if n == 0 else 1, n + 1):
            if cfg.kind == "first":
                points = perms_with_cycles(n, k)
                stratum = _pair_stratum(points, conjugate_perm, sym)
                label = ((n - k) % 2,)
            else:
                points = partitions_with_blocks(n, k)
                stratum = _pair_stratum(points, relabel_partition, sym)
                label = (0,)
            if not stratum.carrier:
                continue
            strata.append(stratum)
            meta.append((n, k, label))
    apex = DisjointUnion(strata)
    lvals = {i: m[0] for i, m in enumerate(meta)}
    rvals = {i: m[1] for i, m in enumerate(meta)}
    labels = {i: m[2] for i, m in enumerate(meta)}
    obj_of = base.object_of_label
    left = GroupoidFunctor(
        apex,
        base,
        lambda o: obj_of[lvals[o[0]]],
        lambda m: base.identity_at(obj_of[lvals[m[0]]]),
        check=False,
    )
    right = GroupoidFunctor(
        apex,
        base,
        lambda o: obj_of[rvals[o[0]]],
        lambda m: base.identity_at(obj_of[rvals[m[0]]]),
        check=False,
    )
    triv = GroupValuedFunctor.trivial(base, G)
    sp = GSpan(apex, left, right, triv, triv, lambda o: labels[o[0]])
    sp.config = cfg
    return sp


def stirling_pair(N, guard=5):
    """Composable (first kind, second kind) spans over one shared base."""
    base = discrete_groupoid(N + 1)
    first = stirling_span(StirlingSpanConfig("first", N, guard), base)
    second = stirling_span(StirlingSpanConfig("second", N, guard), base)
    # one middle functor: reuse first's V as second's H
    second = GSpan(
        second.apex, second.left, second.right, first.v, second.v, second.eps
    )
    return first, second


# ---------------------------------------------------------------------------
# universal spans


def universal_span(h, v):
    """S x_BG T with label (x, k, y) -> k; every matrix entry is
    (|G|/|T(d,d)|) * average of G."""
    S, T, G = h.source, v.source, h.group
    b = TableBuilder()
    for x in S.objects:
        for k in G.elements():
            for y in T.objects:
                b.obj((x, k, y))
    for s in S.all_morphisms():
        hs = h.value(s)
        x1, x2 = S.source_of(s), S.target_of(s)
        for t in T.all_morphisms():
            k_shift = G.sub(v.value(t), hs)
            y1, y2 = T.source_of(t), T.target_of(t)
            for k1 in G.elements():
                b.mor((s, k1, t), (x1, k1, y1), (x2, G.add(k_shift, k1), y2))
    for x in S.objects:
        for k in G.elements():
            for y in T.objects:
                b.set_identity((x, k, y), (S.identity_at(x), k, T.identity_at(y)))
    apex = b.build()
    lab = apex.morphism_labels
    by_src = {}
    for mid in apex.morphisms:
        by_src.setdefault(apex.source[mid], []).append(mid)
    for mid1 in apex.morphisms:
        s1, k1, t1 = lab[mid1]
        for mid2 in by_src.get(apex.target[mid1], []):
            s2, _, t2 = lab[mid2]
            apex.compose[(mid2, mid1)] = apex.morphism_of_label[
                (S.compose_m(s2, s1), k1, T.compose_m(t2, t1))
            ]
    for mid in apex.morphisms:
        s, k1, t = lab[mid]
        k2 = apex.object_labels[apex.target[mid]][1]
        apex.inverse[mid] = apex.morphism_of_label[
            (S.inverse_m(s), k2, T.inverse_m(t))
        ]
    left = GroupoidFunctor(
        apex, S, lambda o: apex.object_labels[o][0], lambda m: lab[m][0], check=False
    )
    right = GroupoidFunctor(
        apex, T, lambda o: apex.object_labels[o][2], lambda m: lab[m][2], check=False
    )
    return GSpan(apex, left, right, h, v, lambda o: apex.object_labels[o][1])


def universal_matrix_closed_form(h, v):
    """Entrywise (|G|/|T(d,d)|) * Gbar."""
    S, T, G = h.source, v.source, h.group
    gbar = GroupRingElement(
        G, {g: Fraction(1, G.order) for g in G.elements()}
    )
    rows = S.component_reps()
    cols = T.component_reps()
    entries = [
        [gbar.scaled(Fraction(G.order, T.aut_order(d))) for d in cols] for c in rows
    ]
    return SpanMatrix(G, rows, cols, entries)


def universal_cell(sp, universal=None):
    """The canonical 2-cell from any span to the universal span on (H, V):
    Phi(x) = (Lx, eps x, Rx), with identity transformations."""
    uni = universal if universal is not None else universal_span(sp.h, sp.v)
    S, T, M = sp.source, sp.target, sp.apex

    def obj_map(x):
        return uni.apex.object_of_label[
            (sp.left.on_obj(x), sp.eps(x), sp.right.on_obj(x))
        ]

    def mor_map(m):
        return uni.apex.morphism_of_label[
            (sp.left.on_mor(m), sp.eps(M.source_of(m)), sp.right.on_mor(m))
        ]

    phi = GroupoidFunctor(M, uni.apex, obj_map, mor_map, check=False)
    return SpanMorphism(
        sp,
        uni,
        phi,
        lambda x: S.identity_at(sp.left.on_obj(x)),
        lambda x: T.identity_at(sp.right.on_obj(x)),
    )


# ---------------------------------------------------------------------------
# subset spans: (1 x 1) matrices from invariant subsets of G


def subset_span(G, subset, s_elements, t_elements, h=None, v=None):
    """Action-groupoid span realizing the (1 x 1) matrix (1/|T|) sum(subset).

    s_elements/t_elements are subgroups of G (acting by x -> -v(t) + x + h(s));
    h and v default to the inclusions."""
    h = h if h is not None else (lambda s: s)
    v = v if v is not None else (lambda t: t)
    s_grp = Subgroup(G, s_elements)
    t_grp = Subgroup(G, t_elements)
    subset = sorted({G.check(x) for x in subset})

    def act(x, st):
        s, t = st
        return G.add(G.neg(v(t)), G.add(x, h(s)))

    in_subset = set(subset)
    for x in subset:
        for s in s_grp.elements():
            for t in t_grp.elements():
                if act(x, (s, t)) not in in_subset:
                    raise ValueError(
                        "subset is not invariant: %r escapes under (s,t)=%r"
                        % (x, (s, t))
                    )
    apex = ActionGroupoid(ProductGroup(s_grp, t_grp), subset, act)
    bs = delooping_bg(s_grp)
    bt = delooping_bg(t_grp)
    left = GroupoidFunctor(
        apex,
        bs,
        lambda o: bs.objects[0],
        lambda m: bs.morphism_of_label[m[1][0]],
        check=False,
    )
    right = GroupoidFunctor(
        apex,
        bt,
        lambda o: bt.objects[0],
        lambda m: bt.morphism_of_label[m[1][1]],
        check=False,
    )
    hf = GroupValuedFunctor(bs, G, lambda m: h(bs.morphism_labels[m]), check=False)
    vf = GroupValuedFunctor(bt, G, lambda m: v(bt.morphism_labels[m]), check=False)
    return GSpan(apex, left, right, hf, vf, lambda x: x)


def subset_span_closed_form(G, subset, t_elements):
    """(1/|T|) sum of the subset, as a 1 x 1 matrix entry."""
    c = Fraction(1, len(set(t_elements)))
    return GroupRingElement(G, {G.check(x): c for x in set(subset)})


# ---------------------------------------------------------------------------
# spans of groups (deloopings commuting up to a conjugation constant)


def group_square_span(G, m_grp, k1_grp, k2_grp, l, r, h, v, x):
    """Span of deloopings BK1 <- BM -> BK2 over BG with constant label x;
    requires x + h(l(m)) = v(r(m)) + x for every m."""
    x = G.check(x)
    for m in m_grp.elements():
        if G.add(x, h(l(m))) != G.add(v(r(m)), x):
            raise ValueError(
                "square does not commute up to conjugation at m=%r" % (m,)
            )
    bm = delooping_bg(m_grp)
    bk1 = delooping_bg(k1_grp)
    bk2 = delooping_bg(k2_grp)
    left = GroupoidFunctor(
        bm,
        bk1,
        lambda o: bk1.objects[0],
        lambda mm: bk1.morphism_of_label[l(bm.morphism_labels[mm])],
        check=False,
    )
    right = GroupoidFunctor(
        bm,
        bk2,
        lambda o: bk2.objects[0],
        lambda mm: bk2.morphism_of_label[r(bm.morphism_labels[mm])],
        check=False,
    )
    hf = GroupValuedFunctor(bk1, G, lambda mm: h(bk1.morphism_labels[mm]), check=False)
    vf = GroupValuedFunctor(bk2, G, lambda mm: v(bk2.morphism_labels[mm]), check=False)
    return GSpan(bm, left, right, hf, vf, lambda o: x)


def group_square_closed_form(G, m_grp, k1_grp, k2_grp, h, v, x):
    """(1/(|M||K2|)) sum_g |{(k1,k2): v(k2) + x + h(k1) = g}| g."""
    counts = {}
    for k1 in k1_grp.elements():
        for k2 in k2_grp.elements():
            g = G.add(v(k2), G.add(x, h(k1)))
            counts[g] = counts.get(g, 0) + 1
    c = Fraction(1, m_grp.order * k2_grp.order)
    return GroupRingElement(G, {g: c * n for g, n in counts.items()})


# ---------------------------------------------------------------------------
# coset spans


def coset_span(G, h1_elements, k1_elements, k2_elements):
    """H1\\G between K1\\G and K2\\G over BG, with trivial label; requires
    H1 <= K1 and H1 <= K2."""
    h1 = set(h1_elements)
    if not (h1 <= set(k1_elements) and h1 <= set(k2_elements)):
        raise ValueError("need H1 contained in K1 and in K2")
    apex = coset_groupoid(G, h1_elements)
    k1g = coset_groupoid(G, k1_elements)
    k2g = coset_groupoid(G, k2_elements)
    left = GroupoidFunctor(
        apex,
        k1g,
        lambda o: k1g.coset_of(o),
        lambda m: (k1g.coset_of(m[0]), m[1]),
        check=False,
    )
    right = GroupoidFunctor(
        apex,
        k2g,
        lambda o: k2g.coset_of(o),
        lambda m: (k2g.coset_of(m[0]), m[1]),
        check=False,
    )
    hf = GroupValuedFunctor(k1g, G, lambda m: m[1], check=False)
    vf = GroupValuedFunctor(k2g, G, lambda m: m[1], check=False)
    return GSpan(apex, left, right, hf, vf, lambda o: G.identity)


def coset_span_closed_form(G, h1_elements, k1_elements, k2_elements):
    """(1/(|H1||K2|)) sum_g |{(k1,k2) in K1 x K2 : k2 + k1 = g}| g,
    at the canonical (identity coset) representatives."""
    counts = {}
    for k1 in k1_elements:
        for k2 in k2_elements:
            g = G.add(k2, k1)
            counts[g] = counts.get(g, 0) + 1
    c = Fraction(1, len(set(h1_elements)) * len(set(k2_elements)))
    return GroupRingElement(G, {g: c * n for g, n in counts.items()})
