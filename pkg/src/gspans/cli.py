"""JSON definition language and command-line interface.

A document is a JSON object with sections "groups", "groupoids", "functors",
"bg_functors", "characters", "spans", "cells"; entries refer to each other by
name and the reference graph must be acyclic.  Literal table groupoids use
caller-chosen object/morphism names; builder groupoids ("BG", "discrete",
"coset", "disjoint", "pullback", "fibre") are constructed on demand.  Every
resolved object passes its module's validation; errors carry the JSON path.

Commands: validate, euler, matrix, compose, check, example.  Exit codes:
0 = pass, 1 = check failure, 2 = input error.  The environment variable
GSPANS_SIZE_GUARD overrides the materialization guard.
"""

import argparse
import json
import random
import sys

from gspans.algebra import AbelianGroup, Character
from gspans.constructions import (
    FunctorError,
    GroupoidFunctor,
    GroupValuedFunctor,
    bg_self_functor,
    coset_groupoid,
    delooping_bg,
    discrete_groupoid,
    homotopy_pullback,
    left_fibre,
    pullback_euler_check,
    right_fibre,
    two_sided_fibre,
)
from gspans.groupoid import TableGroupoid, disjoint_union_tables
from gspans.gspan import (
    GSpan,
    GSpanError,
    SpanMorphism,
    SpanMorphismError,
    character_matrix,
    check_main_theorem,
    compose_spans,
    identity_span,
    interchange_check,
    labeled_pullback_identity,
    matrix_multiply,
    pushforward_matrix_closed_form,
    pushforward_span,
    pullback_span,
    span_matrix,
)
from gspans.examples import stirling_pair, universal_span
from gspans import random_spans as rnd


class DocumentError(Exception):
    def __init__(self, path, reason):
        super().__init__("%s: %s" % (path, reason))
        self.path = path
        self.reason = reason


def _need(mapping, key, path):
    if key not in mapping:
        raise DocumentError(path, "missing required field %r" % key)
    return mapping[key]


class Document:
    """Parsed and fully resolved document."""

    def __init__(self, data):
        if not isinstance(data, dict):
            raise DocumentError("$", "document must be a JSON object")
        self.data = data
        self.groups = {}
        self.groupoids = {}
        self.obj_names = {}  # groupoid name -> {object name -> id}
        self.mor_names = {}  # groupoid name -> {morphism name -> id}
        self.functors = {}
        self.bg_functors = {}
        self.characters = {}
        self.spans = {}
        self.cells = {}
        self._resolving = set()
        for name in data.get("groups", {}):
            self._group(name)
        for name in data.get("groupoids", {}):
            self._groupoid(name)
        for name in data.get("functors", {}):
            self._functor(name)
        for name in data.get("bg_functors", {}):
            self._bg_functor(name)
        for name, spec in data.get("characters", {}).items():
            path = "characters.%s" % name
            grp = self._group(_need(spec, "group", path))
            self.characters[name] = Character(grp, _need(spec, "exponents", path))
        for name in data.get("spans", {}):
            self._span(name)
        for name in data.get("cells", {}):
            self._cell(name)

    # -- sections ----------------------------------------------------------

    def _group(self, name):
        if name in self.groups:
            return self.groups[name]
        spec = self.data.get("groups", {})
        if name not in spec:
            raise DocumentError("groups.%s" % name, "unresolved name")
        orders = spec[name]
        try:
            self.groups[name] = AbelianGroup(orders)
        except (TypeError, ValueError) as e:
            raise DocumentError("groups.%s" % name, str(e))
        return self.groups[name]

    def _groupoid(self, name):
        if name in self.groupoids:
            return self.groupoids[name]
        path = "groupoids.%s" % name
        specs = self.data.get("groupoids", {})
        if name not in specs:
            raise DocumentError(path, "unresolved name")
        if name in self._resolving:
            raise DocumentError(path, "reference cycle")
        self._resolving.add(name)
        try:
            g = self._build_groupoid(name, specs[name], path)
        finally:
            self._resolving.discard(name)
        self.groupoids[name] = g
        return g

    def _build_groupoid(self, name, spec, path):
        if not isinstance(spec, dict):
            raise DocumentError(path, "groupoid spec must be an object")
        kind = spec.get("type", "table" if "objects" in spec else None)
        if kind == "table" or ("objects" in spec and "morphisms" in spec):
            return self._literal_table(name, spec, path)
        if kind == "BG":
            grp = self._group(_need(spec, "group", path))
            g = delooping_bg(grp)
            self.obj_names[name] = {"*": g.objects[0]}
            self.mor_names[name] = {
                ",".join(str(e) for e in lab): mid
                for mid, lab in g.morphism_labels.items()
            }
            return g
        if kind == "discrete":
            objs = _need(spec, "objects", path)
            labels = list(range(objs)) if isinstance(objs, int) else list(objs)
            g = discrete_groupoid(labels)
            self.obj_names[name] = {str(l): g.object_of_label[l] for l in labels}
            self.mor_names[name] = {
                "id:%s" % l: g.morphism_of_label[("id", l)] for l in labels
            }
            return g
        if kind == "coset":
            grp = self._group(_need(spec, "group", path))
            sub = [tuple(x) for x in _need(spec, "subgroup", path)]
            try:
                return coset_groupoid(grp, sub)
            except ValueError as e:
                raise DocumentError(path, str(e))
        if kind == "action":
            grp = self._group(_need(spec, "group", path))
            points = [str(p) for p in _need(spec, "points", path)]
            table = _need(spec, "action", path)
            act_map = {}
            for p, moves in table.items():
                for el, q in moves.items():
                    g = tuple(int(x) for x in str(el).split(",")) if el else ()
                    act_map[(str(p), grp.check(g))] = str(q)

            def act(x, g):
                if g == grp.identity:
                    return x
                if (x, g) not in act_map:
                    raise DocumentError(path, "action undefined at (%r, %r)" % (x, g))
                return act_map[(x, g)]

            for x in points:
                for g1 in grp.elements():
                    for g2 in grp.elements():
                        if act(act(x, g1), g2) != act(x, grp.add(g1, g2)):
                            raise DocumentError(
                                path,
                                "not a right action at (%r, %r, %r)" % (x, g1, g2),
                            )
            from gspans.groupoid import ActionGroupoid

            return ActionGroupoid(grp, points, act)
        if kind == "disjoint":
            parts = [self._groupoid(p) for p in _need(spec, "parts", path)]
            bad = [p for p in parts if not isinstance(p, TableGroupoid)]
            if bad:
                raise DocumentError(path, "disjoint parts must be tables")
            return disjoint_union_tables(parts)
        if kind == "pullback":
            f1 = self._functor(_need(spec, "left", path))
            f2 = self._functor(_need(spec, "right", path))
            try:
                return homotopy_pullback(f1, f2).groupoid
            except Exception as e:
                raise DocumentError(path, str(e))
        if kind == "fibre":
            side = _need(spec, "side", path)
            at = _need(spec, "at", path)
            if side == "left":
                f = self._functor(_need(spec, "functor", path))
                return left_fibre(f, self._object(f.target, at, path))
            if side == "right":
                f = self._functor(_need(spec, "functor", path))
                return right_fibre(f, self._object(f.target, at, path))
            if side == "two":
                if not (isinstance(at, list) and len(at) == 2):
                    raise DocumentError(path, "two-sided fibre needs at=[c, d]")
                l = self._functor(_need(spec, "left", path))
                r = self._functor(_need(spec, "right", path))
                c = self._object(l.target, at[0], path)
                d = self._object(r.target, at[1], path)
                return two_sided_fibre(l, r, c, d)
            raise DocumentError(path, "fibre side must be left|right|two")
        raise DocumentError(path, "unknown groupoid type %r" % kind)

    def _object(self, view, objname, path):
        # resolve an object by name when the groupoid has a name map,
        # else accept the raw id
        gname = None
        for name, g in self.groupoids.items():
            if g is view:
                gname = name
                break
        names = self.obj_names.get(gname, {})
        if str(objname) in names:
            return names[str(objname)]
        if objname in view.objects:
            return objname
        raise DocumentError(path, "unknown object %r" % (objname,))

    def _literal_table(self, name, spec, path):
        objs = _need(spec, "objects", path)
        mors = _need(spec, "morphisms", path)
        onames = {}
        source, target, identity, compose, inverse = {}, {}, {}, {}, {}
        mnames = {}
        for i, o in enumerate(objs):
            if str(o) in onames:
                raise DocumentError(path, "duplicate object %r" % o)
            onames[str(o)] = i
        for j, m in enumerate(mors):
            mid = str(_need(m, "id", path))
            if mid in mnames:
                raise DocumentError(path, "duplicate morphism %r" % mid)
            mnames[mid] = j
            for side, key in ((m.get("src"), "src"), (m.get("tgt"), "tgt")):
                if str(side) not in onames:
                    raise DocumentError(
                        path + ".morphisms.%s" % mid, "unknown object %r" % side
                    )
            source[j] = onames[str(m["src"])]
            target[j] = onames[str(m["tgt"])]
        for o, m in _need(spec, "identity", path).items():
            if str(o) not in onames or str(m) not in mnames:
                raise DocumentError(path + ".identity", "unknown name %r" % o)
            identity[onames[str(o)]] = mnames[str(m)]
        for triple in _need(spec, "compose", path):
            if len(triple) != 3:
                raise DocumentError(path + ".compose", "need [after, before, result]")
            m2, m1, m = (str(x) for x in triple)
            for x in (m2, m1, m):
                if x not in mnames:
                    raise DocumentError(path + ".compose", "unknown morphism %r" % x)
            compose[(mnames[m2], mnames[m1])] = mnames[m]
        for m, mi in _need(spec, "inverse", path).items():
            if str(m) not in mnames or str(mi) not in mnames:
                raise DocumentError(path + ".inverse", "unknown morphism %r" % m)
            inverse[mnames[str(m)]] = mnames[str(mi)]
        g = TableGroupoid(
            list(range(len(objs))),
            source,
            target,
            identity,
            compose,
            inverse,
            object_labels={i: o for o, i in onames.items()},
            morphism_labels={j: m for m, j in mnames.items()},
        )
        report = g.validate()
        if report:
            raise DocumentError(path, "; ".join(report))
        self.obj_names[name] = onames
        self.mor_names[name] = mnames
        return g

    def _functor(self, name):
        if name in self.functors:
            return self.functors[name]
        path = "functors.%s" % name
        specs = self.data.get("functors", {})
        if name not in specs:
            raise DocumentError(path, "unresolved name")
        spec = specs[name]
        src_name = _need(spec, "source", path)
        tgt_name = _need(spec, "target", path)
        src = self._groupoid(src_name)
        tgt = self._groupoid(tgt_name)
        so, to = self.obj_names.get(src_name), self.obj_names.get(tgt_name)
        sm, tm = self.mor_names.get(src_name), self.mor_names.get(tgt_name)
        if so is None or to is None:
            raise DocumentError(path, "functor endpoints must be addressable")
        omap, mmap = {}, {}
        for a, b in _need(spec, "objects", path).items():
            if str(a) not in so:
                raise DocumentError(path + ".objects", "unknown object %r" % a)
            if str(b) not in to:
                raise DocumentError(path + ".objects", "unresolved name %r" % b)
            omap[so[str(a)]] = to[str(b)]
        for f, u in _need(spec, "morphisms", path).items():
            if str(f) not in sm:
                raise DocumentError(path + ".morphisms", "unknown morphism %r" % f)
            if str(u) not in tm:
                raise DocumentError(path + ".morphisms", "unresolved name %r" % u)
            mmap[sm[str(f)]] = tm[str(u)]
        missing = [o for o in src.objects if o not in omap]
        if missing or any(m not in mmap for m in src.morphisms):
            raise DocumentError(path, "object/morphism map is not total")
        try:
            fun = GroupoidFunctor(src, tgt, omap, mmap)
        except FunctorError as e:
            raise DocumentError(path, str(e))
        self.functors[name] = fun
        return fun

    def _bg_functor(self, name):
        if name in self.bg_functors:
            return self.bg_functors[name]
        path = "bg_functors.%s" % name
        specs = self.data.get("bg_functors", {})
        if name not in specs:
            raise DocumentError(path, "unresolved name")
        spec = specs[name]
        kind = spec.get("type", "table")
        src_name = _need(spec, "source", path)
        src = self._groupoid(src_name)
        if kind == "tautological":
            if not hasattr(src, "group"):
                raise DocumentError(path, "tautological needs a BG groupoid")
            fun = bg_self_functor(src)
        else:
            grp = self._group(_need(spec, "group", path))
            if kind == "trivial":
                fun = GroupValuedFunctor.trivial(src, grp)
            elif kind == "table":
                sm = self.mor_names.get(src_name)
                if sm is None:
                    raise DocumentError(path, "source must be addressable")
                values = {}
                for f, g in _need(spec, "morphisms", path).items():
                    if str(f) not in sm:
                        raise DocumentError(path, "unknown morphism %r" % f)
                    values[sm[str(f)]] = grp.check(tuple(g))
                if any(m not in values for m in src.morphisms):
                    raise DocumentError(path, "morphism map is not total")
                try:
                    fun = GroupValuedFunctor(src, grp, values)
                except FunctorError as e:
                    raise DocumentError(path, str(e))
            else:
                raise DocumentError(path, "unknown bg functor type %r" % kind)
        self.bg_functors[name] = fun
        return fun

    def _span(self, name):
        if name in self.spans:
            return self.spans[name]
        path = "spans.%s" % name
        specs = self.data.get("spans", {})
        if name not in specs:
            raise DocumentError(path, "unresolved name")
        spec = specs[name]
        kind = spec.get("type", "explicit")
        if kind == "identity":
            sp = identity_span(self._bg_functor(_need(spec, "h", path)))
        elif kind == "universal":
            sp = universal_span(
                self._bg_functor(_need(spec, "h", path)),
                self._bg_functor(_need(spec, "v", path)),
            )
        elif kind == "explicit":
            apex_name = _need(spec, "apex", path)
            apex = self._groupoid(apex_name)
            left = self._functor(_need(spec, "left", path))
            right = self._functor(_need(spec, "right", path))
            h = self._bg_functor(_need(spec, "h", path))
            v = self._bg_functor(_need(spec, "v", path))
            onames = self.obj_names.get(apex_name)
            if onames is None:
                raise DocumentError(path, "apex must be addressable")
            eps_spec = _need(spec, "eps", path)
            eps = {}
            for o, g in eps_spec.items():
                if str(o) not in onames:
                    raise DocumentError(path + ".eps", "unknown object %r" % o)
                eps[onames[str(o)]] = h.group.check(tuple(g))
            if any(o not in eps for o in apex.objects):
                raise DocumentError(path + ".eps", "labeling is not total")
            try:
                sp = GSpan(apex, left, right, h, v, eps)
            except (GSpanError, AssertionError) as e:
                raise DocumentError(path, str(e))
        else:
            raise DocumentError(path, "unknown span type %r" % kind)
        self.spans[name] = sp
        return sp

    def _cell(self, name):
        if name in self.cells:
            return self.cells[name]
        path = "cells.%s" % name
        spec = self.data.get("cells", {})[name]
        src = self._span(_need(spec, "from", path))
        dst = self._span(_need(spec, "to", path))
        # phi is given over the apex names of both spans
        apex_src_name = self.data["spans"][spec["from"]].get("apex")
        apex_dst_name = self.data["spans"][spec["to"]].get("apex")
        so = self.obj_names.get(apex_src_name)
        sm = self.mor_names.get(apex_src_name)
        to = self.obj_names.get(apex_dst_name)
        tm = self.mor_names.get(apex_dst_name)
        if None in (so, sm, to, tm):
            raise DocumentError(path, "cells need explicit spans over tables")
        phi_spec = _need(spec, "phi", path)
        omap = {so[str(a)]: to[str(b)] for a, b in phi_spec["objects"].items()}
        mmap = {sm[str(f)]: tm[str(u)] for f, u in phi_spec["morphisms"].items()}
        s_names = self.mor_names[self._name_of(src.source)]
        t_names = self.mor_names[self._name_of(src.target)]
        a = {so[str(x)]: s_names[str(m)] for x, m in _need(spec, "a", path).items()}
        b = {so[str(x)]: t_names[str(m)] for x, m in _need(spec, "b", path).items()}
        try:
            phi = GroupoidFunctor(src.apex, dst.apex, omap, mmap)
            cell = SpanMorphism(src, dst, phi, a, b)
        except (FunctorError, SpanMorphismError) as e:
            raise DocumentError(path, str(e))
        self.cells[name] = cell
        return cell

    def _name_of(self, view):
        for name, g in self.groupoids.items():
            if g is view:
                return name
        raise DocumentError("$", "anonymous groupoid in cell")

    # -- serialization (round-trip) -----------------------------------------

    def serialize(self):
        return json.dumps(self.data, indent=2, sort_keys=True)


def parse_document(text, path="<doc>"):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(path, "JSON syntax error: %s" % e)
    return Document(data)


# ---------------------------------------------------------------------------
# serialization of computed spans (for `compose`)


def table_to_doc(g):
    objs = ["o%d" % i for i in range(len(g.objects))]
    oname = {o: "o%d" % i for i, o in enumerate(g.objects)}
    mname = {m: "m%d" % j for j, m in enumerate(g.morphisms)}
    return {
        "objects": objs,
        "morphisms": [
            {"id": mname[m], "src": oname[g.source[m]], "tgt": oname[g.target[m]]}
            for m in g.morphisms
        ],
        "identity": {oname[o]: mname[g.identity[o]] for o in g.objects},
        "compose": [
            [mname[m2], mname[m1], mname[m]]
            for (m2, m1), m in g.compose.items()
        ],
        "inverse": {mname[m]: mname[mi] for m, mi in g.inverse.items()},
    }, oname, mname


def span_to_doc(sp, out_name):
    """A standalone re-parseable document containing the span."""
    if not isinstance(sp.apex, TableGroupoid):
        raise DocumentError("$", "can only serialize table-apex spans")
    apex_doc, ao, am = table_to_doc(sp.apex)
    s_doc, so, smn = table_to_doc(sp.source)
    t_doc, to, tmn = table_to_doc(sp.target)
    G = sp.group
    doc = {
        "groups": {"G": list(G.orders)},
        "groupoids": {
            out_name + ".apex": apex_doc,
            out_name + ".source": s_doc,
            out_name + ".target": t_doc,
        },
        "functors": {
            out_name + ".left": {
                "source": out_name + ".apex",
                "target": out_name + ".source",
                "objects": {ao[o]: so[sp.left.on_obj(o)] for o in sp.apex.objects},
                "morphisms": {
                    am[m]: smn[sp.left.on_mor(m)] for m in sp.apex.morphisms
                },
            },
            out_name + ".right": {
                "source": out_name + ".apex",
                "target": out_name + ".target",
                "objects": {ao[o]: to[sp.right.on_obj(o)] for o in sp.apex.objects},
                "morphisms": {
                    am[m]: tmn[sp.right.on_mor(m)] for m in sp.apex.morphisms
                },
            },
        },
        "bg_functors": {
            out_name + ".h": {
                "source": out_name + ".source",
                "group": "G",
                "morphisms": {
                    smn[m]: list(sp.h.value(m)) for m in sp.source.morphisms
                },
            },
            out_name + ".v": {
                "source": out_name + ".target",
                "group": "G",
                "morphisms": {
                    tmn[m]: list(sp.v.value(m)) for m in sp.target.morphisms
                },
            },
        },
        "spans": {
            out_name: {
                "apex": out_name + ".apex",
                "left": out_name + ".left",
                "right": out_name + ".right",
                "h": out_name + ".h",
                "v": out_name + ".v",
                "eps": {ao[o]: list(sp.eps(o)) for o in sp.apex.objects},
            }
        },
    }
    return doc


# ---------------------------------------------------------------------------
# commands


def _load(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return parse_document(f.read(), path)
    except OSError as e:
        raise DocumentError(path, str(e))


def cmd_validate(args):
    _load(args.file)
    print("ok")
    return 0


def cmd_euler(args):
    doc = _load(args.file)
    if args.name not in doc.groupoids:
        raise DocumentError("groupoids.%s" % args.name, "unresolved name")
    print(doc.groupoids[args.name].chi())
    return 0


def _rational_entry(e):
    """Render a conductor-<=2 cyclotomic entry as a plain rational."""
    assert all(c == 0 for c in e.coeffs[1:])
    return str(e.coeffs[0])


def cmd_matrix(args):
    doc = _load(args.file)
    if args.span not in doc.spans:
        raise DocumentError("spans.%s" % args.span, "unresolved name")
    m = span_matrix(doc.spans[args.span])
    if args.character:
        if args.character not in doc.characters:
            raise DocumentError(
                "characters.%s" % args.character, "unresolved name"
            )
        cm = character_matrix(m, doc.characters[args.character])
        if args.json:
            print(
                json.dumps(
                    {
                        "entries": [
                            [e.render() for e in row] for row in cm.entries
                        ]
                    },
                    indent=2,
                )
            )
        else:
            print(cm.render())
    else:
        if args.json:
            print(json.dumps(m.to_json(), indent=2))
        else:
            print(m.render())
    return 0


def cmd_compose(args):
    doc = _load(args.file)
    for name in (args.left, args.right):
        if name not in doc.spans:
            raise DocumentError("spans.%s" % name, "unresolved name")
    composed = compose_spans(doc.spans[args.left], doc.spans[args.right])
    out = args.out or "%s.%s" % (args.left, args.right)
    fragment = span_to_doc(composed, out)
    print(json.dumps(fragment, indent=2, sort_keys=True))
    return 0


def _check_main(rng, trials, report):
    for i in range(trials):
        sp1, sp2 = rnd.random_composable_pair(rng)
        lhs, rhs = check_main_theorem(sp1, sp2)
        if lhs != rhs:
            report("main", i, "composition != product:\n%s\nvs\n%s" % (
                lhs.render(), rhs.render()))
            return False
    return True


def _check_restrict(rng, trials, report, doc):
    spans = list(doc.spans.values()) if doc else []
    for i in range(trials):
        sp = spans[i] if i < len(spans) else rnd.random_span_with_structure(rng)
        m = span_matrix(sp)
        li = span_matrix(identity_span(sp.h))
        ri = span_matrix(identity_span(sp.v))
        if matrix_multiply(li, m) != m or matrix_multiply(m, ri) != m:
            report("restrict", i, "absorption fails for span matrix\n%s" % m.render())
            return False
    return True


def _check_phistar(rng, trials, report):
    for i in range(trials):
        phi, h, v, eps = rnd.random_pushforward_data(rng)
        if span_matrix(pushforward_span(phi, h, v, eps)) != (
            pushforward_matrix_closed_form(phi, h, v, eps, forward=True)
        ):
            report("phi*", i, "pushforward closed form mismatch")
            return False
        if span_matrix(pullback_span(phi, h, v, eps)) != (
            pushforward_matrix_closed_form(phi, h, v, eps, forward=False)
        ):
            report("phi*", i, "pullback closed form mismatch")
            return False
    return True


def _check_interchange(rng, trials, report):
    for i in range(trials):
        u1, w1, u2, w2 = rnd.random_two_cell_square(rng)
        if not interchange_check(u1, w1, u2, w2):
            report("interchange", i, "interchange law fails")
            return False
    return True


def _check_lemma_chi(rng, trials, report):
    for i in range(trials):
        sp1, sp2 = rnd.random_composable_pair(
            rng, max_objects=5, max_apex_objects=5
        )
        composed = compose_spans(sp1, sp2)
        for c1 in sp1.source.component_reps():
            for c2 in sp2.target.component_reps():
                lhs, rhs = labeled_pullback_identity(
                    sp1, sp2, c1, c2, composed=composed
                )
                if lhs != rhs:
                    report("lemma-chi", i, "per-label identity fails at (%r,%r)"
                           % (c1, c2))
                    return False
        r1, l2 = rnd.random_cospan(rng)
        lhs, rhs = pullback_euler_check(r1, l2)
        if lhs != rhs:
            report("lemma-chi", i, "pullback chi: %s != %s" % (lhs, rhs))
            return False
    return True


CHECKS = {
    "main": lambda rng, n, rep, doc: _check_main(rng, n, rep),
    "restrict": _check_restrict,
    "phi*": lambda rng, n, rep, doc: _check_phistar(rng, n, rep),
    "interchange": lambda rng, n, rep, doc: _check_interchange(rng, n, rep),
    "lemma-chi": lambda rng, n, rep, doc: _check_lemma_chi(rng, n, rep),
}


def cmd_check(args):
    doc = _load(args.file) if args.file else None
    which = list(CHECKS) if args.which == "all" else [args.which]
    failures = []

    def report(check, trial, message):
        failures.append((check, trial, message))
        print("FAIL %s (trial %d, seed %d): %s" % (check, trial, args.seed, message))

    for w in which:
        rng = random.Random(args.seed)
        if CHECKS[w](rng, args.trials, report, doc):
            print("pass %s (%d trials, seed %d)" % (w, args.trials, args.seed))
    return 1 if failures else 0


def cmd_example(args):
    if args.kind != "stirling":
        raise DocumentError("$", "unknown example %r" % args.kind)
    n = args.n
    first, second = stirling_pair(n, guard=max(5, n))
    a, b = span_matrix(first), span_matrix(second)
    prod = matrix_multiply(a, b)
    if args.character == "sign":
        rho = Character(first.group, (1,))
        fa = character_matrix(a, rho)
        fb = character_matrix(b, rho)
        fp = fa * fb
        render = lambda cm: "\n".join(
            " ".join(_rational_entry(e) for e in row) for row in cm.entries
        )
        if args.json:
            print(
                json.dumps(
                    {
                        "first": [[_rational_entry(e) for e in r] for r in fa.entries],
                        "second": [[_rational_entry(e) for e in r] for r in fb.entries],
                        "product": [[_rational_entry(e) for e in r] for r in fp.entries],
                        "product_is_identity": fp.is_identity(),
                    },
                    indent=2,
                )
            )
        else:
            print("signed first kind:")
            print(render(fa))
            print("second kind:")
            print(render(fb))
            print("product:")
            print(render(fp))
            print("identity:", fp.is_identity())
    else:
        if args.json:
            print(
                json.dumps(
                    {
                        "first": a.to_json(),
                        "second": b.to_json(),
                        "product": prod.to_json(),
                    },
                    indent=2,
                )
            )
        else:
            print("first kind:")
            print(a.render())
            print("second kind:")
            print(b.render())
            print("product:")
            print(prod.render())
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="gspans",
        description="Exact span matrices over group rings for finite groupoids",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="parse and validate a document")
    v.add_argument("file")
    v.set_defaults(fn=cmd_validate)

    e = sub.add_parser("euler", help="Euler characteristic of a groupoid")
    e.add_argument("file")
    e.add_argument("--name", required=True)
    e.set_defaults(fn=cmd_euler)

    m = sub.add_parser("matrix", help="span matrix, optionally under a character")
    m.add_argument("file")
    m.add_argument("--span", required=True)
    m.add_argument("--character")
    m.add_argument("--json", action="store_true")
    m.set_defaults(fn=cmd_matrix)

    c = sub.add_parser("compose", help="compose two spans, emit a document")
    c.add_argument("file")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_compose)

    k = sub.add_parser("check", help="run seeded theorem checks")
    k.add_argument("file", nargs="?")
    k.add_argument(
        "--which",
        default="all",
        choices=["main", "restrict", "phi*", "interchange", "lemma-chi", "all"],
    )
    k.add_argument("--seed", type=int, default=20260810)
    k.add_argument("--trials", type=int, default=20)
    k.set_defaults(fn=cmd_check)

    x = sub.add_parser("example", help="emit catalog example matrices")
    x.add_argument("kind", choices=["stirling"])
    x.add_argument("--n", type=int, default=4)
    x.add_argument("--character", choices=["sign"])
    x.add_argument("--json", action="store_true")
    x.set_defaults(fn=cmd_example)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except DocumentError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
