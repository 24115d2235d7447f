"""Coherent 2-groups internal to finite groupoids.

A TwoGroup carries a multiplication functor on the product of its
carrier with itself, a unit, an inverse, and explicit coherence cells
(associator, unitors, unit-comparison, inverse cells).  The coherence
laws are decided by evaluating both pastings at every tuple of carrier
objects; nothing is assumed strict, although the three bundled
constructors all produce strict instances.
"""

from dataclasses import dataclass

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NaturalIso,
                       ValidationReport, ShapeError, InternalError,
                       terminal_groupoid, discrete_groupoid,
                       one_object_groupoid, identity_functor,
                       constant_functor, bang_functor, compose_functors,
                       identity_natiso)
from .limits import product, product_many, mediate_product


def _check_group(elements, mult, unit, inv):
    elements = list(elements)
    if unit not in elements:
        raise ShapeError("group unit is not an element")
    for a in elements:
        for b in elements:
            if mult.get((a, b)) not in elements:
                raise ShapeError("multiplication table incomplete at %r"
                                 % ((a, b),))
    for a in elements:
        if mult[(unit, a)] != a or mult[(a, unit)] != a:
            raise ShapeError("unit law fails at %r" % a)
        if mult[(inv[a], a)] != unit:
            raise ShapeError("inverse law fails at %r" % a)
    for a in elements:
        for b in elements:
            for c in elements:
                if mult[(mult[(a, b)], c)] != mult[(a, mult[(b, c)])]:
                    raise ShapeError("associativity fails at %r"
                                     % ((a, b, c),))


@dataclass
class TwoGroup:
    carrier: FiniteGroupoid
    pair: object          # ProductApex of carrier x carrier
    triple: object        # ProductApex of carrier x carrier x carrier
    m: GroupoidFunctor    # pair.apex -> carrier
    e: GroupoidFunctor    # 1 -> carrier
    inv: GroupoidFunctor  # carrier -> carrier
    alpha_m: NaturalIso   # m(id x m) => m(m x id) over triple.apex
    lambda_m: NaturalIso  # m(e x id) => id
    rho_m: NaturalIso     # m(id x e) => id
    alpha_e: NaturalIso   # unit-comparison cell, right-unitor shaped
    inv_right: NaturalIso  # m(id x inv) => e . !
    inv_left: NaturalIso   # m(inv x id) => e . !
    name: str = ""

    def mobj(self, a, b):
        return self.m.obj(self.pair.pack_obj[(a, b)])

    def mmor(self, u, v):
        return self.m.mor(self.pair.pack_mor[(u, v)])

    @property
    def unit_obj(self):
        return self.e.obj("*")

    def alpha_at(self, a, b, c):
        return self.alpha_m.at(self.triple.pack_obj[(a, b, c)])


def structure_functors(carrier, pair, triple, m, e, inv):
    """The derived functors whose gaps the coherence cells fill, keyed by
    the cell that uses them."""
    pr1, pr2, pr3 = (triple.projections + (None,))[:3]
    id_c = identity_functor(carrier)
    e_bang = compose_functors(e, bang_functor(carrier))
    inner = compose_functors(m, mediate_product(pair, [pr2, pr3]))
    outer = compose_functors(m, mediate_product(pair, [pr1, pr2]))
    return {
        "m_then": compose_functors(m, mediate_product(pair, [pr1, inner])),
        "m_first": compose_functors(m, mediate_product(pair, [outer, pr3])),
        "left_unit": compose_functors(m, mediate_product(pair,
                                                         [e_bang, id_c])),
        "right_unit": compose_functors(m, mediate_product(pair,
                                                          [id_c, e_bang])),
        "inv_right": compose_functors(m, mediate_product(pair,
                                                         [id_c, inv])),
        "inv_left": compose_functors(m, mediate_product(pair,
                                                        [inv, id_c])),
        "e_bang": e_bang,
        "id": id_c,
    }


def strict_twogroup(carrier, m, e, inv, pair, triple, name=""):
    """Assemble a TwoGroup whose coherence cells are all identities;
    requires the structure functors to agree on the nose."""
    sf = structure_functors(carrier, pair, triple, m, e, inv)
    checks = [("m_then", "m_first"), ("left_unit", "id"),
              ("right_unit", "id"), ("inv_right", "e_bang"),
              ("inv_left", "e_bang")]
    for a, b in checks:
        if sf[a].on_objects != sf[b].on_objects or \
                sf[a].on_morphisms != sf[b].on_morphisms:
            raise InternalError("structure is not strict: %s != %s" % (a, b))
    def cell(src_key, tgt_key, label):
        return NaturalIso(sf[src_key], sf[tgt_key],
                          {o: carrier.id_of(sf[src_key].obj(o))
                           for o in sf[src_key].domain.objects}, label)
    return TwoGroup(
        carrier, pair, triple, m, e, inv,
        alpha_m=cell("m_then", "m_first", "alpha_m"),
        lambda_m=cell("left_unit", "id", "lambda_m"),
        rho_m=cell("right_unit", "id", "rho_m"),
        alpha_e=cell("right_unit", "id", "alpha_e"),
        inv_right=cell("inv_right", "e_bang", "inv_right"),
        inv_left=cell("inv_left", "e_bang", "inv_left"),
        name=name)


def discrete_twogroup(group_tables, name=""):
    """Discrete carrier on the group elements; multiplication from the
    table; every coherence cell an identity."""
    elements, mult, unit, inv = group_tables
    _check_group(elements, mult, unit, inv)
    carrier = discrete_groupoid(list(elements), name or "disc")
    pair = product(carrier, carrier)
    triple = product_many([carrier, carrier, carrier])
    m = GroupoidFunctor(
        pair.apex, carrier,
        {pair.pack_obj[(a, b)]: mult[(a, b)]
         for a in carrier.objects for b in carrier.objects},
        {pair.pack_mor[(u, v)]: carrier.id_of(
            mult[(carrier.source(u), carrier.source(v))])
         for u in carrier.morphisms for v in carrier.morphisms}, "m")
    e = GroupoidFunctor(terminal_groupoid(), carrier, {"*": unit},
                        {"id_*": carrier.id_of(unit)}, "e")
    invf = GroupoidFunctor(carrier, carrier,
                           {a: inv[a] for a in carrier.objects},
                           {carrier.id_of(a): carrier.id_of(inv[a])
                            for a in carrier.objects}, "inv")
    return strict_twogroup(carrier, m, e, invf, pair, triple,
                           name or "disc2grp")


def delooping(abelian_tables, name=""):
    """One object whose automorphisms are the given abelian group, with
    multiplication acting on morphisms by the group operation."""
    elements, mult, unit, inv = abelian_tables
    _check_group(elements, mult, unit, inv)
    for a in elements:
        for b in elements:
            if mult[(a, b)] != mult[(b, a)]:
                raise ShapeError(
                    "delooping needs an abelian group; %r, %r do not "
                    "commute" % (a, b))
    carrier = one_object_groupoid(name or "B", elements, mult, unit, inv)
    pair = product(carrier, carrier)
    triple = product_many([carrier, carrier, carrier])
    o = carrier.objects[0]
    m = GroupoidFunctor(
        pair.apex, carrier, {pair.apex.objects[0]: o},
        {pair.pack_mor[(u, v)]: mult[(u, v)]
         for u in elements for v in elements}, "m")
    e = GroupoidFunctor(terminal_groupoid(), carrier, {"*": o},
                        {"id_*": unit}, "e")
    invf = GroupoidFunctor(carrier, carrier, {o: o},
                           {u: inv[u] for u in elements}, "inv")
    return strict_twogroup(carrier, m, e, invf, pair, triple,
                           name or "deloop2grp")


# ---------------------------------------------------------------------------
# crossed modules


@dataclass
class CrossedModule:
    """(H -> G, action of G on H): base and fiber are raw group tables,
    boundary maps fiber elements to base elements, act is keyed by
    (base element, fiber element)."""

    base: tuple
    fiber: tuple
    boundary: dict
    act: dict

    def validate(self):
        report = ValidationReport("crossed module")
        g_el, g_mult, g_unit, g_inv = self.base
        h_el, h_mult, h_unit, h_inv = self.fiber
        try:
            _check_group(g_el, g_mult, g_unit, g_inv)
            _check_group(h_el, h_mult, h_unit, h_inv)
        except ShapeError as err:
            report.add("group-table", (), str(err))
            return report
        for h in h_el:
            if self.boundary.get(h) not in g_el:
                report.add("boundary-missing", (h,))
        for g in g_el:
            for h in h_el:
                if self.act.get((g, h)) not in h_el:
                    report.add("action-missing", (g, h))
        if not report.ok:
            return report
        for h1 in h_el:
            for h2 in h_el:
                if self.boundary[h_mult[(h1, h2)]] != \
                        g_mult[(self.boundary[h1], self.boundary[h2])]:
                    report.add("boundary-homomorphism", (h1, h2))
        for g in g_el:
            if self.act[(g, h_unit)] != h_unit:
                report.add("action-unit", (g,))
            for h1 in h_el:
                for h2 in h_el:
                    if self.act[(g, h_mult[(h1, h2)])] != \
                            h_mult[(self.act[(g, h1)], self.act[(g, h2)])]:
                        report.add("action-automorphism", (g, h1, h2))
        for g1 in g_el:
            for g2 in g_el:
                for h in h_el:
                    if self.act[(g_mult[(g1, g2)], h)] != \
                            self.act[(g1, self.act[(g2, h)])]:
                        report.add("action-multiplicative", (g1, g2, h))
        for h in h_el:
            if self.act[(g_unit, h)] != h:
                report.add("action-unit-element", (h,))
        for g in g_el:
            for h in h_el:
                lhs = self.boundary[self.act[(g, h)]]
                rhs = g_mult[(g_mult[(g, self.boundary[h])], g_inv[g])]
                if lhs != rhs:
                    report.add("boundary-equivariance", (g, h))
        for h in h_el:
            for h2 in h_el:
                lhs = self.act[(self.boundary[h], h2)]
                rhs = h_mult[(h_mult[(h, h2)], h_inv[h])]
                if lhs != rhs:
                    report.add("peiffer", (h, h2))
        return report


def from_crossed_module(cm, name=""):
    """The 2-group whose objects are base elements and whose morphisms
    g -> g' are the fiber elements h with boundary(h).g = g'."""
    report = cm.validate()
    if not report.ok:
        raise ShapeError("invalid crossed module:\n%s" % report)
    g_el, g_mult, g_unit, g_inv = cm.base
    h_el, h_mult, h_unit, h_inv = cm.fiber
    morphisms, pack, unpack = {}, {}, {}
    for g in g_el:
        for h in h_el:
            mid = "%s@%s" % (h, g)
            morphisms[mid] = (g, g_mult[(cm.boundary[h], g)])
            pack[(h, g)] = mid
            unpack[mid] = (h, g)
    identity = {g: pack[(h_unit, g)] for g in g_el}
    table = {}
    for m2, (s2, t2) in morphisms.items():
        h2 = unpack[m2][0]
        for m1, (s1, t1) in morphisms.items():
            if t1 != s2:
                continue
            table[(m2, m1)] = pack[(h_mult[(h2, unpack[m1][0])], s1)]
    inverse = {}
    for mm, (s, t) in morphisms.items():
        inverse[mm] = pack[(h_inv[unpack[mm][0]], t)]
    carrier = FiniteGroupoid(name or "xmod", list(g_el), morphisms,
                             identity, table, inverse)
    pair = product(carrier, carrier)
    triple = product_many([carrier, carrier, carrier])
    m_obj = {pair.pack_obj[(a, b)]: g_mult[(a, b)]
             for a in g_el for b in g_el}
    m_mor = {}
    for m1, (g1, _) in morphisms.items():
        h1 = unpack[m1][0]
        for m2, (g2, _) in morphisms.items():
            h2 = unpack[m2][0]
            m_mor[pair.pack_mor[(m1, m2)]] = pack[
                (h_mult[(h1, cm.act[(g1, h2)])], g_mult[(g1, g2)])]
    m = GroupoidFunctor(pair.apex, carrier, m_obj, m_mor, "m")
    e = GroupoidFunctor(terminal_groupoid(), carrier, {"*": g_unit},
                        {"id_*": pack[(h_unit, g_unit)]}, "e")
    inv_mor = {}
    for mm, (s, t) in morphisms.items():
        h = unpack[mm][0]
        inv_mor[mm] = pack[(cm.act[(g_inv[s], h_inv[h])], g_inv[s])]
    invf = GroupoidFunctor(carrier, carrier,
                           {g: g_inv[g] for g in g_el}, inv_mor, "inv")
    return strict_twogroup(carrier, m, e, invf, pair, triple,
                           name or "xmod2grp")


# ---------------------------------------------------------------------------
# coherence checking


def _functor_tables_equal(f, g):
    return (f.on_objects == g.on_objects
            and f.on_morphisms == g.on_morphisms)


def check_twogroup_coherence(t):
    """Pentagon, triangle, cell naturality and endpoint shapes, and
    object invertibility, all by exhaustive evaluation."""
    report = ValidationReport("2-group %s" % (t.name or "?"))
    from .groupoid import validate_groupoid
    report.extend(validate_groupoid(t.carrier))
    for f in (t.m, t.e, t.inv):
        report.extend(f.validate())
    if not report.ok:
        return report
    sf = structure_functors(t.carrier, t.pair, t.triple, t.m, t.e, t.inv)
    shape_expect = [
        (t.alpha_m, "m_then", "m_first", "alpha-shape"),
        (t.lambda_m, "left_unit", "id", "lambda-shape"),
        (t.rho_m, "right_unit", "id", "rho-shape"),
        (t.alpha_e, "right_unit", "id", "alpha-e-shape"),
        (t.inv_right, "inv_right", "e_bang", "inv-right-shape"),
        (t.inv_left, "inv_left", "e_bang", "inv-left-shape"),
    ]
    for cell, src, tgt, rule in shape_expect:
        if not (_functor_tables_equal(cell.source, sf[src])
                and _functor_tables_equal(cell.target, sf[tgt])):
            report.add(rule, (), "cell endpoints differ from the "
                       "structure functors")
    if not report.ok:
        return report
    for cell, _, _, rule in shape_expect:
        sub = cell.validate()
        for v in sub.violations:
            report.add(rule.replace("-shape", "-cell"), v.witness, v.rule)
    if not report.ok:
        return report
    c = t.carrier
    objs = c.objects
    for g in objs:
        for h in objs:
            for k in objs:
                gh = t.mobj(g, h)
                hk = t.mobj(h, k)
                for l in objs:
                    kl = t.mobj(k, l)
                    lhs = c.compose(t.alpha_at(gh, k, l),
                                    t.alpha_at(g, h, kl))
                    rhs = c.compose(
                        t.mmor(t.alpha_at(g, h, k), c.id_of(l)),
                        c.compose(t.alpha_at(g, hk, l),
                                  t.mmor(c.id_of(g), t.alpha_at(h, k, l))))
                    if lhs != rhs:
                        report.add("pentagon", (g, h, k, l))
    e_obj = t.unit_obj
    for g in objs:
        for h in objs:
            lhs = c.compose(t.mmor(t.rho_m.at(g), c.id_of(h)),
                            t.alpha_at(g, e_obj, h))
            rhs = t.mmor(c.id_of(g), t.lambda_m.at(h))
            if lhs != rhs:
                report.add("triangle", (g, h))
    # object invertibility: the inverse cells provide, for every g, an
    # isomorphism g.inv(g) -> e (their validity was checked above); spot
    # the endpoints anyway
    for g in objs:
        w = t.inv_right.at(g)
        if c.morphisms[w] != (t.mobj(g, t.inv.obj(g)), e_obj):
            report.add("invertibility", (g,))
        w = t.inv_left.at(g)
        if c.morphisms[w] != (t.mobj(t.inv.obj(g), g), e_obj):
            report.add("invertibility", (g,))
    return report
