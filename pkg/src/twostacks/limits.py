"""Strict finite limits of groupoids: products, terminal object and
iso-comma objects, with their one- and two-dimensional mediators.

Constructed identifiers ("(a,b)", "(u,v)@...") are never parsed back;
each apex carries pack/unpack side tables instead.
"""

from dataclasses import dataclass, field
import itertools

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NaturalIso,
                       ShapeError, InternalError, IncompatibleCells,
                       compose_functors, vcompose, whisker,
                       is_equivalence_functor)


# ---------------------------------------------------------------------------
# products


@dataclass
class ProductApex:
    """Strict n-ary product.  ``unpack_obj``/``unpack_mor`` map apex ids to
    tuples of factor ids; ``pack_obj``/``pack_mor`` invert them."""

    apex: FiniteGroupoid
    factors: tuple
    projections: tuple
    pack_obj: dict
    unpack_obj: dict
    pack_mor: dict
    unpack_mor: dict

    @property
    def proj_1(self):
        return self.projections[0]

    @property
    def proj_2(self):
        return self.projections[1]


def product_many(factors, name=None):
    factors = tuple(factors)
    if not factors:
        raise ShapeError("empty product is the terminal groupoid; "
                         "build it directly")
    name = name or "prod(%s)" % ",".join(f.name for f in factors)
    obj_tuples = list(itertools.product(*(f.objects for f in factors)))
    pack_obj = {t: "(%s)" % ",".join(t) for t in obj_tuples}
    unpack_obj = {v: k for k, v in pack_obj.items()}
    mor_tuples = list(itertools.product(
        *(f.morphism_list() for f in factors)))
    pack_mor = {t: "(%s)" % ",".join(t) for t in mor_tuples}
    unpack_mor = {v: k for k, v in pack_mor.items()}
    morphisms = {}
    for t in mor_tuples:
        src = pack_obj[tuple(f.source(m) for f, m in zip(factors, t))]
        tgt = pack_obj[tuple(f.target(m) for f, m in zip(factors, t))]
        morphisms[pack_mor[t]] = (src, tgt)
    identity = {pack_obj[t]: pack_mor[tuple(f.id_of(o) for f, o
                                            in zip(factors, t))]
                for t in obj_tuples}
    table = {}
    # iterate composable tuples through the factor tables: a pair of
    # packed morphisms is composable exactly when every component is
    for combo in itertools.product(*(list(f.table.items())
                                     for f in factors)):
        outer = pack_mor[tuple(pair[0][0] for pair in combo)]
        inner = pack_mor[tuple(pair[0][1] for pair in combo)]
        table[(outer, inner)] = pack_mor[tuple(pair[1] for pair in combo)]
    inverse = {pack_mor[t]: pack_mor[tuple(f.inv(m) for f, m
                                           in zip(factors, t))]
               for t in mor_tuples}
    apex = FiniteGroupoid(name, list(pack_obj.values()), morphisms,
                          identity, table, inverse)
    projections = tuple(
        GroupoidFunctor(apex, f,
                        {pack_obj[t]: t[i] for t in obj_tuples},
                        {pack_mor[t]: t[i] for t in mor_tuples},
                        "pr%d" % (i + 1))
        for i, f in enumerate(factors))
    return ProductApex(apex, factors, projections,
                       dict(pack_obj), unpack_obj, dict(pack_mor),
                       unpack_mor)


def product(a, b, name=None):
    """Binary product; ``proj_1``/``proj_2`` are the two projections."""
    return product_many([a, b], name=name)


def mediate_product(pa, cones, name=""):
    """The pairing functor <c_1, ..., c_n> of a cone over the factors."""
    cones = tuple(cones)
    if len(cones) != len(pa.factors):
        raise ShapeError("cone has %d legs, product has %d factors"
                         % (len(cones), len(pa.factors)))
    dom = cones[0].domain
    for c, f in zip(cones, pa.factors):
        if c.domain != dom:
            raise ShapeError("cone legs have different domains")
        if c.codomain != f:
            raise ShapeError("cone leg lands outside its factor")
    return GroupoidFunctor(
        dom, pa.apex,
        {o: pa.pack_obj[tuple(c.obj(o) for c in cones)]
         for o in dom.objects},
        {m: pa.pack_mor[tuple(c.mor(m) for c in cones)]
         for m in dom.morphisms},
        name or "<%s>" % ",".join(c.name or "?" for c in cones))


# ---------------------------------------------------------------------------
# iso-comma objects


@dataclass
class IsoCommaApex:
    """Strict iso-comma object of a cospan f: A -> C <- B : g.

    Apex objects are triples (a, b, gamma: f a -> g b); morphisms are
    pairs (u, v) with g(v).gamma = gamma'.f(u); the canonical cell's
    component at a triple is its gamma.  ``pack_mor`` is keyed by
    (u, v, source-triple-id) because the same pair may occur at several
    sources.
    """

    apex: FiniteGroupoid
    f: GroupoidFunctor
    g: GroupoidFunctor
    proj_left: GroupoidFunctor
    proj_right: GroupoidFunctor
    cell: NaturalIso
    pack_obj: dict = field(repr=False, default_factory=dict)
    unpack_obj: dict = field(repr=False, default_factory=dict)
    pack_mor: dict = field(repr=False, default_factory=dict)
    unpack_mor: dict = field(repr=False, default_factory=dict)


def iso_comma(f, g, name=None):
    if f.codomain != g.codomain:
        raise ShapeError("iso-comma needs a cospan: codomains differ")
    a_gpd, b_gpd, c_gpd = f.domain, g.domain, f.codomain
    name = name or "ic(%s,%s)" % (f.name or "?", g.name or "?")
    pack_obj, unpack_obj = {}, {}
    for a in a_gpd.objects:
        for b in b_gpd.objects:
            for gamma in c_gpd.hom(f.obj(a), g.obj(b)):
                oid = "(%s,%s,%s)" % (a, b, gamma)
                pack_obj[(a, b, gamma)] = oid
                unpack_obj[oid] = (a, b, gamma)
    objects = sorted(unpack_obj)
    morphisms, pack_mor, unpack_mor = {}, {}, {}
    for o1 in objects:
        a1, b1, g1 = unpack_obj[o1]
        for o2 in objects:
            a2, b2, g2 = unpack_obj[o2]
            for u in a_gpd.hom(a1, a2):
                fu = f.mor(u)
                lhs = c_gpd.compose(g2, fu)
                for v in b_gpd.hom(b1, b2):
                    if lhs == c_gpd.compose(g.mor(v), g1):
                        mid = "(%s,%s)@%s" % (u, v, o1)
                        morphisms[mid] = (o1, o2)
                        pack_mor[(u, v, o1)] = mid
                        unpack_mor[mid] = (u, v)
    identity = {}
    for o in objects:
        a, b, _ = unpack_obj[o]
        identity[o] = pack_mor[(a_gpd.id_of(a), b_gpd.id_of(b), o)]
    table = {}
    for m1, (s1, t1) in morphisms.items():
        u1, v1 = unpack_mor[m1]
        for m2, (s2, t2) in morphisms.items():
            if t2 != s1:
                continue
            table[(m1, m2)] = pack_mor[(a_gpd.compose(u1, unpack_mor[m2][0]),
                                        b_gpd.compose(v1, unpack_mor[m2][1]),
                                        s2)]
    inverse = {}
    for m, (s, t) in morphisms.items():
        u, v = unpack_mor[m]
        inverse[m] = pack_mor[(a_gpd.inv(u), b_gpd.inv(v), t)]
    apex = FiniteGroupoid(name, objects, morphisms, identity, table, inverse)
    proj_left = GroupoidFunctor(
        apex, a_gpd, {o: unpack_obj[o][0] for o in objects},
        {m: unpack_mor[m][0] for m in morphisms}, "pl")
    proj_right = GroupoidFunctor(
        apex, b_gpd, {o: unpack_obj[o][1] for o in objects},
        {m: unpack_mor[m][1] for m in morphisms}, "pr")
    cell = NaturalIso(compose_functors(f, proj_left),
                      compose_functors(g, proj_right),
                      {o: unpack_obj[o][2] for o in objects},
                      "cell(%s)" % name)
    return IsoCommaApex(apex, f, g, proj_left, proj_right, cell,
                        pack_obj, unpack_obj, pack_mor, unpack_mor)


def mediate_iso_comma(ic, u, v, theta, name=""):
    """The mediator T -> apex of a cone (u: T->A, v: T->B,
    theta: f.u => g.v); strict on projections, recovers theta on the
    canonical cell."""
    if u.domain != v.domain:
        raise ShapeError("cone legs have different domains")
    if u.codomain != ic.f.domain or v.codomain != ic.g.domain:
        raise ShapeError("cone legs do not match the cospan feet")
    if theta.source != compose_functors(ic.f, u) or \
            theta.target != compose_functors(ic.g, v):
        raise ShapeError("cone cell endpoints mismatch")
    dom = u.domain
    on_obj = {t: ic.pack_obj[(u.obj(t), v.obj(t), theta.at(t))]
              for t in dom.objects}
    on_mor = {m: ic.pack_mor[(u.mor(m), v.mor(m), on_obj[dom.source(m)])]
              for m in dom.morphisms}
    return GroupoidFunctor(dom, ic.apex, on_obj, on_mor,
                           name or "med(%s,%s)" % (u.name or "?",
                                                   v.name or "?"))


def mediate_iso_comma_2cell(ic, m1, m2, cell_a, cell_b, name=""):
    """The unique 2-cell between two functors into the apex whose
    whiskerings with the projections are the given cells.

    Raises IncompatibleCells (with the witness object) when the
    two-dimensional compatibility equality fails somewhere.
    """
    if m1.codomain != ic.apex or m2.codomain != ic.apex:
        raise ShapeError("mediators must land in the iso-comma apex")
    if cell_a.source != compose_functors(ic.proj_left, m1) or \
            cell_a.target != compose_functors(ic.proj_left, m2):
        raise ShapeError("left cell endpoints mismatch")
    if cell_b.source != compose_functors(ic.proj_right, m1) or \
            cell_b.target != compose_functors(ic.proj_right, m2):
        raise ShapeError("right cell endpoints mismatch")
    c_gpd = ic.f.codomain
    comps = {}
    for t in m1.domain.objects:
        g1 = ic.unpack_obj[m1.obj(t)][2]
        g2 = ic.unpack_obj[m2.obj(t)][2]
        if c_gpd.compose(g2, ic.f.mor(cell_a.at(t))) != \
                c_gpd.compose(ic.g.mor(cell_b.at(t)), g1):
            raise IncompatibleCells(t)
        comps[t] = ic.pack_mor[(cell_a.at(t), cell_b.at(t), m1.obj(t))]
    return NaturalIso(m1, m2, comps, name)


# ---------------------------------------------------------------------------
# squares and the pasting law


@dataclass
class CommaSquare:
    """A square over the cospan u: A -> C <- B : v, filled by an
    invertible cell u.left_leg => v.right_leg."""

    left_leg: GroupoidFunctor   # P -> A
    right_leg: GroupoidFunctor  # P -> B
    u: GroupoidFunctor          # A -> C
    v: GroupoidFunctor          # B -> C
    cell: NaturalIso

    def validate_shape(self):
        if self.left_leg.domain != self.right_leg.domain:
            raise ShapeError("square legs have different apexes")
        if self.u.domain != self.left_leg.codomain or \
                self.v.domain != self.right_leg.codomain:
            raise ShapeError("square cospan does not match legs")
        if self.u.codomain != self.v.codomain:
            raise ShapeError("square cospan feet disagree")
        if self.cell.source != compose_functors(self.u, self.left_leg) or \
                self.cell.target != compose_functors(self.v, self.right_leg):
            raise ShapeError("square cell endpoints mismatch")


def square_of_iso_comma(ic):
    """The canonical square carried by a constructed iso-comma."""
    return CommaSquare(ic.proj_left, ic.proj_right, ic.f, ic.g, ic.cell)


def exhibits_iso_comma(sq):
    """True when the square's mediator into the canonical iso-comma of its
    cospan is an equivalence (the bi-iso-comma universal property)."""
    sq.validate_shape()
    ic = iso_comma(sq.u, sq.v)
    m = mediate_iso_comma(ic, sq.left_leg, sq.right_leg, sq.cell)
    return is_equivalence_functor(m)


def paste_squares(left, right):
    """Horizontal pasting: the side of the left square must be the left
    leg of the right one."""
    left.validate_shape()
    right.validate_shape()
    if left.v != right.left_leg:
        raise ShapeError("squares do not share the middle leg")
    return CommaSquare(
        left.left_leg,
        compose_functors(right.right_leg, left.right_leg),
        compose_functors(right.u, left.u),
        right.v,
        vcompose(whisker(left.cell, right.u, "post"),
                 whisker(right.cell, left.right_leg, "pre")))


def check_pasting_law(left, right):
    """Decide whether the left square exhibits an iso-comma, given that
    the right one does, and confirm the if-and-only-if against the pasted
    rectangle.

    ``right`` may be an IsoCommaApex (its canonical square is used) or a
    CommaSquare already known to exhibit one.  Returns the (shared)
    verdict for the left square and the pasted rectangle.
    """
    if isinstance(right, IsoCommaApex):
        right = square_of_iso_comma(right)
    elif not exhibits_iso_comma(right):
        raise ShapeError("right square does not exhibit an iso-comma")
    pasted = paste_squares(left, right)
    left_verdict = exhibits_iso_comma(left)
    pasted_verdict = exhibits_iso_comma(pasted)
    if left_verdict != pasted_verdict:
        raise InternalError(
            "pasting law violated: left %s, pasted %s"
            % (left_verdict, pasted_verdict))
    return left_verdict
