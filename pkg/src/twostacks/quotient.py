"""Evaluation 2-categories of the quotient construction.

A quotient object over a base Y is a principal 2-bundle P together with
an equivariant map alpha from its total action to a fixed acted space X.
Morphisms are bundle morphisms commuting with the alphas up to an
invertible equivariant 2-cell beta; the paper-level condition is the
existence of beta, so one witness is stored and an existence search is
provided as a fallback.  2-cells are bundle 2-cells whose
alpha-whiskering pastes the target witness onto the source witness.

Restriction along a base morphism acts on the iso-comma and is a strict
2-functor; all pre-2-stack weakness lives in the unit comparison (iota)
and the composition comparison (chi), whose adjoint-equivalence
triangles, naturality squares, and identity-modification equalities are
checked componentwise on enumerated data.
"""

from dataclasses import dataclass, field

from .groupoid import (DEFAULT_SEARCH_CAP, ShapeError, FiniteGroupoid,
                       GroupoidFunctor, NaturalIso, ValidationReport,
                       all_functors, all_natural_isos, compose_functors,
                       hcompose, identity_functor, identity_natiso,
                       terminal_groupoid, vcompose, whisker)
from .limits import mediate_iso_comma_2cell
from .action import (Action, EquivariantMap, EquivariantTwoCell,
                     check_equivariant_map, check_equivariant_2cell,
                     compose_equivariant, identity_equivariant,
                     lift_mediator_equivariance, multiplication_action,
                     trivial_action, trivial_equivariant)
from .equivalence import EquivalencePack
from .bundle import (BundleMorphism, BundleTwoCell, PrincipalBundle,
                     _same_action, _same_equivariant, bundle_hom_category,
                     check_bundle, check_bundle_morphism, check_bundle_2cell,
                     compose_bundle_morphism, equivariant_structures,
                     identity_bundle_morphism, make_bundle, mult_projection,
                     pullback_pieces)
from .site import identity_cover


# ---------------------------------------------------------------------------
# objects, morphisms, 2-cells


@dataclass
class QuotientObject:
    """A bundle over the base together with a map of its total action
    into the fixed acted space."""

    bundle: PrincipalBundle
    alpha: EquivariantMap
    name: str = ""


@dataclass
class QuotientMorphism:
    """A bundle morphism plus one stored invertible cell beta filling
    the alpha-triangle: beta runs from target-alpha composed with the
    map to source-alpha."""

    underlying: BundleMorphism
    beta: NaturalIso
    name: str = ""


@dataclass
class QuotientTwoCell:
    """A bundle 2-cell whose alpha-whiskering pastes the target beta
    onto the source beta."""

    underlying: BundleTwoCell
    name: str = ""


def quotient_object_check(o):
    if o.bundle.group != o.alpha.source.group:
        raise ShapeError("alpha carries a different 2-group")
    if not _same_action(o.alpha.source, o.bundle.total):
        raise ShapeError("alpha does not start at the bundle total")
    report = ValidationReport("quotient object %s" % (o.name or "?"))
    report.extend(check_bundle(o.bundle))
    report.extend(check_equivariant_map(o.alpha))
    return report


def beta_candidates(src, tgt, bm):
    """All equivariant cells from target-alpha composed with the map to
    source-alpha; the existence search behind the stored witness."""
    comp = compose_equivariant(tgt.alpha, bm.map)
    for beta in all_natural_isos(comp.f, src.alpha.f):
        cell = EquivariantTwoCell(comp, src.alpha, beta, "beta")
        if check_equivariant_2cell(cell).ok:
            yield beta


def find_beta(src, tgt, bm):
    for beta in beta_candidates(src, tgt, bm):
        return beta
    return None


def check_quotient_morphism(src, tgt, m):
    report = ValidationReport("quotient morphism %s" % (m.name or "?"))
    report.extend(check_bundle_morphism(src.bundle, tgt.bundle,
                                        m.underlying))
    comp = compose_equivariant(tgt.alpha, m.underlying.map)
    if m.beta.source != comp.f or m.beta.target != src.alpha.f:
        raise ShapeError("beta does not fill the alpha-triangle")
    report.extend(check_equivariant_2cell(
        EquivariantTwoCell(comp, src.alpha, m.beta, m.name or "beta")))
    return report


def check_quotient_2cell(src, tgt, m_a, m_b, c):
    """Validate the underlying bundle 2-cell and the displayed witness
    compatibility: whiskering with target-alpha then pasting the target
    beta recovers the source beta."""
    if not (_same_bundle_morphism(c.underlying.source, m_a.underlying)
            and _same_bundle_morphism(c.underlying.target, m_b.underlying)):
        raise ShapeError("2-cell endpoints differ from the given "
                         "quotient morphisms")
    report = ValidationReport("quotient 2-cell %s" % (c.name or "?"))
    report.extend(check_bundle_2cell(src.bundle, tgt.bundle, c.underlying))
    want = vcompose(whisker(c.underlying.cell.gamma, tgt.alpha.f, "post"),
                    m_b.beta)
    if want != m_a.beta:
        report.add("quotient-2cell-beta", c.name or "?",
                   "alpha-whiskering does not paste the witnesses")
    return report


def _same_bundle_morphism(a, b):
    return (_same_equivariant(a.map, b.map) and a.gamma == b.gamma)


def _same_quotient_morphism(a, b):
    return (_same_bundle_morphism(a.underlying, b.underlying)
            and a.beta == b.beta)


def identity_quotient(o, name=""):
    bm = identity_bundle_morphism(o.bundle)
    return QuotientMorphism(bm, identity_natiso(o.alpha.f),
                            name or "id(%s)" % (o.name or "?"))


def compose_quotient(outer, inner, name=""):
    bm = compose_bundle_morphism(outer.underlying, inner.underlying)
    beta = vcompose(whisker(outer.beta, inner.underlying.map.f, "pre"),
                    inner.beta)
    return QuotientMorphism(bm, beta,
                            name or "%s.%s" % (outer.name or "?",
                                               inner.name or "?"))


def identity_quotient_2cell(m, name=""):
    cell = EquivariantTwoCell(m.underlying.map, m.underlying.map,
                              identity_natiso(m.underlying.map.f))
    return QuotientTwoCell(
        BundleTwoCell(m.underlying, m.underlying, cell),
        name or "id(%s)" % (m.name or "?"))


def vcompose_quotient_2cells(c1, c2, name=""):
    gamma = vcompose(c1.underlying.cell.gamma, c2.underlying.cell.gamma)
    cell = EquivariantTwoCell(c1.underlying.cell.source_map,
                              c2.underlying.cell.target_map, gamma)
    return QuotientTwoCell(
        BundleTwoCell(c1.underlying.source, c2.underlying.target, cell),
        name)


# ---------------------------------------------------------------------------
# the evaluation 2-category


@dataclass
class TwoCatPresentation:
    """Enumerated presentation of an evaluation 2-category up to a
    bound: object, 1-cell, and 2-cell lists plus composition tables.

    ``one_table`` maps a pair of composable 1-cell addresses (i, j, a),
    (j, k, b), in application order, to the composite's index in
    ``one_cells[(i, k)]``; ``two_vtable`` does the same for vertical
    composition within a hom and ``two_htable`` for horizontal
    composition.  ``None`` entries mark composites the bound cut off.
    """

    x_action: Action
    base: FiniteGroupoid
    objects: list
    one_cells: dict
    two_cells: dict
    identity_one: dict = field(default_factory=dict)
    one_table: dict = field(default_factory=dict)
    two_vtable: dict = field(default_factory=dict)
    two_htable: dict = field(default_factory=dict)
    bounded: bool = False
    notes: list = field(default_factory=list)

    def morphism(self, i, j, a):
        return self.one_cells[(i, j)][a]

    def two_cell_list(self, i, j, a, b):
        return self.two_cells.get((i, j, a, b), [])

    def validate(self):
        """Category axioms per hom, unit laws and associativity of
        1-cell composition, and the middle-four interchange, all on the
        enumerated data."""
        report = ValidationReport("evaluation 2-category")
        n = len(self.objects)
        for i in range(n):
            if self.identity_one.get(i) is None and not self.bounded:
                report.add("two-cat-identity-one", i)
        for (i, j), cells in sorted(self.one_cells.items()):
            for a, m in enumerate(cells):
                idents = [c for c in self.two_cell_list(i, j, a, a)
                          if c.underlying.cell.gamma
                          == identity_natiso(m.underlying.map.f)]
                if not idents and not self.bounded:
                    report.add("two-cat-identity-two", (i, j, a))
        self._validate_vertical(report)
        self._validate_one_composition(report)
        self._validate_interchange(report)
        return report

    def _validate_vertical(self, report):
        for (i, j), cells in sorted(self.one_cells.items()):
            for a in range(len(cells)):
                for b in range(len(cells)):
                    for u, c1 in enumerate(self.two_cell_list(i, j, a, b)):
                        inv = c1.underlying.cell.gamma.inverse()
                        if (_locate_two(self.two_cell_list(i, j, b, a), inv)
                                is None and not self.bounded):
                            report.add("two-cat-inverse", (i, j, a, b, u))
                        for k in range(len(cells)):
                            for v, c2 in enumerate(
                                    self.two_cell_list(i, j, b, k)):
                                comp = vcompose(c1.underlying.cell.gamma,
                                                c2.underlying.cell.gamma)
                                w = _locate_two(
                                    self.two_cell_list(i, j, a, k), comp)
                                if w is None and not self.bounded:
                                    report.add("two-cat-vclosure",
                                               (i, j, a, b, k, u, v))

    def _validate_one_composition(self, report):
        for (i, j), cells in sorted(self.one_cells.items()):
            ii = self.identity_one.get(i)
            jj = self.identity_one.get(j)
            for a, m in enumerate(cells):
                if ii is not None:
                    pre = compose_quotient(m, self.morphism(i, i, ii))
                    if not _same_bundle_morphism(pre.underlying,
                                                 m.underlying):
                        report.add("two-cat-unit-law", (i, j, a, "pre"))
                if jj is not None:
                    post = compose_quotient(self.morphism(j, j, jj), m)
                    if not _same_bundle_morphism(post.underlying,
                                                 m.underlying):
                        report.add("two-cat-unit-law", (i, j, a, "post"))
                for (jj2, k), cells2 in sorted(self.one_cells.items()):
                    if jj2 != j:
                        continue
                    for b, m2 in enumerate(cells2):
                        comp = compose_quotient(m2, m)
                        c = _locate_one(self.one_cells.get((i, k), []),
                                        comp.underlying)
                        if c is None and not self.bounded:
                            report.add("two-cat-composition", (i, j, k, a, b))

    def _validate_interchange(self, report):
        """Middle-four interchange, checked directly on the underlying
        cells of every vertically composable pair over a composable pair
        of homs."""
        for (i, j), cells1 in sorted(self.one_cells.items()):
            for (j2, k), cells2 in sorted(self.one_cells.items()):
                if j2 != j:
                    continue
                quads1 = _vertical_pairs(self, i, j, len(cells1))
                quads2 = _vertical_pairs(self, j, k, len(cells2))
                for (a, b, c, g1, g2) in quads1:
                    for (d, e, f, h1, h2) in quads2:
                        left = hcompose(vcompose(g1, g2), vcompose(h1, h2))
                        right = vcompose(hcompose(g1, h1), hcompose(g2, h2))
                        if left != right:
                            report.add("two-cat-interchange",
                                       (i, j, k, a, b, c, d, e, f))


def _vertical_pairs(pres, i, j, count):
    out = []
    for a in range(count):
        for b in range(count):
            for c1 in pres.two_cell_list(i, j, a, b):
                for c in range(count):
                    for c2 in pres.two_cell_list(i, j, b, c):
                        out.append((a, b, c, c1.underlying.cell.gamma,
                                    c2.underlying.cell.gamma))
    return out


def _locate_one(cells, bm):
    for idx, m in enumerate(cells):
        if _same_bundle_morphism(m.underlying, bm):
            return idx
    return None


def _locate_two(cells, gamma):
    for idx, c in enumerate(cells):
        if c.underlying.cell.gamma == gamma:
            return idx
    return None


def default_seed_bundles(tg, y, site, cap=DEFAULT_SEARCH_CAP):
    """The canonical object seeds over a base: the product bundle.
    Richer pools (such as glued bundles produced by descent) are passed
    in by the caller."""
    mult = multiplication_action(tg, y)
    proj = mult_projection(tg, y, mult)
    return [make_bundle(tg, mult, y, proj, identity_cover(y), cap,
                        "product(%s,%s)" % (tg.name or "?", y.name or "?"))]


def quotient_cat(x_action, y, site, bound=DEFAULT_SEARCH_CAP, seeds=None):
    """Enumerate the evaluation 2-category at a base: objects are
    admissible bundles (cover recognized by the site) paired with each
    equivariant map of their total action into the acted space;
    morphisms and 2-cells come from the bundle hom-categories filtered
    through the beta conditions.

    A base with no declared covering family yields the empty
    presentation, with the policy recorded as a note.
    """
    tg = x_action.group
    notes = []
    if not site.declared.get(y.name):
        return TwoCatPresentation(
            x_action, y, [], {}, {},
            notes=["no covering family declared for %s" % (y.name or "?")])
    pool = list(seeds) if seeds is not None \
        else default_seed_bundles(tg, y, site, bound)
    admissible = []
    for b in pool:
        if b.group != tg:
            raise ShapeError("seed bundle %r has a different 2-group"
                             % (b.name or "?"))
        if b.base != y:
            raise ShapeError("seed bundle %r lives over a different base"
                             % (b.name or "?"))
        if site.covers(y, b.cover):
            admissible.append(b)
        else:
            notes.append("seed %s rejected: cover not in the site"
                         % (b.name or "?"))
    objects = []
    seed_of = []
    bounded = False
    spent = 0
    for si, b in enumerate(admissible):
        for fmap in all_functors(b.total.space, x_action.space):
            for alpha in equivariant_structures(b.total, x_action, fmap):
                spent += 1
                if spent > bound:
                    bounded = True
                    break
                objects.append(QuotientObject(
                    b, alpha, "(%s,a%d)" % (b.name or "?", len(objects))))
                seed_of.append(si)
            if bounded:
                break
        if bounded:
            break
    hom_cache = {}
    one_cells, two_cells = {}, {}
    for i, oi in enumerate(objects):
        for j, oj in enumerate(objects):
            key = (seed_of[i], seed_of[j])
            if key not in hom_cache:
                hom_cache[key] = bundle_hom_category(
                    oi.bundle, oj.bundle, bound)
            hc = hom_cache[key]
            bounded = bounded or hc.bounded
            cells = []
            hc_index = []
            for hi, bm in enumerate(hc.objects):
                beta = find_beta(oi, oj, bm)
                if beta is None:
                    continue
                cells.append(QuotientMorphism(
                    bm, beta, "phi%d" % len(cells)))
                hc_index.append(hi)
            one_cells[(i, j)] = cells
            for a in range(len(cells)):
                for b in range(len(cells)):
                    found = []
                    for gam in hc.cells_between(hc_index[a], hc_index[b]):
                        if _beta_compatible(oj, cells[a], cells[b],
                                            gam.cell.gamma):
                            found.append(QuotientTwoCell(
                                BundleTwoCell(cells[a].underlying,
                                              cells[b].underlying,
                                              gam.cell)))
                    two_cells[(i, j, a, b)] = found
    pres = TwoCatPresentation(x_action, y, objects, one_cells, two_cells,
                              bounded=bounded, notes=notes)
    _fill_tables(pres)
    return pres


def _beta_compatible(tgt_obj, m_a, m_b, gamma):
    want = vcompose(whisker(gamma, tgt_obj.alpha.f, "post"), m_b.beta)
    return want == m_a.beta


def _fill_tables(pres):
    for i, o in enumerate(pres.objects):
        ident = identity_quotient(o)
        idx = _locate_one(pres.one_cells.get((i, i), []), ident.underlying)
        if idx is not None:
            pres.identity_one[i] = idx
    for (i, j), cells in sorted(pres.one_cells.items()):
        for (j2, k), cells2 in sorted(pres.one_cells.items()):
            if j2 != j:
                continue
            for a, m in enumerate(cells):
                for b, m2 in enumerate(cells2):
                    comp = compose_quotient(m2, m)
                    pres.one_table[((i, j, a), (j, k, b))] = _locate_one(
                        pres.one_cells.get((i, k), []), comp.underlying)
    for (i, j, a, b), cells in sorted(pres.two_cells.items()):
        for u, c1 in enumerate(cells):
            for c in range(len(pres.one_cells[(i, j)])):
                for v, c2 in enumerate(pres.two_cell_list(i, j, b, c)):
                    comp = vcompose(c1.underlying.cell.gamma,
                                    c2.underlying.cell.gamma)
                    pres.two_vtable[((i, j, a, b, u), (i, j, b, c, v))] = \
                        _locate_two(pres.two_cell_list(i, j, a, c), comp)
    for (i, j, a, b), cells in sorted(pres.two_cells.items()):
        for (j2, k, c, d), cells2 in sorted(pres.two_cells.items()):
            if j2 != j:
                continue
            ac = pres.one_table.get(((i, j, a), (j, k, c)))
            bd = pres.one_table.get(((i, j, b), (j, k, d)))
            if ac is None or bd is None:
                continue
            for u, c1 in enumerate(cells):
                for v, c2 in enumerate(cells2):
                    comp = hcompose(c1.underlying.cell.gamma,
                                    c2.underlying.cell.gamma)
                    pres.two_htable[((i, j, a, b, u), (j, k, c, d, v))] = \
                        (ac, bd, _locate_two(
                            pres.two_cell_list(i, k, ac, bd), comp))


# ---------------------------------------------------------------------------
# restriction along a base morphism


@dataclass
class RestrictionPack:
    """The strict 2-functor restricting an enumerated presentation along
    a base morphism, realized object by object on the iso-comma."""

    f: GroupoidFunctor
    source: TwoCatPresentation
    object_map: list
    pieces: list
    morphism_map: dict
    twocell_map: dict


def _restrict_object(o, f, cap=DEFAULT_SEARCH_CAP):
    bundle, iia = pullback_pieces(o.bundle, f, cap)
    alpha = compose_equivariant(o.alpha, iia.left)
    return QuotientObject(bundle, alpha,
                          "%s*(%s)" % (f.name or "?", o.name or "?")), iia


def _restrict_morphism(m, src_iia, tgt_iia, name=""):
    """The mediator of the displayed cone: the underlying map composed
    with the left projection, the right projection, and the source comma
    cell pasted with the morphism's gamma."""
    phi = m.underlying.map
    r = compose_equivariant(phi, src_iia.left)
    s = src_iia.right
    omega = vcompose(whisker(m.underlying.gamma, src_iia.ic.proj_left,
                             "pre"),
                     src_iia.ic.cell)
    med = lift_mediator_equivariance(tgt_iia, r, s, omega,
                                     name or "res(%s)" % (m.name or "?"))
    z = tgt_iia.right.target.space
    gamma = NaturalIso(
        compose_functors(tgt_iia.ic.proj_right, med.f),
        src_iia.right.f,
        {o: z.id_of(src_iia.right.f.obj(o))
         for o in med.f.domain.objects}, "res-gamma")
    beta = whisker(m.beta, src_iia.ic.proj_left, "pre")
    return QuotientMorphism(BundleMorphism(med, gamma), beta,
                            name or "res(%s)" % (m.name or "?"))


def _restrict_2cell(c, res_a, res_b, src_iia, tgt_iia, name=""):
    """The 2-cell induced through the two-dimensional universal property
    by the compatible pair: the cell whiskered with the left projection,
    and the identity on the right legs."""
    ic = tgt_iia.ic
    gam = c.underlying.cell.gamma
    m1, m2 = res_a.underlying.map.f, res_b.underlying.map.f
    cell_a = whisker(gam, src_iia.ic.proj_left, "pre")
    z = ic.g.domain
    right1 = compose_functors(ic.proj_right, m1)
    cell_b = NaturalIso(right1, compose_functors(ic.proj_right, m2),
                        {o: z.id_of(right1.obj(o))
                         for o in m1.domain.objects}, "res-right")
    gamma = mediate_iso_comma_2cell(ic, m1, m2, cell_a, cell_b,
                                    name or "res(%s)" % (c.name or "?"))
    cell = EquivariantTwoCell(res_a.underlying.map, res_b.underlying.map,
                              gamma)
    return QuotientTwoCell(
        BundleTwoCell(res_a.underlying, res_b.underlying, cell),
        name or "res(%s)" % (c.name or "?"))


def restrict_pack(f, pres, cap=DEFAULT_SEARCH_CAP):
    """Restrict every enumerated object, morphism, and 2-cell of a
    presentation along f."""
    if f.codomain != pres.base:
        raise ShapeError("restriction morphism must land in the base")
    object_map, pieces = [], []
    for o in pres.objects:
        ro, iia = _restrict_object(o, f, cap)
        object_map.append(ro)
        pieces.append(iia)
    morphism_map = {}
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a, m in enumerate(cells):
            morphism_map[(i, j, a)] = _restrict_morphism(
                m, pieces[i], pieces[j])
    twocell_map = {}
    for (i, j, a, b), cells in sorted(pres.two_cells.items()):
        for u, c in enumerate(cells):
            twocell_map[(i, j, a, b, u)] = _restrict_2cell(
                c, morphism_map[(i, j, a)], morphism_map[(i, j, b)],
                pieces[i], pieces[j])
    return RestrictionPack(f, pres, object_map, pieces, morphism_map,
                           twocell_map)


def restrict_along(f, x_action, site, bound=DEFAULT_SEARCH_CAP, seeds=None):
    """Enumerate the evaluation 2-category at the codomain of f and
    restrict it along f."""
    pres = quotient_cat(x_action, f.codomain, site, bound, seeds)
    return restrict_pack(f, pres, bound)


def validate_restriction(pack):
    """Strict 2-functoriality on the enumerated data: identities and
    composites (of 1-cells and of 2-cells) are preserved on the nose,
    and every image validates."""
    report = ValidationReport("restriction along %s"
                              % (pack.f.name or "?"))
    pres = pack.source
    for i, o in enumerate(pres.objects):
        ident = _restrict_morphism(identity_quotient(o), pack.pieces[i],
                                   pack.pieces[i])
        want = identity_quotient(pack.object_map[i])
        if not _same_quotient_morphism(ident, want):
            report.add("restrict-identity", i)
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a, m in enumerate(cells):
            res = pack.morphism_map[(i, j, a)]
            report.extend(check_quotient_morphism(
                pack.object_map[i], pack.object_map[j], res))
            for (j2, k), cells2 in sorted(pres.one_cells.items()):
                if j2 != j:
                    continue
                for b, m2 in enumerate(cells2):
                    direct = _restrict_morphism(
                        compose_quotient(m2, m), pack.pieces[i],
                        pack.pieces[k])
                    composed = compose_quotient(
                        pack.morphism_map[(j, k, b)], res)
                    if not _same_quotient_morphism(direct, composed):
                        report.add("restrict-composite", (i, j, k, a, b))
    for (i, j, a, b), cells in sorted(pres.two_cells.items()):
        for u, c in enumerate(cells):
            res = pack.twocell_map[(i, j, a, b, u)]
            report.extend(check_quotient_2cell(
                pack.object_map[i], pack.object_map[j],
                pack.morphism_map[(i, j, a)], pack.morphism_map[(i, j, b)],
                res))
            if a == b and c.underlying.cell.gamma == identity_natiso(
                    pres.morphism(i, j, a).underlying.map.f):
                ident = identity_natiso(
                    pack.morphism_map[(i, j, a)].underlying.map.f)
                if res.underlying.cell.gamma != ident:
                    report.add("restrict-identity-2", (i, j, a, u))
    _validate_restricted_vcomposites(pack, report)
    return report


def _validate_restricted_vcomposites(pack, report):
    pres = pack.source
    for (i, j, a, b), cells in sorted(pres.two_cells.items()):
        for u, c1 in enumerate(cells):
            for k in range(len(pres.one_cells[(i, j)])):
                for v, c2 in enumerate(pres.two_cell_list(i, j, b, k)):
                    direct = _restrict_2cell(
                        vcompose_quotient_2cells(c1, c2),
                        pack.morphism_map[(i, j, a)],
                        pack.morphism_map[(i, j, k)],
                        pack.pieces[i], pack.pieces[j])
                    composed = vcompose(
                        pack.twocell_map[(i, j, a, b, u)]
                        .underlying.cell.gamma,
                        pack.twocell_map[(i, j, b, k, v)]
                        .underlying.cell.gamma)
                    if direct.underlying.cell.gamma != composed:
                        report.add("restrict-vcompose", (i, j, a, b, k, u, v))


# ---------------------------------------------------------------------------
# whiskering a 2-cell of bases


@dataclass
class WhiskerData:
    """The 2-natural transformation between the two restriction
    2-functors of a base 2-cell, with its per-object mediator
    components."""

    lam: NaturalIso
    source_pack: RestrictionPack
    target_pack: RestrictionPack
    components: list


def _whisker_component(lam, o, f_iia, g_iia, f_ro, g_ro):
    """Component at one object: the mediator of the source comma cone
    with the base 2-cell pasted on."""
    omega = vcompose(f_iia.ic.cell,
                     whisker(lam, f_iia.ic.proj_right, "pre"))
    med = lift_mediator_equivariance(g_iia, f_iia.left, f_iia.right, omega,
                                     "whisk(%s)" % (lam.name or "?"))
    z = g_iia.right.target.space
    gamma = NaturalIso(
        compose_functors(g_iia.ic.proj_right, med.f), f_iia.right.f,
        {t: z.id_of(f_iia.right.f.obj(t))
         for t in med.f.domain.objects}, "whisk-gamma")
    alpha_src = compose_functors(g_ro.alpha.f, med.f)
    beta = NaturalIso(
        alpha_src, f_ro.alpha.f,
        {t: f_ro.alpha.f.codomain.id_of(alpha_src.obj(t))
         for t in med.f.domain.objects}, "whisk-beta")
    return QuotientMorphism(BundleMorphism(med, gamma), beta,
                            "whisk(%s)" % (lam.name or "?"))


def whisker_2cell(lam, x_action, site, bound=DEFAULT_SEARCH_CAP,
                  seeds=None):
    """The 2-natural transformation between restriction along the source
    and restriction along the target of a base 2-cell."""
    pres = quotient_cat(x_action, lam.source.codomain, site, bound, seeds)
    return whisker_on(lam, pres, bound)


def whisker_on(lam, pres, cap=DEFAULT_SEARCH_CAP):
    if lam.source.codomain != pres.base:
        raise ShapeError("base 2-cell does not end at the base")
    pack_f = restrict_pack(lam.source, pres, cap)
    pack_g = restrict_pack(lam.target, pres, cap)
    components = []
    for i in range(len(pres.objects)):
        components.append(_whisker_component(
            lam, pres.objects[i], pack_f.pieces[i], pack_g.pieces[i],
            pack_f.object_map[i], pack_g.object_map[i]))
    return WhiskerData(lam, pack_f, pack_g, components)


def check_whisker(wd):
    """Component validity and strict 2-naturality: the square of every
    enumerated 1-cell commutes on the nose, and whiskering with every
    enumerated 2-cell matches across the square."""
    report = ValidationReport("whiskering %s" % (wd.lam.name or "?"))
    pres = wd.source_pack.source
    for i, comp in enumerate(wd.components):
        report.extend(check_quotient_morphism(
            wd.source_pack.object_map[i], wd.target_pack.object_map[i],
            comp))
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a in range(len(cells)):
            left = compose_quotient(wd.target_pack.morphism_map[(i, j, a)],
                                    wd.components[i])
            right = compose_quotient(wd.components[j],
                                     wd.source_pack.morphism_map[(i, j, a)])
            if not _same_quotient_morphism(left, right):
                report.add("whisker-natural", (i, j, a))
    for (i, j, a, b), cells in sorted(pres.two_cells.items()):
        for u in range(len(cells)):
            f_cell = wd.source_pack.twocell_map[(i, j, a, b, u)]
            g_cell = wd.target_pack.twocell_map[(i, j, a, b, u)]
            left = whisker(f_cell.underlying.cell.gamma,
                           wd.components[j].underlying.map.f, "post")
            right = whisker(g_cell.underlying.cell.gamma,
                            wd.components[i].underlying.map.f, "pre")
            if left != right:
                report.add("whisker-natural-2", (i, j, a, b, u))
    return report


# ---------------------------------------------------------------------------
# the unit comparison iota


@dataclass
class IotaComponent:
    """Adjoint equivalence between an object and its restriction along
    the identity: strict unit, canonical counit."""

    obj: QuotientObject
    restricted: QuotientObject
    pieces: object
    forward: QuotientMorphism
    backward: QuotientMorphism
    counit: NaturalIso
    pack: EquivalencePack


@dataclass
class UnitorIota:
    presentation: TwoCatPresentation
    pack: RestrictionPack
    components: list
    naturality: dict


def _iota_component(o, ro, iia):
    """The canonical comparison between an object and its pullback along
    the identity of the base."""
    p_space = o.bundle.total.space
    ic = iia.ic
    omega = NaturalIso(
        compose_functors(ic.f, identity_functor(p_space)),
        compose_functors(ic.g, o.bundle.projection.f),
        {t: o.bundle.base.id_of(o.bundle.projection.f.obj(t))
         for t in p_space.objects}, "iota-omega")
    med = lift_mediator_equivariance(
        iia, identity_equivariant(o.bundle.total), o.bundle.projection,
        omega, "iota")
    gamma_fwd = NaturalIso(
        compose_functors(iia.ic.proj_right, med.f),
        o.bundle.projection.f,
        {t: o.bundle.base.id_of(o.bundle.projection.f.obj(t))
         for t in p_space.objects}, "iota-gamma")
    beta_fwd = NaturalIso(
        compose_functors(ro.alpha.f, med.f), o.alpha.f,
        {t: o.alpha.f.codomain.id_of(o.alpha.f.obj(t))
         for t in p_space.objects}, "iota-beta")
    forward = QuotientMorphism(BundleMorphism(med, gamma_fwd), beta_fwd,
                               "iota")
    alpha_back = compose_functors(o.alpha.f, ic.proj_left)
    beta_back = NaturalIso(
        alpha_back, ro.alpha.f,
        {t: o.alpha.f.codomain.id_of(alpha_back.obj(t))
         for t in ic.apex.objects}, "iota-inv-beta")
    backward = QuotientMorphism(
        BundleMorphism(iia.left, ic.cell), beta_back, "iota-inv")
    counit = NaturalIso(
        compose_functors(med.f, ic.proj_left), identity_functor(ic.apex),
        {t: ic.pack_mor[(p_space.id_of(ic.unpack_obj[t][0]),
                         ic.unpack_obj[t][2],
                         med.f.obj(ic.unpack_obj[t][0]))]
         for t in ic.apex.objects}, "iota-counit")
    unit = NaturalIso(
        identity_functor(p_space), compose_functors(ic.proj_left, med.f),
        {t: p_space.id_of(t) for t in p_space.objects}, "iota-unit")
    pack = EquivalencePack(med.f, ic.proj_left, unit, counit)
    return IotaComponent(o, ro, iia, forward, backward, counit, pack)


def _iota_naturality_cell(comp_i, comp_j, m, res_m):
    """The square filler induced by the universal property: identity on
    the left legs, the morphism's gamma on the right legs."""
    ic = comp_j.pieces.ic
    m1 = compose_functors(comp_j.forward.underlying.map.f,
                          m.underlying.map.f)
    m2 = compose_functors(res_m.underlying.map.f,
                          comp_i.forward.underlying.map.f)
    left1 = compose_functors(ic.proj_left, m1)
    q_space = comp_j.obj.bundle.total.space
    cell_a = NaturalIso(left1, compose_functors(ic.proj_left, m2),
                        {t: q_space.id_of(left1.obj(t))
                         for t in m1.domain.objects}, "iota-nat-left")
    cell_b = m.underlying.gamma
    gamma = mediate_iso_comma_2cell(ic, m1, m2, cell_a, cell_b, "iota-nat")
    src = compose_quotient(comp_j.forward, m)
    tgt = compose_quotient(res_m, comp_i.forward)
    cell = EquivariantTwoCell(src.underlying.map, tgt.underlying.map, gamma)
    return QuotientTwoCell(
        BundleTwoCell(src.underlying, tgt.underlying, cell), "iota-nat")


def build_unitor_iota(x_action, site, y, bound=DEFAULT_SEARCH_CAP,
                      seeds=None):
    pres = quotient_cat(x_action, y, site, bound, seeds)
    return unitor_on(pres, bound)


def unitor_on(pres, cap=DEFAULT_SEARCH_CAP):
    pack = restrict_pack(identity_functor(pres.base), pres, cap)
    components = [
        _iota_component(pres.objects[i], pack.object_map[i], pack.pieces[i])
        for i in range(len(pres.objects))]
    naturality = {}
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a, m in enumerate(cells):
            naturality[(i, j, a)] = _iota_naturality_cell(
                components[i], components[j], m,
                pack.morphism_map[(i, j, a)])
    return UnitorIota(pres, pack, components, naturality)


def check_unitor(iota):
    """Adjoint-equivalence triangles per object, validity and
    pseudofunctoriality of the naturality cells."""
    report = ValidationReport("unitor iota")
    pres = iota.presentation
    for i, comp in enumerate(iota.components):
        report.extend(check_quotient_morphism(
            comp.obj, comp.restricted, comp.forward))
        report.extend(check_quotient_morphism(
            comp.restricted, comp.obj, comp.backward))
        back_fwd = compose_quotient(comp.backward, comp.forward)
        if not _same_quotient_morphism(back_fwd,
                                       identity_quotient(comp.obj)):
            report.add("iota-unit-strict", i)
        fwd_back = compose_quotient(comp.forward, comp.backward)
        counit_cell = QuotientTwoCell(
            BundleTwoCell(
                fwd_back.underlying,
                identity_quotient(comp.restricted).underlying,
                EquivariantTwoCell(
                    fwd_back.underlying.map,
                    identity_quotient(comp.restricted).underlying.map,
                    comp.counit)), "iota-counit")
        try:
            report.extend(_prefix(check_quotient_2cell(
                comp.restricted, comp.restricted, fwd_back,
                identity_quotient(comp.restricted), counit_cell),
                "iota-counit", i))
        except ShapeError as err:
            report.add("iota-counit-shape", i, str(err))
        report.extend(_prefix(comp.pack.validate(), "iota-pack", i))
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a, m in enumerate(cells):
            cell = iota.naturality[(i, j, a)]
            src = compose_quotient(iota.components[j].forward, m)
            tgt = compose_quotient(iota.pack.morphism_map[(i, j, a)],
                                   iota.components[i].forward)
            report.extend(_prefix(check_quotient_2cell(
                pres.objects[i], iota.components[j].restricted,
                src, tgt, cell), "iota-nat", (i, j, a)))
            ii = pres.identity_one.get(i)
            if i == j and a == ii:
                if cell.underlying.cell.gamma != identity_natiso(
                        src.underlying.map.f):
                    report.add("iota-cell-identity", i)
    _check_iota_composites(iota, report)
    return report


def _check_iota_composites(iota, report):
    """iota_(psi.phi) equals the pasting of iota_psi and iota_phi."""
    pres = iota.presentation
    for (i, j), cells in sorted(pres.one_cells.items()):
        for (j2, k), cells2 in sorted(pres.one_cells.items()):
            if j2 != j:
                continue
            for a, m in enumerate(cells):
                for b, m2 in enumerate(cells2):
                    direct = _iota_naturality_cell(
                        iota.components[i], iota.components[k],
                        compose_quotient(m2, m),
                        compose_quotient(iota.pack.morphism_map[(j, k, b)],
                                         iota.pack.morphism_map[(i, j, a)]))
                    first = whisker(
                        iota.naturality[(j, k, b)].underlying.cell.gamma,
                        m.underlying.map.f, "pre")
                    second = whisker(
                        iota.naturality[(i, j, a)].underlying.cell.gamma,
                        iota.pack.morphism_map[(j, k, b)]
                        .underlying.map.f, "post")
                    if vcompose(first, second) != \
                            direct.underlying.cell.gamma:
                        report.add("iota-cell-composite", (i, j, k, a, b))


def _prefix(sub, rule, where):
    out = ValidationReport(sub.subject)
    for v in sub.violations:
        out.add("%s:%s" % (rule, v.rule), (where,) + tuple(
            v.witness if isinstance(v.witness, tuple) else (v.witness,)))
    return out


# ---------------------------------------------------------------------------
# the composition comparison chi


@dataclass
class ChiComponent:
    """Canonical comparison between the staged and the direct pullback
    of one object: strict counit, canonical unit."""

    obj: QuotientObject
    first: QuotientObject
    first_iia: object
    staged: QuotientObject
    staged_iia: object
    direct: QuotientObject
    direct_iia: object
    forward: QuotientMorphism
    backward: QuotientMorphism
    unit: NaturalIso
    pack: EquivalencePack


@dataclass
class CompositorChi:
    f: GroupoidFunctor
    g: GroupoidFunctor
    presentation: TwoCatPresentation
    pack_f: RestrictionPack
    pack_fg: RestrictionPack
    staged_objects: list
    staged_pieces: list
    staged_morphisms: dict
    components: list


def _chi_component(o, f, g, cap=DEFAULT_SEARCH_CAP, first=None,
                   first_iia=None, direct=None, direct_iia=None):
    """The two iso-comma realizations of the pullback along f.g and the
    canonical comparison between them."""
    if first is None:
        first, first_iia = _restrict_object(o, f, cap)
    staged, staged_iia = _restrict_object(first, g, cap)
    if direct is None:
        direct, direct_iia = _restrict_object(o, compose_functors(f, g),
                                              cap)
    ic1, ic2, icd = first_iia.ic, staged_iia.ic, direct_iia.ic
    omega_fwd = vcompose(whisker(ic1.cell, ic2.proj_left, "pre"),
                         whisker(ic2.cell, f, "post"))
    fwd_med = lift_mediator_equivariance(
        direct_iia,
        compose_equivariant(first_iia.left, staged_iia.left),
        staged_iia.right, omega_fwd, "chi")
    t_space = staged_iia.right.target.space
    gamma_fwd = NaturalIso(
        compose_functors(icd.proj_right, fwd_med.f),
        staged_iia.right.f,
        {t: t_space.id_of(staged_iia.right.f.obj(t))
         for t in ic2.apex.objects}, "chi-gamma")
    alpha_fwd_src = compose_functors(direct.alpha.f, fwd_med.f)
    beta_fwd = NaturalIso(
        alpha_fwd_src, staged.alpha.f,
        {t: o.alpha.f.codomain.id_of(alpha_fwd_src.obj(t))
         for t in ic2.apex.objects}, "chi-beta")
    forward = QuotientMorphism(BundleMorphism(fwd_med, gamma_fwd),
                               beta_fwd, "chi")
    tg = o.bundle.group
    g_em = trivial_equivariant(
        g, trivial_action(tg, g.domain), trivial_action(tg, g.codomain))
    med1 = lift_mediator_equivariance(
        first_iia, direct_iia.left,
        compose_equivariant(g_em, direct_iia.right), icd.cell, "chi-inv1")
    omega_bwd = NaturalIso(
        compose_functors(ic2.f, med1.f),
        compose_functors(ic2.g, direct_iia.right.f),
        {t: g.codomain.id_of(compose_functors(ic2.f, med1.f).obj(t))
         for t in icd.apex.objects}, "chi-inv-omega")
    bwd_med = lift_mediator_equivariance(
        staged_iia, med1, direct_iia.right, omega_bwd, "chi-inv")
    gamma_bwd = NaturalIso(
        compose_functors(ic2.proj_right, bwd_med.f), direct_iia.right.f,
        {t: t_space.id_of(direct_iia.right.f.obj(t))
         for t in icd.apex.objects}, "chi-inv-gamma")
    alpha_bwd_src = compose_functors(staged.alpha.f, bwd_med.f)
    beta_bwd = NaturalIso(
        alpha_bwd_src, direct.alpha.f,
        {t: o.alpha.f.codomain.id_of(alpha_bwd_src.obj(t))
         for t in icd.apex.objects}, "chi-inv-beta")
    backward = QuotientMorphism(BundleMorphism(bwd_med, gamma_bwd),
                                beta_bwd, "chi-inv")
    p_space = o.bundle.total.space
    unit_comps = {}
    for t in ic2.apex.objects:
        c1_obj, tt, gamma2 = ic2.unpack_obj[t]
        p, _, _ = ic1.unpack_obj[c1_obj]
        w = ic1.pack_mor[(p_space.id_of(p), gamma2, c1_obj)]
        unit_comps[t] = ic2.pack_mor[(w, g.domain.id_of(tt), t)]
    unit = NaturalIso(
        identity_functor(ic2.apex),
        compose_functors(bwd_med.f, fwd_med.f), unit_comps, "chi-unit")
    counit = NaturalIso(
        compose_functors(fwd_med.f, bwd_med.f), identity_functor(icd.apex),
        {t: icd.apex.id_of(t) for t in icd.apex.objects}, "chi-counit")
    pack = EquivalencePack(fwd_med.f, bwd_med.f, unit, counit)
    return ChiComponent(o, first, first_iia, staged, staged_iia,
                        direct, direct_iia, forward, backward, unit, pack)


def build_compositor_chi(f, g, x_action, site, bound=DEFAULT_SEARCH_CAP,
                         seeds=None):
    pres = quotient_cat(x_action, f.codomain, site, bound, seeds)
    return compositor_on(f, g, pres, bound)


def compositor_on(f, g, pres, cap=DEFAULT_SEARCH_CAP):
    if g.codomain != f.domain:
        raise ShapeError("base morphisms are not composable")
    pack_f = restrict_pack(f, pres, cap)
    pack_fg = restrict_pack(compose_functors(f, g), pres, cap)
    components = []
    staged_objects, staged_pieces = [], []
    for i, o in enumerate(pres.objects):
        comp = _chi_component(o, f, g, cap, pack_f.object_map[i],
                              pack_f.pieces[i])
        components.append(comp)
        staged_objects.append(comp.staged)
        staged_pieces.append(comp.staged_iia)
    staged_morphisms = {}
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a in range(len(cells)):
            staged_morphisms[(i, j, a)] = _restrict_morphism(
                pack_f.morphism_map[(i, j, a)], staged_pieces[i],
                staged_pieces[j])
    return CompositorChi(f, g, pres, pack_f, pack_fg, staged_objects,
                         staged_pieces, staged_morphisms, components)


def check_compositor(chi):
    """Component validity, strict counit, adjoint-equivalence triangles,
    and strict naturality against every enumerated morphism."""
    report = ValidationReport("compositor chi")
    pres = chi.presentation
    for i, comp in enumerate(chi.components):
        report.extend(check_quotient_morphism(
            comp.staged, comp.direct, comp.forward))
        report.extend(check_quotient_morphism(
            comp.direct, comp.staged, comp.backward))
        fwd_bwd = compose_quotient(comp.forward, comp.backward)
        if not _same_quotient_morphism(fwd_bwd,
                                       identity_quotient(comp.direct)):
            report.add("chi-counit-strict", i)
        bwd_fwd = compose_quotient(comp.backward, comp.forward)
        unit_cell = QuotientTwoCell(
            BundleTwoCell(
                identity_quotient(comp.staged).underlying,
                bwd_fwd.underlying,
                EquivariantTwoCell(
                    identity_quotient(comp.staged).underlying.map,
                    bwd_fwd.underlying.map,
                    comp.unit)), "chi-unit")
        try:
            report.extend(_prefix(check_quotient_2cell(
                comp.staged, comp.staged, identity_quotient(comp.staged),
                bwd_fwd, unit_cell), "chi-unit", i))
        except ShapeError as err:
            report.add("chi-unit-shape", i, str(err))
        report.extend(_prefix(comp.pack.validate(), "chi-pack", i))
    for (i, j), cells in sorted(pres.one_cells.items()):
        for a in range(len(cells)):
            left = compose_quotient(chi.components[j].forward,
                                    chi.staged_morphisms[(i, j, a)])
            right = compose_quotient(chi.pack_fg.morphism_map[(i, j, a)],
                                     chi.components[i].forward)
            if not _same_quotient_morphism(left, right):
                report.add("chi-natural", (i, j, a))
    return report


def check_omega_identity(o, f, g, h, cap=DEFAULT_SEARCH_CAP):
    """The associativity modification is the identity: the two pasted
    comparisons from the three-stage pullback to the direct pullback
    agree on the nose, per object."""
    report = ValidationReport("omega identity")
    c_fg = _chi_component(o, f, g, cap)
    _, src_iia = _restrict_object(c_fg.staged, h, cap)
    _, tgt_iia = _restrict_object(c_fg.direct, h, cap)
    qh_fwd = _restrict_morphism(c_fg.forward, src_iia, tgt_iia)
    c_fgh = _chi_component(o, compose_functors(f, g), h, cap,
                           first=c_fg.direct, first_iia=c_fg.direct_iia)
    route_a = compose_quotient(c_fgh.forward, qh_fwd)
    c_gh = _chi_component(c_fg.first, g, h, cap)
    c_f_gh = _chi_component(o, f, compose_functors(g, h), cap,
                            first=c_fg.first, first_iia=c_fg.first_iia)
    route_b = compose_quotient(c_f_gh.forward, c_gh.forward)
    if not _same_quotient_morphism(route_a, route_b):
        report.add("omega-identity", o.name or "?")
    return report


def check_unit_collapse(o, f, cap=DEFAULT_SEARCH_CAP):
    """The left and right unit modifications are identities: composing
    chi against iota collapses to the identity on the nose, per object,
    on both sides."""
    report = ValidationReport("unit collapse")
    c = _chi_component(o, f, identity_functor(f.domain), cap)
    iota_first = _iota_component(c.first, c.staged, c.staged_iia)
    left = compose_quotient(c.forward, iota_first.forward)
    if not _same_quotient_morphism(left, identity_quotient(c.first)):
        report.add("gamma-collapse", o.name or "?")
    d = _chi_component(o, identity_functor(f.codomain), f, cap)
    iota_base = _iota_component(o, d.first, d.first_iia)
    direct_ro, direct_iia = _restrict_object(o, f, cap)
    qf_iota = _restrict_morphism(iota_base.forward, direct_iia,
                                 d.staged_iia)
    right = compose_quotient(d.forward, qf_iota)
    if not _same_quotient_morphism(right, identity_quotient(direct_ro)):
        report.add("delta-collapse", o.name or "?")
    return report


# ---------------------------------------------------------------------------
# the classifying presentation


def classifying_prestack(tg, y, site, bound=DEFAULT_SEARCH_CAP, seeds=None):
    """The evaluation presentation with the terminal acted space."""
    x = trivial_action(tg, terminal_groupoid())
    return quotient_cat(x, y, site, bound, seeds)


def check_classifying_match(pres, bound=DEFAULT_SEARCH_CAP):
    """Strict comparison of a classifying presentation against the
    direct enumeration of bundle hom-categories: counts and composition
    tables agree."""
    report = ValidationReport("classifying comparison")
    n = len(pres.objects)
    for i in range(n):
        for j in range(n):
            hc = bundle_hom_category(pres.objects[i].bundle,
                                     pres.objects[j].bundle, bound)
            cells = pres.one_cells.get((i, j), [])
            if len(cells) != len(hc.objects):
                report.add("classifying-onecells",
                           (i, j, len(cells), len(hc.objects)))
                continue
            for a, m in enumerate(cells):
                if not _same_bundle_morphism(m.underlying, hc.objects[a]):
                    report.add("classifying-order", (i, j, a))
                for b in range(len(cells)):
                    ours = pres.two_cell_list(i, j, a, b)
                    theirs = hc.cells_between(a, b)
                    if len(ours) != len(theirs):
                        report.add("classifying-twocells",
                                   (i, j, a, b, len(ours), len(theirs)))
    for key, val in sorted(pres.one_table.items()):
        (i, j, a), (j2, k, b) = key
        if val is None:
            report.add("classifying-table", (key, "missing"))
            continue
        comp = compose_bundle_morphism(
            pres.morphism(j, k, b).underlying,
            pres.morphism(i, j, a).underlying)
        if not _same_bundle_morphism(
                comp, pres.morphism(i, k, val).underlying):
            report.add("classifying-table", (key, val))
    return report


# ---------------------------------------------------------------------------
# assembled coherence check


def check_trihom_coherence(x_action, site, bases, morphisms, twocells,
                           bound=DEFAULT_SEARCH_CAP, seeds_by_base=None):
    """Validate every trihomomorphism identity the construction claims,
    componentwise over a corpus of bases, base morphisms, and base
    2-cells: presentation axioms, strict 2-functoriality of every
    restriction, 2-naturality of whiskering, iota and chi
    adjoint-equivalence triangles, and the omega/gamma/delta identity
    modifications."""
    report = ValidationReport("trihomomorphism coherence")
    seeds_by_base = seeds_by_base or {}
    pres = {}
    for y in bases:
        p = quotient_cat(x_action, y, site, bound,
                         seeds_by_base.get(y.name))
        pres[y.name] = p
        report.extend(_prefix(p.validate(), "presentation", y.name))
    packs = {}
    for m in morphisms:
        if m.codomain.name not in pres or m.domain.name not in pres:
            continue
        pack = restrict_pack(m, pres[m.codomain.name], bound)
        packs[m.name] = pack
        report.extend(_prefix(validate_restriction(pack), "restrict",
                              m.name))
        ident = identity_natiso(m)
        wd = whisker_on(ident, pres[m.codomain.name], bound)
        for i, comp in enumerate(wd.components):
            if comp.underlying.map.f != identity_functor(
                    comp.underlying.map.f.domain):
                report.add("whisker-identity", (m.name, i))
        report.extend(_prefix(check_whisker(wd), "whisker-id", m.name))
    for lam in twocells:
        if lam.source.codomain.name not in pres:
            continue
        wd = whisker_on(lam, pres[lam.source.codomain.name], bound)
        report.extend(_prefix(check_whisker(wd), "whisker",
                              lam.name or "?"))
    for y in bases:
        iota = unitor_on(pres[y.name], bound)
        report.extend(_prefix(check_unitor(iota), "iota", y.name))
    for f in morphisms:
        if f.codomain.name not in pres:
            continue
        for g in morphisms:
            if g.codomain != f.domain:
                continue
            chi = compositor_on(f, g, pres[f.codomain.name], bound)
            report.extend(_prefix(check_compositor(chi), "chi",
                                  (f.name, g.name)))
            for h in morphisms:
                if h.codomain != g.domain:
                    continue
                for o in pres[f.codomain.name].objects:
                    report.extend(check_omega_identity(o, f, g, h, bound))
    for f in morphisms:
        if f.codomain.name not in pres:
            continue
        for o in pres[f.codomain.name].objects:
            report.extend(check_unit_collapse(o, f, bound))
    return report
