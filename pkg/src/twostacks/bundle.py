"""Principal 2-bundles over finite groupoid bases.

A bundle is an action together with an equivariant projection onto a
trivially acted base, a covering family of that base, and one stored
trivialization witness per generator: an adjoint equivalence of actions
between the induced iso-comma action and the multiplication action,
commuting with the projections up to an equivariant 2-cell.

The trivialization search enumerates collapse-form adjoint equivalences
of the underlying spaces and, for each, every equivariance cell on the
forward functor.  Equivariant structure transports along any natural
isomorphism of underlying functors, so exhausting the collapse-form
family decides existence: an empty search is a definite negative.
"""

from dataclasses import dataclass

from .groupoid import (DEFAULT_SEARCH_CAP, InternalError, ShapeError,
                       FiniteGroupoid, GroupoidFunctor, NaturalIso,
                       ValidationReport, hcompose, identity_natiso, vcompose,
                       whisker, all_functors, all_natural_isos)
from .equivalence import EquivalencePack, all_equivalence_packs
from .twogroup import TwoGroup, check_twogroup_coherence
from .action import (Action, EquivariantMap, EquivariantTwoCell,
                     InducedIsoCommaAction, _tables_equal, check_action,
                     check_equivariant_map, check_equivariant_2cell,
                     compose_equivariant, identity_equivariant,
                     trivial_equivariant, trivial_action,
                     multiplication_action, induced_isocomma_action,
                     lambda_shape)
from .site import CoveringFamily, pullback_family


def _require_same_group(a, b):
    if a.group != b.group:
        raise ShapeError("actions of different 2-groups")


def _same_action(a, b):
    """Structural action equality, ignoring names."""
    return (a.group == b.group and a.space == b.space and a.gs == b.gs
            and a.trip == b.trip and a.x == b.x and a.mu == b.mu
            and a.nu == b.nu)


def _same_equivariant(a, b):
    return (_same_action(a.source, b.source)
            and _same_action(a.target, b.target)
            and a.f == b.f and a.lam == b.lam)


# ---------------------------------------------------------------------------
# equivariant equivalences


def equivariant_structures(src, tgt, f):
    """Yield an EquivariantMap for every equivariance cell carried by the
    functor ``f`` between the underlying spaces.  Complete: candidates
    come from ``all_natural_isos`` and are filtered by the two axioms."""
    _require_same_group(src, tgt)
    left, right = lambda_shape(src, tgt, f)
    for lam in all_natural_isos(left, right):
        em = EquivariantMap(src, tgt, f, lam, f.name)
        if check_equivariant_map(em).ok:
            yield em


def invert_equivariant_structure(pack, fwd):
    """The mate equivariance cell on the backward functor of an adjoint
    equivalence whose forward functor is equivariant.

    At (g, q) the cell runs x(g, Bq) -> BFx(g, Bq) -> By(g, FBq)
    -> By(g, q) through the unit, the inverted forward cell, and the
    counit.  Validation failure is an internal invariant break."""
    src, tgt = fwd.source, fwd.target
    bwd_f = pack.backward
    left, right = lambda_shape(tgt, src, bwd_f)
    a_sp = src.space
    c = src.group.carrier
    comps = {}
    for o in tgt.gs.apex.objects:
        g, q = tgt.gs.unpack_obj[o]
        bq = bwd_f.obj(q)
        comps[o] = a_sp.compose_path([
            pack.unit.at(src.xobj(g, bq)),
            bwd_f.mor(tgt.space.inv(fwd.lam_at(g, bq))),
            bwd_f.mor(tgt.xmor(c.id_of(g), pack.counit.at(q))),
        ])
    lam = NaturalIso(left, right, comps, "mate-lam")
    em = EquivariantMap(tgt, src, bwd_f, lam, "inv(%s)" % (fwd.name or "?"))
    rep = check_equivariant_map(em)
    if not rep.ok:
        raise InternalError("mate equivariance cell failed validation:\n%s"
                            % rep)
    return em


@dataclass
class EquivariantEquivalence:
    """An adjoint equivalence of actions: both functors equivariant, unit
    and counit equivariant 2-cells."""

    forward: EquivariantMap
    backward: EquivariantMap
    pack: EquivalencePack
    unit_cell: EquivariantTwoCell
    counit_cell: EquivariantTwoCell


def _adjoint_equivariant(pack, fwd):
    """Complete an equivariant forward map to an EquivariantEquivalence.

    The unit and counit of an adjoint equivalence are automatically
    compatible with the mate cell, so validation failure here is an
    internal invariant break, not a search miss."""
    bwd = invert_equivariant_structure(pack, fwd)
    unit_cell = EquivariantTwoCell(
        identity_equivariant(fwd.source),
        compose_equivariant(bwd, fwd), pack.unit, "unit")
    counit_cell = EquivariantTwoCell(
        compose_equivariant(fwd, bwd),
        identity_equivariant(fwd.target), pack.counit, "counit")
    for cell in (unit_cell, counit_cell):
        rep = check_equivariant_2cell(cell)
        if not rep.ok:
            raise InternalError(
                "adjoint equivalence cell failed equivariance:\n%s" % rep)
    return EquivariantEquivalence(fwd, bwd, pack, unit_cell, counit_cell)


@dataclass
class EquivariantSearchResult:
    """Three-valued outcome of the bounded equivalence-of-actions search."""

    verdict: str  # "equivalent" | "different" | "inconclusive"
    witness: EquivariantEquivalence | None = None
    detail: str = ""

    @property
    def found(self):
        return self.verdict == "equivalent"


def find_equivariant_equivalence(src, tgt, cap=DEFAULT_SEARCH_CAP):
    """Bounded complete search for an adjoint equivalence of actions.

    "different" is definite: either the space signatures separate, or
    the collapse-form family (complete up to natural isomorphism, which
    equivariant structure transports along) is exhausted."""
    _require_same_group(src, tgt)
    sig_a, sig_b = src.space.signature(), tgt.space.signature()
    if sig_a != sig_b:
        return EquivariantSearchResult(
            "different",
            detail="separating invariant: %s vs %s" % (sig_a, sig_b))
    examined = 0
    for pack in all_equivalence_packs(src.space, tgt.space):
        left, right = lambda_shape(src, tgt, pack.forward)
        for lam in all_natural_isos(left, right):
            examined += 1
            if examined > cap:
                return EquivariantSearchResult(
                    "inconclusive",
                    detail="budget exhausted after %d candidates" % cap)
            em = EquivariantMap(src, tgt, pack.forward, lam, "fwd")
            if not check_equivariant_map(em).ok:
                continue
            return EquivariantSearchResult(
                "equivalent", _adjoint_equivariant(pack, em))
    return EquivariantSearchResult(
        "different",
        detail="collapse-form family exhausted (%d candidates)" % examined)


# ---------------------------------------------------------------------------
# local triviality


def mult_projection(tg, y, mult=None, name="pr2"):
    """The projection of the multiplication action onto its second
    factor, equivariant over the trivially acted factor with the
    identity cell (the two legs agree on the nose)."""
    mult = mult if mult is not None else multiplication_action(tg, y)
    sp = mult.space_product
    base = trivial_action(tg, y)
    proj = sp.proj_2
    left, right = lambda_shape(mult, base, proj)
    if not _tables_equal(left, right):
        raise InternalError("multiplication projection legs disagree")
    lam = NaturalIso(left, right,
                     {o: y.id_of(left.obj(o)) for o in left.domain.objects},
                     "pr2-lam")
    em = EquivariantMap(mult, base, proj, lam, name)
    rep = check_equivariant_map(em)
    if not rep.ok:
        raise InternalError("multiplication projection is not "
                            "equivariant:\n%s" % rep)
    return em


@dataclass
class Trivialization:
    """One stored local-triviality witness: over the cover generator, the
    induced iso-comma action is adjoint-equivalent to the multiplication
    action, compatibly with the two projections."""

    generator: GroupoidFunctor
    induced: InducedIsoCommaAction
    mult: Action
    mult_proj: EquivariantMap
    forward: EquivariantMap       # induced.action -> mult
    backward: EquivariantMap
    pack: EquivalencePack
    unit_cell: EquivariantTwoCell
    counit_cell: EquivariantTwoCell
    over_cell: EquivariantTwoCell  # mult_proj . forward => induced.right


@dataclass
class TrivializationSearch:
    """Outcome of the trivialization search over one cover generator."""

    generator: GroupoidFunctor
    verdict: str  # "found" | "none" | "inconclusive"
    witnesses: list
    detail: str = ""

    @property
    def found(self):
        return self.verdict == "found"


def _over_cell(mult_proj, fwd, right_em):
    """The first equivariant 2-cell comparing the two projections out of
    the induced action, or None."""
    comp = compose_equivariant(mult_proj, fwd)
    for oc in all_natural_isos(comp.f, right_em.f):
        cell = EquivariantTwoCell(comp, right_em, oc, "over")
        if check_equivariant_2cell(cell).ok:
            return cell
    return None


def _trivialization_search(gen, iia, mult, mult_proj, cap):
    src = iia.action
    sig_a, sig_b = src.space.signature(), mult.space.signature()
    if sig_a != sig_b:
        return TrivializationSearch(
            gen, "none", [],
            "separating invariant: %s vs %s" % (sig_a, sig_b))
    witnesses = []
    examined = 0
    for pack in all_equivalence_packs(src.space, mult.space):
        left, right = lambda_shape(src, mult, pack.forward)
        for lam in all_natural_isos(left, right):
            examined += 1
            if examined > cap:
                verdict = "found" if witnesses else "inconclusive"
                return TrivializationSearch(
                    gen, verdict, witnesses,
                    "budget exhausted after %d candidates" % cap)
            em = EquivariantMap(src, mult, pack.forward, lam, "triv")
            if not check_equivariant_map(em).ok:
                continue
            over = _over_cell(mult_proj, em, iia.right)
            if over is None:
                continue
            ee = _adjoint_equivariant(pack, em)
            witnesses.append(Trivialization(
                gen, iia, mult, mult_proj, ee.forward, ee.backward,
                ee.pack, ee.unit_cell, ee.counit_cell, over))
    if witnesses:
        return TrivializationSearch(gen, "found", witnesses)
    return TrivializationSearch(
        gen, "none", [],
        "collapse-form family exhausted (%d candidates)" % examined)


def check_local_triviality(projection, cover, cap=DEFAULT_SEARCH_CAP):
    """Run the trivialization search over every generator of the cover.

    ``projection`` is an equivariant map onto a trivially acted base.
    Returns one TrivializationSearch per generator, in cover order."""
    base = projection.target
    tg = projection.source.group
    if cover.target != base.space:
        raise ShapeError("cover does not target the bundle base")
    out = []
    for gen in cover.generators:
        u = gen.domain
        gen_em = trivial_equivariant(gen, trivial_action(tg, u), base)
        iia = induced_isocomma_action(projection, gen_em)
        mult = multiplication_action(tg, u)
        mp = mult_projection(tg, u, mult)
        out.append(_trivialization_search(gen, iia, mult, mp, cap))
    return out


# ---------------------------------------------------------------------------
# bundles


@dataclass
class PrincipalBundle:
    """A locally trivial action over a base: the projection lands in the
    trivially acted base and every cover generator carries a stored
    trivialization witness."""

    group: TwoGroup
    total: Action
    base: FiniteGroupoid
    projection: EquivariantMap
    cover: CoveringFamily
    trivializations: list
    name: str = ""


def make_bundle(tg, total, base, projection, cover, cap=DEFAULT_SEARCH_CAP,
                name=""):
    """Assemble a bundle, running the trivialization search per cover
    generator.  Raises ShapeError when the projection is malformed or
    some generator admits no trivialization within the budget."""
    if total.group != tg:
        raise ShapeError("total action belongs to a different 2-group")
    if projection.source != total:
        raise ShapeError("projection does not start at the total action")
    if not _same_action(projection.target, trivial_action(tg, base)):
        raise ShapeError("projection must land in the trivially acted base")
    if cover.target != base:
        raise ShapeError("cover targets a different groupoid")
    rep = cover.validate()
    if not rep.ok:
        raise ShapeError("invalid covering family:\n%s" % rep)
    searches = check_local_triviality(projection, cover, cap)
    trivs = []
    for s in searches:
        if not s.found:
            raise ShapeError(
                "projection is not 2-locally trivial over %s: %s"
                % (s.generator.name or "?", s.detail or s.verdict))
        trivs.append(s.witnesses[0])
    return PrincipalBundle(tg, total, base, projection, cover, trivs, name)


def validate_trivialization(projection, gen, triv):
    """Validate one stored trivialization against its cover generator:
    rebuilt induced data matches, the pack and both equivariance cells
    hold, and the unit, counit and over cells pass the 2-cell check."""
    report = ValidationReport("trivialization over %s" % (gen.name or "?"))
    tg = projection.source.group
    if triv.generator != gen:
        report.add("triv-generator", gen.name or "?",
                   "stored generator differs from the cover's")
        return report
    u = gen.domain
    gen_em = trivial_equivariant(gen, trivial_action(tg, u),
                                 projection.target)
    iia = induced_isocomma_action(projection, gen_em)
    if not _same_action(triv.induced.action, iia.action):
        report.add("triv-induced", gen.name or "?",
                   "stored induced action differs from the rebuilt one")
        return report
    if not _same_action(triv.mult, multiplication_action(tg, u)):
        report.add("triv-mult", gen.name or "?",
                   "stored multiplication action differs from the "
                   "rebuilt one")
        return report
    if not _same_equivariant(triv.mult_proj, mult_projection(tg, u,
                                                             triv.mult)):
        report.add("triv-projection", gen.name or "?",
                   "stored multiplication projection differs from the "
                   "rebuilt one")
    if triv.pack.forward != triv.forward.f or \
            triv.pack.backward != triv.backward.f:
        report.add("triv-pack", gen.name or "?",
                   "pack functors differ from the equivariant maps")
        return report
    report.extend(triv.pack.validate())
    report.extend(check_equivariant_map(triv.forward))
    report.extend(check_equivariant_map(triv.backward))
    if not (_same_action(triv.forward.source, iia.action)
            and _same_action(triv.forward.target, triv.mult)):
        report.add("triv-feet", gen.name or "?",
                   "forward map does not run from the induced action to "
                   "the multiplication action")
        return report
    if triv.unit_cell.gamma != triv.pack.unit:
        report.add("triv-unit", gen.name or "?",
                   "stored unit cell differs from the pack's unit")
    if triv.counit_cell.gamma != triv.pack.counit:
        report.add("triv-counit", gen.name or "?",
                   "stored counit cell differs from the pack's counit")
    report.extend(check_equivariant_2cell(triv.unit_cell))
    report.extend(check_equivariant_2cell(triv.counit_cell))
    comp = compose_equivariant(triv.mult_proj, triv.forward)
    if triv.over_cell.gamma.source != comp.f or \
            triv.over_cell.gamma.target != triv.induced.right.f:
        report.add("triv-over", gen.name or "?",
                   "over cell does not compare the two projections")
        return report
    report.extend(check_equivariant_2cell(
        EquivariantTwoCell(comp, triv.induced.right, triv.over_cell.gamma,
                           "over")))
    return report


def check_bundle(b):
    """Validate every stored layer of a bundle: the 2-group, the total
    action, the projection, the cover, and each trivialization witness
    against its generator.  No searching happens here."""
    report = ValidationReport("bundle %s" % (b.name or "?"))
    report.extend(check_twogroup_coherence(b.group))
    report.extend(check_action(b.total))
    if b.projection.source != b.total or \
            not _same_action(b.projection.target,
                             trivial_action(b.group, b.base)):
        report.add("bundle-projection", b.name or "?",
                   "projection does not run from the total action to the "
                   "trivially acted base")
        return report
    report.extend(check_equivariant_map(b.projection))
    if not report.ok:
        # the trivialization layer rebuilds induced actions through the
        # projection, so it only runs once the layers below hold
        return report
    report.extend(b.cover.validate())
    if b.cover.target != b.base:
        report.add("bundle-cover", b.name or "?",
                   "cover targets a different groupoid")
        return report
    if len(b.trivializations) != len(b.cover.generators):
        report.add("bundle-trivializations", b.name or "?",
                   "one trivialization per cover generator required")
        return report
    for gen, triv in zip(b.cover.generators, b.trivializations):
        report.extend(validate_trivialization(b.projection, gen, triv))
    return report


def pullback_pieces(b, f, cap=DEFAULT_SEARCH_CAP, name=""):
    """Pull a bundle back along a base morphism and keep the induced
    iso-comma action around, so callers can reach the projection to the
    original total and the comma apex itself.

    Pullback preserves local triviality, so a failed witness search for
    validated input is an internal invariant break."""
    if f.codomain != b.base:
        raise ShapeError("base morphism must land in the bundle base")
    tg = b.group
    z = f.domain
    f_em = trivial_equivariant(f, trivial_action(tg, z),
                               b.projection.target)
    iia = induced_isocomma_action(b.projection, f_em)
    cover = pullback_family(b.cover, f)
    searches = check_local_triviality(iia.right, cover, cap)
    trivs = []
    for s in searches:
        if not s.found:
            raise InternalError(
                "pullback lost local triviality over %s: %s"
                % (s.generator.name or "?", s.detail or s.verdict))
        trivs.append(s.witnesses[0])
    bundle = PrincipalBundle(
        tg, iia.action, z, iia.right, cover, trivs,
        name or "%s*(%s)" % (f.name or "?", b.name or "?"))
    return bundle, iia


def pullback_bundle(b, f, cap=DEFAULT_SEARCH_CAP, name=""):
    """Pull a bundle back along a base morphism: total action on the
    iso-comma, right projection as the new projection, pulled-back cover,
    and fresh trivialization witnesses from the bounded search."""
    return pullback_pieces(b, f, cap, name)[0]


# ---------------------------------------------------------------------------
# the hom-categories of bundle morphisms


@dataclass
class BundleMorphism:
    """An equivariant map between totals plus the 2-cell comparing the
    two projections."""

    map: EquivariantMap
    gamma: NaturalIso  # target-projection . map => source-projection
    name: str = ""


@dataclass
class BundleTwoCell:
    """An equivariant 2-cell between bundle morphisms, compatible with
    their projection triangles."""

    source: BundleMorphism
    target: BundleMorphism
    cell: EquivariantTwoCell
    name: str = ""


def _require_common_base(p, q):
    if p.group != q.group:
        raise ShapeError("bundles carry different structure 2-groups")
    if p.base != q.base or \
            not _same_action(p.projection.target, q.projection.target):
        raise ShapeError("bundles live over different bases")


def check_bundle_morphism(p, q, bm):
    """Validate a bundle morphism from p to q: the map is equivariant
    between the totals and gamma is an equivariant 2-cell from the
    composed projection to the source projection."""
    _require_common_base(p, q)
    if bm.map.source != p.total or bm.map.target != q.total:
        raise ShapeError("bundle morphism does not run between the totals")
    report = ValidationReport("bundle morphism %s" % (bm.name or "?"))
    report.extend(check_equivariant_map(bm.map))
    comp = compose_equivariant(q.projection, bm.map)
    if bm.gamma.source != comp.f or bm.gamma.target != p.projection.f:
        raise ShapeError("gamma does not compare the two projections")
    report.extend(check_equivariant_2cell(
        EquivariantTwoCell(comp, p.projection, bm.gamma,
                           bm.name or "gamma")))
    return report


def check_bundle_2cell(p, q, c):
    """Validate a bundle 2-cell: equivariant between the underlying maps
    and compatible with the two projection triangles."""
    if not (_same_equivariant(c.cell.source_map, c.source.map)
            and _same_equivariant(c.cell.target_map, c.target.map)):
        raise ShapeError("2-cell endpoints differ from its bundle "
                         "morphisms")
    report = ValidationReport("bundle 2-cell %s" % (c.name or "?"))
    report.extend(check_equivariant_2cell(c.cell))
    want = vcompose(whisker(c.cell.gamma, q.projection.f, "post"),
                    c.target.gamma)
    if c.source.gamma != want:
        report.add("bundle-2cell-over", c.name or "?",
                   "projection triangles are not compatible")
    return report


def identity_bundle_morphism(b, name=""):
    return BundleMorphism(identity_equivariant(b.total),
                          identity_natiso(b.projection.f),
                          name or "id(%s)" % (b.name or "?"))


def compose_bundle_morphism(outer, inner, name=""):
    """Composite bundle morphism: composed equivariant map and the
    pasted projection-comparison cell."""
    em = compose_equivariant(outer.map, inner.map)
    gamma = vcompose(whisker(outer.gamma, inner.map.f, "pre"), inner.gamma)
    return BundleMorphism(em, gamma,
                          name or "%s.%s" % (outer.name or "?",
                                             inner.name or "?"))


def identity_bundle_2cell(bm, name=""):
    cell = EquivariantTwoCell(bm.map, bm.map, identity_natiso(bm.map.f))
    return BundleTwoCell(bm, bm, cell, name or "id(%s)" % (bm.name or "?"))


def vcompose_bundle_2cells(c1, c2, name=""):
    """Vertical composite of bundle 2-cells c1: a => b and c2: b => c."""
    gamma = vcompose(c1.cell.gamma, c2.cell.gamma)
    cell = EquivariantTwoCell(c1.cell.source_map, c2.cell.target_map, gamma)
    return BundleTwoCell(c1.source, c2.target, cell, name)


def hcompose_bundle_2cells(c1, c2, name=""):
    """Horizontal composite: c1 between morphisms p -> q, c2 between
    morphisms q -> r, in application order."""
    gamma = hcompose(c1.cell.gamma, c2.cell.gamma)
    src = compose_bundle_morphism(c2.source, c1.source)
    tgt = compose_bundle_morphism(c2.target, c1.target)
    cell = EquivariantTwoCell(src.map, tgt.map, gamma)
    return BundleTwoCell(src, tgt, cell, name)


@dataclass
class HomCategory:
    """The enumerated category of bundle morphisms p -> q: objects are
    BundleMorphisms, cells[(i, j)] lists the BundleTwoCells from objects
    i to j.  ``bounded`` flags a truncated enumeration."""

    source: PrincipalBundle
    target: PrincipalBundle
    objects: list
    cells: dict
    bounded: bool = False

    def cells_between(self, i, j):
        return self.cells.get((i, j), [])

    def validate(self):
        """Identities, closure under vertical composition, and inverses.
        Vacuously true for a truncated enumeration is not claimed: the
        checks run on whatever was enumerated."""
        report = ValidationReport("hom category")
        n = len(self.objects)
        for i in range(n):
            ident = identity_natiso(self.objects[i].map.f)
            if not any(c.cell.gamma == ident
                       for c in self.cells_between(i, i)):
                report.add("homcat-identity", i)
        for i in range(n):
            for j in range(n):
                for c1 in self.cells_between(i, j):
                    inv_gamma = _natiso_inverse(c1.cell.gamma)
                    if not any(c.cell.gamma == inv_gamma
                               for c in self.cells_between(j, i)):
                        report.add("homcat-inverse", (i, j))
                    for k in range(n):
                        for c2 in self.cells_between(j, k):
                            comp = vcompose(c1.cell.gamma, c2.cell.gamma)
                            if not any(c.cell.gamma == comp
                                       for c in self.cells_between(i, k)):
                                report.add("homcat-closure", (i, j, k))
        return report


def _natiso_inverse(n):
    gpd = n.source.codomain
    return NaturalIso(n.target, n.source,
                      {o: gpd.inv(n.at(o)) for o in n.components},
                      "inv(%s)" % (n.name or "?"))


def bundle_hom_category(p, q, bound=DEFAULT_SEARCH_CAP):
    """Enumerate the hom-category of bundle morphisms p -> q.

    Objects are pairs (equivariant map, projection-comparison cell); the
    same map appears once per valid gamma.  2-cells are enumerated per
    ordered object pair and filtered by equivariance and the projection
    compatibility."""
    _require_common_base(p, q)
    objects = []
    bounded = False
    spent = 0
    for fmap in all_functors(p.total.space, q.total.space):
        left, right = lambda_shape(p.total, q.total, fmap)
        for lam in all_natural_isos(left, right):
            spent += 1
            if spent > bound:
                bounded = True
                break
            em = EquivariantMap(p.total, q.total, fmap, lam,
                                "phi%d" % len(objects))
            if not check_equivariant_map(em).ok:
                continue
            comp = compose_equivariant(q.projection, em)
            for gamma in all_natural_isos(comp.f, p.projection.f):
                spent += 1
                if spent > bound:
                    bounded = True
                    break
                cell = EquivariantTwoCell(comp, p.projection, gamma)
                if check_equivariant_2cell(cell).ok:
                    objects.append(BundleMorphism(
                        em, gamma, "phi%d" % len(objects)))
            if bounded:
                break
        if bounded:
            break
    cells = {}
    for i, a in enumerate(objects):
        for j, b2 in enumerate(objects):
            found = []
            for g in all_natural_isos(a.map.f, b2.map.f):
                spent += 1
                if spent > bound:
                    bounded = True
                    break
                cell = EquivariantTwoCell(a.map, b2.map, g)
                if not check_equivariant_2cell(cell).ok:
                    continue
                if a.gamma != vcompose(
                        whisker(g, q.projection.f, "post"), b2.gamma):
                    continue
                found.append(BundleTwoCell(
                    a, b2, cell, "cell%d_%d_%d" % (i, j, len(found))))
            cells[(i, j)] = found
            if bounded:
                break
        if bounded:
            break
    return HomCategory(p, q, objects, cells, bounded)
