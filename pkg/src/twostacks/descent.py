"""Descent checking over declared covers.

Matching families of 2-cells, morphism and weak object descent data,
bounded amalgamation and effectiveness verdicts, and the bounded
bicolimit used to glue object candidates.  Every verdict is reached by
exhaustive finite search within an explicit budget; a search that runs
out of budget reports inconclusive rather than guessing.
"""

from dataclasses import dataclass, field
import itertools

from .groupoid import (DEFAULT_SEARCH_CAP, InternalError, ShapeError,
                       FiniteGroupoid, GroupoidFunctor, NaturalIso,
                       ValidationReport, all_functors, all_natural_isos,
                       compose_functors, identity_functor,
                       is_equivalence_functor, terminal_groupoid,
                       validate_groupoid, vcompose, whisker)
from .limits import iso_comma, product, product_many
from .action import (Action, EquivariantMap, EquivariantTwoCell,
                     _strict_cells, _tables_equal, check_action,
                     lambda_shape, lift_mediator_equivariance,
                     trivial_action)
from .bundle import (BundleMorphism, BundleTwoCell, _same_action,
                     bundle_hom_category, check_local_triviality,
                     make_bundle)
from .site import composite_cover
from .quotient import (QuotientMorphism, QuotientObject, QuotientTwoCell,
                       _chi_component, _prefix, _restrict_2cell,
                       _restrict_morphism, _restrict_object,
                       _same_bundle_morphism, _same_quotient_morphism,
                       _whisker_component, beta_candidates,
                       check_quotient_2cell, check_quotient_morphism,
                       compose_quotient, quotient_object_check)


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class DescentVerdict:
    """Outcome of a descent check: pass/fail on a completed search,
    invalid when the input data already violates its own axioms,
    inconclusive when a budget ran out first."""

    verdict: str  # "pass" | "fail" | "invalid" | "inconclusive"
    report: ValidationReport
    witnesses: list = field(default_factory=list)
    detail: str = ""

    def __bool__(self):
        return self.verdict == "pass"


def _checked(report, rule, where, fn, *args):
    """Run a validator that raises ShapeError on malformed shapes and
    fold both failure modes into the report."""
    try:
        sub = fn(*args)
    except ShapeError as err:
        report.add(rule, where, str(err))
        return False
    if not sub.ok:
        report.extend(_prefix(sub, rule, where))
        return False
    return True


# ---------------------------------------------------------------------------
# connecting records between cover generators


@dataclass
class CoverLink:
    """A connecting record between two generators of a covering family:
    a base morphism g between their domains and the invertible base
    2-cell gamma filling the triangle over the target.

    ``g`` runs dom(f_i) -> dom(f_j) and ``gamma : f_j . g => f_i``; data
    indexed by generator j transports to generator i along the link.
    """

    i: int
    j: int
    g: GroupoidFunctor
    gamma: NaturalIso
    name: str = ""

    def validate(self, fam):
        report = ValidationReport("cover link %s" % (self.name or "?"))
        gens = fam.generators
        if not (0 <= self.i < len(gens) and 0 <= self.j < len(gens)):
            report.add("link-index", (self.i, self.j))
            return report
        f_i, f_j = gens[self.i], gens[self.j]
        if self.g.domain != f_i.domain or self.g.codomain != f_j.domain:
            report.add("link-base", (self.i, self.j))
            return report
        if self.gamma.source != compose_functors(f_j, self.g):
            report.add("link-cell-source", (self.i, self.j))
        if self.gamma.target != f_i:
            report.add("link-cell-target", (self.i, self.j))
        return report


def cover_links(fam, cap=DEFAULT_SEARCH_CAP):
    """Every connecting record between generators, enumerated
    exhaustively: all base morphisms between domains and all filling
    2-cells over the target."""
    links = []
    budget = cap
    for i, f_i in enumerate(fam.generators):
        for j, f_j in enumerate(fam.generators):
            for g in all_functors(f_i.domain, f_j.domain):
                for gamma in all_natural_isos(compose_functors(f_j, g),
                                              f_i):
                    budget -= 1
                    if budget < 0:
                        raise ShapeError(
                            "link enumeration exceeded the bound")
                    links.append(CoverLink(
                        i, j, g, gamma,
                        "link%d(%d<-%d)" % (len(links), i, j)))
    return links


def composite_link(l1, l2):
    """The pasted record: follow l1 from generator i to j, then l2 from
    j onward."""
    if l1.j != l2.i:
        raise ShapeError("links do not paste")
    g = compose_functors(l2.g, l1.g)
    gamma = vcompose(whisker(l2.gamma, l1.g, "pre"), l1.gamma)
    return CoverLink(l1.i, l2.j, g, gamma,
                     "%s*%s" % (l2.name or "?", l1.name or "?"))


def locate_link(links, cand):
    """Index of the structurally equal record, or None."""
    for idx, l in enumerate(links):
        if (l.i == cand.i and l.j == cand.j and l.g == cand.g
                and l.gamma == cand.gamma):
            return idx
    return None


# ---------------------------------------------------------------------------
# transport of restricted data along a link


@dataclass
class LinkTransport:
    """Strict conjugation data moving data restricted along f_j over to
    generator i: the compositor comparison into the staged pullback and
    the whiskered leg along the link's filling 2-cell."""

    link: CoverLink
    chi: object
    to_i: QuotientMorphism    # staged pullback -> restriction along f_i
    from_i: QuotientMorphism  # restriction along f_i -> staged pullback


def _link_transport(o, fam, link, pieces, cap=DEFAULT_SEARCH_CAP,
                    chi=None):
    f_j = fam.generators[link.j]
    if chi is None:
        chi = _chi_component(o, f_j, link.g, cap,
                             first=pieces[link.j][0],
                             first_iia=pieces[link.j][1])
    wg = _whisker_component(link.gamma, o, chi.direct_iia,
                            pieces[link.i][1], chi.direct,
                            pieces[link.i][0])
    wg_inv = _whisker_component(link.gamma.inverse(), o,
                                pieces[link.i][1], chi.direct_iia,
                                pieces[link.i][0], chi.direct)
    return LinkTransport(link, chi,
                         compose_quotient(wg, chi.forward),
                         compose_quotient(chi.backward, wg_inv))


def transport_morphism(tp_p, tp_q, m, name=""):
    """Conjugate a morphism between restrictions along f_j into one
    between restrictions along f_i."""
    res = _restrict_morphism(m, tp_p.chi.staged_iia, tp_q.chi.staged_iia)
    return compose_quotient(
        tp_q.to_i, compose_quotient(res, tp_p.from_i),
        name or "tr(%s)" % (m.name or "?"))


def transport_cell(tp_p, tp_q, c, m_a, m_b, name=""):
    """Conjugate a 2-cell between morphisms m_a, m_b over f_j.  Returns
    the two transported endpoint morphisms and the transported cell."""
    res_a = _restrict_morphism(m_a, tp_p.chi.staged_iia,
                               tp_q.chi.staged_iia)
    res_b = _restrict_morphism(m_b, tp_p.chi.staged_iia,
                               tp_q.chi.staged_iia)
    res_c = _restrict_2cell(c, res_a, res_b, tp_p.chi.staged_iia,
                            tp_q.chi.staged_iia)
    t_a = compose_quotient(tp_q.to_i, compose_quotient(res_a,
                                                       tp_p.from_i))
    t_b = compose_quotient(tp_q.to_i, compose_quotient(res_b,
                                                       tp_p.from_i))
    gam = whisker(whisker(res_c.underlying.cell.gamma,
                          tp_p.from_i.underlying.map.f, "pre"),
                  tp_q.to_i.underlying.map.f, "post")
    return t_a, t_b, _as_cell(t_a, t_b, gam,
                              name or "tr(%s)" % (c.name or "?"))


def _as_cell(m_a, m_b, gam, name=""):
    return QuotientTwoCell(
        BundleTwoCell(m_a.underlying, m_b.underlying,
                      EquivariantTwoCell(m_a.underlying.map,
                                         m_b.underlying.map, gam)),
        name)


def _identity_cell_between(m_a, m_b, name=""):
    """The identity-component comparison cell; valid exactly when the
    two morphisms agree on the nose."""
    f = m_a.underlying.map.f
    gam = NaturalIso(f, m_b.underlying.map.f,
                     {o: f.codomain.id_of(f.obj(o))
                      for o in f.domain.objects}, name or "id-cell")
    return _as_cell(m_a, m_b, gam, name or "id-cell")


def _generator_pieces(o, fam, cap=DEFAULT_SEARCH_CAP):
    return [_restrict_object(o, gen, cap) for gen in fam.generators]


# ---------------------------------------------------------------------------
# matching families of 2-cells and bounded amalgamation


@dataclass
class MatchingFamily2Cells:
    """A candidate family of local 2-cells between the restrictions of
    two fixed global morphisms, one per generator, together with the
    connecting records it must match across."""

    fam: object
    p_obj: QuotientObject
    q_obj: QuotientObject
    source: QuotientMorphism
    target: QuotientMorphism
    links: list
    cells: list
    name: str = ""


def validate_matching_family(family, cap=DEFAULT_SEARCH_CAP):
    """Shape, per-generator validity, and the matching condition: the
    transport of the cell at j along every link equals the cell at i."""
    report = ValidationReport("matching family %s" % (family.name or "?"))
    fam = family.fam
    report.extend(fam.validate())
    if len(family.cells) != len(fam.generators):
        report.add("family-shape",
                   (len(family.cells), len(fam.generators)))
        return report
    for link in family.links:
        report.extend(link.validate(fam))
    if not report.ok:
        return report
    pieces_p = _generator_pieces(family.p_obj, fam, cap)
    pieces_q = _generator_pieces(family.q_obj, fam, cap)
    res_sigma = [_restrict_morphism(family.source, pieces_p[k][1],
                                    pieces_q[k][1])
                 for k in range(len(fam.generators))]
    res_rho = [_restrict_morphism(family.target, pieces_p[k][1],
                                  pieces_q[k][1])
               for k in range(len(fam.generators))]
    good = set()
    for k, cell in enumerate(family.cells):
        if not (_same_bundle_morphism(cell.underlying.source,
                                      res_sigma[k].underlying)
                and _same_bundle_morphism(cell.underlying.target,
                                          res_rho[k].underlying)):
            report.add("family-endpoints", k,
                       "cell endpoints differ from the canonical "
                       "restrictions")
            continue
        if _checked(report, "family-cell", k, check_quotient_2cell,
                    pieces_p[k][0], pieces_q[k][0], res_sigma[k],
                    res_rho[k], cell):
            good.add(k)
    for idx, link in enumerate(family.links):
        if link.i not in good or link.j not in good:
            continue
        tp_p = _link_transport(family.p_obj, fam, link, pieces_p, cap)
        tp_q = _link_transport(family.q_obj, fam, link, pieces_q, cap)
        t_a, t_b, tcell = transport_cell(tp_p, tp_q, family.cells[link.j],
                                         res_sigma[link.j],
                                         res_rho[link.j])
        if not (_same_quotient_morphism(t_a, res_sigma[link.i])
                and _same_quotient_morphism(t_b, res_rho[link.i])):
            report.add("matching-transport", idx,
                       "transported endpoints differ from the "
                       "restrictions at the link target")
            continue
        if (tcell.underlying.cell.gamma
                != family.cells[link.i].underlying.cell.gamma):
            report.add("matching-link", idx,
                       "transported cell differs from the cell at the "
                       "link target")
    return report


def check_2cell_amalgamation(fam, family, bound=DEFAULT_SEARCH_CAP):
    """Search for global 2-cells restricting to the family on every
    generator.  Passes exactly when the amalgamation exists and is
    unique within the bound; a family that fails its own matching
    condition is rejected before any search."""
    if family.fam != fam:
        raise ShapeError("family was built over a different cover")
    report = validate_matching_family(family, bound)
    if not report.ok:
        return DescentVerdict("invalid", report,
                              detail="matching family is invalid")
    pieces_p = _generator_pieces(family.p_obj, fam, bound)
    pieces_q = _generator_pieces(family.q_obj, fam, bound)
    res_sigma = [_restrict_morphism(family.source, pieces_p[k][1],
                                    pieces_q[k][1])
                 for k in range(len(fam.generators))]
    res_rho = [_restrict_morphism(family.target, pieces_p[k][1],
                                  pieces_q[k][1])
               for k in range(len(fam.generators))]
    sig_f = family.source.underlying.map.f
    rho_f = family.target.underlying.map.f
    candidates = list(itertools.islice(all_natural_isos(sig_f, rho_f),
                                       bound + 1))
    if len(candidates) > bound:
        return DescentVerdict("inconclusive", report,
                              detail="global 2-cell enumeration exceeded "
                                     "the bound")
    matches = []
    for gam in candidates:
        cell = _as_cell(family.source, family.target, gam, "amalgam")
        if not check_quotient_2cell(family.p_obj, family.q_obj,
                                    family.source, family.target,
                                    cell).ok:
            continue
        if all((_restrict_2cell(cell, res_sigma[k], res_rho[k],
                                pieces_p[k][1], pieces_q[k][1])
                .underlying.cell.gamma
                == family.cells[k].underlying.cell.gamma)
               for k in range(len(fam.generators))):
            matches.append(cell)
    if len(matches) == 1:
        return DescentVerdict("pass", report, matches,
                              "unique amalgamation found")
    return DescentVerdict("fail", report, matches,
                          "found %d amalgamations within bound"
                          % len(matches))


# ---------------------------------------------------------------------------
# morphism descent data and bounded effectiveness


@dataclass
class MorphismDescentDatum:
    """A local morphism per generator together with one invertible
    comparison cell per connecting record, from the transported
    morphism at j to the morphism at i."""

    fam: object
    p_obj: QuotientObject
    q_obj: QuotientObject
    links: list
    cells: list
    etas: dict
    name: str = ""


def validate_morphism_datum(datum, cap=DEFAULT_SEARCH_CAP):
    report = ValidationReport("morphism datum %s" % (datum.name or "?"))
    fam = datum.fam
    report.extend(fam.validate())
    if len(datum.cells) != len(fam.generators):
        report.add("morphism-datum-shape",
                   (len(datum.cells), len(fam.generators)))
        return report
    for link in datum.links:
        report.extend(link.validate(fam))
    if not report.ok:
        return report
    pieces_p = _generator_pieces(datum.p_obj, fam, cap)
    pieces_q = _generator_pieces(datum.q_obj, fam, cap)
    for k, w in enumerate(datum.cells):
        if not (_same_action(w.underlying.map.source,
                             pieces_p[k][0].bundle.total)
                and _same_action(w.underlying.map.target,
                                 pieces_q[k][0].bundle.total)):
            report.add("morphism-datum-endpoints", k,
                       "local morphism does not run between the "
                       "canonical restrictions")
            continue
        _checked(report, "morphism-datum-cell", k,
                 check_quotient_morphism, pieces_p[k][0], pieces_q[k][0],
                 w)
    if not report.ok:
        return report
    transports = {}
    transported = {}
    for idx, link in enumerate(datum.links):
        tp_p = _link_transport(datum.p_obj, fam, link, pieces_p, cap)
        tp_q = _link_transport(datum.q_obj, fam, link, pieces_q, cap)
        transports[idx] = (tp_p, tp_q)
        tw = transport_morphism(tp_p, tp_q, datum.cells[link.j])
        transported[idx] = tw
        eta = datum.etas.get(idx)
        if eta is None:
            report.add("morphism-datum-eta-missing", idx)
            continue
        if not (_same_bundle_morphism(eta.underlying.source,
                                      tw.underlying)
                and _same_bundle_morphism(eta.underlying.target,
                                          datum.cells[link.i].underlying)):
            report.add("morphism-datum-eta", idx,
                       "comparison cell endpoints differ from the "
                       "transported and stored morphisms")
            continue
        _checked(report, "morphism-datum-eta", idx, check_quotient_2cell,
                 pieces_p[link.i][0], pieces_q[link.i][0], tw,
                 datum.cells[link.i], eta)
    if not report.ok:
        return report
    for a, l1 in enumerate(datum.links):
        for b, l2 in enumerate(datum.links):
            if l1.j != l2.i:
                continue
            m = locate_link(datum.links, composite_link(l1, l2))
            if m is None:
                continue
            tp_p, tp_q = transports[a]
            if not _same_quotient_morphism(
                    transported[m],
                    transport_morphism(tp_p, tp_q, transported[b])):
                report.add("morphism-datum-assoc", (a, b),
                           "iterated transport differs from the "
                           "composite-link transport")
                continue
            _, _, tcell = transport_cell(tp_p, tp_q, datum.etas[b],
                                         transported[b],
                                         datum.cells[l2.i])
            pasted = vcompose(tcell.underlying.cell.gamma,
                              datum.etas[a].underlying.cell.gamma)
            if pasted != datum.etas[m].underlying.cell.gamma:
                report.add("morphism-datum-cocycle", (a, b),
                           "comparison cells do not paste to the "
                           "composite record")
    return report


def check_morphism_descent_effective(fam, datum, bound=DEFAULT_SEARCH_CAP):
    """Search for a global morphism whose restrictions match the datum
    up to invertible 2-cells compatible with the comparison cells."""
    if datum.fam != fam:
        raise ShapeError("datum was built over a different cover")
    report = validate_morphism_datum(datum, bound)
    if not report.ok:
        return DescentVerdict("invalid", report,
                              detail="morphism datum is invalid")
    pieces_p = _generator_pieces(datum.p_obj, fam, bound)
    pieces_q = _generator_pieces(datum.q_obj, fam, bound)
    transports = {idx: (_link_transport(datum.p_obj, fam, link, pieces_p,
                                        bound),
                        _link_transport(datum.q_obj, fam, link, pieces_q,
                                        bound))
                  for idx, link in enumerate(datum.links)}
    hc = bundle_hom_category(datum.p_obj.bundle, datum.q_obj.bundle,
                             bound)
    n = len(fam.generators)
    for bm in hc.objects:
        for beta in beta_candidates(datum.p_obj, datum.q_obj, bm):
            w = QuotientMorphism(bm, beta, "cand")
            res_w = [_restrict_morphism(w, pieces_p[k][1],
                                        pieces_q[k][1])
                     for k in range(n)]
            psi_lists = []
            for k in range(n):
                psis = []
                for gam in all_natural_isos(res_w[k].underlying.map.f,
                                            datum.cells[k]
                                            .underlying.map.f):
                    cell = _as_cell(res_w[k], datum.cells[k], gam, "psi")
                    if check_quotient_2cell(pieces_p[k][0],
                                            pieces_q[k][0], res_w[k],
                                            datum.cells[k], cell).ok:
                        psis.append(cell)
                psi_lists.append(psis)
            if any(not p for p in psi_lists):
                continue
            moved = {}
            for idx, link in enumerate(datum.links):
                tp_p, tp_q = transports[idx]
                per = []
                for psi in psi_lists[link.j]:
                    t_a, _, tcell = transport_cell(
                        tp_p, tp_q, psi, res_w[link.j],
                        datum.cells[link.j])
                    if not _same_quotient_morphism(t_a, res_w[link.i]):
                        raise InternalError(
                            "transport of a restricted global morphism "
                            "is not strict")
                    per.append(vcompose(
                        tcell.underlying.cell.gamma,
                        datum.etas[idx].underlying.cell.gamma))
                moved[idx] = per
            for combo in itertools.product(
                    *[range(len(p)) for p in psi_lists]):
                if all(moved[idx][combo[link.j]]
                       == psi_lists[link.i][combo[link.i]]
                       .underlying.cell.gamma
                       for idx, link in enumerate(datum.links)):
                    psis = [psi_lists[k][combo[k]] for k in range(n)]
                    return DescentVerdict(
                        "pass", report, [(w, psis)],
                        "effective: global morphism found")
    if hc.bounded:
        return DescentVerdict("inconclusive", report,
                              detail="global morphism enumeration "
                                     "exceeded the bound")
    return DescentVerdict("fail", report,
                          detail="no global morphism is compatible with "
                                 "the datum")


# ---------------------------------------------------------------------------
# weak object descent data


@dataclass
class WeakObjectDescentDatum:
    """A local object per generator, an equivalence per connecting
    record from the object at i to the pullback of the object at j, and
    one weak cocycle cell per pasted pair of records."""

    fam: object
    objects: list
    links: list
    phis: dict
    cocycles: dict
    name: str = ""


@dataclass
class GluedCandidate:
    """A global object with one comparison equivalence per generator
    and, optionally, the compatibility cells over the connecting
    records; absent cells are searched during verification."""

    obj: QuotientObject
    psis: list
    cells: dict = None
    pieces: list = None


def _link_pullbacks(datum, cap=DEFAULT_SEARCH_CAP):
    """The canonical pullback target of every record's equivalence."""
    return {idx: _restrict_object(datum.objects[link.j], link.g, cap)
            for idx, link in enumerate(datum.links)}


def _cocycle_route(datum, a, b, pulled, cap=DEFAULT_SEARCH_CAP,
                   target=None):
    """The pasted equivalence of two pasted records: follow phi at a,
    pull the phi at b back along the first record's base morphism, then
    compare the staged with the direct pullback.  ``target`` rebases
    the direct pullback onto the composite record's canonical one."""
    l2 = datum.links[b]
    w_k = datum.objects[l2.j]
    chi = _chi_component(w_k, l2.g, datum.links[a].g, cap,
                         first=pulled[b][0], first_iia=pulled[b][1],
                         direct=target[0] if target else None,
                         direct_iia=target[1] if target else None)
    res = _restrict_morphism(datum.phis[b], pulled[a][1],
                             chi.staged_iia)
    route = compose_quotient(
        chi.forward, compose_quotient(res, datum.phis[a]))
    return route, chi


def validate_weak_datum(datum, cap=DEFAULT_SEARCH_CAP):
    report = ValidationReport("object datum %s" % (datum.name or "?"))
    fam = datum.fam
    report.extend(fam.validate())
    if len(datum.objects) != len(fam.generators):
        report.add("object-datum-shape",
                   (len(datum.objects), len(fam.generators)))
        return report
    for link in datum.links:
        report.extend(link.validate(fam))
    if not report.ok:
        return report
    x_target = datum.objects[0].alpha.target
    for k, w in enumerate(datum.objects):
        if w.bundle.base != fam.generators[k].domain:
            report.add("object-datum-base", k)
            continue
        if not _same_action(w.alpha.target, x_target):
            report.add("object-datum-action", k)
            continue
        _checked(report, "object-datum-object", k, quotient_object_check,
                 w)
    if not report.ok:
        return report
    pulled = _link_pullbacks(datum, cap)
    good = set()
    for idx, link in enumerate(datum.links):
        phi = datum.phis.get(idx)
        if phi is None:
            report.add("object-datum-phi-missing", idx)
            continue
        if not (_same_action(phi.underlying.map.source,
                             datum.objects[link.i].bundle.total)
                and _same_action(phi.underlying.map.target,
                                 pulled[idx][0].bundle.total)):
            report.add("object-datum-phi", idx,
                       "equivalence does not run from the object at i "
                       "to the canonical pullback of the object at j")
            continue
        if not _checked(report, "object-datum-phi", idx,
                        check_quotient_morphism,
                        datum.objects[link.i], pulled[idx][0], phi):
            continue
        if not is_equivalence_functor(phi.underlying.map.f):
            report.add("object-datum-phi-equiv", idx)
            continue
        good.add(idx)
    for a, l1 in enumerate(datum.links):
        for b, l2 in enumerate(datum.links):
            if l1.j != l2.i or a not in good or b not in good:
                continue
            m = locate_link(datum.links, composite_link(l1, l2))
            if m is None or m not in good:
                continue
            beta = datum.cocycles.get((a, b))
            if beta is None:
                report.add("weak-cocycle-missing", (a, b))
                continue
            route, _ = _cocycle_route(datum, a, b, pulled, cap,
                                      target=pulled[m])
            if not (_same_bundle_morphism(beta.underlying.source,
                                          route.underlying)
                    and _same_bundle_morphism(beta.underlying.target,
                                              datum.phis[m].underlying)):
                report.add("weak-cocycle", (a, b),
                           "cocycle cell endpoints differ from the "
                           "pasted and composite equivalences")
                continue
            _checked(report, "weak-cocycle", (a, b),
                     check_quotient_2cell, datum.objects[l1.i],
                     pulled[m][0], route, datum.phis[m], beta)
    return report


# ---------------------------------------------------------------------------
# nerve fragments and the bounded bicolimit


@dataclass
class FragmentEdge:
    name: str
    src: str
    tgt: str
    functor: GroupoidFunctor


@dataclass
class FragmentRelation:
    """Two parallel edge paths that agree up to a pointwise internal
    comparison cell: for every object p of the common source node the
    arrow word along ``lhs`` equals ``cells[p]`` composed after the
    arrow word along ``rhs``."""

    lhs: list
    rhs: list
    cells: dict
    name: str = ""


@dataclass
class NerveFragment:
    """A finite diagram of groupoids presented by nodes, edge functors
    and pointwise relations between edge paths."""

    nodes: dict
    edges: list
    relations: list
    name: str = ""

    def _edge(self, name):
        for idx, e in enumerate(self.edges):
            if e.name == name:
                return idx, e
        raise ShapeError("unknown edge %r" % name)

    def _path_nodes(self, path, start=None):
        if not path:
            if start is None:
                raise ShapeError("empty path needs an anchored node")
            return start, start
        src = self._edge(path[0])[1].src
        cur = src
        for name in path:
            e = self._edge(name)[1]
            if e.src != cur:
                raise ShapeError("path %r is not composable" % (path,))
            cur = e.tgt
        return src, cur

    def _path_obj(self, path, p):
        cur = p
        for name in path:
            cur = self._edge(name)[1].functor.obj(cur)
        return cur

    def validate(self):
        report = ValidationReport("fragment %s" % (self.name or "?"))
        for e in self.edges:
            if e.src not in self.nodes or e.tgt not in self.nodes:
                report.add("fragment-edge-node", e.name)
                continue
            if (e.functor.domain != self.nodes[e.src]
                    or e.functor.codomain != self.nodes[e.tgt]):
                report.add("fragment-edge-endpoints", e.name)
            report.extend(e.functor.validate())
        if not report.ok:
            return report
        for r in self.relations:
            try:
                anchor = (self._path_nodes(r.rhs)[0] if r.rhs else None)
                ls, lt = self._path_nodes(r.lhs, start=anchor)
                rs, rt = self._path_nodes(r.rhs, start=ls)
            except ShapeError as err:
                report.add("fragment-relation-path", r.name, str(err))
                continue
            if ls != rs or lt != rt:
                report.add("fragment-relation-parallel", r.name)
                continue
            node = self.nodes[lt]
            src_node = self.nodes[ls]
            for p in src_node.objects:
                cell = r.cells.get(p)
                if cell is None or cell not in node.morphisms:
                    report.add("fragment-relation-cell", (r.name, p))
                    continue
                want = (self._path_obj(r.rhs, p),
                        self._path_obj(r.lhs, p))
                if node.morphisms[cell] != want:
                    report.add("fragment-relation-cell", (r.name, p))
        return report


def cover_nerve_fragment(fam, links, name=""):
    """The one-node-per-generator fragment with one edge per connecting
    record and the relations induced by pasted records.  Faithful when
    every overlap of the family is discrete."""
    nodes = {"g%d" % k: gen.domain
             for k, gen in enumerate(fam.generators)}
    edges = [FragmentEdge("l%d" % idx, "g%d" % link.i, "g%d" % link.j,
                          link.g)
             for idx, link in enumerate(links)]
    relations = []
    for a, l1 in enumerate(links):
        for b, l2 in enumerate(links):
            if l1.j != l2.i:
                continue
            m = locate_link(links, composite_link(l1, l2))
            if m is None:
                continue
            dom = fam.generators[l1.i].domain
            cod = fam.generators[l2.j].domain
            cells = {p: cod.id_of(l2.g.obj(l1.g.obj(p)))
                     for p in dom.objects}
            relations.append(FragmentRelation(
                ["l%d" % m], ["l%d" % a, "l%d" % b], cells,
                "paste(%d,%d)" % (a, b)))
    return NerveFragment(nodes, edges, relations,
                         name or "nerve(%s)" % (fam.label or "?"))


def sieve_fragment(y, name=""):
    """The two-node encoding of the identity sieve on y: the arrow
    groupoid of y over the object node, the two projection functors,
    and the tautological comparison relation."""
    ic = iso_comma(identity_functor(y), identity_functor(y),
                   "overlap(%s)" % y.name)
    cells = {t: ic.unpack_obj[t][2] for t in ic.apex.objects}
    return NerveFragment(
        {"piece": y, "overlap": ic.apex},
        [FragmentEdge("s", "overlap", "piece", ic.proj_left),
         FragmentEdge("t", "overlap", "piece", ic.proj_right)],
        [FragmentRelation(["t"], ["s"], cells, "tautological")],
        name or "sieve(%s)" % y.name)


def twist_fragment(name="twist"):
    """A single point with one self-edge forced to square to the
    identity: the smallest fragment whose bicolimit has a non-trivial
    automorphism."""
    pt = terminal_groupoid()
    o = pt.objects[0]
    return NerveFragment(
        {"p": pt},
        [FragmentEdge("t", "p", "p", identity_functor(pt))],
        [FragmentRelation(["t", "t"], [], {o: pt.id_of(o)}, "square")],
        name)


@dataclass
class BicolimResult:
    verdict: str  # "computed" | "inconclusive"
    groupoid: FiniteGroupoid
    inclusions: dict
    edge_cells: dict
    detail: str = ""
    machine: object = field(default=None, repr=False)

    @property
    def ok(self):
        return self.verdict == "computed"


class _WordMachine:
    """Bounded word normalization for the localized total category of a
    fragment: canonical words over internal and edge letters, seeded
    naturality and relation equalities, and congruence closure by
    transition determinization."""

    def __init__(self, fragment, cap, max_len):
        self.fragment = fragment
        self.cap = cap
        self.max_len = max_len
        self.nodes = fragment.nodes
        self.words = {}
        self.parent = {}
        self.bounded = False
        self.class_ids = {}
        self.reps = {}

    # -- letters -------------------------------------------------------

    def _letter_ends(self, letter):
        if letter[0] == "i":
            _, n, m = letter
            g = self.nodes[n]
            return (n, g.source(m)), (n, g.target(m))
        _, e, o, sign = letter
        edge = self.fragment.edges[e]
        fo = edge.functor.obj(o)
        if sign > 0:
            return (edge.src, o), (edge.tgt, fo)
        return (edge.tgt, fo), (edge.src, o)

    def _push(self, stack, letter):
        if letter[0] == "i":
            g = self.nodes[letter[1]]
            if letter[2] == g.id_of(g.source(letter[2])):
                return
        stack.append(letter)
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if a[0] == "i" and b[0] == "i":
                g = self.nodes[a[1]]
                m = g.compose(b[2], a[2])
                stack.pop(), stack.pop()
                if m != g.id_of(g.source(m)):
                    stack.append(("i", a[1], m))
                continue
            if a[0] == "i" and b[0] == "e" and b[3] > 0:
                edge = self.fragment.edges[b[1]]
                g = self.nodes[a[1]]
                u = a[2]
                stack.pop(), stack.pop()
                stack.append(("e", b[1], g.source(u), 1))
                fu = edge.functor.mor(u)
                cod = self.nodes[edge.tgt]
                if fu != cod.id_of(cod.source(fu)):
                    stack.append(("i", edge.tgt, fu))
                continue
            if (a[0] == "e" and b[0] == "e" and a[1] == b[1]
                    and a[2] == b[2] and a[3] == -b[3]):
                stack.pop(), stack.pop()
                continue
            break

    def canon(self, src, letters):
        stack = []
        for letter in letters:
            self._push(stack, letter)
        if not stack:
            n, o = src
            return (("i", n, self.nodes[n].id_of(o)),)
        return tuple(stack)

    def _body(self, word):
        if len(word) == 1 and word[0][0] == "i":
            g = self.nodes[word[0][1]]
            if word[0][2] == g.id_of(g.source(word[0][2])):
                return ()
        return word

    def _word_ends(self, word):
        if not self._body(word):
            g = self.nodes[word[0][1]]
            s = (word[0][1], g.source(word[0][2]))
            return s, s
        return (self._letter_ends(word[0])[0],
                self._letter_ends(word[-1])[1])

    def _edge_len(self, word):
        return sum(1 for letter in self._body(word) if letter[0] == "e")

    # -- union-find ------------------------------------------------------

    def find(self, w):
        root = w
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[w] != root:
            self.parent[w], w = root, self.parent[w]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if (self._edge_len(rb), len(rb), rb) < (self._edge_len(ra),
                                                len(ra), ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def _insert(self, word):
        if word in self.words:
            return True
        if len(self.words) >= self.cap:
            self.bounded = True
            return False
        self.words[word] = self._word_ends(word)
        self.parent[word] = word
        return True

    # -- generation, seeding, closure -------------------------------------

    def _letter_table(self):
        outgoing = {}
        for n, g in self.nodes.items():
            for o in g.objects:
                outgoing[(n, o)] = []
        for n, g in self.nodes.items():
            for m in g.morphism_list():
                if m == g.id_of(g.source(m)):
                    continue
                outgoing[(n, g.source(m))].append(("i", n, m))
        for idx, e in enumerate(self.fragment.edges):
            for o in self.nodes[e.src].objects:
                outgoing[(e.src, o)].append(("e", idx, o, 1))
                outgoing[(e.tgt, e.functor.obj(o))].append(
                    ("e", idx, o, -1))
        incoming = {key: [] for key in outgoing}
        for letters in outgoing.values():
            for letter in letters:
                incoming[self._letter_ends(letter)[1]].append(letter)
        for key in outgoing:
            outgoing[key].sort()
            incoming[key].sort()
        return outgoing, incoming

    def run(self):
        outgoing, incoming = self._letter_table()
        queue = []
        for n in sorted(self.nodes):
            g = self.nodes[n]
            for o in g.objects:
                w = (("i", n, g.id_of(o)),)
                if self._insert(w):
                    queue.append(w)
        seen = 0
        while seen < len(queue):
            w = queue[seen]
            seen += 1
            src, tgt = self.words[w]
            for letter in outgoing[tgt]:
                w2 = self.canon(src, self._body(w) + (letter,))
                if self._edge_len(w2) > self.max_len:
                    continue
                if w2 not in self.words:
                    if not self._insert(w2):
                        return
                    queue.append(w2)
        self._seed()
        if not self.bounded:
            self._close(outgoing, incoming)

    def _seed(self):
        for idx, e in enumerate(self.fragment.edges):
            dom = self.nodes[e.src]
            for u in dom.morphism_list():
                if u == dom.id_of(dom.source(u)):
                    continue
                x, y = dom.source(u), dom.target(u)
                fu = e.functor.mor(u)
                anchor = (e.tgt, e.functor.obj(x))
                lhs = self.canon(anchor, (("i", e.tgt, fu),
                                          ("e", idx, y, -1)))
                rhs = self.canon(anchor, (("e", idx, x, -1),
                                          ("i", e.src, u)))
                if self._insert(lhs) and self._insert(rhs):
                    self.union(lhs, rhs)
        for r in self.fragment.relations:
            if r.lhs:
                ls, lt = self.fragment._path_nodes(r.lhs)
            else:
                ls = self.fragment._path_nodes(r.rhs)[0]
                lt = ls
            for p in self.nodes[ls].objects:
                lhs = self.canon((ls, p), self._path_letters(r.lhs, p))
                rhs = self.canon((ls, p), self._path_letters(r.rhs, p)
                                 + (("i", lt, r.cells[p]),))
                if self._insert(lhs) and self._insert(rhs):
                    self.union(lhs, rhs)

    def _path_letters(self, path, p):
        letters = []
        cur = p
        for name in path:
            idx, e = self.fragment._edge(name)
            letters.append(("e", idx, cur, 1))
            cur = e.functor.obj(cur)
        return tuple(letters)

    def _close(self, outgoing, incoming):
        changed = True
        while changed:
            changed = False
            for table, prepend in ((outgoing, False), (incoming, True)):
                trans = {}
                for w, (src, tgt) in self.words.items():
                    rw = self.find(w)
                    for letter in table[src if prepend else tgt]:
                        if prepend:
                            anchor = self._letter_ends(letter)[0]
                            w2 = self.canon(anchor,
                                            (letter,) + self._body(w))
                        else:
                            w2 = self.canon(src,
                                            self._body(w) + (letter,))
                        if w2 not in self.words:
                            continue
                        key = (rw, letter)
                        r2 = self.find(w2)
                        prev = trans.get(key)
                        if prev is None:
                            trans[key] = r2
                        elif self.find(prev) != r2:
                            self.union(prev, r2)
                            changed = True

    # -- extraction --------------------------------------------------------

    def _inverse_letters(self, word):
        out = []
        for letter in reversed(self._body(word)):
            if letter[0] == "i":
                out.append(("i", letter[1],
                            self.nodes[letter[1]].inv(letter[2])))
            else:
                out.append(("e", letter[1], letter[2], -letter[3]))
        return tuple(out)

    def extract(self, name):
        classes = {}
        for w in self.words:
            classes.setdefault(self.find(w), []).append(w)
        reps = {}
        for root, members in classes.items():
            if len({self.words[m] for m in members}) != 1:
                raise InternalError("congruence identified words with "
                                    "different endpoints")
            reps[root] = min(members,
                             key=lambda w: (self._edge_len(w), len(w),
                                            w))
        order = sorted(reps, key=lambda r: (self._edge_len(reps[r]),
                                            len(reps[r]), reps[r]))
        for r1 in order:
            src1, tgt1 = self.words[reps[r1]]
            inv_word = self.canon(tgt1, self._inverse_letters(reps[r1]))
            if inv_word not in self.words:
                return None, ("the inverse of %r left the enumerated "
                              "words" % (reps[r1],))
            for r2 in order:
                if tgt1 != self.words[reps[r2]][0]:
                    continue
                word = self.canon(src1, self._body(reps[r1])
                                  + self._body(reps[r2]))
                if word not in self.words:
                    return None, ("the composite of %r and %r left the "
                                  "enumerated words"
                                  % (reps[r1], reps[r2]))
        objects = ["%s:%s" % (n, o) for n in sorted(self.nodes)
                   for o in self.nodes[n].objects]
        ids = {root: "w%d" % k for k, root in enumerate(order)}
        self.class_ids = ids
        self.reps = reps
        morphisms = {}
        identity = {}
        for root in order:
            src, tgt = self.words[reps[root]]
            morphisms[ids[root]] = ("%s:%s" % src, "%s:%s" % tgt)
        for n in sorted(self.nodes):
            g = self.nodes[n]
            for o in g.objects:
                w = self.canon((n, o), ())
                identity["%s:%s" % (n, o)] = ids[self.find(w)]
        table = {}
        inverse = {}
        for r1 in order:
            src1, tgt1 = self.words[reps[r1]]
            inv_word = self.canon(tgt1, self._inverse_letters(reps[r1]))
            inverse[ids[r1]] = ids[self.find(inv_word)]
            for r2 in order:
                if tgt1 != self.words[reps[r2]][0]:
                    continue
                word = self.canon(src1, self._body(reps[r1])
                                  + self._body(reps[r2]))
                table[(ids[r2], ids[r1])] = ids[self.find(word)]
        return FiniteGroupoid(name, objects, morphisms, identity, table,
                              inverse), ""

    def mor_id(self, src, letters):
        word = self.canon(src, tuple(letters))
        if word not in self.words:
            raise InternalError("word %r was not enumerated" % (word,))
        return self.class_ids[self.find(word)]

    def rep_letters(self, mid):
        for root, cid in self.class_ids.items():
            if cid == mid:
                return self.words[self.reps[root]][0], \
                    self._body(self.reps[root])
        raise InternalError("unknown bicolimit morphism %r" % mid)


def bounded_bicolimit(fragment, cap=DEFAULT_SEARCH_CAP, max_len=6):
    """Localize the total category of the fragment by bounded word
    normalization.  Returns the finite quotient groupoid with its
    universal cocone when the enumeration stabilizes within the budget;
    inconclusive otherwise."""
    rep = fragment.validate()
    if not rep.ok:
        raise ShapeError("invalid fragment:\n%s" % rep)
    machine = _WordMachine(fragment, cap, max_len)
    machine.run()
    if machine.bounded:
        return BicolimResult("inconclusive", None, {}, {},
                             "word enumeration exceeded the budget",
                             machine)
    name = "bicolim(%s)" % (fragment.name or "?")
    gpd, why = machine.extract(name)
    if gpd is None:
        return BicolimResult("inconclusive", None, {}, {},
                             "normalization did not stabilize within "
                             "the word budget: %s" % why, machine)
    sub = validate_groupoid(gpd)
    if not sub.ok:
        raise InternalError("bicolimit tables are inconsistent:\n%s"
                            % sub)
    inclusions = {}
    for n in sorted(fragment.nodes):
        g = fragment.nodes[n]
        inclusions[n] = GroupoidFunctor(
            g, gpd, {o: "%s:%s" % (n, o) for o in g.objects},
            {m: machine.mor_id((n, g.source(m)), (("i", n, m),))
             for m in g.morphism_list()}, "in(%s)" % n)
    edge_cells = {}
    for idx, e in enumerate(fragment.edges):
        comps = {o: machine.mor_id((e.src, o), (("e", idx, o, 1),))
                 for o in fragment.nodes[e.src].objects}
        edge_cells[e.name] = NaturalIso(
            inclusions[e.src],
            compose_functors(inclusions[e.tgt], e.functor), comps,
            "cocone(%s)" % e.name)
    return BicolimResult("computed", gpd, inclusions, edge_cells, "",
                         machine)


# ---------------------------------------------------------------------------
# gluing an object candidate


def _identity_components(n):
    cod = n.source.codomain
    return all(m == cod.id_of(cod.source(m))
               for m in n.components.values())


def _strictness_obstruction(datum, pulled):
    for k, w in enumerate(datum.objects):
        if not _identity_components(w.alpha.lam):
            return ("structure map at generator %d is not strictly "
                    "equivariant" % k)
        if not _identity_components(w.bundle.projection.lam):
            return ("projection at generator %d is not strictly "
                    "equivariant" % k)
        act = w.bundle.total
        if not (_identity_components(act.mu)
                and _identity_components(act.nu)):
            return "action at generator %d is not strict" % k
    x_act = datum.objects[0].alpha.target
    if not (_identity_components(x_act.mu)
            and _identity_components(x_act.nu)):
        return "the acted target is not strict"
    for idx in pulled:
        if not _identity_components(datum.phis[idx].underlying.map.lam):
            return ("equivalence at record %d is not strictly "
                    "equivariant" % idx)
        if not _identity_components(pulled[idx][1].left.lam):
            return ("pullback leg at record %d is not strictly "
                    "equivariant" % idx)
    return ""


def _nondiscrete_overlap(fam):
    for i, f_i in enumerate(fam.generators):
        for j, f_j in enumerate(fam.generators):
            ic = iso_comma(f_i, f_j)
            for m in ic.apex.morphism_list():
                s = ic.apex.source(m)
                if (ic.apex.target(m) == s
                        and m != ic.apex.id_of(s)):
                    return (i, j)
    return None


def _strict_equivariant(source, target, f, name=""):
    left, right = lambda_shape(source, target, f)
    if not _tables_equal(left, right):
        raise ShapeError("map %r is not strictly equivariant"
                         % (name or f.name))
    lam = NaturalIso(left, right,
                     {o: target.space.id_of(left.obj(o))
                      for o in left.domain.objects}, "strict-lam")
    return EquivariantMap(source, target, f, lam, name or f.name)


def _glued_action(datum, fam, result):
    tg = datum.objects[0].bundle.group
    machine = result.machine
    gpd = result.groupoid
    carrier = tg.carrier
    acts = {"g%d" % k: datum.objects[k].bundle.total
            for k in range(len(fam.generators))}

    def act_obj(g, n, o):
        return "%s:%s" % (n, acts[n].xobj(g, o))

    def act_one(u, letter):
        if letter[0] == "i":
            _, n, v = letter
            return (("i", n, acts[n].xmor(u, v)),)
        _, idx, o, sign = letter
        e = machine.fragment.edges[idx]
        fo = e.functor.obj(o)
        carried = ("i", e.tgt,
                   acts[e.tgt].xmor(u, acts[e.tgt].space.id_of(fo)))
        if sign > 0:
            return (("e", idx, acts[e.src].xobj(carrier.source(u), o),
                     1), carried)
        return (carried,
                ("e", idx, acts[e.src].xobj(carrier.target(u), o), -1))

    gs = product(carrier, gpd)
    trip = product_many([carrier, carrier, gpd])
    on_obj = {}
    for po in gs.apex.objects:
        g, t = gs.unpack_obj[po]
        n, o = t.split(":", 1)
        on_obj[po] = act_obj(g, n, o)
    on_mor = {}
    for pm in gs.apex.morphisms:
        u, wid = gs.unpack_mor[pm]
        src, letters = machine.rep_letters(wid)
        if not letters:
            n, o = src
            letters = (("i", n, acts[n].space.id_of(o)),)
        acted = []
        rest = carrier.id_of(carrier.target(u))
        for pos, letter in enumerate(letters):
            acted.extend(act_one(u if pos == 0 else rest, letter))
        asrc = (src[0], acts[src[0]].xobj(carrier.source(u), src[1]))
        on_mor[pm] = machine.mor_id(asrc, acted)
    x = GroupoidFunctor(gs.apex, gpd, on_obj, on_mor, "glued-x")
    a = Action(tg, gpd, gs, trip, x, None, None, name="glued")
    a.mu, a.nu = _strict_cells(a)
    return a


def _fold(gpd, start_id, values):
    out = start_id
    for v in values:
        out = gpd.compose(v, out)
    return out


def _glued_functor(datum, fam, result, pulled, kind, codomain, name):
    """Tabulate a comparison functor out of the glued groupoid letter
    by letter: ``kind`` selects the projection to the base or the
    structure map to the acted target."""
    machine = result.machine

    def obj_value(n, o):
        k = int(n[1:])
        if kind == "proj":
            return fam.generators[k].obj(
                datum.objects[k].bundle.projection.f.obj(o))
        return datum.objects[k].alpha.f.obj(o)

    def letter_value(letter):
        if letter[0] == "i":
            _, n, v = letter
            k = int(n[1:])
            if kind == "proj":
                return fam.generators[k].mor(
                    datum.objects[k].bundle.projection.f.mor(v))
            return datum.objects[k].alpha.f.mor(v)
        _, idx, o, sign = letter
        link = datum.links[idx]
        phi = datum.phis[idx]
        if kind == "alpha":
            fwd = codomain.inv(phi.beta.at(o))
        else:
            iia = pulled[idx][1]
            _, u_o, delta = iia.ic.unpack_obj[
                phi.underlying.map.f.obj(o)]
            f_i = fam.generators[link.i]
            f_j = fam.generators[link.j]
            fwd = _fold(
                codomain,
                codomain.inv(f_i.mor(phi.underlying.gamma.at(o))),
                [codomain.inv(link.gamma.at(u_o)),
                 codomain.inv(f_j.mor(delta))])
        return fwd if sign > 0 else codomain.inv(fwd)

    gpd = result.groupoid
    on_obj = {}
    for t in gpd.objects:
        n, o = t.split(":", 1)
        on_obj[t] = obj_value(n, o)
    on_mor = {}
    for mid in gpd.morphisms:
        src, letters = machine.rep_letters(mid)
        start = codomain.id_of(obj_value(*src))
        on_mor[mid] = _fold(codomain, start,
                            [letter_value(letter) for letter in letters])
    return GroupoidFunctor(gpd, codomain, on_obj, on_mor, name)


def glue_object_candidate(fam, datum, bound=DEFAULT_SEARCH_CAP,
                          max_len=6):
    """Assemble a global object from a weak datum via the bounded
    bicolimit of its nerve fragment.  Returns (candidate, "") on
    success and (None, diagnostic) when the construction does not apply
    at this scale."""
    bad = _nondiscrete_overlap(fam)
    if bad is not None:
        return None, ("overlap of generators %d and %d is not discrete; "
                      "supply a candidate" % bad)
    pulled = _link_pullbacks(datum, bound)
    obstruction = _strictness_obstruction(datum, pulled)
    if obstruction:
        return None, obstruction + "; supply a candidate"
    nodes = {"g%d" % k: datum.objects[k].bundle.total.space
             for k in range(len(fam.generators))}
    edges = [FragmentEdge("l%d" % idx, "g%d" % link.i, "g%d" % link.j,
                          compose_functors(
                              pulled[idx][1].left.f,
                              datum.phis[idx].underlying.map.f))
             for idx, link in enumerate(datum.links)]
    relations = []
    for (a, b), beta in sorted(datum.cocycles.items()):
        l1, l2 = datum.links[a], datum.links[b]
        m = locate_link(datum.links, composite_link(l1, l2))
        if m is None:
            continue
        direct_left = pulled[m][1].left.f
        cells = {p: direct_left.mor(beta.underlying.cell.gamma.at(p))
                 for p in datum.objects[l1.i].bundle.total.space.objects}
        relations.append(FragmentRelation(
            ["l%d" % m], ["l%d" % a, "l%d" % b], cells,
            "cocycle(%d,%d)" % (a, b)))
    fragment = NerveFragment(nodes, edges, relations,
                             "glue(%s)" % (datum.name or "?"))
    try:
        result = bounded_bicolimit(fragment, bound, max_len)
    except ShapeError as err:
        return None, "%s; supply a candidate" % err
    if not result.ok:
        return None, result.detail
    tg = datum.objects[0].bundle.group
    y = fam.target
    x_act = datum.objects[0].alpha.target
    glued = _glued_action(datum, fam, result)
    if not (glued.x.validate().ok and check_action(glued).ok):
        return None, "glued action fails the axioms; supply a candidate"
    proj_f = _glued_functor(datum, fam, result, pulled, "proj", y,
                            "glued-proj")
    alpha_f = _glued_functor(datum, fam, result, pulled, "alpha",
                             x_act.space, "glued-alpha")
    if not (proj_f.validate().ok and alpha_f.validate().ok):
        return None, ("glued comparison tables are not functorial; "
                      "supply a candidate")
    try:
        proj = _strict_equivariant(glued, trivial_action(tg, y), proj_f,
                                   "glued-proj")
        alpha = _strict_equivariant(glued, x_act, alpha_f,
                                    "glued-alpha")
        cover = composite_cover(fam, [w.bundle.cover
                                      for w in datum.objects])
        bun = make_bundle(tg, glued, y, proj, cover, bound,
                          "glued(%s)" % (datum.name or "?"))
    except ShapeError as err:
        return None, "%s; supply a candidate" % err
    obj = QuotientObject(bun, alpha, "glued(%s)" % (datum.name or "?"))
    psis = []
    pieces = []
    for k in range(len(fam.generators)):
        w_k = datum.objects[k]
        ro, iia = _restrict_object(obj, fam.generators[k], bound)
        pieces.append((ro, iia))
        try:
            inc = _strict_equivariant(w_k.bundle.total, glued,
                                      result.inclusions["g%d" % k],
                                      "in(%d)" % k)
        except ShapeError as err:
            return None, "%s; supply a candidate" % err
        omega = NaturalIso(
            compose_functors(iia.ic.f, inc.f),
            compose_functors(iia.ic.g, w_k.bundle.projection.f),
            {o: y.id_of(proj_f.obj(inc.f.obj(o)))
             for o in inc.f.domain.objects}, "psi-omega")
        med = lift_mediator_equivariance(iia, inc,
                                         w_k.bundle.projection, omega,
                                         "psi(%d)" % k)
        gamma = NaturalIso(
            compose_functors(iia.ic.proj_right, med.f),
            w_k.bundle.projection.f,
            {o: fam.generators[k].domain.id_of(
                w_k.bundle.projection.f.obj(o))
             for o in med.f.domain.objects}, "psi-gamma")
        alpha_src = compose_functors(ro.alpha.f, med.f)
        beta = NaturalIso(
            alpha_src, w_k.alpha.f,
            {o: x_act.space.id_of(alpha_src.obj(o))
             for o in med.f.domain.objects}, "psi-beta")
        psi = QuotientMorphism(BundleMorphism(med, gamma), beta,
                               "psi(%d)" % k)
        try:
            if not check_quotient_morphism(w_k, ro, psi).ok:
                return None, ("glued comparison %d is not a quotient "
                              "morphism; supply a candidate" % k)
        except ShapeError as err:
            return None, "%s; supply a candidate" % err
        psis.append(psi)
    return GluedCandidate(obj, psis, None, pieces), ""


# ---------------------------------------------------------------------------
# object effectiveness


def check_object_descent_effective(fam, datum, candidate=None,
                                   bound=DEFAULT_SEARCH_CAP, max_len=6):
    """Verify that a weak object datum is effective: a supplied global
    candidate is checked against the datum, and an absent candidate is
    first assembled by the bounded gluing construction."""
    if datum.fam != fam:
        raise ShapeError("datum was built over a different cover")
    report = validate_weak_datum(datum, bound)
    if not report.ok:
        return DescentVerdict("invalid", report,
                              detail="object datum is invalid")
    constructed = False
    if candidate is None:
        candidate, why = glue_object_candidate(fam, datum, bound,
                                               max_len)
        if candidate is None:
            return DescentVerdict("inconclusive", report, detail=why)
        constructed = True
    witnesses = [candidate] if constructed else []
    _checked(report, "glued-object", candidate.obj.name or "?",
             quotient_object_check, candidate.obj)
    if candidate.obj.bundle.base != fam.target:
        report.add("glued-base", candidate.obj.name or "?")
    if len(candidate.psis) != len(fam.generators):
        report.add("glued-psi-shape", len(candidate.psis))
    if not report.ok:
        return DescentVerdict("fail", report, witnesses,
                              "candidate is not a valid global object")
    comp = composite_cover(fam, [w.bundle.cover for w in datum.objects])
    if candidate.obj.bundle.cover != comp:
        # the declared cover's witnesses were already validated above, so
        # only a different cover needs a fresh search over the composite
        for k, search in enumerate(check_local_triviality(
                candidate.obj.bundle.projection, comp, bound)):
            if not search.found:
                report.add("glued-T2", k)
    if (candidate.pieces is not None
            and len(candidate.pieces) == len(fam.generators)):
        pieces = candidate.pieces
    else:
        pieces = _generator_pieces(candidate.obj, fam, bound)
    good = set()
    for k, psi in enumerate(candidate.psis):
        if not (_same_action(psi.underlying.map.source,
                             datum.objects[k].bundle.total)
                and _same_action(psi.underlying.map.target,
                                 pieces[k][0].bundle.total)):
            report.add("glued-psi", k,
                       "comparison does not run from the local object "
                       "to the canonical restriction")
            continue
        if not _checked(report, "glued-psi", k, check_quotient_morphism,
                        datum.objects[k], pieces[k][0], psi):
            continue
        if not is_equivalence_functor(psi.underlying.map.f):
            report.add("glued-psi-equiv", k)
            continue
        good.add(k)
    pulled = _link_pullbacks(datum, bound)
    eps = {}
    chis = []
    for idx, link in enumerate(datum.links):
        if link.i not in good or link.j not in good:
            continue
        chi = next((c for j, g, c in chis
                    if j == link.j and g == link.g), None)
        tp = _link_transport(candidate.obj, fam, link, pieces, bound,
                             chi)
        if chi is None:
            chis.append((link.j, link.g, tp.chi))
        res_psi = _restrict_morphism(candidate.psis[link.j],
                                     pulled[idx][1], tp.chi.staged_iia)
        route = compose_quotient(
            tp.to_i, compose_quotient(res_psi, datum.phis[idx]))
        psi_i = candidate.psis[link.i]
        supplied = (candidate.cells or {}).get(idx)
        if supplied is not None:
            if not (_same_bundle_morphism(supplied.underlying.source,
                                          route.underlying)
                    and _same_bundle_morphism(
                        supplied.underlying.target, psi_i.underlying)):
                report.add("glued-epsilon", idx,
                           "supplied cell endpoints differ from the "
                           "pasted route")
                continue
            if _checked(report, "glued-epsilon", idx,
                        check_quotient_2cell, datum.objects[link.i],
                        pieces[link.i][0], route, psi_i, supplied):
                eps[idx] = supplied
            continue
        found = None
        for gam in all_natural_isos(route.underlying.map.f,
                                    psi_i.underlying.map.f):
            cell = _as_cell(route, psi_i, gam, "eps(%d)" % idx)
            if check_quotient_2cell(datum.objects[link.i],
                                    pieces[link.i][0], route, psi_i,
                                    cell).ok:
                found = cell
                break
        if found is None:
            report.add("glued-epsilon", idx,
                       "no invertible cell compares the pasted route "
                       "with the comparison at the link target")
        else:
            eps[idx] = found
    if report.ok:
        return DescentVerdict("pass", report, witnesses + [eps],
                              "datum is effective")
    return DescentVerdict("fail", report, witnesses)


# ---------------------------------------------------------------------------
# restriction of global data to descent data


def restrict_object_datum(o, fam, links=None, cap=DEFAULT_SEARCH_CAP):
    """Restrict a global object componentwise: canonical pullbacks, the
    canonical comparison equivalences over every connecting record, and
    computed cocycle cells."""
    if links is None:
        links = cover_links(fam, cap)
    pieces = _generator_pieces(o, fam, cap)
    phis = {}
    for idx, link in enumerate(links):
        tp = _link_transport(o, fam, link, pieces, cap)
        phis[idx] = tp.from_i
    datum = WeakObjectDescentDatum(fam, [p[0] for p in pieces], links,
                                   phis, {},
                                   "res(%s)" % (o.name or "?"))
    pulled = _link_pullbacks(datum, cap)
    for a, l1 in enumerate(links):
        for b, l2 in enumerate(links):
            if l1.j != l2.i:
                continue
            m = locate_link(links, composite_link(l1, l2))
            if m is None:
                continue
            route, _ = _cocycle_route(datum, a, b, pulled, cap,
                                      target=pulled[m])
            datum.cocycles[(a, b)] = _comparison_cell(
                route, phis[m], datum.objects[l1.i], pulled[m][0],
                "beta(%d,%d)" % (a, b))
    return datum


def restrict_morphism_datum(m, p_obj, q_obj, fam, links=None,
                            cap=DEFAULT_SEARCH_CAP):
    """Restrict a global morphism componentwise with the canonical
    comparison cells over every connecting record."""
    if links is None:
        links = cover_links(fam, cap)
    pieces_p = _generator_pieces(p_obj, fam, cap)
    pieces_q = _generator_pieces(q_obj, fam, cap)
    cells = [_restrict_morphism(m, pieces_p[k][1], pieces_q[k][1])
             for k in range(len(fam.generators))]
    etas = {}
    for idx, link in enumerate(links):
        tp_p = _link_transport(p_obj, fam, link, pieces_p, cap)
        tp_q = _link_transport(q_obj, fam, link, pieces_q, cap)
        tw = transport_morphism(tp_p, tp_q, cells[link.j])
        etas[idx] = _comparison_cell(tw, cells[link.i],
                                     pieces_p[link.i][0],
                                     pieces_q[link.i][0],
                                     "eta(%d)" % idx)
    return MorphismDescentDatum(fam, p_obj, q_obj, links, cells, etas,
                                "res(%s)" % (m.name or "?"))


def restrict_matching_family(c, p_obj, q_obj, source, target, fam,
                             links=None, cap=DEFAULT_SEARCH_CAP):
    """Restrict a global 2-cell componentwise into a matching family."""
    if links is None:
        links = cover_links(fam, cap)
    pieces_p = _generator_pieces(p_obj, fam, cap)
    pieces_q = _generator_pieces(q_obj, fam, cap)
    cells = []
    for k in range(len(fam.generators)):
        res_s = _restrict_morphism(source, pieces_p[k][1],
                                   pieces_q[k][1])
        res_t = _restrict_morphism(target, pieces_p[k][1],
                                   pieces_q[k][1])
        cells.append(_restrict_2cell(c, res_s, res_t, pieces_p[k][1],
                                     pieces_q[k][1]))
    return MatchingFamily2Cells(fam, p_obj, q_obj, source, target, links,
                                cells, "res(%s)" % (c.name or "?"))


def _comparison_cell(got, want, src_obj, tgt_obj, name=""):
    """The canonical invertible cell from a computed route to the
    stored one: the identity when they agree on the nose, otherwise the
    first valid comparison found."""
    if _same_quotient_morphism(got, want):
        return _identity_cell_between(got, want, name)
    for gam in all_natural_isos(got.underlying.map.f,
                                want.underlying.map.f):
        cell = _as_cell(got, want, gam, name)
        if check_quotient_2cell(src_obj, tgt_obj, got, want, cell).ok:
            return cell
    raise InternalError("restriction produced incomparable routes at %s"
                        % (name or "?"))


def restrict_to_descent_datum(glob, fam, p_obj=None, q_obj=None,
                              source=None, target=None, links=None,
                              cap=DEFAULT_SEARCH_CAP):
    """Componentwise restriction of a global object, morphism, or
    2-cell to a descent datum over the family."""
    if isinstance(glob, QuotientObject):
        return restrict_object_datum(glob, fam, links, cap)
    if isinstance(glob, QuotientMorphism):
        if p_obj is None or q_obj is None:
            raise ShapeError("morphism restriction needs its endpoint "
                             "objects")
        return restrict_morphism_datum(glob, p_obj, q_obj, fam, links,
                                       cap)
    if isinstance(glob, QuotientTwoCell):
        if None in (p_obj, q_obj, source, target):
            raise ShapeError("2-cell restriction needs its endpoint "
                             "objects and morphisms")
        return restrict_matching_family(glob, p_obj, q_obj, source,
                                        target, fam, links, cap)
    raise ShapeError("no descent datum for %r" % type(glob).__name__)
