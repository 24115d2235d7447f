"""Adjoint equivalences of finite groupoids, found by exhaustive search.

The search enumerates "collapse forms": the forward functor sends every
object of a component to a chosen representative of the matched target
component, transporting automorphisms along a group isomorphism.  Every
equivalence is naturally isomorphic to one of these, so exhausting them
gives a definite negative; the search budget only matters for size.
"""

from dataclasses import dataclass
import itertools

from .groupoid import (DEFAULT_SEARCH_CAP, InternalError, ShapeError,
                       GroupoidFunctor, NaturalIso, identity_functor,
                       compose_functors, all_natural_isos, _group_homs,
                       is_equivalence_functor)


@dataclass
class EquivalencePack:
    """An adjoint equivalence: unit id => backward.forward and counit
    forward.backward => id satisfying both triangle identities."""

    forward: GroupoidFunctor
    backward: GroupoidFunctor
    unit: NaturalIso
    counit: NaturalIso

    def validate(self):
        a = self.forward.domain
        b = self.forward.codomain
        report = self.forward.validate()
        report.extend(self.backward.validate())
        report.extend(self.unit.validate())
        report.extend(self.counit.validate())
        if self.unit.source != identity_functor(a) or \
                self.unit.target != compose_functors(self.backward,
                                                     self.forward):
            report.add("unit-endpoints", ())
        if self.counit.source != compose_functors(self.forward,
                                                  self.backward) or \
                self.counit.target != identity_functor(b):
            report.add("counit-endpoints", ())
        if not report.ok:
            return report
        for x in a.objects:
            lhs = b.compose(self.counit.at(self.forward.obj(x)),
                            self.forward.mor(self.unit.at(x)))
            if lhs != b.id_of(self.forward.obj(x)):
                report.add("triangle-1", (x,))
        for y in b.objects:
            lhs = a.compose(self.backward.mor(self.counit.at(y)),
                            self.unit.at(self.backward.obj(y)))
            if lhs != a.id_of(self.backward.obj(y)):
                report.add("triangle-2", (y,))
        return report


@dataclass
class SearchResult:
    """Three-valued search outcome."""

    verdict: str  # "equivalent" | "different" | "inconclusive"
    pack: EquivalencePack | None = None
    detail: str = ""

    @property
    def found(self):
        return self.verdict == "equivalent"


def _group_isos(dom, auts_a, cod, auts_b):
    if len(auts_a) != len(auts_b):
        return
    for h in _group_homs(dom, auts_a, cod, auts_b):
        if len(set(h.values())) == len(auts_a):
            yield h


def collapse_form_pack(a, b, matching, isos):
    """Build the adjoint equivalence determined by a component matching
    (list of (component-of-a, component-of-b) pairs covering both sides)
    and one automorphism-group isomorphism per pair.  The triangle
    identities hold on the nose by construction."""
    paths_a = a.rep_paths()
    paths_b = b.rep_paths()
    f_obj, f_mor = {}, {}
    g_obj, g_mor = {}, {}
    unit, counit = {}, {}
    for (comp_a, comp_b), phi in zip(matching, isos):
        rep_a, rep_b = comp_a[0], comp_b[0]
        phi_inv = {v: k for k, v in phi.items()}
        for x in comp_a:
            f_obj[x] = rep_b
            unit[x] = paths_a[x]
        for y in comp_b:
            g_obj[y] = rep_a
            counit[y] = b.inv(paths_b[y])
        for x in comp_a:
            for x2 in comp_a:
                for m in a.hom(x, x2):
                    f_mor[m] = phi[a.compose_path(
                        [a.inv(paths_a[x]), m, paths_a[x2]])]
        for y in comp_b:
            for y2 in comp_b:
                for n in b.hom(y, y2):
                    g_mor[n] = phi_inv[b.compose_path(
                        [b.inv(paths_b[y]), n, paths_b[y2]])]
    fwd = GroupoidFunctor(a, b, f_obj, f_mor, "collapse")
    bwd = GroupoidFunctor(b, a, g_obj, g_mor, "collapse_back")
    pack = EquivalencePack(
        fwd, bwd,
        NaturalIso(identity_functor(a), compose_functors(bwd, fwd), unit,
                   "unit"),
        NaturalIso(compose_functors(fwd, bwd), identity_functor(b), counit,
                   "counit"))
    report = pack.validate()
    if not report.ok:
        raise InternalError("collapse form failed validation:\n%s" % report)
    return pack


def all_equivalence_packs(a, b):
    """Yield every collapse-form adjoint equivalence a ~ b.

    Every equivalence between finite groupoids is naturally isomorphic
    to one of collapse form (component matching plus an automorphism
    group isomorphism at each representative), so an empty yield is a
    definite negative.
    """
    if a.signature() != b.signature():
        return
    comps_a = a.components()
    comps_b = b.components()
    if len(comps_a) != len(comps_b):
        return
    for perm in itertools.permutations(range(len(comps_b))):
        matching = [(comps_a[i], comps_b[j]) for i, j in enumerate(perm)]
        if any(len(a.automorphisms(ca[0])) != len(b.automorphisms(cb[0]))
               for ca, cb in matching):
            continue
        iso_pools = []
        for comp_a, comp_b in matching:
            pool = list(_group_isos(a, a.automorphisms(comp_a[0]),
                                    b, b.automorphisms(comp_b[0])))
            if not pool:
                break
            iso_pools.append(pool)
        if len(iso_pools) < len(matching):
            continue
        for isos in itertools.product(*iso_pools):
            yield collapse_form_pack(a, b, matching, isos)


def find_equivalence(a, b, cap=DEFAULT_SEARCH_CAP):
    """Search for an adjoint equivalence a ~ b.

    Returns SearchResult with verdict "equivalent" (pack attached),
    "different" (invariants separate, or the complete collapse-form
    family is exhausted), or "inconclusive" (budget ran out first).
    """
    if a.signature() != b.signature():
        return SearchResult(
            "different", detail="separating invariant: %s vs %s"
            % (a.signature(), b.signature()))
    examined = 0
    for pack in all_equivalence_packs(a, b):
        examined += 1
        if examined > cap:
            return SearchResult(
                "inconclusive",
                detail="budget %d exhausted mid-search" % cap)
        return SearchResult("equivalent", pack)
    return SearchResult(
        "different",
        detail="collapse-form family exhausted (%d candidates)" % examined)


def adjointify(forward, backward, unit):
    """Complete (forward, backward, unit) to an adjoint equivalence by
    finding the unique counit satisfying the first triangle identity; the
    second then holds automatically and is asserted."""
    b = forward.codomain
    fb = compose_functors(forward, backward)
    hits = []
    for eps in all_natural_isos(fb, identity_functor(b)):
        if all(b.compose(eps.at(forward.obj(x)),
                         forward.mor(unit.at(x))) == b.id_of(forward.obj(x))
               for x in forward.domain.objects):
            hits.append(eps)
    if len(hits) != 1:
        raise InternalError("adjointification found %d counits, expected 1"
                            % len(hits))
    pack = EquivalencePack(forward, backward, unit, hits[0])
    report = pack.validate()
    if not report.ok:
        raise InternalError("adjointify produced an invalid pack:\n%s"
                            % report)
    return pack


def quasi_inverse_pack(forward, cap=DEFAULT_SEARCH_CAP):
    """Given a functor already known (or hoped) to be an equivalence,
    search for a backward functor and unit, then adjointify."""
    if not is_equivalence_functor(forward):
        raise ShapeError("functor is not an equivalence")
    from .groupoid import all_functors
    a, b = forward.domain, forward.codomain
    examined = 0
    for bwd in all_functors(b, a):
        examined += 1
        if examined > cap:
            raise InternalError("quasi-inverse search budget exhausted")
        for unit in all_natural_isos(identity_functor(a),
                                     compose_functors(bwd, forward)):
            return adjointify(forward, bwd, unit)
    raise InternalError("equivalence has no quasi-inverse; impossible")
