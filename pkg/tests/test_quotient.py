import pytest

from twostacks.groupoid import (ShapeError, NaturalIso, identity_functor,
                                identity_natiso, terminal_groupoid)
from twostacks.action import trivial_action
from twostacks.site import Bitopology, CoveringFamily
from twostacks.bundle import make_bundle
from twostacks.quotient import (QuotientMorphism, QuotientObject,
                                beta_candidates, check_classifying_match,
                                check_compositor, check_omega_identity,
                                check_quotient_2cell,
                                check_quotient_morphism,
                                check_trihom_coherence, check_unit_collapse,
                                check_unitor, check_whisker,
                                classifying_prestack, compose_quotient,
                                compositor_on, identity_quotient,
                                identity_quotient_2cell, quotient_cat,
                                quotient_object_check, restrict_along,
                                restrict_pack, unitor_on,
                                validate_restriction, whisker_on)
from twostacks.corpus import (desk_site, get_groupoid, get_twogroup,
                              product_bundle, unit_functor_into)

BOUND = 4000


@pytest.fixture(scope="module")
def site():
    return desk_site()


@pytest.fixture(scope="module")
def point_pres(site):
    """Discrete Z/2 over the point, mapping to the terminal space."""
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, terminal_groupoid())
    return quotient_cat(x, terminal_groupoid(), site, BOUND)


@pytest.fixture(scope="module")
def bz2_pres(site):
    """Discrete Z/2 over BZ2, mapping to the terminal space."""
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, terminal_groupoid())
    return quotient_cat(x, get_groupoid("BZ2"), site, BOUND)


@pytest.fixture(scope="module")
def rich_pres(site):
    """Discrete Z/2 over the point, mapping to BZ2: two objects and
    non-unique comparison witnesses."""
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, get_groupoid("BZ2"))
    return quotient_cat(x, terminal_groupoid(), site, BOUND)


# ---------------------------------------------------------------------------
# enumerating presentations


def test_trivial_group_over_point_is_contractible(site):
    tg = get_twogroup("trivial")
    x = trivial_action(tg, terminal_groupoid())
    pres = quotient_cat(x, terminal_groupoid(), site, BOUND)
    assert len(pres.objects) == 1
    assert len(pres.one_cells[(0, 0)]) == 1
    assert len(pres.two_cells[(0, 0, 0, 0)]) == 1
    assert pres.identity_one == {0: 0}
    assert not pres.bounded
    assert pres.validate().ok


def test_discrete_z2_over_point_endo_category(point_pres):
    assert len(point_pres.objects) == 1
    cells = point_pres.one_cells[(0, 0)]
    assert len(cells) == 2
    translated = [m for m in cells
                  if m.underlying.map.f
                  != identity_functor(m.underlying.map.f.domain)]
    assert len(translated) == 1
    for a in range(2):
        for b in range(2):
            expected = 1 if a == b else 0
            assert len(point_pres.two_cells[(0, 0, a, b)]) == expected
    assert point_pres.validate().ok


def test_discrete_z2_over_point_composition_is_z2(point_pres):
    table = point_pres.one_table
    ident = point_pres.identity_one[0]
    other = 1 - ident
    assert table[((0, 0, ident), (0, 0, ident))] == ident
    assert table[((0, 0, ident), (0, 0, other))] == other
    assert table[((0, 0, other), (0, 0, ident))] == other
    assert table[((0, 0, other), (0, 0, other))] == ident


def test_enumeration_is_deterministic(site):
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, terminal_groupoid())
    a = quotient_cat(x, terminal_groupoid(), site, BOUND)
    b = quotient_cat(x, terminal_groupoid(), site, BOUND)
    assert [o.name for o in a.objects] == [o.name for o in b.objects]
    assert a.one_table == b.one_table
    assert a.two_vtable == b.two_vtable


def test_empty_site_entry_gives_empty_presentation():
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, terminal_groupoid())
    pres = quotient_cat(x, terminal_groupoid(), Bitopology({}), BOUND)
    assert pres.objects == []
    assert any("no covering family declared" in n for n in pres.notes)
    assert pres.validate().ok


def test_seed_with_unrecognized_cover_is_rejected(site):
    tg = get_twogroup("discZ2")
    bz2 = get_groupoid("BZ2")
    pb = product_bundle(tg, bz2)
    doubled = CoveringFamily(bz2, [unit_functor_into(bz2)] * 2, "doubled")
    odd = make_bundle(tg, pb.total, bz2, pb.projection, doubled, BOUND,
                      "odd")
    x = trivial_action(tg, terminal_groupoid())
    pres = quotient_cat(x, bz2, site, BOUND, seeds=[odd])
    assert pres.objects == []
    assert any("rejected" in n for n in pres.notes)


def test_seed_over_wrong_base_raises(site):
    tg = get_twogroup("discZ2")
    pb = product_bundle(tg, get_groupoid("BZ2"))
    x = trivial_action(tg, terminal_groupoid())
    with pytest.raises(ShapeError):
        quotient_cat(x, terminal_groupoid(), site, BOUND, seeds=[pb])


def test_rich_presentation_counts(rich_pres):
    assert len(rich_pres.objects) == 2
    for key in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        assert len(rich_pres.one_cells[key]) == 2
    assert rich_pres.validate().ok


# ---------------------------------------------------------------------------
# objects, morphisms, 2-cells


def test_quotient_object_check_passes_on_enumerated(rich_pres):
    for o in rich_pres.objects:
        assert quotient_object_check(o).ok


def test_quotient_object_group_mismatch_raises(point_pres):
    other = trivial_action(get_twogroup("trivial"), terminal_groupoid())
    from twostacks.action import trivial_equivariant
    bad_alpha = trivial_equivariant(
        identity_functor(terminal_groupoid()), other, other)
    o = point_pres.objects[0]
    with pytest.raises(ShapeError):
        quotient_object_check(QuotientObject(o.bundle, bad_alpha))


def test_mutated_alpha_equivariance_is_rejected(rich_pres):
    o = rich_pres.objects[0]
    comps = dict(o.alpha.lam.components)
    key = sorted(comps)[0]
    bz2 = get_groupoid("BZ2")
    comps[key] = bz2.compose("c1", comps[key])
    from twostacks.action import EquivariantMap
    bad = EquivariantMap(
        o.alpha.source, o.alpha.target, o.alpha.f,
        NaturalIso(o.alpha.lam.source, o.alpha.lam.target, comps), "bad")
    report = quotient_object_check(QuotientObject(o.bundle, bad))
    assert not report.ok


def test_identity_morphism_validates(rich_pres):
    for i, o in enumerate(rich_pres.objects):
        ident = identity_quotient(o)
        assert check_quotient_morphism(o, o, ident).ok


def test_enumerated_morphisms_validate(rich_pres):
    for (i, j), cells in sorted(rich_pres.one_cells.items()):
        for m in cells:
            report = check_quotient_morphism(
                rich_pres.objects[i], rich_pres.objects[j], m)
            assert report.ok, str(report)


def test_identity_endomorphism_admits_two_witnesses(rich_pres):
    o = rich_pres.objects[0]
    ident = identity_quotient(o)
    betas = list(beta_candidates(o, o, ident.underlying))
    assert len(betas) == 2
    assert ident.beta in betas


def test_two_cell_condition_is_witness_relative(rich_pres):
    # The displayed 2-cell equality compares against the stored
    # witnesses: the identity cell connects a morphism to itself, but
    # not to the same underlying morphism re-equipped with the other
    # witness.
    o = rich_pres.objects[0]
    ident = identity_quotient(o)
    betas = list(beta_candidates(o, o, ident.underlying))
    other = [b for b in betas if b != ident.beta][0]
    renamed = QuotientMorphism(ident.underlying, other, "rewitnessed")
    cell = identity_quotient_2cell(ident)
    assert check_quotient_2cell(o, o, ident, ident, cell).ok
    report = check_quotient_2cell(o, o, ident, renamed, cell)
    assert not report.ok
    assert "quotient-2cell-beta" in report.rules()


def test_compose_quotient_unit_laws(rich_pres):
    o = rich_pres.objects[0]
    ident = identity_quotient(o)
    for m in rich_pres.one_cells[(0, 0)]:
        pre = compose_quotient(m, ident)
        post = compose_quotient(ident, m)
        assert pre.underlying.map.f == m.underlying.map.f
        assert post.underlying.map.f == m.underlying.map.f
        assert pre.beta == m.beta
        assert post.beta == m.beta


# ---------------------------------------------------------------------------
# restriction


def test_restriction_along_point_is_strict(bz2_pres, site):
    e = unit_functor_into(get_groupoid("BZ2"))
    pack = restrict_pack(e, bz2_pres, BOUND)
    assert pack.object_map[0].bundle.base == terminal_groupoid()
    report = validate_restriction(pack)
    assert report.ok, str(report)


def test_restriction_along_identity_on_rich_data(rich_pres):
    pack = restrict_pack(identity_functor(terminal_groupoid()),
                         rich_pres, BOUND)
    report = validate_restriction(pack)
    assert report.ok, str(report)


def test_restrict_along_convenience(site):
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, terminal_groupoid())
    e = unit_functor_into(get_groupoid("BZ2"))
    pack = restrict_along(e, x, site, BOUND)
    assert len(pack.object_map) == len(pack.source.objects)
    assert validate_restriction(pack).ok


def test_restriction_requires_matching_codomain(point_pres):
    e = unit_functor_into(get_groupoid("BZ2"))
    with pytest.raises(ShapeError):
        restrict_pack(e, point_pres, BOUND)


# ---------------------------------------------------------------------------
# whiskering


def test_whisker_identity_gives_identity_components(bz2_pres):
    e = unit_functor_into(get_groupoid("BZ2"))
    wd = whisker_on(identity_natiso(e), bz2_pres, BOUND)
    for comp in wd.components:
        f = comp.underlying.map.f
        assert f == identity_functor(f.domain)
    assert check_whisker(wd).ok


def test_whisker_automorphism_permutes_comma_cells(bz2_pres):
    bz2 = get_groupoid("BZ2")
    e = unit_functor_into(bz2)
    wd = whisker_on(NaturalIso(e, e, {"*": "c1"}, "s"), bz2_pres, BOUND)
    comp = wd.components[0]
    f = comp.underlying.map.f
    src_ic = wd.source_pack.pieces[0].ic
    for t in sorted(f.domain.objects):
        p, z, g = src_ic.unpack_obj[t]
        p2, z2, g2 = src_ic.unpack_obj[f.obj(t)]
        assert (p2, z2) == (p, z)
        assert g2 == bz2.compose("c1", g)
    assert check_whisker(wd).ok


def test_whisker_vertical_composition(bz2_pres):
    # Whiskering the composite of the automorphism with itself equals
    # whiskering the identity, componentwise.
    bz2 = get_groupoid("BZ2")
    e = unit_functor_into(bz2)
    s = NaturalIso(e, e, {"*": "c1"}, "s")
    from twostacks.groupoid import vcompose
    ss = vcompose(s, s)
    wd_ss = whisker_on(ss, bz2_pres, BOUND)
    wd_id = whisker_on(identity_natiso(e), bz2_pres, BOUND)
    for a, b in zip(wd_ss.components, wd_id.components):
        assert a.underlying.map.f == b.underlying.map.f


# ---------------------------------------------------------------------------
# unit and composition comparisons


def test_unitor_is_adjoint_equivalence(bz2_pres):
    iota = unitor_on(bz2_pres, BOUND)
    report = check_unitor(iota)
    assert report.ok, str(report)


def test_unitor_on_rich_data(rich_pres):
    iota = unitor_on(rich_pres, BOUND)
    report = check_unitor(iota)
    assert report.ok, str(report)


def test_compositor_point_then_identity(bz2_pres):
    e = unit_functor_into(get_groupoid("BZ2"))
    chi = compositor_on(e, identity_functor(terminal_groupoid()),
                        bz2_pres, BOUND)
    report = check_compositor(chi)
    assert report.ok, str(report)


def test_compositor_identity_then_point(bz2_pres):
    bz2 = get_groupoid("BZ2")
    chi = compositor_on(identity_functor(bz2), unit_functor_into(bz2),
                        bz2_pres, BOUND)
    report = check_compositor(chi)
    assert report.ok, str(report)


def test_compositor_requires_composable_pair(bz2_pres):
    e = unit_functor_into(get_groupoid("BZ2"))
    with pytest.raises(ShapeError):
        compositor_on(e, e, bz2_pres, BOUND)


def test_compositor_detects_wrong_comparison(bz2_pres):
    # Replace the canonical comparison with its composite against a
    # nontrivial gauge automorphism of the direct pullback: still a
    # valid morphism, no longer an adjoint-equivalence counit.
    import dataclasses
    from twostacks.bundle import bundle_hom_category
    from twostacks.quotient import find_beta
    bz2 = get_groupoid("BZ2")
    chi = compositor_on(identity_functor(bz2), unit_functor_into(bz2),
                        bz2_pres, BOUND)
    comp = chi.components[0]
    hc = bundle_hom_category(comp.direct.bundle, comp.direct.bundle, BOUND)
    twist = None
    for bm in hc.objects:
        if bm.map.f == identity_functor(bm.map.f.domain):
            continue
        beta = find_beta(comp.direct, comp.direct, bm)
        if beta is not None:
            twist = QuotientMorphism(bm, beta, "twist")
            break
    assert twist is not None
    mutated = dataclasses.replace(
        comp, forward=compose_quotient(twist, comp.forward))
    report = check_compositor(
        dataclasses.replace(chi, components=[mutated]))
    assert not report.ok
    assert "chi-counit-strict" in report.rules()


def test_omega_identity_holds(bz2_pres):
    bz2 = get_groupoid("BZ2")
    e = unit_functor_into(bz2)
    one = terminal_groupoid()
    for o in bz2_pres.objects:
        report = check_omega_identity(o, identity_functor(bz2), e,
                                      identity_functor(one), BOUND)
        assert report.ok, str(report)


def test_unit_collapse_along_point(bz2_pres):
    e = unit_functor_into(get_groupoid("BZ2"))
    for o in bz2_pres.objects:
        report = check_unit_collapse(o, e, BOUND)
        assert report.ok, str(report)


def test_unit_collapse_on_rich_data(rich_pres):
    for o in rich_pres.objects:
        report = check_unit_collapse(
            o, identity_functor(terminal_groupoid()), BOUND)
        assert report.ok, str(report)


# ---------------------------------------------------------------------------
# classifying comparison and assembled coherence


def test_classifying_matches_direct_enumeration(site):
    one = terminal_groupoid()
    for name in ["discZ2", "deloopZ2"]:
        pres = classifying_prestack(get_twogroup(name), one, site, BOUND)
        report = check_classifying_match(pres, BOUND)
        assert report.ok, str(report)


def test_classifying_bz2_matches(site):
    pres = classifying_prestack(get_twogroup("discZ2"),
                                get_groupoid("BZ2"), site, BOUND)
    report = check_classifying_match(pres, BOUND)
    assert report.ok, str(report)


def test_trihom_coherence_point_corpus(site):
    tg = get_twogroup("discZ2")
    x = trivial_action(tg, terminal_groupoid())
    one = terminal_groupoid()
    report = check_trihom_coherence(
        x, site, [one], [identity_functor(one)], [], BOUND)
    assert report.ok, str(report)
