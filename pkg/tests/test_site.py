import pytest

from twostacks.groupoid import (terminal_groupoid, discrete_groupoid,
                                identity_functor, bang_functor,
                                compose_functors, GroupoidFunctor,
                                NaturalIso, ShapeError,
                                is_equivalence_functor, FiniteGroupoid)
from twostacks.limits import iso_comma, mediate_iso_comma
from twostacks.site import (CoveringFamily, Bitopology, identity_cover,
                            ess_surjective_cover, composite_cover,
                            sieve_membership, pullback_family,
                            check_subcanonical_bounded, POLICY_ESS_SURJ)
from twostacks.corpus import get_groupoid, desk_site, unit_functor_into


def empty_groupoid():
    return FiniteGroupoid("0", [], {}, {}, {}, {})


def point_cover():
    bz2 = get_groupoid("BZ2")
    return CoveringFamily(bz2, [unit_functor_into(bz2)], "point-cover(BZ2)")


def test_covering_family_validation():
    bz2 = get_groupoid("BZ2")
    assert identity_cover(bz2).validate().ok
    assert point_cover().validate().ok
    stray = CoveringFamily(bz2, [identity_functor(terminal_groupoid())],
                           "stray")
    report = stray.validate()
    assert not report.ok
    assert "generator-codomain" in report.rules()


def test_ess_surjective_cover_shapes():
    one = ess_surjective_cover(terminal_groupoid())
    assert len(one.generators) == 1
    assert one.generators[0].domain == terminal_groupoid()

    bz2 = ess_surjective_cover(get_groupoid("BZ2"))
    gen = bz2.generators[0]
    assert gen.domain == discrete_groupoid(["*"])
    assert gen.on_objects == {"*": "*"}
    assert gen.mor(gen.domain.id_of("*")) == "c0"

    d2 = get_groupoid("discrete-2")
    two = ess_surjective_cover(d2)
    assert two.generators[0].domain == d2
    assert two.generators[0].on_objects == {"0": "0", "1": "1"}


def test_sieve_membership_of_generator():
    fam = point_cover()
    verdict = sieve_membership(fam, fam.generators[0])
    assert verdict.verdict == "member"
    assert verdict.factor is not None


def test_identity_family_contains_everything():
    bz2 = get_groupoid("BZ2")
    fam = identity_cover(bz2)
    for candidate in (identity_functor(bz2), unit_functor_into(bz2),
                      GroupoidFunctor(bz2, bz2, {"*": "*"},
                                      {"c0": "c0", "c1": "c0"}, "triv")):
        assert sieve_membership(fam, candidate).verdict == "member"


def test_identity_not_in_point_sieve():
    bz2 = get_groupoid("BZ2")
    verdict = sieve_membership(point_cover(), identity_functor(bz2))
    assert verdict.verdict == "nonmember"
    assert "automorphism-order" in verdict.detail


def test_membership_stable_under_precomposition():
    fam = point_cover()
    e = fam.generators[0]
    squashed = compose_functors(e, bang_functor(discrete_groupoid(2)))
    assert sieve_membership(fam, squashed).verdict == "member"


def test_membership_cap_gives_inconclusive():
    fam = point_cover()
    assert sieve_membership(fam, fam.generators[0],
                            cap=0).verdict == "inconclusive"


def test_membership_shape_error():
    with pytest.raises(ShapeError):
        sieve_membership(point_cover(), identity_functor(terminal_groupoid()))


def test_pullback_of_identity_family_is_equivalence():
    bz2 = get_groupoid("BZ2")
    e = unit_functor_into(bz2)
    for f in (e, identity_functor(bz2)):
        pulled = pullback_family(identity_cover(bz2), f)
        assert pulled.target == f.domain
        assert len(pulled.generators) == 1
        assert is_equivalence_functor(pulled.generators[0])


def test_pullback_point_cover_along_point():
    fam = point_cover()
    e = fam.generators[0]
    pulled = pullback_family(fam, e)
    gen = pulled.generators[0]
    # the double point cover: discrete two-object overlap onto the point
    assert len(gen.domain.objects) == 2
    assert gen.domain.signature() == get_groupoid("discrete-2").signature()
    assert gen.codomain == terminal_groupoid()


def test_pullback_along_identity_same_family_up_to_iso():
    fam = point_cover()
    pulled = pullback_family(fam, identity_functor(fam.target))
    assert sieve_membership(pulled, fam.generators[0]).verdict == "member"
    assert sieve_membership(fam, pulled.generators[0]).verdict == "member"


def test_pullback_codomain_mismatch():
    with pytest.raises(ShapeError):
        pullback_family(point_cover(), identity_functor(terminal_groupoid()))


def test_pullback_composition_comparison():
    # (f.g)* of the point cover versus g*(f)* of it, compared through the
    # canonical mediator between the two iso-comma domains
    bz2 = get_groupoid("BZ2")
    fam = point_cover()
    s = fam.generators[0]
    f = identity_functor(bz2)
    g = unit_functor_into(bz2)
    fg = compose_functors(f, g)

    direct = pullback_family(fam, fg)
    staged = pullback_family(pullback_family(fam, f), g)

    ic1 = iso_comma(s, f)
    ic2 = iso_comma(ic1.proj_right, g)
    assert staged.generators[0] == ic2.proj_right
    ic_fg = iso_comma(s, fg)
    assert direct.generators[0] == ic_fg.proj_right

    u_leg = compose_functors(ic1.proj_left, ic2.proj_left)
    v_leg = ic2.proj_right
    comps = {}
    for o in ic2.apex.objects:
        o1, t, delta = ic2.unpack_obj[o]
        _, _, gamma = ic1.unpack_obj[o1]
        comps[o] = bz2.compose(f.mor(delta), gamma)
    theta = NaturalIso(compose_functors(s, u_leg),
                       compose_functors(fg, v_leg), comps)
    assert theta.validate().ok
    med = mediate_iso_comma(ic_fg, u_leg, v_leg, theta)
    assert is_equivalence_functor(med)
    assert compose_functors(ic_fg.proj_right, med) == staged.generators[0]


def test_composite_cover():
    bz2 = get_groupoid("BZ2")
    fam = point_cover()
    refined = composite_cover(fam, [identity_cover(fam.generators[0].domain)])
    assert refined.target == bz2
    assert refined.generators == fam.generators
    with pytest.raises(ShapeError):
        composite_cover(fam, [identity_cover(bz2)])


def test_desk_site_structure():
    site = desk_site()
    assert site.validate().ok
    bz2 = get_groupoid("BZ2")
    fams = site.families_for(bz2)
    assert any(f.label.startswith("point-cover") for f in fams)
    assert site.covers(bz2, point_cover())
    assert site.covers(bz2, identity_cover(bz2))
    assert not site.covers(bz2, CoveringFamily(
        bz2, [unit_functor_into(bz2), unit_functor_into(bz2)], "double"))


def test_policy_grants_ess_surjective_covers():
    site = Bitopology({}, POLICY_ESS_SURJ)
    d2 = get_groupoid("discrete-2")
    assert site.covers(d2, ess_surjective_cover(d2))


@pytest.mark.parametrize("yname", ["1", "BZ2", "discrete-2"])
def test_identity_family_subcanonical(yname):
    y = get_groupoid(yname)
    probes = [terminal_groupoid(), get_groupoid("BZ2"),
              get_groupoid("discrete-2")]
    report = check_subcanonical_bounded(Bitopology(), y,
                                        identity_cover(y), probes)
    assert report.ok


def test_point_cover_subcanonical():
    site = desk_site()
    bz2 = get_groupoid("BZ2")
    probes = [terminal_groupoid(), bz2, get_groupoid("discrete-2")]
    report = check_subcanonical_bounded(site, bz2, point_cover(), probes)
    assert report.ok


def test_empty_cover_fails_subcanonicity():
    bz2 = get_groupoid("BZ2")
    nothing = empty_groupoid()
    fam = CoveringFamily(bz2, [GroupoidFunctor(nothing, bz2, {}, {},
                                               "empty")], "empty-cover")
    site = Bitopology({"BZ2": [fam]})
    report = check_subcanonical_bounded(site, bz2, fam,
                                        [get_groupoid("discrete-2")])
    assert not report.ok
    assert "subcanonical-unique" in report.rules()


def test_subcanonicity_cap():
    bz2 = get_groupoid("BZ2")
    report = check_subcanonical_bounded(Bitopology(), bz2,
                                        identity_cover(bz2),
                                        [bz2], cap=1)
    assert "search-cap" in report.rules()
