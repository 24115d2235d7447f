import pytest

from twostacks.groupoid import (ShapeError, identity_functor, bang_functor,
                                identity_natiso, terminal_groupoid)
from twostacks.action import (trivial_action, multiplication_action,
                              trivial_equivariant)
from twostacks.equivalence import find_equivalence
from twostacks.site import CoveringFamily, identity_cover
from twostacks.bundle import (equivariant_structures,
                              find_equivariant_equivalence, mult_projection,
                              check_local_triviality, make_bundle,
                              check_bundle, validate_trivialization,
                              pullback_bundle, bundle_hom_category,
                              BundleTwoCell, check_bundle_morphism,
                              check_bundle_2cell)
from twostacks.corpus import (standard_bundles, get_bundle, get_groupoid,
                              get_twogroup, get_action, unit_functor_into)


@pytest.fixture(params=sorted(standard_bundles()))
def corpus_bundle(request):
    return get_bundle(request.param)


def test_corpus_bundles_validate(corpus_bundle):
    report = check_bundle(corpus_bundle)
    assert report.ok, str(report)


def test_mult_projection_identity_cell():
    tg = get_twogroup("discZ2")
    bz2 = get_groupoid("BZ2")
    proj = mult_projection(tg, bz2)
    assert proj.f.codomain == bz2
    assert all(bz2.is_identity(m) for m in proj.lam.components.values())


# ---------------------------------------------------------------------------
# equivariant equivalence search


def test_translation_action_self_equivalence():
    a = get_action("translation")
    result = find_equivariant_equivalence(a, a)
    assert result.found
    w = result.witness
    assert w.pack.validate().ok
    assert w.forward.f == w.pack.forward
    assert w.backward.f == w.pack.backward


def test_swap_action_trivializes():
    # The swap action on the contractible interval is equivalent to the
    # trivial action on the interval: both present one free orbit.
    tg = get_twogroup("discZ2")
    swap = get_action("swap-I")
    result = find_equivariant_equivalence(swap,
                                          trivial_action(tg, swap.space))
    assert result.found


def test_signature_fast_negative():
    tg = get_twogroup("discZ2")
    one = terminal_groupoid()
    result = find_equivariant_equivalence(trivial_action(tg, one),
                                          multiplication_action(tg, one))
    assert result.verdict == "different"
    assert "separating invariant" in result.detail


def test_exhaustion_negative():
    # Trivial action on two points vs. the translation action: spaces are
    # isomorphic, but no equivariance cell exists on any equivalence.
    tg = get_twogroup("discZ2")
    d2 = get_groupoid("discrete-2")
    result = find_equivariant_equivalence(trivial_action(tg, d2),
                                          get_action("translation"))
    assert result.verdict == "different"
    assert "exhausted" in result.detail


def test_equivariant_search_budget():
    a = get_action("translation")
    result = find_equivariant_equivalence(a, a, cap=0)
    assert result.verdict == "inconclusive"


def test_search_rejects_mismatched_groups():
    one = terminal_groupoid()
    with pytest.raises(ShapeError):
        find_equivariant_equivalence(
            trivial_action(get_twogroup("discZ2"), one),
            trivial_action(get_twogroup("discZ3"), one))


def test_equivariant_structures_enumeration():
    a = get_action("translation")
    maps = list(equivariant_structures(a, a, identity_functor(a.space)))
    assert len(maps) == 1
    assert all(m.lam.validate().ok for m in maps)


# ---------------------------------------------------------------------------
# local triviality


def test_translation_has_two_trivializations():
    b = get_bundle("translation")
    searches = check_local_triviality(b.projection, b.cover)
    assert [s.verdict for s in searches] == ["found"]
    assert len(searches[0].witnesses) == 2
    functors = {tuple(sorted(w.forward.f.on_objects.items()))
                for w in searches[0].witnesses}
    assert len(functors) == 2


def test_universal_bundle_trivializes_over_the_point():
    b = get_bundle("universal-Z2")
    searches = check_local_triviality(b.projection, b.cover)
    assert searches[0].verdict == "found"
    assert len(searches[0].witnesses) == 2
    w = searches[0].witnesses[0]
    # the induced iso-comma action lives on two contractible components
    assert w.induced.action.space.signature() == [1, 1]
    assert w.mult.space.signature() == [1, 1]


def test_non_trivializable_projection():
    # Trivially acted two points over the point: the fibre is not a
    # torsor, so the identity cover admits no trivialization.
    tg = get_twogroup("discZ2")
    d2 = get_groupoid("discrete-2")
    one = terminal_groupoid()
    total = trivial_action(tg, d2)
    proj = trivial_equivariant(bang_functor(d2), total,
                               trivial_action(tg, one))
    searches = check_local_triviality(proj, identity_cover(one))
    assert searches[0].verdict == "none"
    assert "exhausted" in searches[0].detail
    with pytest.raises(ShapeError):
        make_bundle(tg, total, one, proj, identity_cover(one))


def test_local_triviality_cover_mismatch():
    b = get_bundle("translation")
    with pytest.raises(ShapeError):
        check_local_triviality(b.projection,
                               identity_cover(get_groupoid("BZ2")))


def test_trivialization_budget():
    b = get_bundle("translation")
    searches = check_local_triviality(b.projection, b.cover, cap=0)
    assert searches[0].verdict == "inconclusive"


# ---------------------------------------------------------------------------
# bundle validation


def test_make_bundle_shape_checks():
    tg = get_twogroup("discZ2")
    one = terminal_groupoid()
    mult = multiplication_action(tg, one)
    proj = mult_projection(tg, one, mult)
    with pytest.raises(ShapeError):
        make_bundle(tg, mult, one, proj, identity_cover(get_groupoid("BZ2")))
    with pytest.raises(ShapeError):
        make_bundle(get_twogroup("discZ3"), mult, one, proj,
                    identity_cover(one))


def test_check_bundle_rejects_mutated_equivariance_cell():
    b = get_bundle("product-BZ2")
    lam = b.trivializations[0].forward.lam
    mult_space = b.trivializations[0].mult.space
    key = sorted(lam.components)[0]
    sample = lam.components[key]
    others = [m for m in mult_space.hom(mult_space.source(sample),
                                        mult_space.target(sample))
              if m != sample]
    lam.components[key] = others[0]
    report = check_bundle(b)
    assert not report.ok


def test_check_bundle_rejects_mutated_projection_cell():
    b = get_bundle("product-BZ2")
    key = sorted(b.projection.lam.components)[0]
    b.projection.lam.components[key] = "c1"
    report = check_bundle(b)
    assert not report.ok


def test_check_bundle_mutated_functor_table_raises():
    # rewriting the projection functor detaches the stored equivariance
    # cell from its endpoints, which is a shape-level rejection
    b = get_bundle("universal-Z2")
    b.projection.f.on_morphisms["a"] = "c0"
    with pytest.raises(ShapeError):
        check_bundle(b)


def test_check_bundle_rejects_foreign_trivialization():
    b = get_bundle("translation")
    other = get_bundle("trivial-1")
    b.trivializations[0] = other.trivializations[0]
    report = check_bundle(b)
    assert not report.ok
    assert "triv-induced" in report.rules()


def test_check_bundle_rejects_wrong_generator():
    b = get_bundle("universal-Z2")
    bz2 = get_groupoid("BZ2")
    report = validate_trivialization(b.projection, identity_functor(bz2),
                                     b.trivializations[0])
    assert not report.ok
    assert "triv-generator" in report.rules()


def test_check_bundle_rejects_missing_trivialization():
    b = get_bundle("translation")
    b.trivializations = []
    report = check_bundle(b)
    assert not report.ok
    assert "bundle-trivializations" in report.rules()


# ---------------------------------------------------------------------------
# pullback


def test_pullback_universal_along_point():
    b = get_bundle("universal-Z2")
    pb = pullback_bundle(b, unit_functor_into(get_groupoid("BZ2")))
    assert pb.base == terminal_groupoid()
    assert check_bundle(pb).ok
    # the fibre of the universal bundle is the group itself
    assert pb.total.space.signature() == [1, 1]
    assert find_equivalence(pb.total.space,
                            get_groupoid("discrete-2")).found


def test_pullback_along_identity_is_equivalent(corpus_bundle):
    pb = pullback_bundle(corpus_bundle, identity_functor(corpus_bundle.base))
    assert check_bundle(pb).ok
    assert find_equivalence(pb.total.space,
                            corpus_bundle.total.space).found


def test_pullback_product_bundle_stays_trivial():
    b = get_bundle("translation")
    bz2 = get_groupoid("BZ2")
    pb = pullback_bundle(b, bang_functor(bz2))
    assert pb.base == bz2
    assert check_bundle(pb).ok
    assert find_equivalence(pb.total.space,
                            get_bundle("product-BZ2").total.space).found


def test_pullback_shape_error():
    b = get_bundle("translation")
    with pytest.raises(ShapeError):
        pullback_bundle(b, identity_functor(get_groupoid("BZ2")))


# ---------------------------------------------------------------------------
# hom categories


def test_translation_hom_category():
    b = get_bundle("translation")
    hc = bundle_hom_category(b, b)
    assert not hc.bounded
    assert len(hc.objects) == 2
    for i in range(2):
        for j in range(2):
            assert len(hc.cells_between(i, j)) == (1 if i == j else 0)
    assert hc.validate().ok


def test_trivial_bundle_hom_category():
    b = get_bundle("trivial-1")
    hc = bundle_hom_category(b, b)
    assert len(hc.objects) == 1
    assert len(hc.cells_between(0, 0)) == 1
    assert hc.validate().ok


def test_product_bz2_hom_category_blocks():
    # Gauge transformations of the trivial Z/2-bundle over BZ2: two
    # connected blocks (one per constant map BZ2 -> Z/2), each codiscrete.
    b = get_bundle("product-BZ2")
    hc = bundle_hom_category(b, b)
    assert not hc.bounded
    assert len(hc.objects) == 8
    assert hc.validate().ok
    for i in range(8):
        assert len(hc.cells_between(i, i)) == 1
        reachable = [j for j in range(8) if hc.cells_between(i, j)]
        assert len(reachable) == 4
        for j in reachable:
            assert len(hc.cells_between(i, j)) == 1


def test_universal_bundle_hom_category_blocks():
    b = get_bundle("universal-Z2")
    hc = bundle_hom_category(b, b)
    assert not hc.bounded
    assert len(hc.objects) == 8
    assert hc.validate().ok
    sizes = sorted(len([j for j in range(8) if hc.cells_between(i, j)])
                   for i in range(8))
    assert sizes == [4] * 8


def test_hom_category_rejects_different_bases():
    with pytest.raises(ShapeError):
        bundle_hom_category(get_bundle("translation"),
                            get_bundle("product-BZ2"))
    with pytest.raises(ShapeError):
        bundle_hom_category(get_bundle("translation"),
                            get_bundle("trivial-1"))


def test_bundle_morphism_checkers():
    b = get_bundle("translation")
    hc = bundle_hom_category(b, b)
    bm = hc.objects[0]
    assert check_bundle_morphism(b, b, bm).ok
    cell = hc.cells_between(0, 0)[0]
    assert check_bundle_2cell(b, b, cell).ok


def test_bundle_2cell_compatibility_violation():
    b = get_bundle("product-BZ2")
    hc = bundle_hom_category(b, b)
    good = next(c for (i, j), cs in sorted(hc.cells.items())
                for c in cs if i != j)
    i = hc.objects.index(good.source)
    partner = next(j for j in range(len(hc.objects))
                   if hc.cells_between(i, j)
                   and hc.objects[j].map.lam != good.target.map.lam)
    other = hc.cells_between(i, partner)[0]
    # graft the wrong target morphism onto an otherwise valid 2-cell
    broken = BundleTwoCell(good.source, good.target, other.cell)
    with pytest.raises(ShapeError):
        check_bundle_2cell(b, b, broken)


def test_bundle_2cell_projection_triangle_violation():
    b = get_bundle("product-BZ2")
    hc = bundle_hom_category(b, b)
    good = next(c for (i, j), cs in sorted(hc.cells.items())
                for c in cs if i != j)
    # same underlying map, different projection comparison
    twin = next(o for o in hc.objects
                if o.map.f == good.target.map.f
                and o.map.lam == good.target.map.lam
                and o.gamma != good.target.gamma)
    broken = BundleTwoCell(good.source, twin, good.cell)
    report = check_bundle_2cell(b, b, broken)
    assert not report.ok
    assert "bundle-2cell-over" in report.rules()
