import itertools

import pytest

from twostacks.groupoid import (
    FiniteGroupoid, ShapeError, validate_groupoid,
    terminal_groupoid, discrete_groupoid, interval_groupoid,
    GroupoidFunctor, identity_functor, constant_functor, bang_functor,
    compose_functors, NaturalIso, identity_natiso, vcompose, whisker,
    hcompose, all_functors, all_natural_isos, is_equivalence_functor,
)
from twostacks.corpus import (standard_groupoids, delooping_groupoid,
                              cyclic_group, klein_four_group,
                              symmetric_group_3)


@pytest.fixture(params=sorted(standard_groupoids()))
def corpus_groupoid(request):
    return standard_groupoids()[request.param]


def test_corpus_groupoids_are_valid(corpus_groupoid):
    assert validate_groupoid(corpus_groupoid).ok


def test_group_tables_are_groups():
    for tables in (cyclic_group(1), cyclic_group(4),
                   klein_four_group(), symmetric_group_3()):
        elems, mult, unit, inv = tables
        for a, b in itertools.product(elems, repeat=2):
            assert mult[(a, b)] in elems
        for a in elems:
            assert mult[(unit, a)] == a == mult[(a, unit)]
            assert mult[(inv[a], a)] == unit
        for a, b, c in itertools.product(elems, repeat=3):
            assert mult[(mult[(a, b)], c)] == mult[(a, mult[(b, c)])]


def test_validate_catches_broken_inverse():
    # BZ2 where s.s is declared to be s again: unit law and inverse law
    # both break, and the report names them.
    g = FiniteGroupoid(
        "bad", ["*"], {"e": ("*", "*"), "s": ("*", "*")}, {"*": "e"},
        {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s",
         ("s", "s"): "s"},
        {"e": "e", "s": "s"})
    report = validate_groupoid(g)
    assert not report.ok
    assert "inverse-law" in report.rules()


def test_validate_catches_missing_composite():
    g = interval_groupoid()
    del g.table[("a_inv", "a")]
    report = validate_groupoid(g)
    assert not report.ok
    assert "compose-missing" in report.rules()


def test_validate_catches_wrong_associativity():
    elems, mult, unit, inv = cyclic_group(3)
    mult = dict(mult)
    # break one entry while keeping endpoints legal
    mult[("c1", "c1")] = "c0"
    g = delooping_groupoid("BZ3-broken", (elems, mult, unit, inv))
    report = validate_groupoid(g)
    assert not report.ok


def test_components_and_paths():
    g = interval_groupoid()
    assert g.components() == [["0", "1"]]
    paths = g.rep_paths()
    assert paths["0"] == "id_0"
    # the path from 1 lands on the representative 0
    assert g.morphisms[paths["1"]] == ("1", "0")

    d = discrete_groupoid(3)
    assert d.components() == [["0"], ["1"], ["2"]]
    assert d.signature() == [1, 1, 1]

    bz2 = standard_groupoids()["BZ2"]
    assert bz2.signature() == [2]
    assert interval_groupoid().signature() == [1]


def test_compose_path_matches_table():
    g = standard_groupoids()["BZ3"]
    assert g.compose_path(["c1", "c1", "c1"]) == "c0"
    assert g.compose_path(["c2"]) == "c2"
    with pytest.raises(ShapeError):
        g.compose_path([])


def test_functor_validate_and_compose():
    bz2 = standard_groupoids()["BZ2"]
    f = identity_functor(bz2)
    assert f.validate().ok
    g = constant_functor(interval_groupoid(), bz2, "*")
    assert g.validate().ok
    h = compose_functors(f, g)
    assert h.validate().ok
    assert h.on_objects == g.on_objects
    assert bang_functor(bz2).validate().ok

    bad = GroupoidFunctor(bz2, bz2, {"*": "*"}, {"c0": "c0", "c1": "c0"})
    # c1.c1 = c0 must map to c0.c0 = c0: fine; but c1 -> c0 breaks nothing
    # composition-wise, so this one is actually a functor (the trivial one).
    assert bad.validate().ok
    worse = GroupoidFunctor(bz2, bz2, {"*": "*"}, {"c0": "c1", "c1": "c1"})
    assert not worse.validate().ok


def test_all_functors_counts():
    one = terminal_groupoid()
    bz2 = standard_groupoids()["BZ2"]
    bz3 = standard_groupoids()["BZ3"]
    d2 = discrete_groupoid(2)

    # group homomorphisms from Z/2: to Z/3 only trivial, to Z/2 two of them
    assert len(list(all_functors(bz2, bz3))) == 1
    assert len(list(all_functors(bz2, bz2))) == 2
    # Z/3 -> Z/3: three endomorphisms
    assert len(list(all_functors(bz3, bz3))) == 3
    # into a discrete groupoid: one per object
    assert len(list(all_functors(bz2, d2))) == 2
    # out of discrete 2: any pair of objects
    assert len(list(all_functors(d2, bz3))) == 1
    assert len(list(all_functors(d2, d2))) == 4
    assert len(list(all_functors(one, bz2))) == 1
    # interval -> BZ2: object images forced to *, morphism a can go to
    # either element
    assert len(list(all_functors(interval_groupoid(), bz2))) == 2

    for f in all_functors(bz3, bz3):
        assert f.validate().ok


def test_all_functors_cap():
    d3 = discrete_groupoid(3)
    assert len(list(all_functors(d3, d3, cap=5))) == 5


def test_all_natural_isos_counts():
    bz2 = standard_groupoids()["BZ2"]
    bz3 = standard_groupoids()["BZ3"]
    idf = identity_functor(bz2)
    # center of Z/2 is Z/2
    assert len(list(all_natural_isos(idf, idf))) == 2
    idf3 = identity_functor(bz3)
    assert len(list(all_natural_isos(idf3, idf3))) == 3
    for n in all_natural_isos(idf3, idf3):
        assert n.validate().ok

    s3 = delooping_groupoid("BS3", symmetric_group_3())
    ids3 = identity_functor(s3)
    # center of S3 is trivial
    assert len(list(all_natural_isos(ids3, ids3))) == 1

    # between distinct endomorphisms of BZ3: conjugation cannot fix them,
    # components exist only if images agree up to inner twist
    fs = list(all_functors(bz3, bz3))
    ident = next(f for f in fs if f.on_morphisms["c1"] == "c1")
    trivial = next(f for f in fs if f.on_morphisms["c1"] == "c0")
    assert list(all_natural_isos(ident, trivial)) == []


def test_natiso_algebra():
    bz3 = standard_groupoids()["BZ3"]
    idf = identity_functor(bz3)
    isos = list(all_natural_isos(idf, idf))
    for n in isos:
        assert vcompose(n, n.inverse()) == identity_natiso(idf)
        assert n.inverse().validate().ok
    n1 = next(n for n in isos if n.at("*") == "c1")
    n2 = next(n for n in isos if n.at("*") == "c2")
    assert vcompose(n1, n2).at("*") == "c0"
    # whiskering with the identity functor changes nothing
    assert whisker(n1, idf, "pre").components == n1.components
    assert whisker(n1, idf, "post").components == n1.components
    h = hcompose(n1, n2)
    assert h.validate().ok
    assert h.at("*") == "c0"


def test_interchange_law_on_bz3():
    bz3 = standard_groupoids()["BZ3"]
    idf = identity_functor(bz3)
    isos = list(all_natural_isos(idf, idf))
    for n1, n2, n3, n4 in itertools.product(isos, repeat=4):
        lhs = hcompose(vcompose(n1, n2), vcompose(n3, n4))
        rhs = vcompose(hcompose(n1, n3), hcompose(n2, n4))
        assert lhs.components == rhs.components


def test_naturality_violation_detected():
    bz2 = standard_groupoids()["BZ2"]
    d2 = discrete_groupoid(2)
    f = constant_functor(d2, bz2, "*")
    n = NaturalIso(f, f, {"0": "c0", "1": "c1"})
    # components have the right endpoints but c1 is not natural for id_1?
    # d2 has only identities, so naturality holds; this IS valid.
    assert n.validate().ok

    ival = interval_groupoid()
    g = constant_functor(ival, bz2, "*")
    bad = NaturalIso(g, g, {"0": "c0", "1": "c1"})
    report = bad.validate()
    assert not report.ok
    assert "naturality" in report.rules()


def test_is_equivalence_functor():
    bz2 = standard_groupoids()["BZ2"]
    ival = interval_groupoid()
    one = terminal_groupoid()

    assert is_equivalence_functor(identity_functor(bz2))
    # interval -> 1 collapses an equivalence
    assert is_equivalence_functor(bang_functor(ival))
    # 1 -> interval: essentially surjective (one component), fully faithful
    incl = GroupoidFunctor(one, ival, {"*": "0"}, {"id_*": "id_0"})
    assert incl.validate().ok
    assert is_equivalence_functor(incl)
    # 1 -> BZ2 is not full
    e = GroupoidFunctor(one, bz2, {"*": "*"}, {"id_*": "c0"})
    assert e.validate().ok
    assert not is_equivalence_functor(e)
    # BZ2 -> 1 is not faithful
    assert not is_equivalence_functor(bang_functor(bz2))
    # discrete-2 -> 1 not faithful? it is faithful but not essentially
    # injective; still an equivalence test: not full? hom(0,1) is empty in
    # the domain but the codomain hom(*,*) is a point, so not full.
    assert not is_equivalence_functor(bang_functor(discrete_groupoid(2)))


def test_structural_equality_ignores_name():
    a = discrete_groupoid(2, name="A")
    b = discrete_groupoid(2, name="B")
    assert a == b
    assert a != interval_groupoid()
