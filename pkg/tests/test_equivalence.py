import itertools

import pytest

from twostacks.groupoid import (terminal_groupoid, discrete_groupoid,
                                interval_groupoid, identity_functor,
                                bang_functor)
from twostacks.equivalence import (find_equivalence, adjointify,
                                   quasi_inverse_pack)
from twostacks.corpus import (standard_groupoids, delooping_groupoid,
                              cyclic_group, klein_four_group,
                              symmetric_group_3)


def test_terminal_vs_interval():
    res = find_equivalence(terminal_groupoid(), interval_groupoid())
    assert res.verdict == "equivalent"
    assert res.pack.validate().ok
    assert res.pack.forward.obj("*") == "0"


def test_terminal_vs_discrete_2_is_negative():
    res = find_equivalence(terminal_groupoid(), discrete_groupoid(2))
    assert res.verdict == "different"
    assert res.pack is None
    assert "invariant" in res.detail


def test_bz2_self_equivalence_is_identity():
    g = standard_groupoids()["BZ2"]
    res = find_equivalence(g, g)
    assert res.found
    assert res.pack.forward == identity_functor(g)
    assert res.pack.backward == identity_functor(g)


def test_same_signature_different_groups():
    bz4 = delooping_groupoid("BZ4", cyclic_group(4))
    bk4 = delooping_groupoid("BK4", klein_four_group())
    assert bz4.signature() == bk4.signature()
    res = find_equivalence(bz4, bk4)
    assert res.verdict == "different"
    assert "exhausted" in res.detail


def test_search_budget_gives_inconclusive():
    g = standard_groupoids()["BZ3"]
    res = find_equivalence(g, g, cap=0)
    assert res.verdict == "inconclusive"
    assert res.pack is None


def test_verdict_is_symmetric_on_corpus():
    pool = dict(standard_groupoids())
    pool["BS3"] = delooping_groupoid("BS3", symmetric_group_3())
    for (na, a), (nb, b) in itertools.combinations(pool.items(), 2):
        assert (find_equivalence(a, b).verdict ==
                find_equivalence(b, a).verdict), (na, nb)


def test_multi_component_matching():
    # 1 + BZ2 against BZ2 + 1: needs the non-identity component pairing
    import twostacks.limits as limits
    a = discrete_groupoid(2)
    b = discrete_groupoid(["u", "v"])
    assert find_equivalence(a, b).found
    # interval + point vs two points: distinguishable only after
    # collapsing the interval
    one = terminal_groupoid()
    res = find_equivalence(interval_groupoid(), one)
    assert res.found
    assert limits is not None


def test_adjointify_recovers_unique_counit():
    res = find_equivalence(terminal_groupoid(), interval_groupoid())
    pack = res.pack
    again = adjointify(pack.forward, pack.backward, pack.unit)
    assert again.counit == pack.counit
    assert again.validate().ok


def test_quasi_inverse_pack():
    pack = quasi_inverse_pack(bang_functor(interval_groupoid()))
    assert pack.validate().ok
    assert pack.forward.domain.name == "I"
