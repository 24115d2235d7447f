"""The desk-scale corpus: named small groupoids, groups, 2-groups, actions
and bundles used throughout the test-suite and the bundled documents.

Everything here is built once per call from raw tables; callers may
mutate the results freely (the mutation tests do).
"""

from .groupoid import (FiniteGroupoid, terminal_groupoid, discrete_groupoid,
                       interval_groupoid, one_object_groupoid)


# ---------------------------------------------------------------------------
# finite groups as (elements, mult, unit, inv) raw tables


def cyclic_group(n):
    elems = ["c%d" % i for i in range(n)]
    mult = {("c%d" % i, "c%d" % j): "c%d" % ((i + j) % n)
            for i in range(n) for j in range(n)}
    inv = {"c%d" % i: "c%d" % ((-i) % n) for i in range(n)}
    return elems, mult, "c0", inv


def klein_four_group():
    elems = ["e", "x", "y", "z"]
    idx = {e: i for i, e in enumerate(elems)}
    mult = {}
    for a in elems:
        for b in elems:
            if a == "e":
                mult[(a, b)] = b
            elif b == "e":
                mult[(a, b)] = a
            elif a == b:
                mult[(a, b)] = "e"
            else:
                mult[(a, b)] = next(c for c in "xyz"
                                    if c not in (a, b))
    inv = {e: e for e in elems}
    del idx
    return elems, mult, "e", inv


def symmetric_group_3():
    perms = {"e": (0, 1, 2), "r": (1, 2, 0), "rr": (2, 0, 1),
             "s": (1, 0, 2), "sr": (0, 2, 1), "srr": (2, 1, 0)}
    by_perm = {v: k for k, v in perms.items()}

    def mul(a, b):
        pa, pb = perms[a], perms[b]
        return by_perm[tuple(pa[pb[i]] for i in range(3))]

    elems = sorted(perms)
    mult = {(a, b): mul(a, b) for a in elems for b in elems}
    inv = {a: next(b for b in elems if mul(a, b) == "e") for a in elems}
    return elems, mult, "e", inv


def delooping_groupoid(name, group_tables):
    elems, mult, unit, inv = group_tables
    return one_object_groupoid(name, elems, mult, unit, inv)


# ---------------------------------------------------------------------------
# the standard small groupoids


def standard_groupoids():
    """Name -> groupoid for the fixed desk corpus."""
    return {
        "1": terminal_groupoid(),
        "discrete-2": discrete_groupoid(2),
        "discrete-3": discrete_groupoid(3),
        "BZ2": delooping_groupoid("BZ2", cyclic_group(2)),
        "BZ3": delooping_groupoid("BZ3", cyclic_group(3)),
        "I": interval_groupoid(),
    }


def get_groupoid(name):
    g = standard_groupoids().get(name)
    if g is None:
        raise KeyError("unknown corpus groupoid %r" % name)
    return g


# ---------------------------------------------------------------------------
# standard 2-groups


def zero_boundary_crossed_module():
    """H = Z/2 -> G = Z/2 with zero boundary and trivial action."""
    from .twogroup import CrossedModule
    g_el, g_mult, g_unit, g_inv = cyclic_group(2)
    fiber = (["h0", "h1"],
             {("h%d" % i, "h%d" % j): "h%d" % ((i + j) % 2)
              for i in range(2) for j in range(2)},
             "h0", {"h0": "h0", "h1": "h1"})
    boundary = {"h0": g_unit, "h1": g_unit}
    act = {(g, h): h for g in g_el for h in fiber[0]}
    return CrossedModule((g_el, g_mult, g_unit, g_inv), fiber,
                         boundary, act)


def standard_twogroups():
    from .twogroup import discrete_twogroup, delooping, from_crossed_module
    return {
        "trivial": discrete_twogroup(cyclic_group(1), "trivial"),
        "discZ2": discrete_twogroup(cyclic_group(2), "discZ2"),
        "discZ3": discrete_twogroup(cyclic_group(3), "discZ3"),
        "deloopZ2": delooping(cyclic_group(2), "deloopZ2"),
        "deloopZ3": delooping(cyclic_group(3), "deloopZ3"),
        "xmodZ2Z2": from_crossed_module(zero_boundary_crossed_module(),
                                        "xmodZ2Z2"),
    }


def get_twogroup(name):
    t = standard_twogroups().get(name)
    if t is None:
        raise KeyError("unknown corpus 2-group %r" % name)
    return t


# ---------------------------------------------------------------------------
# standard actions


def translation_action():
    """Discrete Z/2 acting on (a copy of) itself by left multiplication."""
    from .action import multiplication_action
    return multiplication_action(get_twogroup("discZ2"),
                                 terminal_groupoid(), "translation")


def swap_action_on_interval():
    """Discrete Z/2 acting on the interval groupoid by exchanging its two
    objects; strictly associative and unital."""
    from .groupoid import GroupoidFunctor
    from .limits import product, product_many
    from .action import Action, _strict_cells
    tg = get_twogroup("discZ2")
    ival = interval_groupoid()
    gs = product(tg.carrier, ival)
    trip = product_many([tg.carrier, tg.carrier, ival])
    flip_obj = {"0": "1", "1": "0"}
    flip_mor = {"id_0": "id_1", "id_1": "id_0", "a": "a_inv", "a_inv": "a"}
    on_obj, on_mor = {}, {}
    for o in gs.apex.objects:
        g, s = gs.unpack_obj[o]
        on_obj[o] = s if g == "c0" else flip_obj[s]
    for m in gs.apex.morphisms:
        u, w = gs.unpack_mor[m]
        on_mor[m] = w if tg.carrier.source(u) == "c0" else flip_mor[w]
    x = GroupoidFunctor(gs.apex, ival, on_obj, on_mor, "swap")
    a = Action(tg, ival, gs, trip, x, None, None, name="swap-I")
    a.mu, a.nu = _strict_cells(a)
    return a


def standard_actions():
    from .action import trivial_action, multiplication_action
    return {
        "triv-discZ2-1": trivial_action(get_twogroup("discZ2"),
                                        terminal_groupoid(),
                                        "triv-discZ2-1"),
        "triv-discZ2-BZ2": trivial_action(get_twogroup("discZ2"),
                                          get_groupoid("BZ2"),
                                          "triv-discZ2-BZ2"),
        "triv-deloopZ2-BZ2": trivial_action(get_twogroup("deloopZ2"),
                                            get_groupoid("BZ2"),
                                            "triv-deloopZ2-BZ2"),
        "translation": translation_action(),
        "mult-deloopZ2-1": multiplication_action(get_twogroup("deloopZ2"),
                                                 terminal_groupoid(),
                                                 "mult-deloopZ2-1"),
        "swap-I": swap_action_on_interval(),
    }


def get_action(name):
    a = standard_actions().get(name)
    if a is None:
        raise KeyError("unknown corpus action %r" % name)
    return a


# ---------------------------------------------------------------------------
# sites


def unit_functor_into(y, rep=None):
    """The point of ``y`` at a chosen object (lex-min by default)."""
    from .groupoid import GroupoidFunctor
    pt = terminal_groupoid()
    obj = rep if rep is not None else min(y.objects)
    return GroupoidFunctor(pt, y, {"*": obj}, {"id_*": y.id_of(obj)},
                           "pt(%s)" % obj)


def desk_site():
    """The site every stack-level check runs against: the identity cover
    on the point and the point cover of BZ2 (plus the always-present
    identity covers)."""
    from .site import Bitopology, CoveringFamily, identity_cover
    one = terminal_groupoid()
    bz2 = get_groupoid("BZ2")
    return Bitopology({
        "1": [identity_cover(one)],
        "BZ2": [CoveringFamily(bz2, [unit_functor_into(bz2)],
                               "point-cover(BZ2)")],
    })


# ---------------------------------------------------------------------------
# standard bundles


def product_bundle(tg, y, name=""):
    """The trivial bundle: the multiplication action on carrier x y
    projecting onto y, trivialized over the identity cover."""
    from .action import multiplication_action
    from .bundle import make_bundle, mult_projection
    from .site import identity_cover
    mult = multiplication_action(tg, y)
    proj = mult_projection(tg, y, mult)
    return make_bundle(tg, mult, y, proj, identity_cover(y),
                       name=name or "product(%s,%s)" % (tg.name, y.name))


def universal_z2_bundle():
    """The swap action on the interval projecting to BZ2: contractible
    total space over the one-object base, trivialized over the point
    cover."""
    from .groupoid import GroupoidFunctor, NaturalIso
    from .action import EquivariantMap, trivial_action, lambda_shape
    from .bundle import make_bundle
    from .site import CoveringFamily
    tg = get_twogroup("discZ2")
    total = swap_action_on_interval()
    bz2 = get_groupoid("BZ2")
    base = trivial_action(tg, bz2)
    pi = GroupoidFunctor(total.space, bz2, {"0": "*", "1": "*"},
                         {"id_0": "c0", "id_1": "c0",
                          "a": "c1", "a_inv": "c1"}, "pi")
    left, right = lambda_shape(total, base, pi)
    lam = NaturalIso(left, right,
                     {o: "c0" for o in left.domain.objects}, "pi-lam")
    proj = EquivariantMap(total, base, pi, lam, "pi")
    cover = CoveringFamily(bz2, [unit_functor_into(bz2)],
                           "point-cover(BZ2)")
    return make_bundle(tg, total, bz2, proj, cover, name="universal-Z2")


def standard_bundles():
    return {
        "trivial-1": product_bundle(get_twogroup("trivial"),
                                    terminal_groupoid(), "trivial-1"),
        "translation": product_bundle(get_twogroup("discZ2"),
                                      terminal_groupoid(), "translation"),
        "deloop-translation": product_bundle(get_twogroup("deloopZ2"),
                                             terminal_groupoid(),
                                             "deloop-translation"),
        "product-BZ2": product_bundle(get_twogroup("discZ2"),
                                      get_groupoid("BZ2"), "product-BZ2"),
        "universal-Z2": universal_z2_bundle(),
    }


def get_bundle(name):
    b = standard_bundles().get(name)
    if b is None:
        raise KeyError("unknown corpus bundle %r" % name)
    return b
