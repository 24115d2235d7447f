"""Actions of a 2-group on a finite groupoid, equivariant maps and
2-cells, the induced action on an iso-comma, and instance-level
pseudomonad checks.

An action carries its structure functor x: carrier x space -> space and
two coherence cells: mu (composition comparison, over carrier^2 x space)
and nu (unit comparison, over the space).  The two action equalities are
decided by evaluating both sides at every object tuple.
"""

from dataclasses import dataclass

from .groupoid import (FiniteGroupoid, GroupoidFunctor, NaturalIso,
                       ValidationReport, ShapeError, InternalError,
                       IncompatibleCells, identity_functor, bang_functor,
                       compose_functors, identity_natiso)
from .limits import (ProductApex, product, product_many, mediate_product,
                     IsoCommaApex, iso_comma, mediate_iso_comma,
                     mediate_iso_comma_2cell)
from .twogroup import TwoGroup


@dataclass
class Action:
    group: TwoGroup
    space: FiniteGroupoid
    gs: ProductApex       # carrier x space
    trip: ProductApex     # carrier x carrier x space
    x: GroupoidFunctor    # gs.apex -> space
    mu: NaturalIso        # x(id x x) => x(m x id), over trip.apex
    nu: NaturalIso        # x(e x id) => id, over space
    space_product: ProductApex | None = None
    name: str = ""

    def xobj(self, g, s):
        return self.x.obj(self.gs.pack_obj[(g, s)])

    def xmor(self, u, v):
        return self.x.mor(self.gs.pack_mor[(u, v)])

    def mu_at(self, g, h, s):
        return self.mu.at(self.trip.pack_obj[(g, h, s)])

    def nu_at(self, s):
        return self.nu.at(s)


def left_assoc_functor(a):
    """x(id x x): carrier^2 x space -> space, acting g.(h.s)."""
    pr1, pr2, pr3 = a.trip.projections
    inner = compose_functors(a.x, mediate_product(a.gs, [pr2, pr3]))
    return compose_functors(a.x, mediate_product(a.gs, [pr1, inner]))


def right_assoc_functor(a):
    """x(m x id): carrier^2 x space -> space, acting (gh).s."""
    pr1, pr2, pr3 = a.trip.projections
    mm = compose_functors(a.group.m,
                          mediate_product(a.group.pair, [pr1, pr2]))
    return compose_functors(a.x, mediate_product(a.gs, [mm, pr3]))


def unit_part_functor(a):
    """x(e x id): space -> space, acting e.s."""
    e_bang = compose_functors(a.group.e, bang_functor(a.space))
    return compose_functors(
        a.x, mediate_product(a.gs, [e_bang, identity_functor(a.space)]))


def _tables_equal(f, g):
    return (f.on_objects == g.on_objects
            and f.on_morphisms == g.on_morphisms)


def check_action(a):
    """Validate the action cells and evaluate equalities (action1) at
    every object of carrier^3 x space and (action2) at every object of
    carrier x space."""
    la, ra = left_assoc_functor(a), right_assoc_functor(a)
    up = unit_part_functor(a)
    if not (_tables_equal(a.mu.source, la) and _tables_equal(a.mu.target,
                                                             ra)):
        raise ShapeError("mu does not fill the associativity square")
    if not (_tables_equal(a.nu.source, up)
            and _tables_equal(a.nu.target, identity_functor(a.space))):
        raise ShapeError("nu does not fill the unit triangle")
    report = ValidationReport("action %s" % (a.name or "?"))
    report.extend(a.x.validate())
    report.extend(a.mu.validate())
    report.extend(a.nu.validate())
    if not report.ok:
        return report
    tg = a.group
    c, s_gpd = tg.carrier, a.space
    e_obj = tg.unit_obj
    for g in c.objects:
        for h in c.objects:
            for k in c.objects:
                hk = tg.mobj(h, k)
                gh = tg.mobj(g, h)
                for s in s_gpd.objects:
                    lhs = s_gpd.compose(
                        a.xmor(tg.alpha_at(g, h, k), s_gpd.id_of(s)),
                        s_gpd.compose(
                            a.mu_at(g, hk, s),
                            a.xmor(c.id_of(g), a.mu_at(h, k, s))))
                    rhs = s_gpd.compose(a.mu_at(gh, k, s),
                                        a.mu_at(g, h, a.xobj(k, s)))
                    if lhs != rhs:
                        report.add("action1", (g, h, k, s))
    for g in c.objects:
        for s in s_gpd.objects:
            lhs = s_gpd.compose(a.xmor(tg.alpha_e.at(g), s_gpd.id_of(s)),
                                a.mu_at(g, e_obj, s))
            rhs = a.xmor(c.id_of(g), a.nu_at(s))
            if lhs != rhs:
                report.add("action2", (g, s))
    return report


def _strict_cells(a_partial):
    """Identity mu/nu for an action whose associativity and unit squares
    commute on the nose."""
    la = left_assoc_functor(a_partial)
    ra = right_assoc_functor(a_partial)
    up = unit_part_functor(a_partial)
    ids = identity_functor(a_partial.space)
    if not (_tables_equal(la, ra) and _tables_equal(up, ids)):
        raise InternalError("action structure is not strict")
    sp = a_partial.space
    mu = NaturalIso(la, ra, {o: sp.id_of(la.obj(o))
                             for o in la.domain.objects}, "mu")
    nu = NaturalIso(up, ids, {o: sp.id_of(o) for o in sp.objects}, "nu")
    return mu, nu


def trivial_action(tg, space, name=""):
    """The second projection as action; both cells identities."""
    gs = product(tg.carrier, space)
    trip = product_many([tg.carrier, tg.carrier, space])
    a = Action(tg, space, gs, trip, gs.proj_2, None, None,
               name=name or "triv(%s)" % space.name)
    a.mu, a.nu = _strict_cells(a)
    return a


def multiplication_action(tg, x_gpd, name=""):
    """The 2-group acting on carrier x X by multiplication on the left
    factor; mu comes from the associator, nu from the left unitor."""
    sp = product(tg.carrier, x_gpd)
    space = sp.apex
    gs = product(tg.carrier, space)
    trip = product_many([tg.carrier, tg.carrier, space])
    on_obj, on_mor = {}, {}
    for o in gs.apex.objects:
        g, p = gs.unpack_obj[o]
        h, s = sp.unpack_obj[p]
        on_obj[o] = sp.pack_obj[(tg.mobj(g, h), s)]
    for m in gs.apex.morphisms:
        u, w = gs.unpack_mor[m]
        v, t = sp.unpack_mor[w]
        on_mor[m] = sp.pack_mor[(tg.mmor(u, v), t)]
    x = GroupoidFunctor(gs.apex, space, on_obj, on_mor, "mult")
    a = Action(tg, space, gs, trip, x, None, None, space_product=sp,
               name=name or "mult(%s)" % x_gpd.name)
    la, ra = left_assoc_functor(a), right_assoc_functor(a)
    mu_comps = {}
    for o in trip.apex.objects:
        g, h, p = trip.unpack_obj[o]
        k, s = sp.unpack_obj[p]
        mu_comps[o] = sp.pack_mor[(tg.alpha_at(g, h, k), x_gpd.id_of(s))]
    a.mu = NaturalIso(la, ra, mu_comps, "mu")
    up = unit_part_functor(a)
    nu_comps = {}
    for p in space.objects:
        k, s = sp.unpack_obj[p]
        nu_comps[p] = sp.pack_mor[(tg.lambda_m.at(k), x_gpd.id_of(s))]
    a.nu = NaturalIso(up, identity_functor(space), nu_comps, "nu")
    for cell in (a.mu, a.nu):
        rep = cell.validate()
        if not rep.ok:
            raise InternalError("multiplication action cell invalid:\n%s"
                                % rep)
    return a


# ---------------------------------------------------------------------------
# equivariant maps and 2-cells


def lambda_shape(source, target, f):
    """The two functors an equivariance cell for f connects:
    y(id x f) and f.x, both over source.gs.apex."""
    pr1, pr2 = source.gs.projections
    left = compose_functors(
        target.x, mediate_product(target.gs,
                                  [pr1, compose_functors(f, pr2)]))
    right = compose_functors(f, source.x)
    return left, right


@dataclass
class EquivariantMap:
    source: Action
    target: Action
    f: GroupoidFunctor
    lam: NaturalIso  # y(id x f) => f.x over source.gs.apex
    name: str = ""

    def lam_at(self, g, p):
        return self.lam.at(self.source.gs.pack_obj[(g, p)])


def identity_equivariant(a):
    left, right = lambda_shape(a, a, identity_functor(a.space))
    lam = NaturalIso(left, right,
                     {o: a.space.id_of(left.obj(o))
                      for o in left.domain.objects}, "id-lam")
    return EquivariantMap(a, a, identity_functor(a.space), lam, "id")


def trivial_equivariant(f, source, target, name=""):
    """Any functor between trivially-acted spaces, with the canonical
    identity equivariance cell."""
    left, right = lambda_shape(source, target, f)
    if not _tables_equal(left, right):
        raise ShapeError("actions are not trivial along f")
    lam = NaturalIso(left, right,
                     {o: target.space.id_of(left.obj(o))
                      for o in left.domain.objects}, "triv-lam")
    return EquivariantMap(source, target, f, lam, name or f.name)


def check_equivariant_map(em):
    """The two displayed equalities of the equivariant-morphism
    definition, evaluated at every object tuple."""
    if em.source.group.carrier != em.target.group.carrier or \
            not _tables_equal(em.source.group.m, em.target.group.m):
        raise ShapeError("equivariant map endpoints have different groups")
    left, right = lambda_shape(em.source, em.target, em.f)
    if not (_tables_equal(em.lam.source, left)
            and _tables_equal(em.lam.target, right)):
        raise ShapeError("lambda cell has the wrong endpoints")
    report = ValidationReport("equivariant map %s" % (em.name or "?"))
    report.extend(em.f.validate())
    report.extend(em.lam.validate())
    if not report.ok:
        return report
    tg = em.source.group
    c = tg.carrier
    src, tgt = em.source, em.target
    q = tgt.space
    for g in c.objects:
        for h in c.objects:
            gh = tg.mobj(g, h)
            for p in src.space.objects:
                lhs = q.compose(q.inv(em.lam_at(gh, p)),
                                em.f.mor(src.mu_at(g, h, p)))
                rhs = q.compose(
                    tgt.mu_at(g, h, em.f.obj(p)),
                    q.compose(
                        tgt.xmor(c.id_of(g), q.inv(em.lam_at(h, p))),
                        q.inv(em.lam_at(g, src.xobj(h, p)))))
                if lhs != rhs:
                    report.add("equiv-axiom-A", (g, h, p))
    e_obj = tg.unit_obj
    for p in src.space.objects:
        lhs = q.compose(em.f.mor(src.nu_at(p)), em.lam_at(e_obj, p))
        rhs = tgt.nu_at(em.f.obj(p))
        if lhs != rhs:
            report.add("equiv-axiom-B", (p,))
    return report


def compose_equivariant(outer, inner, name=""):
    """Composite equivariant map with the standard pasted lambda."""
    if inner.target != outer.source:
        raise ShapeError("equivariant maps are not composable")
    f = compose_functors(outer.f, inner.f)
    left, right = lambda_shape(inner.source, outer.target, f)
    q = outer.target.space
    comps = {}
    for o in inner.source.gs.apex.objects:
        k, p = inner.source.gs.unpack_obj[o]
        comps[o] = q.compose(outer.f.mor(inner.lam_at(k, p)),
                             outer.lam_at(k, inner.f.obj(p)))
    lam = NaturalIso(left, right, comps, "pasted-lam")
    return EquivariantMap(inner.source, outer.target, f, lam,
                          name or "%s.%s" % (outer.name or "?",
                                             inner.name or "?"))


@dataclass
class EquivariantTwoCell:
    source_map: EquivariantMap
    target_map: EquivariantMap
    gamma: NaturalIso
    name: str = ""


def check_equivariant_2cell(cell):
    """The single displayed compatibility between gamma and the two
    lambda cells, at every object of carrier x space."""
    f_map, g_map = cell.source_map, cell.target_map
    if f_map.source != g_map.source or f_map.target != g_map.target:
        raise ShapeError("2-cell endpoints are not parallel")
    if cell.gamma.source != f_map.f or cell.gamma.target != g_map.f:
        raise ShapeError("gamma does not run between the underlying "
                         "functors")
    report = ValidationReport("equivariant 2-cell %s" % (cell.name or "?"))
    report.extend(cell.gamma.validate())
    if not report.ok:
        return report
    src, tgt = f_map.source, f_map.target
    c = src.group.carrier
    q = tgt.space
    for k in c.objects:
        for p in src.space.objects:
            lhs = q.compose(g_map.lam_at(k, p),
                            tgt.xmor(c.id_of(k), cell.gamma.at(p)))
            rhs = q.compose(cell.gamma.at(src.xobj(k, p)),
                            f_map.lam_at(k, p))
            if lhs != rhs:
                report.add("equiv-2cell", (k, p))
    return report


# ---------------------------------------------------------------------------
# the induced action on an iso-comma


@dataclass
class InducedIsoCommaAction:
    action: Action
    ic: IsoCommaApex
    left: EquivariantMap   # projection to the first foot's action
    right: EquivariantMap  # projection to the second foot's action
    theta: NaturalIso      # the pasted cone cell defining the mediator


def induced_isocomma_action(fm, gm, name=""):
    """Given equivariant maps f: P -> Y and g: Z -> Y over one group,
    the action on the iso-comma of (f, g) whose structure morphism is
    the mediator of the pasted cone, with mu and nu induced through the
    two-dimensional universal property."""
    if fm.target != gm.target:
        raise ShapeError("equivariant maps must share their target action")
    tg = fm.source.group
    p_act, z_act, y_act = fm.source, gm.source, fm.target
    ic = iso_comma(fm.f, gm.f)
    space = ic.apex
    gs = product(tg.carrier, space)
    trip = product_many([tg.carrier, tg.carrier, space])
    pr1, pr2 = gs.projections
    u = compose_functors(
        p_act.x, mediate_product(p_act.gs,
                                 [pr1, compose_functors(ic.proj_left,
                                                        pr2)]))
    v = compose_functors(
        z_act.x, mediate_product(z_act.gs,
                                 [pr1, compose_functors(ic.proj_right,
                                                        pr2)]))
    y = y_act.space
    theta_comps = {}
    for o in gs.apex.objects:
        h, t = gs.unpack_obj[o]
        p, z, gamma0 = ic.unpack_obj[t]
        theta_comps[o] = y.compose(
            gm.lam_at(h, z),
            y.compose(y_act.xmor(tg.carrier.id_of(h), gamma0),
                      y.inv(fm.lam_at(h, p))))
    theta = NaturalIso(compose_functors(fm.f, u),
                       compose_functors(gm.f, v), theta_comps, "theta")
    rep = theta.validate()
    if not rep.ok:
        raise InternalError("pasted cone cell is not natural:\n%s" % rep)
    psi = mediate_iso_comma(ic, u, v, theta, "psi")
    a = Action(tg, space, gs, trip, psi, None, None,
               name=name or "icact(%s,%s)" % (fm.name or "?",
                                              gm.name or "?"))
    la, ra = left_assoc_functor(a), right_assoc_functor(a)

    def mu_cell(act, proj, part, label):
        comps = {}
        for o in trip.apex.objects:
            g, h, t = trip.unpack_obj[o]
            comps[o] = act.mu_at(g, h, ic.unpack_obj[t][part])
        return NaturalIso(compose_functors(proj, la),
                          compose_functors(proj, ra), comps, label)

    cell_a = mu_cell(p_act, ic.proj_left, 0, "muP")
    cell_b = mu_cell(z_act, ic.proj_right, 1, "muZ")
    try:
        a.mu = mediate_iso_comma_2cell(ic, la, ra, cell_a, cell_b, "mu")
    except IncompatibleCells as err:
        raise InternalError("induced mu is incompatible at %r"
                            % err.witness)
    up = unit_part_functor(a)
    ids = identity_functor(space)
    nu_a = NaturalIso(compose_functors(ic.proj_left, up),
                      compose_functors(ic.proj_left, ids),
                      {o: p_act.nu_at(ic.unpack_obj[o][0])
                       for o in space.objects}, "nuP")
    nu_b = NaturalIso(compose_functors(ic.proj_right, up),
                      compose_functors(ic.proj_right, ids),
                      {o: z_act.nu_at(ic.unpack_obj[o][1])
                       for o in space.objects}, "nuZ")
    try:
        a.nu = mediate_iso_comma_2cell(ic, up, ids, nu_a, nu_b, "nu")
    except IncompatibleCells as err:
        raise InternalError("induced nu is incompatible at %r"
                            % err.witness)
    left_shape = lambda_shape(a, p_act, ic.proj_left)
    left = EquivariantMap(
        a, p_act, ic.proj_left,
        NaturalIso(left_shape[0], left_shape[1],
                   {o: p_act.space.id_of(left_shape[0].obj(o))
                    for o in gs.apex.objects}, "lamP"), "projP")
    right_shape = lambda_shape(a, z_act, ic.proj_right)
    right = EquivariantMap(
        a, z_act, ic.proj_right,
        NaturalIso(right_shape[0], right_shape[1],
                   {o: z_act.space.id_of(right_shape[0].obj(o))
                    for o in gs.apex.objects}, "lamZ"), "projZ")
    return InducedIsoCommaAction(a, ic, left, right, theta)


def lift_mediator_equivariance(iia, r, s, omega, name=""):
    """Mediator into the induced iso-comma action, with its equivariance
    cell induced through the two-dimensional universal property.

    r and s are equivariant maps from a common action into the two feet;
    omega is the (equivariant) cone cell between the composites with the
    cospan legs.  Incompatibility errors from the mediators propagate.
    """
    if r.source != s.source:
        raise ShapeError("cone legs have different source actions")
    t_act = r.source
    ic = iia.ic
    v = mediate_iso_comma(ic, r.f, s.f, omega,
                          name and name + "-map")
    pr1, pr2 = t_act.gs.projections
    m1 = compose_functors(
        iia.action.x,
        mediate_product(iia.action.gs, [pr1, compose_functors(v, pr2)]))
    m2 = compose_functors(v, t_act.x)
    cell_a = NaturalIso(
        compose_functors(ic.proj_left, m1),
        compose_functors(ic.proj_left, m2),
        {o: r.lam_at(*t_act.gs.unpack_obj[o])
         for o in t_act.gs.apex.objects}, "lamR")
    cell_b = NaturalIso(
        compose_functors(ic.proj_right, m1),
        compose_functors(ic.proj_right, m2),
        {o: s.lam_at(*t_act.gs.unpack_obj[o])
         for o in t_act.gs.apex.objects}, "lamS")
    lam = mediate_iso_comma_2cell(ic, m1, m2, cell_a, cell_b, "lamV")
    return EquivariantMap(t_act, iia.action, v, lam, name or "mediator")


# ---------------------------------------------------------------------------
# pseudomonad instance checks


def check_pseudomonad_instance(tg, corpus):
    """For each corpus groupoid X, validate that G x (-) carries its
    pseudomonad structure at X: the whiskered associator and unitor
    cells are natural with the right endpoints, and the pentagon and
    triangle instances hold componentwise in G x X."""
    report = ValidationReport("pseudomonad %s" % (tg.name or "?"))
    c = tg.carrier
    for x_gpd in corpus:
        gx = product(c, x_gpd)
        quad = product_many([c, c, c, x_gpd])
        # whiskered associator over carrier^3 x X
        def pack4(fn_obj, fn_mor, label):
            return GroupoidFunctor(
                quad.apex, gx.apex,
                {o: gx.pack_obj[fn_obj(*quad.unpack_obj[o])]
                 for o in quad.apex.objects},
                {m: gx.pack_mor[fn_mor(*quad.unpack_mor[m])]
                 for m in quad.apex.morphisms}, label)
        src = pack4(lambda g, h, k, s: (tg.mobj(g, tg.mobj(h, k)), s),
                    lambda u, v, w, t: (tg.mmor(u, tg.mmor(v, w)), t),
                    "m(id x m) x id")
        tgt = pack4(lambda g, h, k, s: (tg.mobj(tg.mobj(g, h), k), s),
                    lambda u, v, w, t: (tg.mmor(tg.mmor(u, v), w), t),
                    "m(m x id) x id")
        assoc = NaturalIso(
            src, tgt,
            {o: gx.pack_mor[(tg.alpha_at(*quad.unpack_obj[o][:3]),
                             x_gpd.id_of(quad.unpack_obj[o][3]))]
             for o in quad.apex.objects}, "assoc@%s" % x_gpd.name)
        sub = assoc.validate()
        for vio in sub.violations:
            report.add("pseudomonad-assoc-cell", (x_gpd.name,) + vio.witness,
                       vio.rule)
        # whiskered unitors over G x X
        unit_src = GroupoidFunctor(
            gx.apex, gx.apex,
            {o: gx.pack_obj[(tg.mobj(tg.unit_obj, gx.unpack_obj[o][0]),
                             gx.unpack_obj[o][1])]
             for o in gx.apex.objects},
            {m: gx.pack_mor[(tg.mmor(tg.e.mor("id_*"),
                                     gx.unpack_mor[m][0]),
                             gx.unpack_mor[m][1])]
             for m in gx.apex.morphisms}, "(e x id) x id")
        lam_cell = NaturalIso(
            unit_src, identity_functor(gx.apex),
            {o: gx.pack_mor[(tg.lambda_m.at(gx.unpack_obj[o][0]),
                             x_gpd.id_of(gx.unpack_obj[o][1]))]
             for o in gx.apex.objects}, "unit@%s" % x_gpd.name)
        sub = lam_cell.validate()
        for vio in sub.violations:
            report.add("pseudomonad-unit-cell", (x_gpd.name,) + vio.witness,
                       vio.rule)
        if not report.ok:
            continue
        # pentagon instance, evaluated inside G x X
        for o in quad.apex.objects:
            g, h, k, s = quad.unpack_obj[o]
            for l in c.objects:
                ids = x_gpd.id_of(s)
                lhs = gx.apex.compose(
                    gx.pack_mor[(tg.alpha_at(tg.mobj(g, h), k, l), ids)],
                    gx.pack_mor[(tg.alpha_at(g, h, tg.mobj(k, l)), ids)])
                rhs = gx.apex.compose(
                    gx.pack_mor[(tg.mmor(tg.alpha_at(g, h, k),
                                         c.id_of(l)), ids)],
                    gx.apex.compose(
                        gx.pack_mor[(tg.alpha_at(g, tg.mobj(h, k), l),
                                     ids)],
                        gx.pack_mor[(tg.mmor(c.id_of(g),
                                             tg.alpha_at(h, k, l)), ids)]))
                if lhs != rhs:
                    report.add("pseudomonad-assoc",
                               (x_gpd.name, g, h, k, l, s))
        # triangle instance
        for o in gx.apex.objects:
            g, s = gx.unpack_obj[o]
            ids = x_gpd.id_of(s)
            for h in c.objects:
                lhs = gx.apex.compose(
                    gx.pack_mor[(tg.mmor(tg.rho_m.at(g), c.id_of(h)),
                                 ids)],
                    gx.pack_mor[(tg.alpha_at(g, tg.unit_obj, h), ids)])
                rhs = gx.pack_mor[(tg.mmor(c.id_of(g), tg.lambda_m.at(h)),
                                   ids)]
                if lhs != rhs:
                    report.add("pseudomonad-unit", (x_gpd.name, g, h, s))
    return report
