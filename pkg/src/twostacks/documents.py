"""Flat-document serialization for the domain values, plus the suite
runner.

One structured-text format (a YAML subset: string-keyed nested mappings,
lists, string and integer scalars), UTF-8, LF line endings.  Canonical
form sorts keys lexicographically at every level; ``serialize_document``
after ``parse_document`` is the canonicalization and is idempotent.

Documents reference other documents by name.  A DocumentStore resolves
references acyclically at build time and validates every payload for its
kind; a deliberately broken value (for expected-fail suite entries) can
be built with ``validated=False`` and judged by the matching checker
instead.
"""

import time

import yaml

from .groupoid import (DEFAULT_SEARCH_CAP, FiniteGroupoid, GroupoidFunctor,
                       InternalError, NaturalIso, ShapeError,
                       identity_functor, terminal_groupoid,
                       validate_groupoid)
from .twogroup import (CrossedModule, check_twogroup_coherence, delooping,
                       discrete_twogroup, from_crossed_module)
from .action import (EquivariantMap, EquivariantTwoCell, check_action,
                     check_equivariant_2cell, check_equivariant_map,
                     lambda_shape, multiplication_action, trivial_action,
                     trivial_equivariant)
from .site import Bitopology, CoveringFamily, check_subcanonical_bounded
from .bundle import check_bundle, make_bundle
from .quotient import (QuotientObject, check_trihom_coherence,
                       identity_quotient, identity_quotient_2cell,
                       quotient_object_check)
from .descent import (MatchingFamily2Cells, MorphismDescentDatum,
                      WeakObjectDescentDatum, bounded_bicolimit,
                      check_2cell_amalgamation,
                      check_morphism_descent_effective,
                      check_object_descent_effective, cover_links,
                      cover_nerve_fragment, restrict_matching_family,
                      restrict_morphism_datum, restrict_object_datum,
                      sieve_fragment, validate_matching_family,
                      validate_morphism_datum, validate_weak_datum)
from .equivalence import find_equivalence
from . import corpus

KINDS = ("groupoid", "functor", "natiso", "twogroup", "crossedmodule",
         "action", "eqmap", "eq2cell", "site", "bundle", "quotientobj",
         "descentdatum", "suite")

VERDICTS = ("pass", "fail", "invalid", "inconclusive")


class DocumentError(Exception):
    """A document problem: syntax (with position), schema, dangling or
    circular reference, kind mismatch, or a failed load-time check."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)


class Document:
    """A parsed document: kind tag, name, and the remaining payload."""

    def __init__(self, kind, name, payload):
        self.kind = kind
        self.name = name
        self.payload = payload

    def __repr__(self):
        return "Document(%r, %r)" % (self.kind, self.name)


def _string_keys(node, where):
    if isinstance(node, dict):
        for key, value in node.items():
            if not isinstance(key, str):
                raise DocumentError("non-string key %r under %s"
                                    % (key, where))
            _string_keys(value, "%s.%s" % (where, key))
    elif isinstance(node, list):
        for i, value in enumerate(node):
            _string_keys(value, "%s[%d]" % (where, i))


def parse_document(text):
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as err:
        mark = err.problem_mark or err.context_mark
        if mark is not None:
            raise DocumentError(err.problem or str(err),
                                mark.line + 1, mark.column + 1) from err
        raise DocumentError(str(err)) from err
    except yaml.YAMLError as err:
        raise DocumentError(str(err)) from err
    if not isinstance(data, dict):
        raise DocumentError("a document is a mapping, got %s"
                            % type(data).__name__)
    _string_keys(data, "document")
    kind = data.pop("kind", None)
    if kind not in KINDS:
        raise DocumentError("unknown document kind %r" % kind)
    name = data.pop("name", None)
    if not isinstance(name, str) or not name:
        raise DocumentError("document of kind %r needs a nonempty name"
                            % kind)
    return Document(kind, name, data)


def serialize_document(doc):
    data = dict(doc.payload)
    data["kind"] = doc.kind
    data["name"] = doc.name
    return yaml.safe_dump(data, sort_keys=True, default_flow_style=False,
                          allow_unicode=True, width=80)


def canonicalize(text):
    return serialize_document(parse_document(text))


# ---------------------------------------------------------------------------
# the store: reference resolution and kind builders


def _need(doc, key):
    if key not in doc.payload:
        raise DocumentError("document %r (%s) is missing key %r"
                            % (doc.name, doc.kind, key))
    return doc.payload[key]


def _tables(doc, spec):
    """Pull a group presentation {elements, mult, unit, inverse} out of
    a payload mapping into the (elements, mult, unit, inv) tuple shape."""
    for key in ("elements", "mult", "unit", "inverse"):
        if key not in spec:
            raise DocumentError("document %r (%s) group tables are "
                                "missing %r" % (doc.name, doc.kind, key))
    mult = {(a, b): c for a, row in spec["mult"].items()
            for b, c in row.items()}
    return (list(spec["elements"]), mult, spec["unit"],
            dict(spec["inverse"]))


def _gate(doc, report):
    if not report.ok:
        raise DocumentError("document %r does not validate:\n%s"
                            % (doc.name, report))


def _build_groupoid(store, doc, validated):
    if "standard" in doc.payload:
        return corpus.get_groupoid(doc.payload["standard"])
    morphisms = {m: tuple(ends)
                 for m, ends in _need(doc, "morphisms").items()}
    table = {(g, f): h for g, row in _need(doc, "table").items()
             for f, h in row.items()}
    gpd = FiniteGroupoid(doc.name, list(_need(doc, "objects")), morphisms,
                         dict(_need(doc, "identity")), table,
                         dict(_need(doc, "inverse")))
    if validated:
        _gate(doc, validate_groupoid(gpd))
    return gpd


def _build_functor(store, doc, validated):
    if doc.payload.get("identity"):
        return identity_functor(store.build(_need(doc, "domain"),
                                            "groupoid"))
    if "point" in doc.payload:
        codomain = store.build(_need(doc, "codomain"), "groupoid")
        fun = corpus.unit_functor_into(codomain, doc.payload["point"])
    else:
        fun = GroupoidFunctor(store.build(_need(doc, "domain"), "groupoid"),
                              store.build(_need(doc, "codomain"),
                                          "groupoid"),
                              dict(_need(doc, "on_objects")),
                              dict(_need(doc, "on_morphisms")), doc.name)
    if validated:
        _gate(doc, fun.validate())
    return fun


def _build_natiso(store, doc, validated):
    nat = NaturalIso(store.build(_need(doc, "source"), "functor"),
                     store.build(_need(doc, "target"), "functor"),
                     dict(_need(doc, "components")), doc.name)
    if validated:
        _gate(doc, nat.validate())
    return nat


def _build_twogroup(store, doc, validated):
    if "standard" in doc.payload:
        tg = corpus.get_twogroup(doc.payload["standard"])
    else:
        construction = _need(doc, "construction")
        if construction == "discrete":
            tg = discrete_twogroup(_tables(doc, doc.payload), doc.name)
        elif construction == "delooping":
            tg = delooping(_tables(doc, doc.payload), doc.name)
        elif construction == "crossed":
            cm = store.build(_need(doc, "module"), "crossedmodule")
            tg = from_crossed_module(cm, doc.name)
        else:
            raise DocumentError("document %r: unknown 2-group "
                                "construction %r" % (doc.name, construction))
    if validated:
        _gate(doc, check_twogroup_coherence(tg))
    return tg


def _build_crossedmodule(store, doc, validated):
    act = {(g, h): out for g, row in _need(doc, "act").items()
           for h, out in row.items()}
    cm = CrossedModule(_tables(doc, _need(doc, "base")),
                       _tables(doc, _need(doc, "fiber")),
                       dict(_need(doc, "boundary")), act)
    if validated:
        _gate(doc, cm.validate())
    return cm


def _build_action(store, doc, validated):
    if "standard" in doc.payload:
        act = corpus.get_action(doc.payload["standard"])
    else:
        construction = _need(doc, "construction")
        group = store.build(_need(doc, "group"), "twogroup")
        space = store.build(_need(doc, "space"), "groupoid")
        if construction == "trivial":
            act = trivial_action(group, space, doc.name)
        elif construction == "multiplication":
            act = multiplication_action(group, space, doc.name)
        else:
            raise DocumentError("document %r: unknown action "
                                "construction %r" % (doc.name, construction))
    if validated:
        _gate(doc, check_action(act))
    return act


def _build_eqmap(store, doc, validated):
    if "projection" in doc.payload:
        em = store.build(doc.payload["projection"], "bundle").projection
    else:
        source = store.build(_need(doc, "source"), "action")
        target = store.build(_need(doc, "target"), "action")
        fun = GroupoidFunctor(source.space, target.space,
                              dict(_need(doc, "on_objects")),
                              dict(_need(doc, "on_morphisms")), doc.name)
        if "lam" in doc.payload:
            left, right = lambda_shape(source, target, fun)
            lam = NaturalIso(left, right, dict(doc.payload["lam"]),
                             "%s-lam" % doc.name)
            em = EquivariantMap(source, target, fun, lam, doc.name)
        else:
            em = trivial_equivariant(fun, source, target, doc.name)
    if validated:
        _gate(doc, check_equivariant_map(em))
    return em


def _build_eq2cell(store, doc, validated):
    source = store.build(_need(doc, "source"), "eqmap")
    target = store.build(_need(doc, "target"), "eqmap")
    gamma = NaturalIso(source.f, target.f, dict(_need(doc, "gamma")),
                       "%s-gamma" % doc.name)
    cell = EquivariantTwoCell(source, target, gamma, doc.name)
    if validated:
        _gate(doc, check_equivariant_2cell(cell))
    return cell


def _build_site(store, doc, validated):
    declared = {}
    for i, entry in enumerate(_need(doc, "covers")):
        if "target" not in entry or "generators" not in entry:
            raise DocumentError("document %r cover %d needs target and "
                                "generators" % (doc.name, i))
        target = store.build(entry["target"], "groupoid")
        fam = CoveringFamily(target,
                             [store.build(g, "functor")
                              for g in entry["generators"]],
                             entry.get("label", ""))
        declared.setdefault(target.name, []).append(fam)
    site = Bitopology(declared)
    if validated:
        _gate(doc, site.validate())
    return site


def _build_bundle(store, doc, validated):
    if "standard" in doc.payload:
        bun = corpus.get_bundle(doc.payload["standard"])
        if validated:
            _gate(doc, check_bundle(bun))
        return bun
    group = store.build(_need(doc, "group"), "twogroup")
    total = store.build(_need(doc, "total"), "action")
    base = store.build(_need(doc, "base"), "groupoid")
    spec = _need(doc, "projection")
    fun = GroupoidFunctor(total.space, base, dict(spec["on_objects"]),
                          dict(spec["on_morphisms"]),
                          "%s-proj" % doc.name)
    projection = trivial_equivariant(fun, total,
                                     trivial_action(group, base),
                                     "%s-proj" % doc.name)
    cover_spec = _need(doc, "cover")
    cover = CoveringFamily(base,
                           [store.build(g, "functor")
                            for g in cover_spec["generators"]],
                           cover_spec.get("label", ""))
    return make_bundle(group, total, base, projection, cover,
                       doc.payload.get("bound", DEFAULT_SEARCH_CAP),
                       doc.name)


def _build_quotientobj(store, doc, validated):
    bundle = store.build(_need(doc, "bundle"), "bundle")
    x_space = store.build(_need(doc, "x"), "groupoid")
    x_act = trivial_action(bundle.group, x_space)
    if "alpha" in doc.payload:
        spec = doc.payload["alpha"]
        fun = GroupoidFunctor(bundle.total.space, x_space,
                              dict(spec["on_objects"]),
                              dict(spec["on_morphisms"]),
                              "%s-alpha" % doc.name)
    else:
        if bundle.base != x_space:
            raise DocumentError("document %r: alpha can only be omitted "
                                "when x is the bundle base" % doc.name)
        fun = bundle.projection.f
    alpha = trivial_equivariant(fun, bundle.total, x_act,
                                "%s-alpha" % doc.name)
    obj = QuotientObject(bundle, alpha, doc.name)
    if validated:
        _gate(doc, quotient_object_check(obj))
    return obj


def _family(site, target, label):
    families = site.families_for(target)
    for fam in families:
        if fam.label == label:
            return fam
    raise DocumentError("no cover labeled %r on %s (known: %s)"
                        % (label, target.name,
                           ", ".join(repr(f.label) for f in families)))


def _build_descentdatum(store, doc, validated):
    shape = _need(doc, "shape")
    site = store.build(_need(doc, "site"), "site")
    target = store.build(_need(doc, "target"), "groupoid")
    fam = _family(site, target, _need(doc, "cover"))
    obj = store.build(_need(doc, "object"), "quotientobj")
    bound = doc.payload.get("bound", DEFAULT_SEARCH_CAP)
    links = cover_links(fam, bound)
    if shape == "object":
        datum = restrict_object_datum(obj, fam, links, bound)
        report = validate_weak_datum(datum, bound) if validated else None
    elif shape == "morphism":
        ident = identity_quotient(obj)
        datum = restrict_morphism_datum(ident, obj, obj, fam, links,
                                        bound)
        report = validate_morphism_datum(datum, bound) if validated \
            else None
    elif shape == "2cell":
        ident = identity_quotient(obj)
        cell = identity_quotient_2cell(ident)
        datum = restrict_matching_family(cell, obj, obj, ident, ident,
                                         fam, links, bound)
        report = validate_matching_family(datum, bound) if validated \
            else None
    else:
        raise DocumentError("document %r: unknown descent datum shape %r"
                            % (doc.name, shape))
    if report is not None:
        _gate(doc, report)
    return datum


def _build_suite(store, doc, validated):
    checks = _need(doc, "checks")
    if not isinstance(checks, list) or not checks:
        raise DocumentError("document %r: a suite is a nonempty list of "
                            "checks" % doc.name)
    seen = set()
    for i, entry in enumerate(checks):
        for key in ("name", "check", "expect"):
            if key not in entry:
                raise DocumentError("document %r check %d is missing %r"
                                    % (doc.name, i, key))
        if entry["name"] in seen:
            raise DocumentError("document %r: duplicate check name %r"
                                % (doc.name, entry["name"]))
        seen.add(entry["name"])
        if entry["check"] not in _CHECKS:
            raise DocumentError("document %r: unresolvable check %r "
                                "(known: %s)"
                                % (doc.name, entry["check"],
                                   ", ".join(sorted(_CHECKS))))
        if entry["expect"] not in VERDICTS:
            raise DocumentError("document %r: unknown expected verdict "
                                "%r" % (doc.name, entry["expect"]))
    return list(checks)


_BUILDERS = {
    "groupoid": _build_groupoid,
    "functor": _build_functor,
    "natiso": _build_natiso,
    "twogroup": _build_twogroup,
    "crossedmodule": _build_crossedmodule,
    "action": _build_action,
    "eqmap": _build_eqmap,
    "eq2cell": _build_eq2cell,
    "site": _build_site,
    "bundle": _build_bundle,
    "quotientobj": _build_quotientobj,
    "descentdatum": _build_descentdatum,
    "suite": _build_suite,
}


class DocumentStore:
    """Documents indexed by name, with memoized acyclic building."""

    def __init__(self):
        self.docs = {}
        self._built = {}
        self._building = []

    def add(self, doc):
        if doc.name in self.docs:
            raise DocumentError("duplicate document name %r" % doc.name)
        self.docs[doc.name] = doc
        return doc

    def add_text(self, text):
        return self.add(parse_document(text))

    def add_file(self, path):
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
        try:
            return self.add_text(text)
        except DocumentError as err:
            raise DocumentError("%s: %s" % (path, err)) from err

    def get(self, name):
        doc = self.docs.get(name)
        if doc is None:
            raise DocumentError("dangling reference: no document named %r"
                                % name)
        return doc

    def build(self, name, kind=None, validated=True):
        doc = self.get(name)
        if kind is not None and doc.kind != kind:
            raise DocumentError("document %r is a %s, expected %s"
                                % (name, doc.kind, kind))
        key = (name, validated)
        if key in self._built:
            return self._built[key]
        if name in self._building:
            cycle = self._building[self._building.index(name):] + [name]
            raise DocumentError("circular reference: %s"
                                % " -> ".join(cycle))
        self._building.append(name)
        try:
            value = _BUILDERS[doc.kind](self, doc, validated)
        finally:
            self._building.pop()
        self._built[key] = value
        return value


# ---------------------------------------------------------------------------
# the suite runner


class SuiteEntry:
    def __init__(self, name, verdict, expected, detail, seconds):
        self.name = name
        self.verdict = verdict
        self.expected = expected
        self.ok = verdict == expected
        self.detail = detail
        self.seconds = seconds

    def verdict_line(self):
        status = "ok" if self.ok else "MISMATCH"
        return "%s: %s (expected %s) %s" % (self.name, self.verdict,
                                            self.expected, status)


class SuiteReport:
    """Per-check verdicts in name order; ``ok`` iff every verdict
    matched its expectation.  Verdict lines carry no timings so two runs
    of the same suite compare byte for byte."""

    def __init__(self, entries):
        self.entries = sorted(entries, key=lambda e: e.name)

    @property
    def ok(self):
        return all(e.ok for e in self.entries)

    def verdict_lines(self):
        return [e.verdict_line() for e in self.entries]

    def text(self):
        lines = ["%s  [%.2fs]%s" % (e.verdict_line(), e.seconds,
                                    "  " + e.detail if e.detail else "")
                 for e in self.entries]
        lines.append("suite: %s" % ("pass" if self.ok else "FAIL"))
        return "\n".join(lines)

    def json_like(self):
        return {
            "ok": self.ok,
            "checks": [{"name": e.name, "verdict": e.verdict,
                        "expected": e.expected, "ok": e.ok,
                        "detail": e.detail,
                        "seconds": round(e.seconds, 3)}
                       for e in self.entries],
        }


def _from_report(report):
    if report.ok:
        return "pass", ""
    return "fail", report.rules()[0]


def _check_validate(store, args):
    doc = store.get(args["document"])
    try:
        value = store.build(doc.name, validated=False)
    except (ShapeError, InternalError) as err:
        return "fail", str(err)
    gate = _VALIDATORS.get(doc.kind)
    if gate is None:
        return "pass", ""
    try:
        return _from_report(gate(store, doc, value))
    except (ShapeError, InternalError) as err:
        return "fail", str(err)


def _validator_descentdatum(store, doc, datum):
    bound = doc.payload.get("bound", DEFAULT_SEARCH_CAP)
    if isinstance(datum, WeakObjectDescentDatum):
        return validate_weak_datum(datum, bound)
    if isinstance(datum, MorphismDescentDatum):
        return validate_morphism_datum(datum, bound)
    return validate_matching_family(datum, bound)


_VALIDATORS = {
    "groupoid": lambda store, doc, g: validate_groupoid(g),
    "functor": lambda store, doc, f: f.validate(),
    "natiso": lambda store, doc, n: n.validate(),
    "twogroup": lambda store, doc, t: check_twogroup_coherence(t),
    "crossedmodule": lambda store, doc, c: c.validate(),
    "action": lambda store, doc, a: check_action(a),
    "eqmap": lambda store, doc, e: check_equivariant_map(e),
    "eq2cell": lambda store, doc, c: check_equivariant_2cell(c),
    "site": lambda store, doc, s: s.validate(),
    "bundle": lambda store, doc, b: check_bundle(b),
    "quotientobj": lambda store, doc, q: quotient_object_check(q),
    "descentdatum": _validator_descentdatum,
}


def _check_action_doc(store, args):
    return _from_report(check_action(store.build(args["action"],
                                                 "action")))


def _check_eqmap(store, args):
    return _from_report(check_equivariant_map(
        store.build(args["eqmap"], "eqmap")))


def _check_eq2cell(store, args):
    return _from_report(check_equivariant_2cell(
        store.build(args["eq2cell"], "eq2cell")))


def _check_twogroup(store, args):
    return _from_report(check_twogroup_coherence(
        store.build(args["twogroup"], "twogroup")))


def _check_bundle(store, args):
    return _from_report(check_bundle(store.build(args["bundle"],
                                                 "bundle")))


def _check_quotient_coherence(store, args):
    report = check_trihom_coherence(
        store.build(args["action"], "action"),
        store.build(args["site"], "site"),
        [store.build(b, "groupoid") for b in args.get("bases", [])],
        [store.build(m, "functor") for m in args.get("morphisms", [])],
        [store.build(c, "natiso") for c in args.get("twocells", [])],
        args.get("bound", DEFAULT_SEARCH_CAP))
    return _from_report(report)


def _check_subcanonical(store, args):
    site = store.build(args["site"], "site")
    target = store.build(args["target"], "groupoid")
    fam = _family(site, target, args["cover"])
    probes = [store.build(p, "groupoid") for p in args.get("probes", [])]
    report = check_subcanonical_bounded(site, target, fam, probes,
                                        args.get("bound",
                                                 DEFAULT_SEARCH_CAP))
    return _from_report(report)


def _bicolim_verdict(result, target):
    if not result.ok:
        return ("inconclusive" if result.verdict == "inconclusive"
                else "fail"), result.detail
    detail = "objects=%d morphisms=%d" % (
        len(result.groupoid.objects),
        len(result.groupoid.morphism_list()))
    if find_equivalence(result.groupoid, target).found:
        return "pass", detail
    return "fail", detail + " (not equivalent to the base)"


def _check_bicolim_sieve(store, args):
    target = store.build(args["target"], "groupoid")
    result = bounded_bicolimit(sieve_fragment(target),
                               args.get("bound", DEFAULT_SEARCH_CAP),
                               args.get("max-len", 4))
    return _bicolim_verdict(result, target)


def _check_bicolim_nerve(store, args):
    site = store.build(args["site"], "site")
    target = store.build(args["target"], "groupoid")
    fam = _family(site, target, args["cover"])
    bound = args.get("bound", DEFAULT_SEARCH_CAP)
    result = bounded_bicolimit(
        cover_nerve_fragment(fam, cover_links(fam, bound)), bound,
        args.get("max-len", 6))
    return _bicolim_verdict(result, target)


def _descent_args(store, args):
    datum = store.build(args["datum"], "descentdatum")
    return datum, args.get("bound", DEFAULT_SEARCH_CAP)


def _check_descent_o(store, args):
    datum, bound = _descent_args(store, args)
    verdict = check_object_descent_effective(
        datum.fam, datum, bound=bound, max_len=args.get("max-len", 6))
    return verdict.verdict, verdict.detail


def _check_descent_m(store, args):
    datum, bound = _descent_args(store, args)
    verdict = check_morphism_descent_effective(datum.fam, datum, bound)
    return verdict.verdict, verdict.detail


def _check_descent_2c(store, args):
    datum, bound = _descent_args(store, args)
    verdict = check_2cell_amalgamation(datum.fam, datum, bound)
    return verdict.verdict, verdict.detail


_CHECKS = {
    "validate": _check_validate,
    "check-action": _check_action_doc,
    "check-eqmap": _check_eqmap,
    "check-eq2cell": _check_eq2cell,
    "check-twogroup": _check_twogroup,
    "check-bundle": _check_bundle,
    "quotient-coherence": _check_quotient_coherence,
    "subcanonical": _check_subcanonical,
    "bicolim-sieve": _check_bicolim_sieve,
    "bicolim-nerve": _check_bicolim_nerve,
    "descent-O": _check_descent_o,
    "descent-M": _check_descent_m,
    "descent-2C": _check_descent_2c,
}


def run_suite(store, name):
    """Execute every check of the named suite document and report the
    verdicts against the expectations."""
    checks = store.build(name, "suite")
    entries = []
    for entry in checks:
        start = time.perf_counter()
        try:
            verdict, detail = _CHECKS[entry["check"]](store, entry)
        except (ShapeError, InternalError) as err:
            verdict, detail = "fail", str(err)
        entries.append(SuiteEntry(entry["name"], verdict,
                                  entry["expect"], detail,
                                  time.perf_counter() - start))
    return SuiteReport(entries)
