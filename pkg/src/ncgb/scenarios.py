"""The embedded scenario corpus and its reports.

Each scenario loads a presentation from the corpus, runs a pipeline
(validate, eliminate, complete, count) and compares named results with
the expectations in ``EXPECTED``.  Results are plain JSON values; parametric
coefficients and polynomials are compared as field elements, so the
expected strings only need to be equal, not identically written.
"""
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .coeff import RationalField, ParametricField, is_invertible
from .fileformat import parse_presentation, parse_polynomial
from .freealg import Polynomial
from .hilbert import (count_irreducible, hilbert_driven_counts, q_from_resolution,
                      series_weighted_poly, solve_shift)
from .minimal import (EliminationChoice, overlap_attribution, relation_type_by_rank,
                      minimal_generator_counts, to_degree_one, ideal_dimension,
                      ideal_dimension_by_rank)
from .ore import (check_sigma_injective, enumerate_degree_types, generated_in_degree_one,
                  apply_elimination, validate_enveloping, validate_ore, determinant,
                  CERTIFIED)
from .rewrite import (RewriteSystem, complete, find_ambiguity, inner_first_difference,
                      resolve_check)

CORPUS_DIR = os.path.join(os.path.dirname(__file__), "corpus")
SCHEMA_PATH = os.path.join(CORPUS_DIR, "report.schema.json")
SCHEMA_ID = "ncgb-report/1"

PASS, FAIL, UNDET, ERROR = "pass", "fail", "undetermined", "error"

Q = RationalField()


def corpus_path(name):
    return os.path.join(CORPUS_DIR, name + ".pres")


def load(name):
    return parse_presentation(corpus_path(name))


class Symbolic:
    """A computed polynomial or coefficient compared by value, shown as text."""

    def __init__(self, value, table, field):
        self.value = value
        self.table = table
        self.field = field

    def text(self):
        if isinstance(self.value, Polynomial):
            return self.value.format()
        return self.field.format(self.value)

    def matches(self, expected):
        if not isinstance(expected, str):
            return False
        try:
            parsed = parse_polynomial(expected, self.table, self.field)
        except ValueError:
            return False
        if isinstance(self.value, Polynomial):
            return parsed == self.value
        return parsed == Polynomial(self.table, self.field, {(): self.value} if self.value else {})


class Undetermined(Exception):
    """A parametric verdict that depends on values the presentation leaves open."""


def _plain(x):
    if isinstance(x, Symbolic):
        return x.text()
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    if isinstance(x, list):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, Fraction):
        return str(x)
    return x


def _same(expected, actual):
    if isinstance(actual, Symbolic):
        return actual.matches(expected)
    if isinstance(actual, (list, tuple)):
        if not isinstance(expected, (list, tuple)) or len(expected) != len(actual):
            return False
        return all(_same(e, a) for e, a in zip(expected, actual))
    if isinstance(actual, dict):
        if not isinstance(expected, dict) or set(map(str, actual)) != set(expected):
            return False
        return all(_same(expected[str(k)], v) for k, v in actual.items())
    return _plain(actual) == expected


# helpers shared by the scenarios

def rel_index(p, *lead):
    w = p.table.word(*lead)
    for k, r in enumerate(p.relations):
        if r.leading_term()[0] == w:
            return k
    raise KeyError("no relation with leading word %s" % p.table.short(w))


def eliminated_system(p, steps):
    """Reduction system of the relations after solving for the given variables."""
    rels, _ = apply_elimination(p, [(rel_index(p, *lead), p.var(v)) for lead, v in steps])
    rels = [r for r in rels if r]
    return RewriteSystem.from_polynomials(rels, p.table, p.field)


def degree_one_system(q, below):
    """Reduction system of the degree-one relations of degree < ``below``."""
    rels = [r for r in q.relations if r.homogeneous_degree() < below]
    return RewriteSystem.from_polynomials(rels, q.table, q.field)


def overlap(sys, word):
    a = find_ambiguity(sys, word)
    if a is None:
        raise KeyError("no ambiguity on %s" % "".join(word))
    return a


def leading(poly):
    lead, c = poly.leading_term()
    return poly.table.short(lead), Symbolic(c, poly.table, poly.field)


def short_leads(gb, d):
    return sorted((gb.table.short(r.lead) for r in gb.rules if r.degree == d),
                  key=lambda s: s)


def relation_type(q, max_degree=8):
    gb = complete(q.relations, max_degree, q.table, q.field)
    return gb, list(minimal_generator_counts(gb, max_degree=max_degree))


def plan_text(p, plan):
    return ["%s via %s" % (p.table.names[v], p.relation_label(k)) for k, v, _e in plan.steps]


def sigma_verdicts(p):
    out = {}
    for j in p.adjunction[1:]:
        out[p.table.names[j]] = check_sigma_injective(p, j).verdict
    return out


def series_agreement(p, N):
    gb = complete(p.relations, N, p.table, p.field)
    irr = count_irreducible(gb.leads(), p.table.degrees, N)
    return list(irr), list(series_weighted_poly(p.table.degrees, N))


def ideal_dims(q, N):
    gb = complete(q.relations, N, q.table, q.field)
    by_words = [ideal_dimension(gb, q.table.degrees, d) for d in range(1, N + 1)]
    by_rank = [ideal_dimension_by_rank(q, d) for d in range(1, N + 1)]
    return by_words, by_rank


# the scenarios; each yields (check name, actual value)

def sc_ore_11235(out):
    p = load("ore-11235")
    F = p.field
    out("relations", len(p.relations))
    b = p.relations[rel_index(p, "x3", "x2")].coefficient(p.table.word("x2", "x3"))
    c = p.relations[rel_index(p, "x5", "x1")].coefficient(p.table.word("x3", "x3", "x3"))
    out("b", Symbolic(-b, p.table, F))
    out("c", Symbolic(-c, p.table, F))
    out("c_plus_b", Symbolic(-c - b, p.table, F))
    rep = validate_ore(p)
    out("ore_valid", rep.ok)
    out("ambiguities", rep.diamond.checked if rep.diamond else None)
    out("unresolved", len(rep.diamond.unresolved) if rep.diamond else None)
    out("sigma5_x3", Symbolic(rep.sigma(p.var("x5"), p.var("x3")), p.table, F))
    out("sigma", sigma_verdicts(p))
    plan = generated_in_degree_one(p)
    out("elimination", plan_text(p, plan))
    env = validate_enveloping(p)
    first = env.failures[0] if env.failures else None
    out("enveloping_failure", [first.kind, p.relation_label(rel_index(p, *[p.table.names[r] for r in first.pair]))]
        if first else None)
    q = to_degree_one(p)
    gb, rt = relation_type(q, 8)
    out("relation_type", rt)
    out("relation_type_by_rank", list(relation_type_by_rank(q, 8)))
    irr, target = series_agreement(p, 8)
    out("series", irr)
    out("series_matches_commutative", irr == target)


def sc_no_env_11235(out):
    p = load("no-env-11235")
    sys = RewriteSystem.from_polynomials(p.relations, p.table, p.field)
    v = resolve_check(overlap(sys, ["x5", "x4", "x2"]), sys)
    out("resolve_check", Symbolic(v, p.table, p.field))
    out("nonzero", all(is_invertible(c, p.field) for c in v.terms.values()) and bool(v))


def sc_no3333(out):
    p = load("no3333-obstruction")
    sys = eliminated_system(p, [(("x5", "x2"), "x1")])
    v = inner_first_difference(overlap(sys, ["x5", "x3", "x2"]), sys)
    out("lead_x5x3x2", leading(v))


def sc_no333_case1(out):
    p = load("no333-case1")
    F, t = p.field, p.table
    sys = eliminated_system(p, [(("x5", "x2"), "x1")])
    for word in (["x5", "x4", "x2"], ["x5", "x4", "x3"]):
        v = inner_first_difference(overlap(sys, word), sys)
        out("coefficient_%s" % "".join(word), Symbolic(v.coefficient(t.word("x5", "x2", "x4")), t, F))
    rep = validate_ore(p)
    x4 = p.var("x4")
    out("sigma4_x2", Symbolic(rep.sigma(x4, p.var("x2")), t, F))
    out("sigma4_x3", Symbolic(rep.sigma(x4, p.var("x3")), t, F))
    s = F.symbol
    forced = p.specialize({"e4": -s("e7") * s("h1") / s("i1"),
                           "d4": -s("d7") * s("h1") / s("i1")}, F)
    verdict = check_sigma_injective(forced, "x4", 1)
    out("sigma4_forced", verdict.verdict)
    basis, matrix = verdict.matrices[1]
    out("sigma4_determinant", Symbolic(determinant(matrix, F), t, F))


def sc_no333_case2(out):
    p = load("no333-case2")
    sys = eliminated_system(p, [(("x5", "x3"), "x1")])
    for word in (["x5", "x4", "x2"], ["x5", "x4", "x3"]):
        out("lead_%s" % "".join(word), leading(inner_first_difference(overlap(sys, word), sys)))


def sc_no333_case3(out):
    p = load("no333-case3")
    sys = eliminated_system(p, [(("x4", "x2"), "x1")])
    out("lead_x4x3x2", leading(inner_first_difference(overlap(sys, ["x4", "x3", "x2"]), sys)))


def sc_env_11112(out):
    p = load("env-11112-family")
    F = p.field
    out("enveloping_valid", validate_enveloping(p).ok)
    q = to_degree_one(p)
    sys = degree_one_system(q, 3)
    v = inner_first_difference(overlap(sys, ["x5", "x4", "x3"]), sys)
    out("overlap_x5x4x3", Symbolic(v, q.table, F))
    s = F.symbol
    g = (s("e1") * s("h1") - s("d1") * s("i1")) / s("b1")
    tied = to_degree_one(p.specialize({"g1": g}, F))
    sys = degree_one_system(tied, 3)
    out("tied_overlaps", [Symbolic(resolve_check(overlap(sys, w), sys), tied.table, F)
                          for w in (["x5", "x4", "x3"], ["x5", "x4", "x2"])])
    ones = dict(b1=1, d1=1, e1=1, h1=1, i1=1)
    for label, g1 in (("tied", 0), ("generic", 1)):
        inst = p.specialize(dict(ones, g1=g1), Q)
        out("instance_%s_valid" % label, validate_enveloping(inst).ok)
        out("relation_type_%s" % label, relation_type(to_degree_one(inst))[1])
    # the relation type does not depend on which relation is solved for x1
    inst = p.specialize(dict(ones, g1=0), Q)
    types = {}
    for lead in (("x3", "x2"), ("x4", "x2"), ("x4", "x3"), ("x5", "x2"), ("x5", "x3")):
        choice = EliminationChoice([(rel_index(inst, *lead), "x1")])
        types["".join(lead)] = relation_type(to_degree_one(inst, choice))[1]
    out("relation_type_by_choice", types)


def sc_ore_11112_type6(out):
    p = load("ore-11112-type6")
    rep = validate_ore(p)
    out("ore_valid", rep.ok)
    out("sigma", sigma_verdicts(p))
    q = to_degree_one(p)
    sys = degree_one_system(q, 3)
    out("overlap_x5x4x3", Symbolic(inner_first_difference(overlap(sys, ["x5", "x4", "x3"]), sys),
                                   q.table, q.field))
    gb, rt = relation_type(q)
    out("relation_type", rt)
    out("attribution_3", [[e["source"], e.get("ambiguity")] for e in overlap_attribution(gb, 3)])


def sc_env_11122(out):
    p = load("env-11122")
    out("enveloping_valid", validate_enveloping(p).ok)
    q = to_degree_one(p)
    gb, rt = relation_type(q)
    out("relation_type", rt)
    h = series_weighted_poly(p.table.degrees, 12)
    out("q_times_series_is_one", (q_from_resolution(3, rt, 7, 12) * h).is_one())
    out("shift", solve_shift(3, rt, h))


def _env_11123_case(out, values, steps, nonzero=None):
    p = load("env-11123")
    inst = p.specialize(values, Q)
    out("enveloping_valid", validate_enveloping(inst).ok)
    choice = None
    if steps:
        choice = EliminationChoice([(rel_index(inst, *lead), v) for lead, v in steps])
    q = to_degree_one(inst, choice)
    gb, rt = relation_type(q)
    out("leads", {d: short_leads(gb, d) for d in (2, 3, 4)})
    out("relation_type", rt)
    return p, gb


def sc_env_11123_case1(out):
    _p, gb = _env_11123_case(out, dict(b1=1, d1=1, e1=1, h1=1, i1=1, g1=0), None)
    out("attribution_4", [[e["source"], e.get("ambiguity")] for e in overlap_attribution(gb, 4)])


def sc_env_11123_case2(out):
    p = load("env-11123")
    F = ParametricField(["b1", "e1", "g1", "h1", "i1"], ["b1", "h1"])
    general = p.specialize({"d1": 0}, F)
    sys = RewriteSystem.from_polynomials(general.relations, p.table, F)
    out("overlap_d1_zero", Symbolic(inner_first_difference(overlap(sys, ["x5", "x4", "x3"]), sys), p.table, F))
    s = F.symbol
    tied = general.specialize({"e1": s("g1") * s("b1") / s("h1")}, F)
    out("tied_enveloping_valid", validate_enveloping(tied).ok)
    _env_11123_case(out, dict(b1=1, d1=0, e1=1, g1=1, h1=1, i1=1),
                    [(("x5", "x3"), "x2"), (("x3", "x2"), "x1")])


def sc_env_11123_case3(out):
    p = load("env-11123")
    F = ParametricField(["b1", "e1", "g1", "i1"], ["b1", "g1"])
    pres = p.specialize({"d1": 0, "h1": 0}, F)
    rep = validate_enveloping(pres)
    out("enveloping_valid", rep.ok)
    bad = [f for f in rep.failures if f.kind == "UnresolvedAmbiguity"]
    out("unresolved", [f.detail for f in bad])
    if bad:
        a = bad[0].ambiguity
        sys = RewriteSystem.from_polynomials(pres.relations, pres.table, F)
        v = inner_first_difference(a, sys)
        out("overlap_x5x4x3", Symbolic(v, pres.table, F))
        if not all(is_invertible(c, F) for c in v.terms.values()):
            raise Undetermined("obstruction %s may vanish" % v.format())
        out("verdict", "no enveloping algebra here")


def sc_ore_11123_type223(out):
    p = load("ore-11123-type223")
    rep = validate_ore(p)
    out("ore_valid", rep.ok)
    out("sigma", sigma_verdicts(p))
    plan = generated_in_degree_one(p)
    out("elimination", plan_text(p, plan))
    q = to_degree_one(p)
    rels, _ = apply_elimination(p, [(k, v) for k, v, _e in plan.steps])
    sys = degree_one_system(q, 4)
    r41 = sys.normal_form(_remap(rels[rel_index(p, "x4", "x1")], q))
    out("r41_reduced", Symbolic(r41, q.table, q.field))
    v = inner_first_difference(overlap(sys, ["x5", "x5", "x4", "x3"]), sys)
    out("overlap_x5x5x4x3", Symbolic(v, q.table, q.field))
    gb, rt = relation_type(q)
    out("relation_type", rt)
    out("attribution_4", [[e["source"], e.get("ambiguity")] for e in overlap_attribution(gb, 4)])


def _remap(poly, q):
    names = poly.table.names
    return Polynomial(q.table, q.field,
                      {tuple(q.table.rank(names[r]) for r in w): c for w, c in poly.terms.items()})


def sc_degree_types(out):
    out("degree_types", [list(t) for t in enumerate_degree_types(5)])


def _driven(names, leads, degrees, N):
    rank = {n: k for k, n in enumerate(names)}
    by_degree = {}
    for w in leads:
        word = tuple(rank[x] for x in w.split())
        by_degree.setdefault(len(word), []).append(word)
    target = series_weighted_poly(degrees, N)
    return hilbert_driven_counts(by_degree, target, N, [1] * len(names))


def sc_qpoly_11122(out):
    h = series_weighted_poly((1, 1, 1, 2, 2), 12)
    out("q", list(q_from_resolution(3, (2, 3, 3, 3, 3, 3), 7, 7)))
    out("q_times_series_is_one", (q_from_resolution(3, (2, 3, 3, 3, 3, 3), 7, 12) * h).is_one())
    out("shift", solve_shift(3, (2, 3, 3, 3, 3, 3), h))
    names = ["x3", "x4", "x5"]
    out("driven_degree3", [_driven(names, [lead], (1, 1, 1, 2, 2), 3).get(3, 0)
                           for lead in ("x5 x4", "x5 x3", "x4 x3")])


def sc_qpoly_11123(out):
    degs = (1, 1, 1, 2, 3)
    h = series_weighted_poly(degs, 12)
    out("q", list(q_from_resolution(3, (2, 2, 3), 8, 8)))
    out("q_times_series_is_one", (q_from_resolution(3, (2, 2, 3), 8, 12) * h).is_one())
    out("shift_223", solve_shift(3, (2, 2, 3), h))
    out("shift_2234", solve_shift(3, (2, 2, 3, 4), h))
    names = ["x3", "x4", "x5"]
    out("driven_degree3", [_driven(names, leads, degs, 3).get(3, 0) for leads in
                           (["x5 x4", "x5 x3"], ["x5 x3", "x4 x3"], ["x5 x4", "x4 x3"])])
    out("driven_degree4", [_driven(names, leads, degs, 4).get(4, 0) for leads in
                           (["x5 x4", "x5 x3", "x4 x3 x3"], ["x5 x4", "x5 x3", "x4 x4 x3"],
                            ["x5 x4", "x4 x3", "x5 x3 x3", "x5 x3 x4"],
                            ["x5 x4", "x4 x3", "x5 x3 x4", "x5 x5 x3"])])


SCENARIOS = [
    ("ore-11235", "AS-Ore extension of degree type (1,1,2,3,5)", sc_ore_11235),
    ("no-env-11235", "no enveloping algebra of degree type (1,1,2,3,5)", sc_no_env_11235),
    ("no3333-obstruction", "four degree-three minimal relations are impossible", sc_no3333),
    ("no333-case1", "three degree-three relations, leads x3x2 x4x3 x4x2 x5x4 x5x3", sc_no333_case1),
    ("no333-case2", "three degree-three relations, leads x3x2 x4x3 x4x2 x5x4 x5x2", sc_no333_case2),
    ("no333-case3", "three degree-three relations, leads x3x2 x4x3 x5x4 x5x3 x5x2", sc_no333_case3),
    ("env-11112-family", "enveloping algebras of degree type (1,1,1,1,2)", sc_env_11112),
    ("ore-11112-type6", "AS-Ore extension with relation type (2,2,2,2,2,3)", sc_ore_11112_type6),
    ("env-11122", "enveloping algebra of degree type (1,1,1,2,2)", sc_env_11122),
    ("env-11123-case1", "enveloping algebra of degree type (1,1,1,2,3), d1 nonzero", sc_env_11123_case1),
    ("env-11123-case2", "enveloping algebra of degree type (1,1,1,2,3), d1 = 0", sc_env_11123_case2),
    ("env-11123-case3", "degree type (1,1,1,2,3) with d1 = h1 = 0", sc_env_11123_case3),
    ("ore-11123-type223", "AS-Ore extension with relation type (2,2,3)", sc_ore_11123_type223),
    ("degree-types-5", "degree types of five-generator AS-Ore extensions", sc_degree_types),
    ("qpoly-11122", "resolution polynomial for degree type (1,1,1,2,2)", sc_qpoly_11122),
    ("qpoly-11123", "resolution polynomial for degree type (1,1,1,2,3)", sc_qpoly_11123),
]

SCENARIO_IDS = [s[0] for s in SCENARIOS]

EXPECTED = {
    "ore-11235": {
        "relations": 10,
        "b": "w^2",
        "c": "2*w^4/(1 - w^2 + w^4)",
        "c_plus_b": "0",
        "ore_valid": True,
        "ambiguities": 10,
        "unresolved": 0,
        "sigma5_x3": "-x3",
        "sigma": {"x2": CERTIFIED, "x3": CERTIFIED, "x4": CERTIFIED, "x5": CERTIFIED},
        "elimination": ["x3 via r(x5x4)", "x2 via r(x4x3)", "x1 via r(x3x2)"],
        "enveloping_failure": ["NonIdentitySigma", "r(x2x1)"],
        "relation_type": [3, 4, 7],
        "relation_type_by_rank": [3, 4, 7],
        "series": [1, 2, 4, 7, 11, 17, 25, 35, 48],
        "series_matches_commutative": True,
    },
    "no-env-11235": {
        "resolve_check": "a1*b1*x1",
        "nonzero": True,
    },
    "no3333-obstruction": {
        "lead_x5x3x2": ["x5x2x3", "b3"],
    },
    "no333-case1": {
        "coefficient_x5x4x2": "e4 + e7*h1/i1",
        "coefficient_x5x4x3": "d4 + d7*h1/i1",
        "sigma4_x2": "e4*x2 + e7*x3",
        "sigma4_x3": "d4*x2 + d7*x3",
        "sigma4_forced": "NotInjective",
        "sigma4_determinant": "0",
    },
    "no333-case2": {
        "lead_x5x4x2": ["x5x3x4", "e7"],
        "lead_x5x4x3": ["x5x3x4", "d7"],
    },
    "no333-case3": {
        "lead_x4x3x2": ["x4x2x3", "b3"],
    },
    "env-11112-family": {
        "enveloping_valid": True,
        "overlap_x5x4x3": "(g1/b1 - e1*h1/b1^2 + d1*i1/b1^2)*(x2*x3*x3 - 2*x3*x2*x3 + x3*x3*x2)",
        "tied_overlaps": ["0", "0"],
        "instance_tied_valid": True,
        "relation_type_tied": [2, 2, 2, 2, 2, 3, 3],
        "instance_generic_valid": True,
        "relation_type_generic": [2, 2, 2, 2, 2],
        "relation_type_by_choice": {
            "x3x2": [2, 2, 2, 2, 2, 3, 3], "x4x2": [2, 2, 2, 2, 2, 3, 3],
            "x4x3": [2, 2, 2, 2, 2, 3, 3], "x5x2": [2, 2, 2, 2, 2, 3, 3],
            "x5x3": [2, 2, 2, 2, 2, 3, 3]},
    },
    "ore-11112-type6": {
        "ore_valid": True,
        "sigma": {"x2": CERTIFIED, "x3": CERTIFIED, "x4": CERTIFIED, "x5": CERTIFIED},
        "overlap_x5x4x3": "x2*x2*x3 - x2*x3*x3 - x3*x2*x2 + x3*x3*x2",
        "relation_type": [2, 2, 2, 2, 2, 3],
        "attribution_3": [["Original", None], ["Overlap", "x5(x4)x3"]],
    },
    "env-11122": {
        "enveloping_valid": True,
        "relation_type": [2, 3, 3, 3, 3, 3],
        "q_times_series_is_one": True,
        "shift": 7,
    },
    "env-11123-case1": {
        "enveloping_valid": True,
        "leads": {"2": ["x5x3", "x5x4"], "3": ["x4x4x3"], "4": ["x4x3x3x3"]},
        "relation_type": [2, 2, 3, 4],
        "attribution_4": [["Original", None]],
    },
    "env-11123-case2": {
        "overlap_d1_zero": "(b1*g1 - e1*h1)*x1",
        "tied_enveloping_valid": True,
        "enveloping_valid": True,
        "leads": {"2": ["x4x3", "x5x4"], "3": ["x5x3x4", "x5x5x3"],
                  "4": ["x5x3x3x3", "x5x3x3x4"]},
        "relation_type": [2, 2, 3, 4],
    },
    "env-11123-case3": {
        "enveloping_valid": False,
        "unresolved": ["x5(x4)x3"],
        "overlap_x5x4x3": "b1*g1*x1",
        "verdict": "no enveloping algebra here",
    },
    "ore-11123-type223": {
        "ore_valid": True,
        "sigma": {"x2": CERTIFIED, "x3": CERTIFIED, "x4": CERTIFIED, "x5": CERTIFIED},
        "elimination": ["x2 via r(x5x4)", "x1 via r(x4x2)"],
        "r41_reduced": "-x4*x4*x4*x5 + x4*x4*x5*x4 + x4*x5*x4*x4 - x5*x4*x4*x4",
        "overlap_x5x5x4x3": "-x4*x4*x4*x5 + x4*x4*x5*x4 + x4*x5*x4*x4 - x5*x4*x4*x4",
        "relation_type": [2, 2, 3],
        "attribution_4": [["Overlap", "x5x5(x4)x3"]],
    },
    "degree-types-5": {
        "degree_types": [[1, 1, 1, 1, 1], [1, 1, 1, 1, 2], [1, 1, 1, 2, 2], [1, 1, 1, 2, 3],
                         [1, 1, 2, 3, 3], [1, 1, 2, 3, 4], [1, 1, 2, 3, 5]],
    },
    "qpoly-11122": {
        "q": [1, -3, 1, 5, -5, -1, 3, -1],
        "q_times_series_is_one": True,
        "shift": 7,
        "driven_degree3": [5, 5, 5],
    },
    "qpoly-11123": {
        "q": [1, -3, 2, 1, 0, -1, -2, 3, -1],
        "q_times_series_is_one": True,
        "shift_223": 8,
        "shift_2234": 8,
        "driven_degree3": [1, 1, 2],
        "driven_degree4": [1, 1, 1, 2],
    },
}


class ScenarioResult:
    def __init__(self, sid, title):
        self.id = sid
        self.title = title
        self.checks = []
        self.error = None
        self.undetermined = None
        self.seconds = 0.0

    @property
    def status(self):
        if self.error is not None:
            return ERROR
        if any(not c["ok"] for c in self.checks):
            return FAIL
        if self.undetermined is not None:
            return UNDET
        return PASS

    def as_dict(self):
        d = {"id": self.id, "title": self.title, "status": self.status, "checks": self.checks}
        if self.error is not None:
            d["error"] = self.error
        if self.undetermined is not None:
            d["undetermined"] = self.undetermined
        return d


class Report:
    """Per-scenario verdicts; ``timings`` is kept apart so it can be ignored."""

    def __init__(self, results):
        self.results = list(results)

    @property
    def ok(self):
        return all(r.status == PASS for r in self.results)

    @property
    def exit_code(self):
        statuses = {r.status for r in self.results}
        if FAIL in statuses:
            return 1
        if ERROR in statuses:
            return 2
        if UNDET in statuses:
            return 3
        return 0

    def failures(self):
        return [(r.id, c["name"]) for r in self.results for c in r.checks if not c["ok"]]

    def as_dict(self, timings=True):
        counts = {s: sum(1 for r in self.results if r.status == s)
                  for s in (PASS, FAIL, UNDET, ERROR)}
        d = {"schema": SCHEMA_ID,
             "status": PASS if self.ok else FAIL,
             "summary": counts,
             "scenarios": [r.as_dict() for r in self.results]}
        if timings:
            d["timings"] = {r.id: round(r.seconds, 4) for r in self.results}
        return d

    def to_json(self, timings=True):
        return json.dumps(self.as_dict(timings), indent=2, sort_keys=True)

    def to_text(self):
        lines = []
        for r in self.results:
            lines.append("%-20s %-12s %s" % (r.id, r.status.upper(), r.title))
            for c in r.checks:
                mark = "ok " if c["ok"] else "BAD"
                line = "    %s %s = %s" % (mark, c["name"], json.dumps(c["actual"]))
                if not c["ok"]:
                    line += "  (expected %s)" % json.dumps(c["expected"])
                lines.append(line)
            if r.undetermined:
                lines.append("    undetermined: %s" % r.undetermined)
            if r.error:
                lines.append("    error: %s" % r.error)
        counts = self.as_dict(False)["summary"]
        lines.append("%d passed, %d failed, %d undetermined, %d errors"
                     % (counts[PASS], counts[FAIL], counts[UNDET], counts[ERROR]))
        return "\n".join(lines) + "\n"


def run_scenario(sid, expected=None):
    table = dict((s[0], s) for s in SCENARIOS)
    if sid not in table:
        raise KeyError("unknown scenario %r" % sid)
    _sid, title, fn = table[sid]
    want = (expected if expected is not None else EXPECTED).get(sid, {})
    result = ScenarioResult(sid, title)
    seen = set()

    def out(name, actual):
        seen.add(name)
        if name not in want:
            raise KeyError("scenario %s has no expectation named %s" % (sid, name))
        exp = want[name]
        result.checks.append({"name": name, "expected": exp, "actual": _plain(actual),
                              "ok": _same(exp, actual)})

    start = time.perf_counter()
    try:
        fn(out)
        missing = [k for k in want if k not in seen]
        if missing:
            result.error = "expectations never checked: %s" % ", ".join(missing)
    except Undetermined as exc:
        result.undetermined = str(exc)
    except Exception as exc:  # reported with scenario context
        result.error = "%s: %s" % (type(exc).__name__, exc)
    result.seconds = time.perf_counter() - start
    return Report([result])


def run_all(expected=None, ids=None, jobs=1):
    ids = list(ids) if ids is not None else SCENARIO_IDS
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda s: run_scenario(s, expected), ids))
    else:
        reports = [run_scenario(s, expected) for s in ids]
    return Report([r for rep in reports for r in rep.results])


def load_schema():
    with open(SCHEMA_PATH) as fh:
        return json.load(fh)
