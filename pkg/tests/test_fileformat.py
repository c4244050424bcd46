import glob
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ncgb.coeff import Cyclo, CyclotomicField, ParametricField, RationalField
from ncgb.fileformat import (InhomogeneousRelation, ParseError, parse_polynomial,
                             parse_presentation, print_presentation)
from ncgb.freealg import Polynomial, VariableTable
from ncgb.ore import AlgebraPresentation
from ncgb.scenarios import CORPUS_DIR

CORPUS = sorted(glob.glob(os.path.join(CORPUS_DIR, "*.pres")))


@pytest.mark.parametrize("path", CORPUS, ids=os.path.basename)
def test_corpus_round_trip(path):
    p = parse_presentation(path)
    assert parse_presentation(print_presentation(p)) == p


def test_parse_basic():
    p = parse_presentation("name demo\nfield Q\nvar x deg 1\nvar y deg 1\nrel y*x = x*y + 2/3*x^2\n")
    assert p.name == "demo"
    (r,) = p.relations
    assert r.coefficient(p.table.word("x", "x")) == Fraction(-2, 3)
    assert r.leading_term() == (p.table.word("y", "x"), 1)


def test_order_line_overrides_listing():
    p = parse_presentation("var a deg 1\nvar b deg 1\norder b < a\nrel a*b = b*a\n")
    assert p.table.names == ("b", "a")
    assert p.adjunction == (1, 0)
    assert p.relations[0].leading_term()[0] == p.table.word("a", "b")


def test_cyclotomic_and_parametric_coefficients():
    p = parse_presentation("field Q(w) minpoly w^2+w+1\nvar x deg 1\nvar y deg 1\n"
                           "rel y*x = w^2*x*y\n")
    assert p.relations[0].coefficient(p.table.word("x", "y")) == -Cyclo(-1, -1)
    q = parse_presentation("field Q(params: a, b; nonzero: a)\nvar x deg 1\nvar y deg 1\n"
                           "rel y*x = (b/a)*x*y\n")
    F = q.field
    assert q.relations[0].coefficient(q.table.word("x", "y")) == -(F.symbol("b") / F.symbol("a"))


def test_trailing_spaces_and_comments():
    p = parse_presentation("var x deg 1   \nvar y deg 1\nrel y*x = x*y    # commute\n")
    assert len(p.relations) == 1


@pytest.mark.parametrize("text,line", [
    ("var x deg 1\nrel x*x = = x\n", 2),
    ("var x deg 1\nrel x*z = x*x\n", 2),
    ("var x deg 1\nfoo bar\n", 2),
    ("var x deg 0\n", 1),
    ("field R\n", 1),
    ("field Q(params: a; nonzero: b)\n", 1),
    ("var x deg 1\nrel x*x = x*x\n", 2),
    ("var x deg 1\nrel x*(x = x*x\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_presentation(text)
    assert info.value.line == line


def test_column_reported():
    with pytest.raises(ParseError) as info:
        parse_presentation("var x deg 1\nrel x*x = x*$\n")
    assert info.value.column is not None and info.value.column > 10


def test_inhomogeneous_relation():
    with pytest.raises(InhomogeneousRelation) as info:
        parse_presentation("var x deg 1\nvar y deg 2\nrel y*x = x*x\n")
    assert info.value.line == 3
    assert "x*x" in info.value.term


FIELDS = [RationalField(), CyclotomicField(), ParametricField(["p", "q"], ["p"])]
small = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@st.composite
def presentations(draw):
    field = draw(st.sampled_from(FIELDS))
    n = draw(st.integers(1, 4))
    names = ["v%d" % k for k in range(n)]
    degs = [draw(st.integers(1, 3)) for _ in names]
    order = draw(st.permutations(names))
    table = VariableTable([(name, degs[names.index(name)]) for name in order])
    levels = [[()]]
    for k in range(1, 5):
        levels.append([w + (y,) for y in range(n) if table.degrees[y] <= k
                       for w in levels[k - table.degrees[y]]])
    rels = []
    for _ in range(draw(st.integers(0, 3))):
        d = draw(st.integers(1, 4))
        if not levels[d]:
            continue
        terms = {}
        for _ in range(draw(st.integers(1, 3))):
            w = draw(st.sampled_from(levels[d]))
            c = field.coerce(draw(small))
            if field.kind == "Cyclotomic3" and draw(st.booleans()):
                c = c * field.w
            if field.kind == "Parametric" and draw(st.booleans()):
                c = c * field.symbol("q") / field.symbol("p")
            terms[w] = c
        p = Polynomial(table, field, terms)
        if p:
            rels.append(p)
    adj = [table.rank(name) for name in names]
    return AlgebraPresentation(field, table, rels, draw(st.sampled_from(["", "sample"])), adj)


@settings(max_examples=150, deadline=None)
@given(presentations())
def test_print_parse_round_trip(p):
    assert parse_presentation(print_presentation(p)) == p


@settings(max_examples=100, deadline=None)
@given(presentations())
def test_polynomial_format_parses_back(p):
    for r in p.relations:
        assert parse_polynomial(r.format(), p.table, p.field) == r
