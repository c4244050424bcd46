"""Line-oriented presentation files.

    name <text>
    field Q | field Q(w) minpoly w^2+w+1 | field Q(params: a,b; nonzero: a)
    var <name> deg <int>
    order <name> < <name> < ...
    rel <polynomial> = <polynomial>

Lines starting with ``#`` are comments.  Variables are listed in
adjunction order; ``order`` optionally gives a different total order.
"""
import re

from .coeff import RationalField, CyclotomicField, ParametricField
from .freealg import VariableTable, Polynomial, format_terms
from .ore import AlgebraPresentation


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = "line %d" % line
            if column is not None:
                where += ", column %d" % column
            where += ": "
        ValueError.__init__(self, where + message)


class InhomogeneousRelation(ValueError):
    def __init__(self, message, term=None, line=None):
        self.term = term
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        ValueError.__init__(self, message)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text, lineno, offset):
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex) + offset + 1 if m.lastindex else None
        if m.group(1):
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2):
            tokens.append(("name", m.group(2), col))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()=":
                raise ParseError("unexpected character %r" % ch, lineno, col)
            tokens.append(("op", ch, col))
        pos = m.end()
    return tokens


class _ExprParser:
    def __init__(self, tokens, table, field, lineno):
        self.tokens = tokens
        self.i = 0
        self.table = table
        self.field = field
        self.lineno = lineno
        self.symbols = set(field.symbols())

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return (None, None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, message):
        col = self.peek()[2]
        raise ParseError(message, self.lineno, col)

    def const(self, c):
        return Polynomial(self.table, self.field, {(): c})

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if t[1] == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                value = value * self.factor()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                col = self.peek()[2]
                d = self.factor()
                if set(d.terms) - {()}:
                    raise ParseError("cannot divide by a polynomial in the variables", self.lineno, col)
                c = d.terms.get(())
                if not c:
                    raise ParseError("division by zero", self.lineno, col)
                value = value.scale(self.field.inv(c))
            else:
                return value

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "int":
                raise ParseError("expected an integer exponent", self.lineno, t[2])
            out = self.const(self.field.one)
            for _ in range(t[1]):
                out = out * base
            return out
        return base

    def atom(self):
        t = self.take()
        kind, val, col = t
        if kind == "int":
            return self.const(self.field.coerce(val))
        if kind == "name":
            if val in self.table.names:
                return Polynomial.monomial(self.table, self.field, (self.table.rank(val),))
            if val in self.symbols:
                return self.const(self.field.symbol(val))
            raise ParseError("unknown name %r" % val, self.lineno, col)
        if kind == "op" and val == "(":
            inner = self.expr()
            t = self.take()
            if t[:2] != ("op", ")"):
                raise ParseError("expected ')'", self.lineno, t[2])
            return inner
        raise ParseError("unexpected %s" % ("end of line" if kind is None else repr(val)), self.lineno, col)


def parse_polynomial(text, table, field, lineno=None, offset=0):
    tokens = _tokenize(text, lineno, offset)
    p = _ExprParser(tokens, table, field, lineno)
    value = p.expr()
    if p.i != len(tokens):
        p.error("unexpected trailing input")
    return value


def _parse_field(rest, lineno):
    text = " ".join(rest.split())
    if text == "Q":
        return RationalField()
    compact = text.replace(" ", "")
    if compact.startswith("Q(w)"):
        if compact not in ("Q(w)minpolyw^2+w+1", "Q(w)"):
            raise ParseError("only the minimal polynomial w^2+w+1 is supported", lineno)
        return CyclotomicField()
    m = re.match(r"Q\(\s*params\s*:\s*([^;)]*?)\s*(?:;\s*nonzero\s*:\s*([^)]*?)\s*)?\)\s*$", text)
    if m:
        names = [s.strip() for s in m.group(1).split(",") if s.strip()]
        nonzero = [s.strip() for s in (m.group(2) or "").split(",") if s.strip()]
        try:
            return ParametricField(names, nonzero)
        except ValueError as exc:
            raise ParseError(str(exc), lineno)
    raise ParseError("unrecognised field %r" % text, lineno)


def parse_presentation(source):
    """Parse presentation text (or a path ending in .pres)."""
    if "\n" not in source and source.endswith(".pres"):
        with open(source) as fh:
            source = fh.read()
    name = ""
    field = None
    variables = []
    order = None
    rel_lines = []
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        head, _, rest = stripped.partition(" ")
        if head == "name":
            name = rest.strip()
        elif head == "field":
            if field is not None:
                raise ParseError("field declared twice", lineno)
            field = _parse_field(rest, lineno)
        elif head == "var":
            m = re.match(r"([A-Za-z_][A-Za-z0-9_]*)\s+deg\s+(\d+)\s*$", rest.strip())
            if not m:
                raise ParseError("expected 'var <name> deg <int>'", lineno)
            if int(m.group(2)) < 1:
                raise ParseError("degrees must be positive", lineno)
            variables.append((m.group(1), int(m.group(2))))
        elif head == "order":
            order = [s.strip() for s in rest.split("<")]
        elif head == "rel":
            rel_lines.append((lineno, rest, indent + len(head) + 1))
        else:
            raise ParseError("unknown directive %r" % head, lineno, indent + 1)
    if field is None:
        field = RationalField()
    names = [n for n, _ in variables]
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name")
    if field.kind != "Rationals" and set(names) & set(field.symbols()):
        raise ParseError("variable names clash with field symbols")
    degree_of = dict(variables)
    if order is None:
        order = names
    if sorted(order) != sorted(names):
        raise ParseError("order must list every variable exactly once")
    table = VariableTable([(n, degree_of[n]) for n in order])
    adjunction = tuple(table.rank(n) for n in names)
    relations = []
    for lineno, text, offset in rel_lines:
        if text.count("=") != 1:
            raise ParseError("relation needs exactly one '='", lineno)
        lhs, rhs = text.split("=")
        left = parse_polynomial(lhs, table, field, lineno, offset)
        right = parse_polynomial(rhs, table, field, lineno, offset + len(lhs) + 1)
        p = left - right
        if not p:
            raise ParseError("relation is identically zero", lineno)
        lead, _ = p.leading_term()
        d = table.degree(lead)
        for w, c in p.sorted_terms():
            if table.degree(w) != d:
                term = format_terms([(w, c)], table, field)
                raise InhomogeneousRelation("term %s has degree %d, expected %d"
                                            % (term, table.degree(w), d), term, lineno)
        relations.append(p)
    return AlgebraPresentation(field, table, relations, name, adjunction)


def format_relation(p):
    table, field = p.table, p.field
    items = p.sorted_terms()
    lead, lc = items[0]
    left = format_terms([(lead, lc)], table, field)
    right = format_terms([(w, -c) for w, c in items[1:]], table, field)
    return "rel %s = %s" % (left, right)


def print_presentation(pres):
    table = pres.table
    lines = []
    if pres.name:
        lines.append("name %s" % pres.name)
    lines.append(pres.field.header())
    for r in pres.adjunction:
        lines.append("var %s deg %d" % (table.names[r], table.degrees[r]))
    if tuple(pres.adjunction) != tuple(range(len(table))):
        lines.append("order " + " < ".join(table.names))
    for p in pres.relations:
        lines.append(format_relation(p))
    return "\n".join(lines) + "\n"
