"""Words and polynomials in a free associative algebra.

A word is a tuple of variable ranks.  Ranks index a VariableTable, and a
larger rank means a larger variable.  Words are compared by weighted
degree first and then lexicographically from the left, so the plain
tuple ``(degree, word)`` is a valid sort key.
"""


class DegreeMismatch(ValueError):
    pass


class ZeroPolynomial(ValueError):
    pass


LESS, EQUAL, GREATER = -1, 0, 1


class VariableTable:
    __slots__ = ("names", "degrees", "_index")

    def __init__(self, entries):
        names = []
        degrees = []
        for name, deg in entries:
            if deg < 1:
                raise ValueError("variable %s must have positive degree" % name)
            names.append(name)
            degrees.append(int(deg))
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self._index = {n: i for i, n in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, VariableTable) and self.names == other.names
                and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        return "VariableTable(%r)" % (list(zip(self.names, self.degrees)),)

    def entries(self):
        return list(zip(self.names, self.degrees))

    def rank(self, name):
        return self._index[name]

    def word(self, *names):
        return tuple(self._index[n] for n in names)

    def degree(self, w):
        d = self.degrees
        return sum(d[r] for r in w)

    def key(self, w):
        return (self.degree(w), w)

    def word_str(self, w):
        if not w:
            return "1"
        return "*".join(self.names[r] for r in w)

    def short(self, w):
        if not w:
            return "1"
        return "".join(self.names[r] for r in w)


def compare_words(u, v, table):
    du, dv = table.degree(u), table.degree(v)
    if du != dv:
        return LESS if du < dv else GREATER
    for a, b in zip(u, v):
        if a != b:
            return LESS if a < b else GREATER
    # equal degree and a common prefix: only identical words get here,
    # since every letter has positive degree
    if len(u) != len(v):
        raise AssertionError("prefix tie between words of equal degree")
    return EQUAL


def words_of_degree(degrees, d):
    """All words of weighted degree d over letters with the given degrees."""
    table = [[] for _ in range(d + 1)]
    table[0].append(())
    for k in range(1, d + 1):
        out = table[k]
        for r, dr in enumerate(degrees):
            if dr <= k:
                for w in table[k - dr]:
                    out.append(w + (r,))
    return sorted(table[d])


class Polynomial:
    """Sparse map from words to nonzero field elements."""

    __slots__ = ("table", "field", "terms", "_lead")

    def __init__(self, table, field, terms=None):
        self.table = table
        self.field = field
        if terms:
            self.terms = {w: c for w, c in terms.items() if c}
        else:
            self.terms = {}
        self._lead = None

    @classmethod
    def monomial(cls, table, field, w, c=None):
        if c is None:
            c = field.one
        return cls(table, field, {tuple(w): c})

    @classmethod
    def variable(cls, table, field, name):
        return cls.monomial(table, field, (table.rank(name),))

    def _new(self, terms):
        p = Polynomial.__new__(Polynomial)
        p.table = self.table
        p.field = self.field
        p.terms = terms
        p._lead = None
        return p

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return self._new(terms)

    def __sub__(self, other):
        return self + other.scale(-self.field.one)

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def scale(self, c):
        if not c:
            return self._new({})
        return self._new({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = terms.get(w)
                c = c1 * c2
                s = c if s is None else s + c
                terms[w] = s
        return self._new({w: c for w, c in terms.items() if c})

    def degrees(self):
        return sorted({self.table.degree(w) for w in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def homogeneous_degree(self):
        ds = self.degrees()
        if len(ds) != 1:
            return None
        return ds[0]

    def sorted_terms(self, reverse=True):
        key = self.table.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        if self._lead is None:
            key = self.table.key
            w = max(self.terms, key=key)
            self._lead = (w, self.terms[w])
        return self._lead

    def coefficient(self, w):
        return self.terms.get(tuple(w), self.field.zero)

    def variables(self):
        return sorted({r for w in self.terms for r in w})

    def substitute(self, var, replacement):
        """Replace every occurrence of variable rank ``var`` by ``replacement``."""
        deg = self.table.degrees[var]
        rd = replacement.homogeneous_degree()
        if replacement.terms and rd != deg:
            raise DegreeMismatch("replacement of degree %s for variable of degree %d" % (rd, deg))
        out = {}
        rep = list(replacement.terms.items())
        for w, c in self.terms.items():
            if var not in w:
                s = out.get(w)
                out[w] = c if s is None else s + c
                continue
            partial = {(): c}
            for r in w:
                nxt = {}
                if r == var:
                    for pw, pc in partial.items():
                        for rw, rc in rep:
                            k = pw + rw
                            v = pc * rc
                            s = nxt.get(k)
                            nxt[k] = v if s is None else s + v
                else:
                    for pw, pc in partial.items():
                        nxt[pw + (r,)] = pc
                partial = nxt
            for k, v in partial.items():
                s = out.get(k)
                out[k] = v if s is None else s + v
        return self._new({w: c for w, c in out.items() if c})

    def map_coefficients(self, fn, field):
        p = Polynomial(self.table, field, {w: fn(c) for w, c in self.terms.items()})
        return p

    def format(self):
        return format_terms(self.sorted_terms(), self.table, self.field)

    def __repr__(self):
        return "Polynomial(%s)" % self.format()

    __str__ = format


def format_term(w, c, table, field):
    letters = table.word_str(w) if w else ""
    if not letters:
        return field.format(c)
    if c == 1:
        return letters
    if c == -1:
        return "-" + letters
    return field.format(c) + "*" + letters


def format_terms(items, table, field):
    out = ""
    for i, (w, c) in enumerate(items):
        s = format_term(w, c, table, field)
        if i == 0:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out or "0"


def leading_term(p, table=None):
    return p.leading_term()


def poly_arith(p, q, op):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError("unknown operation %r" % (op,))


def substitute(p, var, replacement):
    if isinstance(var, str):
        var = p.table.rank(var)
    return p.substitute(var, replacement)
