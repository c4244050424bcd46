"""Degree-one presentations and minimal relation types.

The minimal generator count in degree d is the dimension of
I_d / (F+ I + I F+)_d.  Two routes compute it:

* from a completed basis, by ranking the products a*g (a an irreducible
  word, g a basis element) inside I_d / (I F+)_d, where an element is
  represented by normalising every word except its last letter;
* from the relations alone, by building the quotient algebra degree by
  degree with linear algebra and ranking the products a*r the same way.

The second route never touches the rewriting machinery, so the two act
as independent checks of each other.
"""
import heapq

from .freealg import VariableTable, Polynomial
from .hilbert import count_irreducible, series_free
from .ore import AlgebraPresentation, generated_in_degree_one, apply_elimination


class NotGeneratedInDegreeOne(ValueError):
    pass


class IncompleteBasis(ValueError):
    pass


class ParametricModeUnsupported(ValueError):
    pass


AUTO = "auto"


class EliminationChoice:
    def __init__(self, steps, reorder=None):
        self.steps = list(steps)
        self.reorder = list(reorder) if reorder is not None else None

    def resolve(self, p):
        out = []
        for k, var in self.steps:
            if isinstance(var, str):
                var = p.table.rank(var)
            out.append((k, var))
        return out


def to_degree_one(p, choice=AUTO):
    """Solve for every variable of degree > 1 and drop it from the presentation."""
    table = p.table
    if choice == AUTO or choice is None:
        plan = generated_in_degree_one(p)
        if not plan.ok:
            raise NotGeneratedInDegreeOne("cannot eliminate %s"
                                          % ", ".join(table.names[v] for v in plan.stuck))
        steps = [(k, v) for k, v, _e in plan.steps]
        reorder = None
    else:
        steps = choice.resolve(p)
        reorder = choice.reorder
    rels, _exprs = apply_elimination(p, steps)
    gone = {v for _k, v in steps}
    keep = [r for r in range(len(table)) if r not in gone]
    if any(table.degrees[r] != 1 for r in keep):
        raise NotGeneratedInDegreeOne("variables of degree > 1 remain: %s" % ", ".join(
            table.names[r] for r in keep if table.degrees[r] != 1))
    if reorder is not None:
        names = list(reorder)
        if sorted(names) != sorted(table.names[r] for r in keep):
            raise ValueError("reorder must list exactly the remaining variables")
        keep = [table.rank(n) for n in names]
    new_table = VariableTable([(table.names[r], table.degrees[r]) for r in keep])
    remap = {r: k for k, r in enumerate(keep)}
    out = []
    for q in rels:
        if not q:
            continue
        terms = {}
        for w, c in q.terms.items():
            if any(r in gone for r in w):
                raise NotGeneratedInDegreeOne("eliminated variable survives substitution")
            terms[tuple(remap[r] for r in w)] = c
        out.append(Polynomial(new_table, p.field, terms))
    adjunction = [remap[r] for r in p.adjunction if r in remap]
    return AlgebraPresentation(p.field, new_table, out, p.name, adjunction)


def ideal_dimension(gb, degrees, d):
    """dim I_d from the count of irreducible words."""
    if gb.complete_to is None or gb.complete_to < d:
        raise IncompleteBasis("basis complete to %s, need %d" % (gb.complete_to, d))
    leads = [r.lead for r in gb.rules]
    return series_free(degrees, d)[d] - count_irreducible(leads, degrees, d)[d]


class _Neg:
    """Heap entry ordering columns from largest to smallest."""
    __slots__ = ("k", "col")

    def __init__(self, k, col):
        self.k = k
        self.col = col

    def __lt__(self, other):
        return self.k > other.k


class _Echelon:
    """Sparse row echelon form keyed by the largest column of each row.

    Rows fed in are homogeneous, so plain tuple order on the columns agrees
    with the monomial order unless ``key`` says otherwise.
    """

    def __init__(self, field, key=None):
        self.field = field
        self.pivots = {}
        self.key = key

    def _top(self, row):
        if self.key is None:
            return max(row)
        return max(row, key=self.key)

    def reduce(self, row):
        row = dict(row)
        free = {}
        pivots = self.pivots
        key = self.key or (lambda c: c)
        heap = [_Neg(key(c), c) for c in row]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap).col
            v = row.pop(c, None)
            if v is None:
                continue
            piv = pivots.get(c)
            if piv is None:
                free[c] = v
                continue
            for k, x in piv.items():
                if k == c:
                    continue
                s = row.get(k)
                if s is None:
                    row[k] = -(v * x)
                    heapq.heappush(heap, _Neg(key(k), k))
                else:
                    t = s - v * x
                    if t:
                        row[k] = t
                    else:
                        del row[k]
        return free

    def insert(self, row):
        """Add a row; returns True if it raised the rank."""
        rest = self.reduce(row)
        if not rest:
            return False
        c = self._top(rest)
        inv = self.field.inv(rest[c])
        self.pivots[c] = {k: x * inv for k, x in rest.items()}
        return True

    def rank(self):
        return len(self.pivots)


def _require_exact(field):
    if field.kind == "Parametric":
        raise ParametricModeUnsupported("relation types need a concrete coefficient field")


def _prefix_normal(gb, terms):
    """Normal form of every word with its last letter held back."""
    out = {}
    for w, c in terms.items():
        head, last = w[:-1], w[-1:]
        for x, cx in gb.reduce_word(head).items():
            k = x + last
            v = c * cx
            s = out.get(k)
            out[k] = v if s is None else s + v
    return {w: c for w, c in out.items() if c}


def irreducible_words_by_degree(gb, N):
    degs = gb.table.degrees
    levels = [[()]]
    for k in range(1, N + 1):
        out = []
        for y in range(len(degs)):
            dy = degs[y]
            if dy <= k:
                for w in levels[k - dy]:
                    x = w + (y,)
                    if gb.is_irreducible(x):
                        out.append(x)
        levels.append(sorted(out))
    return levels


def minimal_counts_by_degree(gb, degrees=None, max_degree=8):
    """Per-degree minimal generator counts from a completed basis."""
    _require_exact(gb.field)
    if gb.complete_to is None or gb.complete_to < max_degree:
        raise IncompleteBasis("basis complete to %s, need %d" % (gb.complete_to, max_degree))
    table, field = gb.table, gb.field
    irr = irreducible_words_by_degree(gb, max_degree)
    counts = {}
    for d in range(1, max_degree + 1):
        ech = _Echelon(field)
        for g in gb.rules:
            e = g.degree
            if e >= d:
                continue
            for a in irr[d - e]:
                terms = {a + g.lead: field.one}
                for t, c in g.tail.items():
                    terms[a + t] = -c
                row = _prefix_normal(gb, terms)
                if row:
                    ech.insert(row)
        new = 0
        for g in gb.rules:
            if g.degree != d:
                continue
            terms = {g.lead: field.one}
            for t, c in g.tail.items():
                terms[t] = -c
            if ech.insert(_prefix_normal(gb, terms)):
                new += 1
        if new:
            counts[d] = new
    return counts


def relation_type_from_counts(counts):
    out = []
    for d in sorted(counts):
        out.extend([d] * counts[d])
    return tuple(out)


def minimal_generator_counts(gb, degrees=None, max_degree=8):
    """Ascending relation type (a_1, ..., a_n) through ``max_degree``."""
    return relation_type_from_counts(minimal_counts_by_degree(gb, degrees, max_degree))


def overlap_attribution(gb, d):
    """Which ambiguity (or input relation) produced each basis element of degree d."""
    table = gb.table
    out = []
    for r in gb.rules:
        if r.degree != d:
            continue
        origin = r.origin or ("input", None)
        entry = {"lead": table.short(r.lead)}
        if origin[0] == "ambiguity":
            _tag, kind, u, v, w, left, right = origin
            entry["source"] = kind
            if kind == "Overlap":
                entry["ambiguity"] = "%s(%s)%s" % (table.short(u), table.short(v), table.short(w))
            else:
                entry["ambiguity"] = "%s[%s]%s" % (table.short(u), table.short(v), table.short(w))
            entry["word"] = table.short(u + v + w)
            entry["left"] = table.short(left)
            entry["right"] = table.short(right)
        else:
            entry["source"] = "Original"
        out.append(entry)
    return out


class QuotientAlgebra:
    """Graded pieces of F/I built from the relations by linear algebra.

    A_k is presented as a quotient of the span of pairs (y, b), meaning
    basis element b of A_{k-deg y} followed by the letter y, modulo the
    images of a*r for relations r and basis elements a.
    """

    def __init__(self, relations, table, field, N):
        _require_exact(field)
        self.table = table
        self.field = field
        self.N = N
        degs = table.degrees
        self.dims = [1]
        self.minimal = {}
        self._basis = [[None]]          # free columns of each degree
        self._index = [{None: 0}]
        self._ech = [None]
        self._mult = {}
        by_degree = {}
        for r in relations:
            if r:
                by_degree.setdefault(r.homogeneous_degree(), []).append(r)
        for k in range(1, N + 1):
            ech = _Echelon(field)
            rows_plus = []
            rows_bare = []
            for e, rs in by_degree.items():
                if e > k:
                    continue
                for r in rs:
                    for i in range(self.dims[k - e]):
                        row = self._relation_row(r, k - e, i)
                        if row:
                            (rows_bare if e == k else rows_plus).append(row)
            for row in rows_plus:
                ech.insert(row)
            new = sum(1 for row in rows_bare if ech.insert(row))
            if new:
                self.minimal[k] = new
            cols = [(y, i) for y in range(len(degs)) if degs[y] <= k
                    for i in range(self.dims[k - degs[y]])]
            free = [c for c in cols if c not in ech.pivots]
            self._basis.append(free)
            self._index.append({c: n for n, c in enumerate(free)})
            self._ech.append(ech)
            self.dims.append(len(free))

    def _reduce(self, k, row):
        rest = self._ech[k].reduce(row)
        idx = self._index[k]
        return {idx[c]: v for c, v in rest.items()}

    def multiply(self, m, i, y):
        """Basis element i of A_m times letter y, as coordinates in A_{m+deg y}."""
        key = (m, i, y)
        hit = self._mult.get(key)
        if hit is None:
            k = m + self.table.degrees[y]
            hit = self._reduce(k, {(y, i): self.field.one})
            self._mult[key] = hit
        return hit

    def times_word(self, m, vec, word):
        degs = self.table.degrees
        for y in word:
            out = {}
            for i, c in vec.items():
                for j, x in self.multiply(m, i, y).items():
                    v = c * x
                    s = out.get(j)
                    out[j] = v if s is None else s + v
            vec = {j: c for j, c in out.items() if c}
            m += degs[y]
        return m, vec

    def _relation_row(self, r, m, i):
        row = {}
        for w, c in r.terms.items():
            head, last = w[:-1], w[-1]
            _deg, vec = self.times_word(m, {i: self.field.one}, head)
            for j, x in vec.items():
                col = (last, j)
                v = c * x
                s = row.get(col)
                row[col] = v if s is None else s + v
        return {col: v for col, v in row.items() if v}

    def ideal_dimension(self, d):
        return series_free(self.table.degrees, d)[d] - self.dims[d]

    def relation_type(self):
        return relation_type_from_counts(self.minimal)


def ideal_dimension_by_rank(presentation, d):
    """dim I_d computed from the relations alone, without a basis."""
    q = QuotientAlgebra(presentation.relations, presentation.table, presentation.field, d)
    return q.ideal_dimension(d)


def relation_type_by_rank(presentation, max_degree=8):
    q = QuotientAlgebra(presentation.relations, presentation.table, presentation.field, max_degree)
    return q.relation_type()
