"""Iterated Ore-extension and enveloping-algebra presentations."""
from itertools import combinations_with_replacement

from .coeff import NonInvertibleParametric, is_invertible
from .freealg import Polynomial, format_terms
from .rewrite import RewriteSystem, complete, diamond_check


class AlgebraPresentation:
    """Field, variable table and homogeneous relations (stored as lhs - rhs).

    ``adjunction`` lists variable ranks in the order the variables were
    adjoined; it defaults to the table order.
    """

    def __init__(self, field, table, relations, name="", adjunction=None):
        self.field = field
        self.table = table
        self.relations = [p for p in relations]
        self.name = name
        if adjunction is None:
            adjunction = tuple(range(len(table)))
        self.adjunction = tuple(adjunction)
        for p in self.relations:
            if not p:
                raise ValueError("relations must be nonzero")
            if not p.is_homogeneous():
                raise ValueError("relation %s is not homogeneous" % p.format())

    def __eq__(self, other):
        return (isinstance(other, AlgebraPresentation) and self.field == other.field
                and self.table == other.table and self.adjunction == other.adjunction
                and self.relations == other.relations and self.name == other.name)

    def __repr__(self):
        return "AlgebraPresentation(%r, %d relations)" % (self.name, len(self.relations))

    def var(self, name):
        return self.table.rank(name)

    def position(self):
        return {r: k for k, r in enumerate(self.adjunction)}

    def relation_label(self, k):
        lead, _ = self.relations[k].leading_term()
        return "r(%s)" % self.table.short(lead)

    def specialize(self, values, field, name=None):
        """Substitute parameter values, producing a presentation over ``field``."""
        src = self.field
        rels = []
        for p in self.relations:
            q = Polynomial(self.table, field,
                           {w: src.evaluate(c, values, field) for w, c in p.terms.items()})
            if q:
                rels.append(q)
        return AlgebraPresentation(field, self.table, rels, name or self.name, self.adjunction)

    def with_relations(self, relations, name=None):
        return AlgebraPresentation(self.field, self.table, relations,
                                   self.name if name is None else name, self.adjunction)


class SigmaDeltaData:
    __slots__ = ("j", "i", "sigma_image", "delta_image", "relation")

    def __init__(self, j, i, sigma_image, delta_image, relation):
        self.j = j
        self.i = i
        self.sigma_image = sigma_image
        self.delta_image = delta_image
        self.relation = relation

    def rebuild(self):
        """x_j x_i - sigma(x_i) x_j - delta(x_i)."""
        table, field = self.sigma_image.table, self.sigma_image.field
        xj = Polynomial.monomial(table, field, (self.j,))
        xi = Polynomial.monomial(table, field, (self.i,))
        return xj * xi - self.sigma_image * xj - self.delta_image

    def as_dict(self):
        table = self.sigma_image.table
        return {"pair": [table.names[self.j], table.names[self.i]],
                "sigma_image": self.sigma_image.format(),
                "delta_image": self.delta_image.format()}


class Failure:
    __slots__ = ("kind", "pair", "detail", "value", "ambiguity")

    def __init__(self, kind, pair=None, detail="", value=None, ambiguity=None):
        self.kind = kind
        self.pair = pair
        self.detail = detail
        self.value = value
        self.ambiguity = ambiguity

    def as_dict(self, table):
        d = {"kind": self.kind}
        if self.pair is not None:
            d["pair"] = [table.names[self.pair[0]], table.names[self.pair[1]]]
        if self.detail:
            d["detail"] = self.detail
        if self.value is not None:
            d["witness"] = self.value.format()
        return d

    def __repr__(self):
        return "Failure(%s, %r, %r)" % (self.kind, self.pair, self.detail)


class OreReport:
    def __init__(self, ok, sigma_delta, failures, diamond=None):
        self.ok = ok
        self.sigma_delta = sigma_delta
        self.failures = failures
        self.diamond = diamond

    def failure_kinds(self):
        return [f.kind for f in self.failures]

    def sigma(self, j, i):
        for sd in self.sigma_delta:
            if sd.j == j and sd.i == i:
                return sd.sigma_image
        raise KeyError((j, i))

    def delta(self, j, i):
        for sd in self.sigma_delta:
            if sd.j == j and sd.i == i:
                return sd.delta_image
        raise KeyError((j, i))


def _split_tail(p, j, i, pos, field):
    """Return (sigma, delta, problem) for relation p with lead x_j x_i."""
    table = p.table
    lead, lc = p.leading_term()
    inv = field.inv(lc)
    sigma = {}
    delta = {}
    for w, c in p.terms.items():
        if w == lead:
            continue
        c = -(c * inv)
        if any(pos[r] > pos[j] for r in w):
            return None, None, "tail word %s uses a later variable" % table.short(w)
        count = w.count(j)
        if count == 0:
            delta[w] = c
        elif count == 1 and w[-1] == j:
            sigma[w[:-1]] = c
        else:
            return None, None, "tail word %s has x_j in the wrong place" % table.short(w)
    return (Polynomial(table, field, sigma), Polynomial(table, field, delta), None)


def _structure(p):
    """Shared shape checks; returns (pairs, sigma-delta list, failures)."""
    table, field = p.table, p.field
    pos = p.position()
    failures = []
    pairs = {}
    for k, rel in enumerate(p.relations):
        if not rel.is_homogeneous():
            failures.append(Failure("Inhomogeneous", None, p.relation_label(k)))
            continue
        lead, lc = rel.leading_term()
        if len(lead) != 2 or pos[lead[0]] <= pos[lead[1]]:
            failures.append(Failure("BadLeadShape", None, "relation %d has leading word %s"
                                    % (k, table.short(lead))))
            continue
        pair = (lead[0], lead[1])
        if pair in pairs:
            failures.append(Failure("BadLeadShape", pair, "two relations with leading word %s"
                                    % table.short(lead)))
            continue
        if not is_invertible(lc, field):
            failures.append(Failure("BadLeadShape", pair, "leading coefficient %s not invertible"
                                    % field.format(lc)))
            continue
        pairs[pair] = k
    order = list(p.adjunction)
    for a in range(len(order)):
        for b in range(a):
            pair = (order[a], order[b])
            if pair not in pairs:
                failures.append(Failure("MissingPair", pair,
                                        "no relation with leading word %s" % table.short(pair)))
    data = []
    for pair in sorted(pairs, key=lambda pr: (pos[pr[0]], pos[pr[1]])):
        k = pairs[pair]
        sigma, delta, problem = _split_tail(p.relations[k], pair[0], pair[1], pos, field)
        if problem:
            failures.append(Failure("BadTailShape", pair, problem))
            continue
        data.append(SigmaDeltaData(pair[0], pair[1], sigma, delta, k))
    return pairs, data, failures


def _diamond(p, pairs):
    rels = [p.relations[k] for k in sorted(pairs.values())]
    sys = RewriteSystem.from_polynomials(rels, p.table, p.field)
    report = diamond_check(sys)
    failures = []
    for a, value in report.unresolved:
        failures.append(Failure("UnresolvedAmbiguity", None, a.describe(p.table), value, a))
    return report, failures


def validate_ore(p):
    """Check the iterated Ore shape and the diamond condition."""
    pairs, data, failures = _structure(p)
    report = None
    if not failures:
        report, extra = _diamond(p, pairs)
        failures.extend(extra)
    return OreReport(not failures, data, failures, report)


def validate_enveloping(p):
    """Ore shape with identity sigma and linear, degree-matched delta."""
    pairs, data, failures = _structure(p)
    table = p.table
    for sd in data:
        xi = {(sd.i,): p.field.one}
        if sd.sigma_image.terms != xi:
            failures.append(Failure("NonIdentitySigma", (sd.j, sd.i),
                                    "sigma(%s) = %s" % (table.names[sd.i], sd.sigma_image.format()),
                                    sd.sigma_image))
        target = table.degrees[sd.j] + table.degrees[sd.i]
        for w in sd.delta_image.terms:
            if len(w) != 1 or table.degrees[w[0]] != target:
                failures.append(Failure("NonlinearDelta", (sd.j, sd.i),
                                        "delta(%s) = %s" % (table.names[sd.i], sd.delta_image.format()),
                                        sd.delta_image))
                break
    report = None
    if not [f for f in failures if f.kind in ("MissingPair", "BadLeadShape", "BadTailShape",
                                                 "Inhomogeneous")]:
        report, extra = _diamond(p, pairs)
        failures.extend(extra)
    return OreReport(not failures, data, failures, report)


CERTIFIED = "Certified"
NOT_INJECTIVE = "NotInjective"
UNDETERMINED = "Undetermined"


class SigmaVerdict:
    def __init__(self, verdict, degree=None, witness=None, minor=None, matrices=None):
        self.verdict = verdict
        self.degree = degree
        self.witness = witness
        self.minor = minor
        self.matrices = matrices or {}

    def __repr__(self):
        return "SigmaVerdict(%s, degree=%r)" % (self.verdict, self.degree)

    def as_dict(self, field):
        d = {"verdict": self.verdict}
        if self.degree is not None:
            d["degree"] = self.degree
        if self.witness is not None:
            d["witness"] = self.witness.format()
        if self.minor is not None:
            d["minor"] = field.format(self.minor)
        return d


def determinant(matrix, field):
    """Division-free determinant by expansion over column subsets."""
    n = len(matrix)
    if n == 0:
        return field.one
    # dets[mask] = determinant of rows 0..popcount-1 against the columns in mask
    dets = {0: field.one}
    for r in range(n):
        nxt = {}
        for mask, val in dets.items():
            if not val:
                continue
            sign_base = 0
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    sign_base += 1
                    continue
                entry = matrix[r][c]
                if not entry:
                    continue
                # sign: number of chosen columns to the right of c
                right = bin(mask >> (c + 1)).count("1")
                term = entry * val
                if right % 2:
                    term = -term
                key = mask | bit
                s = nxt.get(key)
                nxt[key] = term if s is None else s + term
        dets = nxt
    return dets.get((1 << n) - 1, field.zero)


def left_kernel(matrix, field):
    """Division-free elimination; returns (rank, kernel vectors)."""
    rows = [list(r) for r in matrix]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    combo = [[field.one if a == b else field.zero for b in range(m)] for a in range(m)]
    rank = 0
    used = [False] * m
    for c in range(ncols):
        piv = None
        for r in range(m):
            if not used[r] and rows[r][c]:
                piv = r
                break
        if piv is None:
            continue
        used[piv] = True
        rank += 1
        p = rows[piv][c]
        for r in range(m):
            if r != piv and not used[r] and rows[r][c]:
                a = rows[r][c]
                rows[r] = [p * x - a * y for x, y in zip(rows[r], rows[piv])]
                combo[r] = [p * x - a * y for x, y in zip(combo[r], combo[piv])]
    kernel = [combo[r] for r in range(m) if not used[r]]
    return rank, kernel


def irreducible_words(sys, letters, degree):
    """Irreducible words of the given degree over a subset of letters."""
    degs = sys.table.degrees
    levels = {0: [()]}
    for k in range(1, degree + 1):
        out = []
        for y in letters:
            dy = degs[y]
            if dy <= k:
                for w in levels.get(k - dy, []):
                    x = w + (y,)
                    if sys.is_irreducible(x):
                        out.append(x)
        levels[k] = out
    return sorted(levels.get(degree, []))


def _prefix_system(p, j):
    pos = p.position()
    prefix = [r for r in p.adjunction if pos[r] < pos[j]]
    pre = set(prefix)
    rels = [q for q in p.relations
            if all(r in pre for w in q.terms for r in w)]
    top = max((p.table.degrees[r] for r in prefix), default=0)
    gb = complete(rels, top, p.table, p.field) if rels else RewriteSystem(p.table, p.field)
    return prefix, gb


def check_sigma_injective(p, j, max_degree=None):
    """Certify sigma_j bijective via its matrices on generator-degree pieces."""
    if isinstance(j, str):
        j = p.table.rank(j)
    table, field = p.table, p.field
    pos = p.position()
    prefix, gb = _prefix_system(p, j)
    images = {}
    for k, rel in enumerate(p.relations):
        lead, _ = rel.leading_term()
        if len(lead) == 2 and lead[0] == j and lead[1] in set(prefix):
            sigma, _delta, problem = _split_tail(rel, j, lead[1], pos, field)
            if problem:
                raise ValueError(problem)
            images[lead[1]] = sigma
    degrees = sorted({table.degrees[r] for r in prefix})
    if max_degree is not None:
        degrees = [d for d in degrees if d <= max_degree]
    matrices = {}
    pending = None
    for d in degrees:
        basis = irreducible_words(gb, prefix, d)
        index = {w: n for n, w in enumerate(basis)}
        matrix = []
        for w in basis:
            img = {(): field.one}
            for r in w:
                if r not in images:
                    raise ValueError("no relation gives sigma(%s)" % table.names[r])
                nxt = {}
                for a, ca in img.items():
                    for b, cb in images[r].terms.items():
                        key = a + b
                        v = ca * cb
                        s = nxt.get(key)
                        nxt[key] = v if s is None else s + v
                img = nxt
            img = gb.nf_terms(img)
            row = [field.zero] * len(basis)
            for x, c in img.items():
                row[index[x]] = c
            matrix.append(row)
        matrices[d] = (basis, matrix)
        rank, kernel = left_kernel(matrix, field)
        if rank < len(basis):
            vec = kernel[0]
            witness = Polynomial(table, field, {w: c for w, c in zip(basis, vec) if c})
            return SigmaVerdict(NOT_INJECTIVE, d, witness, matrices=matrices)
        if field.kind == "Parametric" and pending is None:
            det = determinant(matrix, field)
            if not field.is_invertible(det):
                pending = (d, det)
    if pending is not None:
        return SigmaVerdict(UNDETERMINED, pending[0], minor=pending[1], matrices=matrices)
    return SigmaVerdict(CERTIFIED, matrices=matrices)


class EliminationUndetermined(NonInvertibleParametric):
    pass


class EliminationPlan:
    def __init__(self, steps, stuck, relations):
        self.steps = steps
        self.stuck = stuck
        self.relations = relations

    @property
    def ok(self):
        return not self.stuck

    def describe(self, table):
        return [(table.names[v], k, e.format()) for k, v, e in self.steps]


def _solve_for(rel, var, field):
    c = rel.terms[(var,)]
    rest = {w: x for w, x in rel.terms.items() if w != (var,)}
    inv = field.inv(c)
    return Polynomial(rel.table, field, {w: -(x * inv) for w, x in rest.items()})


def apply_elimination(p, steps):
    """Substitute the solved expressions of ``steps`` into every relation."""
    rels = list(p.relations)
    exprs = []
    for k, var in steps:
        rel = rels[k]
        if not rel or (var,) not in rel.terms:
            raise ValueError("relation %d does not contain %s on its own"
                             % (k, p.table.names[var]))
        c = rel.terms[(var,)]
        if not is_invertible(c, p.field):
            raise NonInvertibleParametric(c)
        expr = _solve_for(rel, var, p.field)
        rels = [q.substitute(var, expr) for q in rels]
        exprs = [(kk, vv, e.substitute(var, expr)) for kk, vv, e in exprs]
        exprs.append((k, var, expr))
    return rels, exprs


def generated_in_degree_one(p):
    """Find an order in which every variable of degree > 1 can be solved for.

    At each step the candidate (relation, variable) whose current relation
    has the smallest leading word is used.  Raises EliminationUndetermined
    if a smaller candidate exists whose coefficient is not certified.
    """
    table, field = p.table, p.field
    big = [r for r in range(len(table)) if table.degrees[r] > 1]
    rels = list(p.relations)
    done = []
    steps = []
    while True:
        cands = []
        for k, rel in enumerate(rels):
            if not rel:
                continue
            key = table.key(rel.leading_term()[0])
            for v in big:
                if v in done:
                    continue
                c = rel.terms.get((v,))
                if c:
                    cands.append((key, v, k, c))
        if not cands:
            break
        cands.sort(key=lambda t: (t[0], t[1], t[2]))
        pick = None
        for key, v, k, c in cands:
            if is_invertible(c, field):
                pick = (k, v)
                break
            raise EliminationUndetermined(c, "cannot certify coefficient %s of %s in %s"
                                          % (field.format(c), table.names[v], rel_str(rels[k])))
        k, v = pick
        done.append(v)
        steps.append((k, v))
        expr = _solve_for(rels[k], v, field)
        rels = [q.substitute(v, expr) for q in rels]
    _rels, exprs = apply_elimination(p, steps)
    stuck = [v for v in big if v not in done]
    return EliminationPlan(exprs, stuck, _rels)


def rel_str(p):
    return format_terms(p.sorted_terms(), p.table, p.field)


def degree_type(p):
    return tuple(sorted(p.table.degrees))


def _sum_witness(entries, k):
    d = entries[k]
    for a in range(len(entries)):
        for b in range(a + 1, len(entries)):
            if entries[a] + entries[b] == d:
                return (a, b)
    return None


def degree_type_witnesses(entries):
    """For each entry above 1, a pair of distinct positions summing to it."""
    out = {}
    for k, d in enumerate(entries):
        if d > 1:
            out[k] = _sum_witness(entries, k)
    return out


def is_admissible_degree_type(entries):
    ones = entries.count(1)
    if ones < 2:
        return False
    if ones == 2 and entries.count(2) >= 2:
        return False
    return all(w is not None for w in degree_type_witnesses(entries).values())


def enumerate_degree_types(n):
    """Ascending degree multisets of size n passing the three filters."""
    out = []
    for combo in combinations_with_replacement(range(1, 2 * n + 1), n):
        if is_admissible_degree_type(list(combo)):
            out.append(tuple(combo))
    return sorted(out)
