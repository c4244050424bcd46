"""Reduction systems on the free algebra.

Normal forms, ambiguity enumeration, diamond checks and degree-bounded
completion for homogeneous systems.  The reduction strategy always
rewrites the greatest reducible word at its leftmost redex.  Because the
redex choice depends only on the word, this is implemented as a memoised
per-word reduction that is extended linearly.
"""
import os

from .coeff import NonInvertibleParametric
from .freealg import Polynomial


OVERLAP = "Overlap"
INCLUSION = "Inclusion"


class RewriteRule:
    __slots__ = ("lead", "tail", "degree", "origin")

    def __init__(self, lead, tail, degree, origin=None):
        self.lead = lead
        self.tail = tail
        self.degree = degree
        self.origin = origin

    def polynomial(self, table, field):
        """lead - tail as a Polynomial."""
        terms = {w: -c for w, c in self.tail.items()}
        terms[self.lead] = field.one
        return Polynomial(table, field, terms)

    def tail_polynomial(self, table, field):
        return Polynomial(table, field, dict(self.tail))

    def __eq__(self, other):
        return (isinstance(other, RewriteRule) and self.lead == other.lead
                and self.tail == other.tail)

    def __hash__(self):
        return hash(self.lead)

    def __repr__(self):
        return "RewriteRule(%r -> %r)" % (self.lead, self.tail)


class Ambiguity:
    __slots__ = ("kind", "left", "right", "u", "v", "w")

    def __init__(self, kind, left, right, u, v, w):
        self.kind = kind
        self.left = left
        self.right = right
        self.u = u
        self.v = v
        self.w = w

    def word(self):
        return self.u + self.v + self.w

    def key(self, table):
        return (table.degree(self.word()), self.word(), self.left, self.right)

    def describe(self, table):
        if self.kind == OVERLAP:
            return "%s(%s)%s" % (table.short(self.u), table.short(self.v), table.short(self.w))
        return "%s[%s]%s" % (table.short(self.u), table.short(self.v), table.short(self.w))

    def __eq__(self, other):
        return (isinstance(other, Ambiguity) and self.kind == other.kind
                and (self.left, self.right, self.u, self.v, self.w)
                == (other.left, other.right, other.u, other.v, other.w))

    def __hash__(self):
        return hash((self.kind, self.left, self.right, self.u, self.v, self.w))

    def __repr__(self):
        return "Ambiguity(%s, %d, %d, %r, %r, %r)" % (
            self.kind, self.left, self.right, self.u, self.v, self.w)


def make_rule(p, field=None, table=None, origin=None):
    """Monicise a nonzero homogeneous polynomial into a rule."""
    field = field or p.field
    lead, lc = p.leading_term()
    if not field.is_invertible(lc):
        raise NonInvertibleParametric(lc)
    inv = field.inv(lc)
    tail = {}
    for w, c in p.terms.items():
        if w != lead:
            tail[w] = -(c * inv)
    return RewriteRule(lead, tail, p.table.degree(lead), origin)


def _add_into(out, terms, scale):
    for w, c in terms.items():
        v = c * scale
        s = out.get(w)
        out[w] = v if s is None else s + v


class RewriteSystem:
    def __init__(self, table, field, rules=(), reduced=False, complete_to=None, trace=None):
        self.table = table
        self.field = field
        self.rules = tuple(rules)
        self.reduced = reduced
        self.complete_to = complete_to
        self.trace = list(trace or [])
        self._leads = {}
        for i, r in enumerate(self.rules):
            if r.lead in self._leads:
                raise ValueError("duplicate leading word %s" % table.short(r.lead))
            self._leads[r.lead] = i
        self._lengths = sorted({len(r.lead) for r in self.rules})
        self._memo = {}

    @classmethod
    def from_polynomials(cls, polys, table=None, field=None):
        polys = list(polys)
        table = table or polys[0].table
        field = field or polys[0].field
        rules = [make_rule(p, field, table, ("input", k)) for k, p in enumerate(polys) if p]
        return cls(table, field, rules)

    def __len__(self):
        return len(self.rules)

    def leads(self):
        return [r.lead for r in self.rules]

    def rule_for(self, lead):
        i = self._leads.get(tuple(lead))
        return None if i is None else self.rules[i]

    def polynomials(self):
        return [r.polynomial(self.table, self.field) for r in self.rules]

    def rules_by_degree(self):
        out = {}
        for r in self.rules:
            out.setdefault(r.degree, []).append(r)
        return out

    def find_redex(self, w):
        leads = self._leads
        n = len(w)
        for pos in range(n):
            for L in self._lengths:
                if pos + L > n:
                    break
                i = leads.get(w[pos:pos + L])
                if i is not None:
                    return i, pos
        return None

    def is_irreducible(self, w):
        return self.find_redex(w) is None

    def reduce_word(self, w):
        memo = self._memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        one = self.field.one
        rules = self.rules
        stack = [w]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            red = self.find_redex(x)
            if red is None:
                memo[x] = {x: one}
                stack.pop()
                continue
            i, pos = red
            rule = rules[i]
            pre = x[:pos]
            post = x[pos + len(rule.lead):]
            missing = False
            for tw in rule.tail:
                y = pre + tw + post
                if y not in memo:
                    stack.append(y)
                    missing = True
            if missing:
                continue
            out = {}
            for tw, tc in rule.tail.items():
                _add_into(out, memo[pre + tw + post], tc)
            memo[x] = {y: c for y, c in out.items() if c}
            stack.pop()
        return memo[w]

    def nf_terms(self, terms):
        out = {}
        for w, c in terms.items():
            if c:
                _add_into(out, self.reduce_word(w), c)
        return {w: c for w, c in out.items() if c}

    def normal_form(self, p):
        return Polynomial(self.table, self.field, self.nf_terms(p.terms))

    def forget_memo(self, min_degree=0):
        if min_degree <= 0:
            self._memo = {}
            return
        deg = self.table.degree
        self._memo = {w: v for w, v in self._memo.items() if deg(w) < min_degree}

    def max_degree(self):
        return max((r.degree for r in self.rules), default=0)

    def same_rules(self, other):
        return {r.lead: r.tail for r in self.rules} == {r.lead: r.tail for r in other.rules}


def normal_form(p, sys):
    return sys.normal_form(p)


def _overlaps(A, B):
    for k in range(1, min(len(A), len(B))):
        if A[-k:] == B[:k]:
            yield k


def ambiguities(sys, max_degree=None, degree=None):
    """All overlap and inclusion ambiguities, sorted by degree then word."""
    table = sys.table
    rules = sys.rules
    out = []
    for i, ri in enumerate(rules):
        A = ri.lead
        for j, rj in enumerate(rules):
            B = rj.lead
            for k in _overlaps(A, B):
                out.append(Ambiguity(OVERLAP, i, j, A[:-k], A[-k:], B[k:]))
            if i != j and len(A) < len(B):
                for pos in range(len(B) - len(A) + 1):
                    if B[pos:pos + len(A)] == A:
                        out.append(Ambiguity(INCLUSION, i, j, B[:pos], A, B[pos + len(A):]))
    if max_degree is not None:
        out = [a for a in out if table.degree(a.word()) <= max_degree]
    if degree is not None:
        out = [a for a in out if table.degree(a.word()) == degree]
    out.sort(key=lambda a: a.key(table))
    return out


def s_difference(a, sys):
    """Unreduced S-difference of an ambiguity, as a term dict."""
    left = sys.rules[a.left]
    right = sys.rules[a.right]
    out = {}
    if a.kind == OVERLAP:
        # (uv)w - u(vw): rewrite with the left rule minus rewrite with the right
        for t, c in left.tail.items():
            _add_into(out, {t + a.w: c}, 1)
        for t, c in right.tail.items():
            _add_into(out, {a.u + t: c}, -1)
    else:
        # u(v)w - (uvw): the smaller rule inside minus the enclosing rule
        for t, c in left.tail.items():
            _add_into(out, {a.u + t + a.w: c}, 1)
        for t, c in right.tail.items():
            _add_into(out, {t: c}, -1)
    return {w: c for w, c in out.items() if c}


def resolve_check(a, sys):
    """Normal form of the S-difference; zero iff the ambiguity resolves."""
    return Polynomial(sys.table, sys.field, sys.nf_terms(s_difference(a, sys)))


def inner_first_difference(a, sys):
    """NF of u(vw) minus NF of (uv)w, the opposite sign to resolve_check."""
    return -resolve_check(a, sys)


def find_ambiguity(sys, word):
    """The ambiguity whose word is ``word`` (names or ranks), or None."""
    table = sys.table
    if word and isinstance(word[0], str):
        word = table.word(*word)
    word = tuple(word)
    for a in ambiguities(sys, degree=table.degree(word)):
        if a.word() == word:
            return a
    return None


class DiamondReport:
    def __init__(self, resolved, unresolved, checked):
        self.resolved = resolved
        self.unresolved = unresolved
        self.checked = checked

    @property
    def ok(self):
        return not self.unresolved

    def __repr__(self):
        return "DiamondReport(resolved=%d, unresolved=%d)" % (self.resolved, len(self.unresolved))


def diamond_check(sys, max_degree=None):
    amb = ambiguities(sys, max_degree=max_degree)
    unresolved = []
    for a in amb:
        r = resolve_check(a, sys)
        if r:
            unresolved.append((a, r))
    return DiamondReport(len(amb) - len(unresolved), unresolved, len(amb))


def default_max_degree(polys):
    env = os.environ.get("NCGB_MAX_DEG")
    if env:
        return int(env)
    top = max((p.homogeneous_degree() or 0 for p in polys), default=0)
    return 2 * top + 2


def _check_homogeneous(polys):
    for p in polys:
        if p and not p.is_homogeneous():
            raise ValueError("completion needs homogeneous input: %s" % p.format())


def _contains(big, small):
    L = len(small)
    return any(big[p:p + L] == small for p in range(len(big) - L + 1))


def inter_reduce(sys):
    """Reduce leads against each other and normalise every tail."""
    table, field = sys.table, sys.field
    rules = list(sys.rules)
    changed = True
    while changed:
        changed = False
        for r in rules:
            others = [x for x in rules if x is not r]
            if any(_contains(r.lead, x.lead) for x in others):
                rest = RewriteSystem(table, field, others)
                p = rest.normal_form(r.polynomial(table, field))
                rules = others
                if p:
                    rules.append(make_rule(p, field, table, r.origin))
                changed = True
                break
    base = RewriteSystem(table, field, rules)
    out = []
    for r in rules:
        tail = base.nf_terms(r.tail)
        out.append(RewriteRule(r.lead, tail, r.degree, r.origin))
    out.sort(key=lambda r: table.key(r.lead))
    return RewriteSystem(table, field, out, reduced=True, complete_to=sys.complete_to,
                         trace=sys.trace)


class _Working:
    """Mutable rule store used during completion."""

    def __init__(self, table, field):
        self.table = table
        self.field = field
        self.rules = []
        self.sys = RewriteSystem(table, field)

    def rebuild(self, degree):
        memo = self.sys._memo
        self.sys = RewriteSystem(self.table, self.field, self.rules)
        deg = self.table.degree
        self.sys._memo = {w: v for w, v in memo.items() if deg(w) < degree}

    def add(self, rule):
        self.rules.append(rule)
        self.rebuild(rule.degree)


def complete(sys_or_polys, max_degree=None, table=None, field=None):
    """Degree-by-degree completion of a homogeneous system.

    Accepts a RewriteSystem or a list of polynomials.  At each degree the
    ambiguities among existing rules are resolved first (greatest
    ambiguity word first), then the input polynomials of that degree are
    reduced; every nonzero remainder becomes a new rule.  Returns the
    reduced basis truncated at ``max_degree`` with a trace.
    """
    if isinstance(sys_or_polys, RewriteSystem):
        table = sys_or_polys.table
        field = sys_or_polys.field
        polys = sys_or_polys.polynomials()
        origins = [r.origin or ("input", k) for k, r in enumerate(sys_or_polys.rules)]
    else:
        polys = [p for p in sys_or_polys]
        if polys:
            table = table or polys[0].table
            field = field or polys[0].field
        origins = [("input", k) for k in range(len(polys))]
    _check_homogeneous(polys)
    if max_degree is None:
        max_degree = default_max_degree(polys)
    by_degree = {}
    for p, o in zip(polys, origins):
        if p:
            by_degree.setdefault(p.homogeneous_degree(), []).append((p, o))
    work = _Working(table, field)
    trace = []
    for d in range(1, max_degree + 1):
        cur = work.sys
        amb = [a for a in ambiguities(cur, degree=d)]
        amb.sort(key=lambda a: (a.word(), a.left, a.right), reverse=True)
        for a in amb:
            left = cur.rules[a.left]
            right = cur.rules[a.right]
            raw = s_difference(a, cur)
            rem = work.sys.nf_terms(raw)
            event = {"degree": d, "source": "ambiguity", "kind": a.kind,
                     "ambiguity": a.describe(table), "word": table.short(a.word()),
                     "left": table.short(left.lead), "right": table.short(right.lead)}
            if rem:
                p = Polynomial(table, field, rem)
                origin = ("ambiguity", a.kind, a.u, a.v, a.w, left.lead, right.lead)
                rule = make_rule(p, field, table, origin)
                work.add(rule)
                event["added"] = table.short(rule.lead)
                event["value"] = p.format()
            trace.append(event)
        for p, o in by_degree.get(d, []):
            rem = work.sys.nf_terms(p.terms)
            event = {"degree": d, "source": "input", "index": o[1] if o[0] == "input" else None}
            if rem:
                q = Polynomial(table, field, rem)
                rule = make_rule(q, field, table, o if o[0] != "ambiguity" else o)
                work.add(rule)
                event["added"] = table.short(rule.lead)
                event["value"] = q.format()
            trace.append(event)
        # tails of this degree may mention leads added later in the degree
        fresh = [r for r in work.rules if r.degree == d]
        if fresh:
            base = work.sys
            rest = [r for r in work.rules if r.degree != d]
            redone = [RewriteRule(r.lead, base.nf_terms(r.tail), r.degree, r.origin) for r in fresh]
            work.rules = rest + redone
            work.rebuild(d)
    rules = sorted(work.rules, key=lambda r: table.key(r.lead))
    return RewriteSystem(table, field, rules, reduced=True, complete_to=max_degree, trace=trace)


def attribution(sys, degree=None):
    """Map each rule lead to the ambiguity or input that produced it."""
    out = []
    for r in sys.rules:
        if degree is not None and r.degree != degree:
            continue
        out.append((r.lead, r.origin))
    return out
