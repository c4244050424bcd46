"""Truncated power series and Hilbert-series bookkeeping."""
from collections import deque


class NegativeCount(ValueError):
    pass


class NonUnitConstantTerm(ValueError):
    pass


class PowerSeries:
    """Integer power series truncated at order N (N+1 coefficients)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, N=None):
        coeffs = [int(c) for c in coeffs]
        if N is not None:
            coeffs = (coeffs + [0] * (N + 1))[:N + 1]
        self.coeffs = coeffs

    @property
    def N(self):
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == list(other)
        return NotImplemented

    def __repr__(self):
        return "PowerSeries(%r)" % (self.coeffs,)

    def truncate(self, N):
        return PowerSeries(self.coeffs[:N + 1], N)

    def __add__(self, other):
        N = min(self.N, other.N)
        return PowerSeries([a + b for a, b in zip(self.coeffs[:N + 1], other.coeffs[:N + 1])])

    def __sub__(self, other):
        N = min(self.N, other.N)
        return PowerSeries([a - b for a, b in zip(self.coeffs[:N + 1], other.coeffs[:N + 1])])

    def __mul__(self, other):
        N = min(self.N, other.N)
        a, b = self.coeffs, other.coeffs
        out = [0] * (N + 1)
        for i in range(N + 1):
            if a[i]:
                ai = a[i]
                for j in range(N + 1 - i):
                    out[i + j] += ai * b[j]
        return PowerSeries(out)

    def is_one(self):
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def format(self, var="t"):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else "%s^%d" % (var, k))
            if not mono:
                s = str(abs(c))
            elif abs(c) == 1:
                s = mono
            else:
                s = "%d%s" % (abs(c), mono)
            parts.append(("-" if c < 0 else "+", s))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            text += " %s %s" % (sign, s)
        return text + " + O(%s^%d)" % (var, self.N + 1)


def series_weighted_poly(degrees, N):
    """Expansion of 1/prod(1 - t^d) through t^N."""
    out = [0] * (N + 1)
    out[0] = 1
    for d in degrees:
        for k in range(d, N + 1):
            out[k] += out[k - d]
    return PowerSeries(out)


def series_free(degrees, N):
    """Expansion of 1/(1 - sum t^d): the number of words of each degree."""
    out = [0] * (N + 1)
    out[0] = 1
    for k in range(1, N + 1):
        out[k] = sum(out[k - d] for d in degrees if d <= k)
    return PowerSeries(out)


def _automaton(leads, alphabet):
    """Trie with failure links; returns (transitions, dead-state flags)."""
    goto = [{}]
    dead = [False]
    for w in leads:
        s = 0
        for a in w:
            nxt = goto[s].get(a)
            if nxt is None:
                goto.append({})
                dead.append(False)
                nxt = len(goto) - 1
                goto[s][a] = nxt
            s = nxt
        dead[s] = True
    fail = [0] * len(goto)
    delta = [dict() for _ in goto]
    queue = deque()
    for a in alphabet:
        t = goto[0].get(a)
        if t is None:
            delta[0][a] = 0
        else:
            delta[0][a] = t
            fail[t] = 0
            queue.append(t)
    while queue:
        s = queue.popleft()
        dead[s] = dead[s] or dead[fail[s]]
        for a in alphabet:
            t = goto[s].get(a)
            if t is None:
                delta[s][a] = delta[fail[s]][a]
            else:
                fail[t] = delta[fail[s]][a]
                delta[s][a] = t
                queue.append(t)
    return delta, dead


def count_irreducible(leads, degrees, N):
    """Count words of each degree avoiding every word in ``leads`` as a factor."""
    leads = [tuple(w) for w in leads]
    if any(len(w) == 0 for w in leads):
        return PowerSeries([0] * (N + 1))
    alphabet = list(range(len(degrees)))
    delta, dead = _automaton(leads, alphabet)
    # counts[k][state]
    counts = [dict() for _ in range(N + 1)]
    counts[0][0] = 1
    for k in range(N + 1):
        row = counts[k]
        for s, c in row.items():
            for a in alphabet:
                k2 = k + degrees[a]
                if k2 > N:
                    continue
                t = delta[s][a]
                if dead[t]:
                    continue
                counts[k2][t] = counts[k2].get(t, 0) + c
    return PowerSeries([sum(row.values()) for row in counts])


def hilbert_driven_counts(leads_by_degree, target, N, degrees):
    """Number of new leading words each degree must contribute.

    At degree d, counts the words avoiding all leads of degree <= d and
    subtracts the target coefficient.
    """
    out = {}
    for d in range(1, N + 1):
        leads = [w for k, ws in leads_by_degree.items() if k <= d for w in ws]
        diff = count_irreducible(leads, degrees, d)[d] - target[d]
        if diff < 0:
            raise NegativeCount("degree %d: irreducible count below target by %d" % (d, -diff))
        if diff:
            out[d] = diff
    return out


def q_from_resolution(b, rel_type, l, N):
    """1 - b t + sum t^a - sum t^(l-a) + b t^(l-1) - t^l, truncated at N."""
    out = [0] * (max(N, l) + 1)
    out[0] += 1
    out[1] -= b
    for a in rel_type:
        out[a] += 1
        out[l - a] -= 1
    out[l - 1] += b
    out[l] -= 1
    return PowerSeries(out[:N + 1], N)


def series_inverse(s):
    if s[0] != 1:
        raise NonUnitConstantTerm("constant term is %d" % s[0])
    N = s.N
    out = [0] * (N + 1)
    out[0] = 1
    for k in range(1, N + 1):
        out[k] = -sum(s[j] * out[k - j] for j in range(1, k + 1))
    return PowerSeries(out)


def solve_shift(b, rel_type, target):
    """The shift l with q * target = 1 through the target's order, or None."""
    N = target.N
    low = max(list(rel_type) + [1]) + 1
    found = None
    for l in range(low, N + 1):
        q = q_from_resolution(b, rel_type, l, N)
        if (q * target).is_one():
            if found is not None:
                return None
            found = l
    return found
