"""Exact coefficient fields.

Three domains are supported: the rationals, the rationals extended by a
primitive cube root of unity ``w`` (w^2 + w + 1 = 0), and rational
functions in a declared list of parameters.  Rationals are plain
``fractions.Fraction`` values; the other two domains have small element
classes that support the usual arithmetic operators.
"""
from fractions import Fraction
import re


class DivisionByZero(ZeroDivisionError):
    pass


class NonInvertibleParametric(ArithmeticError):
    """Raised when a parametric coefficient cannot be certified nonzero."""

    def __init__(self, element, message=None):
        self.element = element
        if message is None:
            message = "coefficient %s is not certified invertible" % (element,)
        ArithmeticError.__init__(self, message)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def format_fraction(x):
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class RationalField:
    kind = "Rationals"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "RationalField()"

    def coerce(self, x):
        f = _frac(x)
        if f is None:
            if isinstance(x, str):
                return Fraction(x)
            raise TypeError("cannot coerce %r into Q" % (x,))
        return f

    def is_invertible(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("division by zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b

    def symbol(self, name):
        raise KeyError(name)

    def symbols(self):
        return []

    def format(self, a):
        return format_fraction(a)

    def header(self):
        return "field Q"

    def to_complex(self, a):
        return complex(a)


class Cyclo:
    """p + q*w with w a primitive cube root of unity."""

    __slots__ = ("p", "q")

    def __init__(self, p, q=0):
        self.p = Fraction(p)
        self.q = Fraction(q)

    def _lift(self, other):
        if isinstance(other, Cyclo):
            return other
        f = _frac(other)
        if f is None:
            return None
        return Cyclo(f, 0)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.p - o.p, self.q - o.q)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Cyclo(-self.p, -self.q)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        # w^2 = -1 - w
        pq = self.q * o.q
        return Cyclo(self.p * o.p - pq, self.p * o.q + self.q * o.p - pq)

    __rmul__ = __mul__

    def norm(self):
        return self.p * self.p - self.p * self.q + self.q * self.q

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise DivisionByZero("division by zero")
        return Cyclo((self.p - self.q) / n, -self.q / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Cyclo(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q))

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __repr__(self):
        return "Cyclo(%s, %s)" % (self.p, self.q)

    def __str__(self):
        return CyclotomicField.format_element(self)


class CyclotomicField:
    kind = "Cyclotomic3"

    def __init__(self):
        self.zero = Cyclo(0)
        self.one = Cyclo(1)
        self.w = Cyclo(0, 1)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField)

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return "CyclotomicField()"

    def coerce(self, x):
        if isinstance(x, Cyclo):
            return x
        f = _frac(x)
        if f is None:
            raise TypeError("cannot coerce %r into Q(w)" % (x,))
        return Cyclo(f)

    def is_invertible(self, a):
        return bool(a)

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a * b.inverse()

    def symbol(self, name):
        if name == "w":
            return self.w
        raise KeyError(name)

    def symbols(self):
        return ["w"]

    @staticmethod
    def format_element(a):
        if a.q == 0:
            return format_fraction(a.p)
        if a.q == 1:
            qs = "w"
        elif a.q == -1:
            qs = "-w"
        else:
            qs = format_fraction(a.q) + "*w"
        if a.p == 0:
            return qs
        if qs.startswith("-"):
            return "(%s - %s)" % (format_fraction(a.p), qs[1:])
        return "(%s + %s)" % (format_fraction(a.p), qs)

    def format(self, a):
        return self.format_element(a)

    def header(self):
        return "field Q(w) minpoly w^2+w+1"

    def to_complex(self, a):
        w = complex(-0.5, 3 ** 0.5 / 2)
        return float(a.p) + float(a.q) * w


def _monomial_str(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


class Param:
    """Element of a parametric field: a polynomial over a monomial.

    ``num`` maps exponent tuples to nonzero Fractions; ``den`` is the
    exponent tuple of a monic monomial sharing no factor with ``num``.
    Division is only allowed by certified invertible elements, so the
    denominator always stays a monomial in nonzero-set parameters.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None):
        self.field = field
        n = len(field.names)
        if den is None:
            den = (0,) * n
        num = {e: c for e, c in num.items() if c}
        if not num:
            den = (0,) * n
        elif any(den):
            low = list(den)
            for e in num:
                for k in range(n):
                    if e[k] < low[k]:
                        low[k] = e[k]
            if any(low):
                num = {tuple(a - b for a, b in zip(e, low)): c for e, c in num.items()}
                den = tuple(a - b for a, b in zip(den, low))
        self.num = num
        self.den = den

    def _lift(self, other):
        if isinstance(other, Param):
            if other.field is not self.field and other.field != self.field:
                raise TypeError("mixing elements of different parametric fields")
            return other
        f = _frac(other)
        if f is None:
            return None
        return self.field.coerce(f)

    def _combine(self, o, sign):
        n = len(self.den)
        den = tuple(max(a, b) for a, b in zip(self.den, o.den))
        num = {}
        sa = tuple(a - b for a, b in zip(den, self.den))
        for e, c in self.num.items():
            k = tuple(x + y for x, y in zip(e, sa))
            num[k] = num.get(k, 0) + c
        sb = tuple(a - b for a, b in zip(den, o.den))
        for e, c in o.num.items():
            k = tuple(x + y for x, y in zip(e, sb))
            num[k] = num.get(k, 0) + sign * c
        if n == 0:
            den = ()
        return Param(self.field, num, den)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, 1)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._combine(o, -1)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o._combine(self, -1)

    def __neg__(self):
        return Param(self.field, {e: -c for e, c in self.num.items()}, self.den)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        num = {}
        for e1, c1 in self.num.items():
            for e2, c2 in o.num.items():
                k = tuple(a + b for a, b in zip(e1, e2))
                num[k] = num.get(k, 0) + c1 * c2
        den = tuple(a + b for a, b in zip(self.den, o.den))
        return Param(self.field, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("division by zero")
        if not self.field.is_invertible(self):
            raise NonInvertibleParametric(self)
        (e, c), = self.num.items()
        return Param(self.field, {self.den: 1 / c}, e)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return False
        if o is None:
            return NotImplemented
        return self.den == o.den and self.num == o.num

    def __hash__(self):
        if not any(self.den) and len(self.num) <= 1:
            if not self.num:
                return hash(0)
            (e, c), = self.num.items()
            if not any(e):
                return hash(c)
        return hash((self.den, frozenset(self.num.items())))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return "Param(%s)" % (self.field.format(self),)

    def __str__(self):
        return self.field.format(self)

    def is_constant(self):
        return not any(self.den) and all(not any(e) for e in self.num)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("element depends on parameters")
        return self.num.get((0,) * len(self.den), Fraction(0))

    def numerator_terms(self):
        """Sorted (exponents, coefficient) pairs, graded-lex descending."""
        return sorted(self.num.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)


class ParametricField:
    kind = "Parametric"

    def __init__(self, names, nonzero=()):
        names = tuple(names)
        nonzero = tuple(nonzero)
        for name in names:
            if not _IDENT.match(name):
                raise ValueError("bad parameter name %r" % (name,))
        if len(set(names)) != len(names):
            raise ValueError("parameter names must be distinct")
        for name in nonzero:
            if name not in names:
                raise ValueError("nonzero parameter %r is not declared" % (name,))
        self.names = names
        self.nonzero = tuple(n for n in names if n in set(nonzero))
        self._nonzero_mask = tuple(n in set(nonzero) for n in names)
        self.zero = Param(self, {})
        self.one = Param(self, {(0,) * len(names): Fraction(1)})

    def __eq__(self, other):
        return (isinstance(other, ParametricField) and self.names == other.names
                and self.nonzero == other.nonzero)

    def __hash__(self):
        return hash((self.kind, self.names, self.nonzero))

    def __repr__(self):
        return "ParametricField(%r, nonzero=%r)" % (list(self.names), list(self.nonzero))

    def coerce(self, x):
        if isinstance(x, Param):
            return x
        f = _frac(x)
        if f is None:
            raise TypeError("cannot coerce %r into a parametric field" % (x,))
        return Param(self, {(0,) * len(self.names): f})

    def symbol(self, name):
        k = self.names.index(name)
        e = [0] * len(self.names)
        e[k] = 1
        return Param(self, {tuple(e): Fraction(1)})

    def symbols(self):
        return list(self.names)

    def is_invertible(self, a):
        if len(a.num) != 1:
            return False
        (e, _c), = a.num.items()
        for k, mask in enumerate(self._nonzero_mask):
            if not mask and (e[k] or a.den[k]):
                return False
        return True

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a * b.inverse()

    def format_poly(self, terms):
        out = []
        for e, c in sorted(terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True):
            mono = _monomial_str(self.names, e)
            if not mono:
                s = format_fraction(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = format_fraction(c) + "*" + mono
            out.append(s)
        if not out:
            return "0"
        text = out[0]
        for s in out[1:]:
            if s.startswith("-"):
                text += " - " + s[1:]
            else:
                text += " + " + s
        return text

    def format(self, a):
        num = self.format_poly(a.num)
        if not any(a.den):
            if len(a.num) > 1:
                return "(%s)" % num
            return num
        if len(a.num) > 1 or num.startswith("-") or "/" in num:
            num = "(%s)" % num
        return "%s/%s" % (num, _monomial_str(self.names, a.den)) if sum(a.den) == 1 \
            else "%s/(%s)" % (num, _monomial_str(self.names, a.den))

    def header(self):
        return "field Q(params: %s; nonzero: %s)" % (", ".join(self.names), ", ".join(self.nonzero))

    def evaluate(self, a, values, target):
        """Substitute parameters by elements of ``target``.

        ``values`` maps parameter names to target elements; missing names
        stay symbolic only if ``target`` is itself parametric and declares
        them.
        """
        def point(name):
            if name in values:
                return target.coerce(values[name]) if not isinstance(values[name], (Cyclo, Param)) \
                    else values[name]
            return target.symbol(name)

        pts = [point(n) for n in self.names]

        def mono(e):
            r = target.one
            for p, k in zip(pts, e):
                for _ in range(k):
                    r = r * p
            return r

        num = target.zero
        for e, c in a.num.items():
            num = num + target.coerce(c) * mono(e)
        den = mono(a.den)
        if not den:
            raise DivisionByZero("denominator vanishes at %r" % (values,))
        return target.div(num, den)

    def to_complex(self, a):
        raise TypeError("parametric elements have no numeric value")


def field_from_spec(kind, names=(), nonzero=()):
    if kind == "Rationals":
        return RationalField()
    if kind == "Cyclotomic3":
        return CyclotomicField()
    if kind == "Parametric":
        return ParametricField(names, nonzero)
    raise ValueError("unknown field kind %r" % (kind,))


def field_arith(a, b, op, field):
    """Apply ``op`` (add, sub, mul, div, neg) to elements of ``field``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return field.div(a, b)
    raise ValueError("unknown operation %r" % (op,))


def is_invertible(a, field):
    if not a:
        return False
    return field.is_invertible(a)
