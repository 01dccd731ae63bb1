"""Exact coefficient arithmetic: rationals, polynomials in t, and the field Q(t).

A Scalar is either a gmpy2.mpq rational or a TRat (reduced quotient of two
TPoly polynomials in the central-charge parameter t, monic denominator).
Mixed arithmetic promotes the rational into Q(t).  All values are immutable
and in canonical form, so equality is structural.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

Q0 = mpq(0)
Q1 = mpq(1)


class ArithmeticDomainError(ArithmeticError):
    """Division by zero inside the scalar tower."""


class PoleError(ArithmeticError):
    """Evaluation of a Q(t) scalar at a root of its denominator."""

    def __init__(self, divisor, t0):
        super().__init__(f"denominator {divisor} vanishes at t={t0}")
        self.divisor = divisor
        self.t0 = t0


def rat(p, q=1):
    """Exact rational p/q."""
    if q == 0:
        raise ArithmeticDomainError("rational with zero denominator")
    return mpq(p, q)


class TPoly:
    """Univariate polynomial in t over Q; coefficient i belongs to t**i.

    Stored as a tuple without trailing zeros; the zero polynomial is ().
    """

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=()):
        cs = [x if isinstance(x, type(Q0)) else mpq(x) for x in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.c = tuple(cs)
        self._hash = None

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.c

    def degree(self):
        return len(self.c) - 1  # -1 for the zero polynomial

    def leading(self):
        if not self.c:
            raise ArithmeticDomainError("leading coefficient of zero polynomial")
        return self.c[-1]

    def is_constant(self):
        return len(self.c) <= 1

    def constant(self):
        return self.c[0] if self.c else Q0

    def __eq__(self, other):
        return isinstance(other, TPoly) and self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("TPoly", self.c))
        return self._hash

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return TPoly(out)

    def __neg__(self):
        return TPoly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        a, b = self.c, other.c
        if not a or not b:
            return TP_ZERO
        out = [Q0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return TPoly(out)

    def scale(self, q):
        if q == 0:
            return TP_ZERO
        return TPoly([x * q for x in self.c])

    def shift(self, k):
        """Multiply by t**k."""
        if not self.c:
            return TP_ZERO
        return TPoly((Q0,) * k + self.c)

    def monic(self):
        if not self.c:
            return self
        lead = self.c[-1]
        if lead == 1:
            return self
        return self.scale(1 / lead)

    def divmod(self, other):
        if other.is_zero():
            raise ArithmeticDomainError("polynomial division by zero")
        rem = list(self.c)
        dq, db = len(rem) - 1, other.degree()
        if dq < db:
            return TP_ZERO, self
        quo = [Q0] * (dq - db + 1)
        lead = other.c[-1]
        for i in range(dq, db - 1, -1):
            if rem[i] == 0:
                continue
            f = rem[i] / lead
            quo[i - db] = f
            for j, y in enumerate(other.c):
                rem[i - db + j] -= f * y
        return TPoly(quo), TPoly(rem)

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticDomainError(f"inexact polynomial division: {self} / {other}")
        return q

    def derivative(self):
        return TPoly([i * x for i, x in enumerate(self.c)][1:])

    def eval(self, t0):
        acc = Q0
        for x in reversed(self.c):
            acc = acc * t0 + x
        return acc

    # -- gcd machinery -----------------------------------------------------

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a.monic()

    def squarefree_part(self):
        if self.is_zero() or self.is_constant():
            return TP_ONE
        g = self.gcd(self.derivative())
        return self.exact_div(g).monic()

    def squarefree_factors(self):
        """Monic irreducible-over-the-rationals-not-required squarefree factors.

        Returns the set of monic factors obtained by splitting off rational
        roots; whatever remains rootless is kept as one factor.
        """
        p = self.squarefree_part()
        out = set()
        for r in p.rational_roots():
            out.add(TPoly([-r, Q1]))
            p = p.exact_div(TPoly([-r, Q1]))
        p = p.monic()
        if not p.is_constant():
            out.add(p)
        return out

    def rational_roots(self):
        """All rational roots, via the rational root theorem."""
        if self.is_zero() or self.is_constant():
            return []
        p = self
        roots = []
        if p.c[0] == 0:
            roots.append(Q0)
            k = next(i for i, x in enumerate(p.c) if x != 0)
            p = TPoly(p.c[k:])
        if p.is_constant():
            return roots
        den_lcm = 1
        for x in p.c:
            den_lcm = den_lcm * x.denominator // _gcd_int(den_lcm, x.denominator)
        ip = [mpz(x * den_lcm) for x in p.c]
        a0, an = abs(ip[0]), abs(ip[-1])
        for pnum in _divisors(a0):
            for pden in _divisors(an):
                for cand in (mpq(pnum, pden), mpq(-pnum, pden)):
                    if cand not in roots and p.eval(cand) == 0:
                        roots.append(cand)
        return sorted(roots)

    # -- text --------------------------------------------------------------

    def __repr__(self):
        return f"TPoly({render_tpoly(self)!r})"

    def __str__(self):
        return render_tpoly(self)


TP_ZERO = TPoly()
TP_ONE = TPoly([1])
TP_T = TPoly([0, 1])


def _gcd_int(a, b):
    a, b = abs(int(a)), abs(int(b))
    while b:
        a, b = b, a % b
    return a if a else 1


def _divisors(n):
    n = int(abs(n))
    if n == 0:
        return [1]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


class TRat:
    """Reduced fraction of polynomials in t; denominator monic and nonzero."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=TP_ONE, reduced=False):
        if den.is_zero():
            raise ArithmeticDomainError("TRat with zero denominator")
        if not reduced:
            if num.is_zero():
                den = TP_ONE
            else:
                g = num.gcd(den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
                lead = den.leading()
                if lead != 1:
                    num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den
        self._hash = None

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, TRat):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("TRat", self.num.c, self.den.c))
        return self._hash

    def __repr__(self):
        return f"TRat({srender(self)!r})"


T = TRat(TP_T)  # the Scalar t


# -- Scalar operations (Scalar = mpq | TRat) --------------------------------

def as_trat(x):
    if isinstance(x, TRat):
        return x
    return TRat(TPoly([x]), TP_ONE, reduced=True)


def _demote(x: TRat):
    """Canonical form: a constant fraction collapses to mpq."""
    if x.num.is_constant() and x.den.is_constant():
        return x.num.constant()
    return x


def sadd(x, y):
    if isinstance(x, TRat) or isinstance(y, TRat):
        a, b = as_trat(x), as_trat(y)
        return _demote(TRat(a.num * b.den + b.num * a.den, a.den * b.den))
    return x + y


def sneg(x):
    if isinstance(x, TRat):
        return TRat(-x.num, x.den, reduced=True)
    return -x


def ssub(x, y):
    return sadd(x, sneg(y))


def smul(x, y):
    if isinstance(x, TRat) or isinstance(y, TRat):
        a, b = as_trat(x), as_trat(y)
        if a.num.is_zero() or b.num.is_zero():
            return Q0
        return _demote(TRat(a.num * b.num, a.den * b.den))
    return x * y


def sinv(x):
    if isinstance(x, TRat):
        if x.num.is_zero():
            raise ArithmeticDomainError("inverse of zero scalar")
        return _demote(TRat(x.den, x.num))
    if x == 0:
        raise ArithmeticDomainError("inverse of zero scalar")
    return 1 / x


def sdiv(x, y):
    return smul(x, sinv(y))


def sis_zero(x):
    if isinstance(x, TRat):
        return x.num.is_zero()
    return x == 0


def seq(x, y):
    return sis_zero(ssub(x, y))


def sscale_int(x, n):
    return smul(x, mpq(n))


def is_parametric(x):
    return isinstance(x, TRat)


def evaluate_at_t(x, t0):
    """Substitute t -> t0 (a rational); raises PoleError on a vanishing denominator."""
    if not isinstance(x, TRat):
        return x
    dv = x.den.eval(t0)
    if dv == 0:
        raise PoleError(x.den, t0)
    return x.num.eval(t0) / dv


def scalar_size(x):
    """Deterministic size measure used for pivot tie-breaking."""
    if isinstance(x, TRat):
        bits = sum(_q_bits(c) for c in x.num.c) + sum(_q_bits(c) for c in x.den.c)
        return (x.num.degree() + x.den.degree() + 2, bits)
    return (0, _q_bits(x))


def _q_bits(q):
    return int(mpz(q.numerator).bit_length() + mpz(q.denominator).bit_length())


# -- text rendering and exact round-trip parsing -----------------------------

def render_rat(q) -> str:
    return str(q)


def render_tpoly(p: TPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.c):
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            tpow = "t" if i == 1 else f"t^{i}"
            if c == 1:
                term = tpow
            elif c == -1:
                term = f"-{tpow}"
            else:
                term = f"{c}*{tpow}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def srender(x) -> str:
    if isinstance(x, TRat):
        if x.den == TP_ONE:
            return render_tpoly(x.num)
        return f"({render_tpoly(x.num)})/({render_tpoly(x.den)})"
    return render_rat(x)


def parse_rat(text: str):
    return mpq(text.strip())


def parse_tpoly(text: str) -> TPoly:
    text = text.strip()
    if text in ("0", ""):
        return TP_ZERO
    coeffs = {}
    # split on top-level + and - (no parentheses occur in polynomial text)
    terms = []
    cur = ""
    for ch in text:
        if ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "^", "e")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    for term in terms:
        term = term.replace(" ", "")
        if not term:
            continue
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if "t" not in term:
            coeffs[0] = coeffs.get(0, Q0) + sign * mpq(term)
            continue
        coef_part, _, pow_part = term.partition("t")
        coef_part = coef_part.rstrip("*")
        coef = mpq(coef_part) if coef_part else Q1
        if pow_part.startswith("^"):
            k = int(pow_part[1:])
        elif not pow_part:
            k = 1
        else:
            raise ValueError(f"cannot parse polynomial term {term!r}")
        coeffs[k] = coeffs.get(k, Q0) + sign * coef
    out = [Q0] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = v
    return TPoly(out)


def sparse_scalar(text: str):
    """Parse the output of srender back into a Scalar."""
    text = text.strip()
    if text.startswith("(") and ")/(" in text:
        ntext, _, dtext = text[1:-1].partition(")/(")
        return _demote(TRat(parse_tpoly(ntext), parse_tpoly(dtext)))
    if "t" in text:
        return _demote(TRat(parse_tpoly(text)))
    return parse_rat(text)
