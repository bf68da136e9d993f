"""Exact arithmetic in the coefficient field Q(q, c).

A polynomial in Z[q, c] is stored as a dict mapping (q_exponent, c_exponent)
to a nonzero int.  A Scalar is a fraction num/den of two such dicts, kept in
a canonical form:

  * gcd(num, den) = 1 as polynomials over Q,
  * the integer contents of num and den are coprime,
  * the leading coefficient of den under deglex (q before c) is positive.

Negative powers of q (and of c) are therefore denominator monomials; the
whole field Q(q, c) is covered by one fraction representation.

Canonical form makes equality a plain dict comparison, which the rewriting
and linear-algebra layers rely on heavily.
"""

from fractions import Fraction
from functools import lru_cache


class ScalarError(Exception):
    """Base class for scalar arithmetic errors."""


class ScalarDivisionError(ScalarError):
    """Division by the zero scalar."""


class PoleError(ScalarError):
    """Evaluation point lies on the vanishing locus of the denominator."""


# ---------------------------------------------------------------------------
# polynomial dicts  {(q_exp, c_exp): int}
# ---------------------------------------------------------------------------

P_ZERO = {}
P_ONE = {(0, 0): 1}


def p_const(k):
    return {(0, 0): k} if k else {}


def p_mono(eq, ec, k=1):
    return {(eq, ec): k} if k else {}


def p_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for m, k in b.items():
        s = out.get(m, 0) + k
        if s:
            out[m] = s
        else:
            del out[m]
    return out


def p_neg(a):
    return {m: -k for m, k in a.items()}


def p_sub(a, b):
    if not b:
        return dict(a)
    out = dict(a)
    for m, k in b.items():
        s = out.get(m, 0) - k
        if s:
            out[m] = s
        else:
            del out[m]
    return out


def p_mul(a, b):
    if not a or not b:
        return {}
    if len(b) > len(a):
        a, b = b, a
    out = {}
    for (ea, ca), ka in a.items():
        for (eb, cb), kb in b.items():
            m = (ea + eb, ca + cb)
            s = out.get(m, 0) + ka * kb
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def p_scale(a, k):
    if not k:
        return {}
    return {m: v * k for m, v in a.items()}


def _deglex_key(m):
    # total degree first, then q before c
    return (m[0] + m[1], m[0])


def p_leading(a):
    """Leading (monomial, coefficient) under deglex with q before c."""
    m = max(a, key=_deglex_key)
    return m, a[m]


def p_int_content(a):
    g = 0
    for k in a.values():
        g = _gcd_int(g, k)
        if g == 1:
            return 1
    return g


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def p_div_int(a, k):
    return {m: v // k for m, v in a.items()}


def p_eval(a, q0, c0):
    total = Fraction(0)
    for (eq, ec), k in a.items():
        total += k * q0 ** eq * c0 ** ec
    return total


def p_at_q1(a):
    """Substitute q = 1; returns a univariate dict {c_exp: int}."""
    out = {}
    for (_, ec), k in a.items():
        s = out.get(ec, 0) + k
        if s:
            out[ec] = s
        elif ec in out:
            del out[ec]
    return out


def p_c_degree(a):
    return max((ec for (_, ec) in a), default=0)


def p_c_coefficient(a, j):
    """Coefficient of c**j, as a polynomial in q alone."""
    return {(eq, 0): k for (eq, ec), k in a.items() if ec == j}


# ---------------------------------------------------------------------------
# gcd over Z[q, c]
#
# Two-level primitive subresultant PRS: polynomials in q whose coefficients
# are univariate integer polynomials in c.  Degrees stay small here (the
# denominators of the artifact are products of q-monomials, [2]_q and short
# cyclotomic-like factors), so the textbook routine is plenty.
# ---------------------------------------------------------------------------

# univariate dicts {exp: int} in c


def _u_add(a, b):
    out = dict(a)
    for e, k in b.items():
        s = out.get(e, 0) + k
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def _u_mul(a, b):
    out = {}
    for ea, ka in a.items():
        for eb, kb in b.items():
            e = ea + eb
            s = out.get(e, 0) + ka * kb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _u_scale(a, k):
    return {e: v * k for e, v in a.items()} if k else {}


def _u_content(a):
    g = 0
    for k in a.values():
        g = _gcd_int(g, k)
        if g == 1:
            return 1
    return g


def _u_prim(a):
    if not a:
        return a, 0
    g = _u_content(a)
    lead = a[max(a)]
    if lead < 0:
        g = -g
    return {e: v // g for e, v in a.items()}, g


def _u_pseudo_rem(a, b):
    """Pseudo-remainder of a by b (b nonzero), over Z."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        r = _u_add(_u_scale(r, lb), _u_scale({e + dr - db: -v for e, v in b.items()}, lr))
        if r and max(r) == dr:  # cancellation guard (cannot happen)
            raise AssertionError("pseudo-division failed")
    return r


def _u_gcd(a, b):
    """gcd in Z[c], primitive with positive leading coefficient, times content gcd."""
    if not a:
        p, _ = _u_prim(b)
        return _u_scale(p, _u_content(b)) if b else {}
    if not b:
        p, _ = _u_prim(a)
        return _u_scale(p, _u_content(a))
    ca, cb = _u_content(a), _u_content(b)
    g_cont = _gcd_int(ca, cb)
    a, _ = _u_prim(a)
    b, _ = _u_prim(b)
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _u_pseudo_rem(a, b)
        a, b = b, _u_prim(r)[0] if r else {}
    a, _ = _u_prim(a)
    return _u_scale(a, g_cont)


def _u_divexact(a, b):
    """Exact division in Z[c]; raises if not exact."""
    if not a:
        return {}
    db = max(b)
    lb = b[db]
    r = dict(a)
    q = {}
    while r:
        dr = max(r)
        if dr < db or r[dr] % lb:
            raise AssertionError("inexact division in Z[c]")
        coef = r[dr] // lb
        q[dr - db] = coef
        r = _u_add(r, _u_scale({e + dr - db: v for e, v in b.items()}, -coef))
    return q


# recursive view: {q_exp: cpoly}


def _to_rec(a):
    out = {}
    for (eq, ec), k in a.items():
        out.setdefault(eq, {})[ec] = k
    return out


def _from_rec(r):
    out = {}
    for eq, cp in r.items():
        for ec, k in cp.items():
            out[(eq, ec)] = k
    return out


def _r_is_zero(r):
    return not r


def _r_scale_c(r, cp):
    if not cp:
        return {}
    return {eq: _u_mul(v, cp) for eq, v in r.items()}


def _r_add(a, b):
    out = dict(a)
    for eq, cp in b.items():
        s = _u_add(out.get(eq, {}), cp)
        if s:
            out[eq] = s
        elif eq in out:
            del out[eq]
    return out


def _r_content(r):
    g = {}
    for cp in r.values():
        g = _u_gcd(g, cp)
        if g == {0: 1}:
            return g
    return g


def _r_prim(r):
    if not r:
        return r
    g = _r_content(r)
    if g == {0: 1}:
        return r
    return {eq: _u_divexact(cp, g) for eq, cp in r.items()}


def _r_pseudo_rem(a, b):
    """Pseudo-remainder in (Z[c])[q]."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shifted = {eq + dr - db: _u_mul(cp, lr) for eq, cp in b.items()}
        r = _r_add(_r_scale_c(r, lb), {eq: _u_scale(cp, -1) for eq, cp in shifted.items()})
    return r


def _r_gcd(a, b):
    if not a:
        return b
    if not b:
        return a
    ca, cb = _r_content(a), _r_content(b)
    g_cont = _u_gcd(ca, cb)
    a, b = _r_prim(a), _r_prim(b)
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _r_pseudo_rem(a, b)
        a, b = b, _r_prim(r) if r else {}
    a = _r_prim(a)
    return _r_scale_c(a, g_cont)


def p_gcd(a, b):
    """gcd in Z[q, c] up to sign, primitive-ish (suited for fraction reduction)."""
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    # common monomial part
    aq = min(eq for (eq, _) in a)
    ac = min(ec for (_, ec) in a)
    bq = min(eq for (eq, _) in b)
    bc = min(ec for (_, ec) in b)
    mq, mc = min(aq, bq), min(ac, bc)
    a1 = {(eq - aq, ec - ac): k for (eq, ec), k in a.items()}
    b1 = {(eq - bq, ec - bc): k for (eq, ec), k in b.items()}
    if len(a1) == 1 or len(b1) == 1:
        g = p_const(_gcd_int(p_int_content(a1), p_int_content(b1)))
    else:
        g = _from_rec(_r_gcd(_to_rec(a1), _to_rec(b1)))
    if (mq, mc) != (0, 0):
        g = {(eq + mq, ec + mc): k for (eq, ec), k in g.items()}
    return g


def p_divexact(a, b):
    """Exact division in Z[q, c] (b | a required)."""
    if not a:
        return {}
    if len(b) == 1:
        ((eq, ec), k), = b.items()
        out = {}
        for (ea, ca), v in a.items():
            if v % k:
                raise AssertionError("inexact monomial division")
            out[(ea - eq, ca - ec)] = v // k
        return out
    ra, rb = _to_rec(a), _to_rec(b)
    db = max(rb)
    lb = rb[db]
    q = {}
    while ra:
        da = max(ra)
        lc = _u_divexact(ra[da], lb)
        q[da - db] = lc
        step = {eq + da - db: _u_mul(cp, lc) for eq, cp in rb.items()}
        ra = _r_add(ra, {eq: _u_scale(cp, -1) for eq, cp in step.items()})
    return _from_rec(q)


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------


def _normalize(num, den):
    if not den:
        raise ScalarDivisionError("zero denominator")
    if not num:
        return {}, dict(P_ONE)
    if den != P_ONE:
        g = p_gcd(num, den)
        if len(g) > 1 or (g and next(iter(g.items())) != ((0, 0), 1)):
            num = p_divexact(num, g)
            den = p_divexact(den, g)
    cn, cd = p_int_content(num), p_int_content(den)
    g = _gcd_int(cn, cd)
    if g > 1:
        num = p_div_int(num, g)
        den = p_div_int(den, g)
    _, lead = p_leading(den)
    if lead < 0:
        num = p_neg(num)
        den = p_neg(den)
    return num, den


class Scalar:
    """An element of Q(q, c) in canonical fraction form.  Immutable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _raw=False):
        if _raw:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(num, P_ONE if den is None else den)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_int(k):
        return _INT_CACHE.get(k) or Scalar(p_const(k), dict(P_ONE), _raw=True)

    @staticmethod
    def from_fraction(f):
        f = Fraction(f)
        return Scalar(p_const(f.numerator), p_const(f.denominator))

    @staticmethod
    def q_power(k):
        if k >= 0:
            return Scalar(p_mono(k, 0), dict(P_ONE), _raw=True)
        return Scalar(dict(P_ONE), p_mono(-k, 0), _raw=True)

    @staticmethod
    def c_power(k):
        if k >= 0:
            return Scalar(p_mono(0, k), dict(P_ONE), _raw=True)
        return Scalar(dict(P_ONE), p_mono(0, -k), _raw=True)

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((frozenset(self.num.items()), frozenset(self.den.items())))
            self._hash = h
        return h

    def __repr__(self):
        return f"Scalar({render_scalar(self)})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            num = p_add(self.num, other.num)
            if not num:
                return ZERO
            return Scalar(num, dict(self.den))
        num = p_add(p_mul(self.num, other.den), p_mul(other.num, self.den))
        if not num:
            return ZERO
        return Scalar(num, p_mul(self.den, other.den))

    def __neg__(self):
        if not self.num:
            return self
        return Scalar(p_neg(self.num), dict(self.den), _raw=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.num or not other.num:
            return ZERO
        # cross-cancel so the product of reduced fractions is reduced
        n1, d2 = self.num, other.den
        n2, d1 = other.num, self.den
        g1 = p_gcd(n1, d2) if d2 != P_ONE else P_ONE
        if len(g1) > 1 or (0, 0) not in g1 or g1[(0, 0)] != 1:
            n1, d2 = p_divexact(n1, g1), p_divexact(d2, g1)
        g2 = p_gcd(n2, d1) if d1 != P_ONE else P_ONE
        if len(g2) > 1 or (0, 0) not in g2 or g2[(0, 0)] != 1:
            n2, d1 = p_divexact(n2, g2), p_divexact(d1, g2)
        return Scalar(p_mul(n1, n2), p_mul(d1, d2))

    def inverse(self):
        if not self.num:
            raise ScalarDivisionError("inverse of zero")
        return Scalar(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        if not other.num:
            raise ScalarDivisionError("division by zero")
        return self * other.inverse()

    # -- queries ------------------------------------------------------------

    def evaluate(self, q0, c0):
        """Exact value at (q0, c0); raises PoleError when the denominator vanishes."""
        q0, c0 = Fraction(q0), Fraction(c0)
        d = p_eval(self.den, q0, c0)
        if d == 0:
            raise PoleError(f"pole at (q, c) = ({q0}, {c0})")
        return p_eval(self.num, q0, c0) / d

    def vanishes_at_q1(self):
        """True iff the value at q = 1 is zero as a rational function of c."""
        if not p_at_q1(self.den):
            raise PoleError("pole at q = 1")
        return not p_at_q1(self.num)

    def c_split(self):
        """Write self as s0 + s1*c; requires a c-free denominator and c-degree <= 1."""
        if p_c_degree(self.den) != 0:
            raise ScalarError("denominator involves c")
        if p_c_degree(self.num) > 1:
            raise ScalarError("numerator has c-degree > 1")
        s0 = Scalar(p_c_coefficient(self.num, 0), dict(self.den))
        s1 = Scalar(p_c_coefficient(self.num, 1), dict(self.den))
        return s0, s1

    def c_degrees(self):
        return p_c_degree(self.num), p_c_degree(self.den)

    # -- serialization ------------------------------------------------------

    def to_terms(self):
        def enc(p):
            return [[eq, ec, str(k)] for (eq, ec), k in sorted(p.items())]

        return [enc(self.num), enc(self.den)]

    @staticmethod
    def from_terms(data):
        def dec(terms):
            out = {}
            for eq, ec, k in terms:
                out[(int(eq), int(ec))] = int(k)
            return out

        num, den = data
        return Scalar(dec(num), dec(den))


ZERO = Scalar({}, dict(P_ONE), _raw=True)
ONE = Scalar(dict(P_ONE), dict(P_ONE), _raw=True)
_INT_CACHE = {0: ZERO, 1: ONE, -1: Scalar(p_const(-1), dict(P_ONE), _raw=True)}

Q = Scalar.q_power(1)
QINV = Scalar.q_power(-1)
C = Scalar.c_power(1)


def sc(k):
    """Integer shortcut."""
    return Scalar.from_int(k)


def scalar_arith(op, a, b=None):
    """Dispatch wrapper: one of add, sub, mul, div, neg."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    raise ValueError(f"unknown scalar op {op!r}")


@lru_cache(maxsize=None)
def qint(n):
    """The q-integer [n]_q = (q^n - q^-n)/(q - q^-1); odd in n."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n)
    # [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)
    num = {}
    for j in range(n):
        e = 2 * (n - 1 - j)
        num[(e, 0)] = 1
    return Scalar(num, p_mono(n - 1, 0))


@lru_cache(maxsize=None)
def qfactorial(n):
    out = ONE
    for j in range(1, n + 1):
        out = out * qint(j)
    return out


def qbinom(a, b):
    """Gaussian binomial coefficient; requires a >= b >= 0."""
    if a < 0 or b < 0 or a < b:
        raise ValueError(f"qbinom requires a >= b >= 0, got ({a}, {b})")
    return qfactorial(a) / (qfactorial(b) * qfactorial(a - b))


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _render_poly(p):
    if not p:
        return "0"
    parts = []
    for (eq, ec), k in sorted(p.items(), key=lambda t: (-_deglex_key(t[0])[0], -t[0][0])):
        atoms = []
        if abs(k) != 1 or (eq == 0 and ec == 0):
            atoms.append(str(abs(k)))
        if eq:
            atoms.append("q" if eq == 1 else f"q^{eq}")
        if ec:
            atoms.append("c" if ec == 1 else f"c^{ec}")
        term = "*".join(atoms)
        if not parts:
            parts.append(term if k > 0 else "-" + term)
        else:
            parts.append(("+ " if k > 0 else "- ") + term)
    return " ".join(parts)


def scalar_is_negative(s):
    """Sign of the deglex-leading numerator coefficient (canonical den is positive)."""
    if s.is_zero():
        return False
    return p_leading(s.num)[1] < 0


def _is_atom(p):
    # single term, coefficient 1, at most one variable: safe next to / and *
    if len(p) != 1:
        return False
    ((eq, ec), k), = p.items()
    return k == 1 and (eq == 0 or ec == 0)


def render_scalar(s):
    """Deterministic text form, re-parseable by the expression language."""
    if s.is_zero():
        return "0"
    num = _render_poly(s.num)
    if s.den == P_ONE:
        return num
    den = _render_poly(s.den)
    if len(s.num) > 1 or num.startswith("-") or not _is_atom(s.num):
        num = f"({num})"
    if not _is_atom(s.den):
        den = f"({den})"
    return f"{num}/{den}"
