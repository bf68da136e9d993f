"""The free unital associative algebra on two generators over Q(q, c).

Words over the alphabet {g0, g1} are plain Python strings of "0"/"1"
characters (the empty string is the unit); string hashing and substring
search give the interning and divisibility tests the rewrite engine needs.
An NcPoly is a finitely supported map from words to Scalars.
"""

import sys

from .scalars import (
    Scalar,
    ZERO,
    ONE,
    C,
    Q,
    sc,
    qint,
    qbinom,
)

G0, G1 = "0", "1"
EMPTY = ""

# deglex with g0 > g1: longer words first, then letterwise with "0" ranked high
_KEY_TRANS = str.maketrans("01", "10")


def word_key(w):
    """Sort key realizing the monomial order (degree, then lex with g0 > g1)."""
    return (len(w), w.translate(_KEY_TRANS))


def word_greater(u, v):
    return word_key(u) > word_key(v)


class NcPoly:
    """Finitely supported Scalar-linear combination of words; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero():
        return NcPoly({})

    @staticmethod
    def one():
        return NcPoly({EMPTY: ONE})

    @staticmethod
    def gen(i):
        return NcPoly({(G0 if i == 0 else G1): ONE})

    @staticmethod
    def from_word(w, coeff=ONE):
        return NcPoly({sys.intern(w): coeff}) if coeff else NcPoly({})

    @staticmethod
    def from_scalar(s):
        return NcPoly({EMPTY: s}) if s else NcPoly({})

    # -- basic structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"NcPoly({render_ncpoly(self)})"

    def max_word_len(self):
        return max((len(w) for w in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for w, cf in other.terms.items():
            s = out.get(w)
            s = cf if s is None else s + cf
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return NcPoly(out)

    def __neg__(self):
        return NcPoly({w: -cf for w, cf in self.terms.items()})

    def __sub__(self, other):
        out = dict(self.terms)
        for w, cf in other.terms.items():
            s = out.get(w)
            s = -cf if s is None else s - cf
            if s:
                out[w] = s
            elif w in out:
                del out[w]
        return NcPoly(out)

    def __mul__(self, other):
        out = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = sys.intern(u + v)
                cf = cu * cv
                s = out.get(w)
                s = cf if s is None else s + cf
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
        return NcPoly(out)

    def scale(self, s):
        if not s:
            return NcPoly({})
        return NcPoly({w: cf * s for w, cf in self.terms.items()})

    def homogeneous_component(self, d):
        """Sub-sum of terms whose word length is exactly d."""
        return NcPoly({w: cf for w, cf in self.terms.items() if len(w) == d})

    def degrees(self):
        return sorted({len(w) for w in self.terms})


def poly_arith(op, a, b=None):
    """Dispatch wrapper: add, sub, mul take two NcPolys; scalar_mul takes (NcPoly, Scalar)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar_mul":
        return a.scale(b) if isinstance(b, Scalar) else b.scale(a)
    raise ValueError(f"unknown poly op {op!r}")


def commutator(x, y):
    return x * y - y * x


def p_commutator(x, y, p):
    """The p-commutator [x, y]_p = x*y - p*y*x."""
    return x * y - (y * x).scale(p)


# ---------------------------------------------------------------------------
# algebra morphisms
# ---------------------------------------------------------------------------


class AlgebraMorphism:
    """Unital algebra endomorphism determined by the images of g0 and g1.

    Application substitutes images letterwise; a per-morphism word cache with
    halving keeps repeated applications cheap.
    """

    __slots__ = ("image0", "image1", "_cache", "_powers")

    def __init__(self, image0, image1):
        if image0.is_zero() or image1.is_zero():
            raise ValueError("morphism images must be nonzero")
        self.image0 = image0
        self.image1 = image1
        self._cache = {EMPTY: NcPoly.one(), G0: image0, G1: image1}
        self._powers = None

    def _apply_word(self, w):
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        k = len(w) // 2
        out = self._apply_word(w[:k]) * self._apply_word(w[k:])
        self._cache[w] = out
        return out

    def apply(self, x):
        out = NcPoly({})
        for w, cf in x.terms.items():
            out = out + self._apply_word(w).scale(cf)
        return out

    def compose(self, other):
        """self after other: (self . other)(x) = self(other(x))."""
        return AlgebraMorphism(self.apply(other.image0), self.apply(other.image1))

    def power(self, n):
        """n-fold composite, memoized on this morphism."""
        if n < 0:
            raise ValueError("negative morphism power")
        if self._powers is None:
            self._powers = [identity_morphism(), self]
        while len(self._powers) <= n:
            self._powers.append(self.compose(self._powers[-1]))
        return self._powers[n]

    def __eq__(self, other):
        if not isinstance(other, AlgebraMorphism):
            return NotImplemented
        return self.image0 == other.image0 and self.image1 == other.image1


def identity_morphism():
    return AlgebraMorphism(NcPoly.gen(0), NcPoly.gen(1))


def compose_morphism(f, g):
    return f.compose(g)


def morphism_power(f, n):
    return f.power(n)


def apply_morphism(f, x):
    return f.apply(x)


# ---------------------------------------------------------------------------
# defining relations
# ---------------------------------------------------------------------------


def defining_relations(c_mode="generic"):
    """The two q-Dolan-Grady polynomials, moved to one side.

    In "zero" mode the c-linear tail is dropped, leaving the quantum Serre
    relations of the positive part of quantum affine sl2.
    """
    if c_mode not in ("generic", "zero"):
        raise ValueError(f"unknown c_mode {c_mode!r}")
    rel = NcPoly({})
    for i in range(4):
        coeff = qbinom(3, i) if i % 2 == 0 else -qbinom(3, i)
        rel = rel + NcPoly.from_word(G0 * (3 - i) + G1 + G0 * i, coeff)
    if c_mode == "generic":
        t = Q * C * qint(2) * qint(2)
        rel = rel + NcPoly({sys.intern(G0 + G1): t, sys.intern(G1 + G0): -t})
    swapped = NcPoly({w.translate(_KEY_TRANS): cf for w, cf in rel.terms.items()})
    return rel, swapped


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_word(w):
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = "B0" if w[i] == "0" else "B1"
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def render_ncpoly(x):
    """Terms in decreasing monomial order; coefficients in scalar notation."""
    from .scalars import render_scalar, scalar_is_negative, P_ONE

    if x.is_zero():
        return "0"
    parts = []
    for w in sorted(x.terms, key=word_key, reverse=True):
        cf = x.terms[w]
        neg = scalar_is_negative(cf)
        if neg:
            cf = -cf
        s = render_scalar(cf)
        if len(cf.num) > 1 and cf.den == P_ONE:
            s = f"({s})"
        if w == EMPTY:
            body = s
        elif s == "1":
            body = render_word(w)
        else:
            body = f"{s}*{render_word(w)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
