"""Degree-bounded two-sided noncommutative rewriting engine.

Rules are monic: lead word -> tail polynomial, every tail word strictly
smaller than the lead under deglex with g0 > g1.  Completion processes
overlap ambiguities by increasing overlap word, up to a degree bound; on a
completed system, reduction of any element of degree <= bound yields a
canonical normal form, so ideal membership at or below the bound is exact.

Optionally each rule carries a certificate expressing it as a two-sided
combination of the two defining relations, which lets tests replay any
reduction back to the generators.
"""

import heapq
import json
import sys

from .scalars import Scalar, ONE
from .freealg import NcPoly, EMPTY, word_key, defining_relations


class RewriteError(Exception):
    pass


class BoundExceededError(RewriteError):
    """Input degree exceeds the completed degree (soundness guard)."""


class CapacityError(RewriteError):
    """Resource limit hit during completion; carries the degree reached."""


class FormatError(RewriteError):
    """Malformed or incompatible cache data."""


CACHE_FORMAT_VERSION = 1

# normal forms of words up to this length are memoized on frozen systems
_NF_CACHE_MAX_LEN = 10


class MonomialOrder:
    """Degree-lexicographic order with letter precedence g0 > g1 (fixed)."""

    kind = "deglex"
    precedence = ("g0", "g1")

    @staticmethod
    def key(w):
        return word_key(w)

    @staticmethod
    def greater(u, v):
        return word_key(u) > word_key(v)


class RewriteSystem:
    def __init__(self, c_mode="generic", with_certificates=False):
        if c_mode not in ("generic", "zero"):
            raise ValueError(f"unknown c_mode {c_mode!r}")
        self.order = MonomialOrder()
        self.c_mode = c_mode
        self.rules = {}  # lead word -> tail NcPoly
        self.certs = {} if with_certificates else None
        self.completed_degree = 0
        self.frozen = False
        self._redex_cache = {}
        self._nf_cache = {}
        self.generators = defining_relations(c_mode)

    # -- rule bookkeeping ---------------------------------------------------

    def _clear_caches(self):
        self._redex_cache.clear()
        self._nf_cache.clear()

    def leads(self):
        return sorted(self.rules, key=word_key)

    def find_redex(self, w):
        """Leftmost (position, lead) of any rule lead inside w, or None."""
        hit = self._redex_cache.get(w)
        if hit is not None:
            return hit if hit != () else None
        best = None
        for lead in self.rules:
            i = w.find(lead)
            if i >= 0 and (best is None or i < best[0]):
                best = (i, lead)
        self._redex_cache[w] = best if best is not None else ()
        return best

    def is_normal_word(self, w):
        return self.find_redex(w) is None

    # -- reduction ----------------------------------------------------------

    def reduce(self, x, trace=None):
        """Unique normal form of x modulo the rules.

        Refuses inputs above the completed degree.  With ``trace`` a list,
        appends one (coeff, left, lead, right) entry per rewrite step, so
        x - reduce(x) = sum coeff * left * (lead - tail) * right exactly.
        """
        if x.max_word_len() > self.completed_degree:
            raise BoundExceededError(
                f"degree {x.max_word_len()} exceeds completed degree "
                f"{self.completed_degree}; increase --bound"
            )
        use_cache = self.frozen and trace is None
        out = {}
        work = dict(x.terms)
        while work:
            w = max(work, key=word_key)
            cf = work.pop(w)
            if use_cache and len(w) <= _NF_CACHE_MAX_LEN:
                nf = self._nf_word(w)
                for u, cu in nf.items():
                    s = out.get(u)
                    s = cf * cu if s is None else s + cf * cu
                    if s:
                        out[u] = s
                    elif u in out:
                        del out[u]
                continue
            redex = self.find_redex(w)
            if redex is None:
                s = out.get(w)
                s = cf if s is None else s + cf
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
                continue
            i, lead = redex
            left, right = w[:i], w[i + len(lead):]
            if trace is not None:
                trace.append((cf, left, lead, right))
            for tw, tc in self.rules[lead].terms.items():
                nw = sys.intern(left + tw + right)
                add = cf * tc
                s = work.get(nw)
                s = add if s is None else s + add
                if s:
                    work[nw] = s
                elif nw in work:
                    del work[nw]
        return NcPoly(out)

    def _nf_word(self, w0):
        """Memoized normal form of a single word (frozen systems only)."""
        cache = self._nf_cache
        hit = cache.get(w0)
        if hit is not None:
            return hit
        stack = [w0]
        pending = {}
        while stack:
            u = stack[-1]
            if u in cache:
                stack.pop()
                continue
            redex = self.find_redex(u)
            if redex is None:
                cache[u] = {u: ONE}
                stack.pop()
                continue
            succ = pending.get(u)
            if succ is None:
                i, lead = redex
                left, right = u[:i], u[i + len(lead):]
                succ = {}
                for tw, tc in self.rules[lead].terms.items():
                    nw = sys.intern(left + tw + right)
                    s = succ.get(nw)
                    s = tc if s is None else s + tc
                    if s:
                        succ[nw] = s
                    elif nw in succ:
                        del succ[nw]
                pending[u] = succ
            todo = [s for s in succ if s not in cache]
            if todo:
                stack.extend(todo)
                continue
            total = {}
            for s, cs in succ.items():
                for v, cv in cache[s].items():
                    t = total.get(v)
                    t = cs * cv if t is None else t + cs * cv
                    if t:
                        total[v] = t
                    elif v in total:
                        del total[v]
            cache[u] = total
            del pending[u]
            stack.pop()
        return cache[w0]

    def is_zero_mod_ideal(self, x):
        return self.reduce(x).is_zero()

    def normal_count(self, degree):
        """Number of normal words of exactly the given length."""
        if degree > self.completed_degree:
            raise BoundExceededError(
                f"degree {degree} exceeds completed degree {self.completed_degree}"
            )
        if degree == 0:
            return 1
        count = 0
        leads = [l for l in self.rules if len(l) <= degree]
        for n in range(2 ** degree):
            w = format(n, f"0{degree}b")
            if not any(l in w for l in leads):
                count += 1
        return count

    # -- serialization ------------------------------------------------------

    def save(self, sink):
        data = {
            "format": CACHE_FORMAT_VERSION,
            "order": {"kind": self.order.kind, "precedence": list(self.order.precedence)},
            "c_mode": self.c_mode,
            "completed_degree": self.completed_degree,
            "rules": [
                {
                    "lead": lead,
                    "tail": [[w, self.rules[lead].terms[w].to_terms()]
                             for w in sorted(self.rules[lead].terms, key=word_key)],
                }
                for lead in self.leads()
            ],
        }
        if hasattr(sink, "write"):
            json.dump(data, sink)
        else:
            with open(sink, "w") as fh:
                json.dump(data, fh)

    @staticmethod
    def load(source, expect_c_mode=None):
        try:
            if hasattr(source, "read"):
                data = json.load(source)
            else:
                with open(source) as fh:
                    data = json.load(fh)
        except (json.JSONDecodeError, OSError) as exc:
            raise FormatError(f"unreadable cache: {exc}") from exc
        try:
            if data["format"] != CACHE_FORMAT_VERSION:
                raise FormatError(f"cache format {data['format']} not supported")
            if data["order"] != {"kind": "deglex", "precedence": ["g0", "g1"]}:
                raise FormatError("cache uses an incompatible monomial order")
            sys_ = RewriteSystem(c_mode=data["c_mode"])
            for entry in data["rules"]:
                tail = NcPoly({w: Scalar.from_terms(t) for w, t in entry["tail"]})
                sys_.rules[entry["lead"]] = tail
            sys_.completed_degree = int(data["completed_degree"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed cache data: {exc}") from exc
        if expect_c_mode is not None and sys_.c_mode != expect_c_mode:
            raise FormatError(
                f"cache c_mode {sys_.c_mode!r} does not match requested {expect_c_mode!r}"
            )
        sys_.frozen = True
        return sys_

    def same_rules(self, other):
        return (
            self.c_mode == other.c_mode
            and self.completed_degree == other.completed_degree
            and self.rules == other.rules
        )


# ---------------------------------------------------------------------------
# completion
# ---------------------------------------------------------------------------


def _monicize(p):
    """Split p into (lead word, tail NcPoly, leading coefficient)."""
    lead = max(p.terms, key=word_key)
    lc = p.terms[lead]
    inv = lc.inverse()
    tail = NcPoly({w: -(cf * inv) for w, cf in p.terms.items() if w != lead})
    return lead, tail, lc


def _cert_scale(cert, s):
    return [(cf * s, l, g, r) for (cf, l, g, r) in cert]


def _cert_shift(cert, left, right):
    return [(cf, left + l, g, r + right) for (cf, l, g, r) in cert]


class _Completion:
    def __init__(self, system, bound, max_rules):
        self.sys = system
        self.bound = bound
        self.max_rules = max_rules
        self.queue = []
        self.counter = 0

    def run(self):
        sys_ = self.sys
        pending = []
        for gi, gen in enumerate(sys_.generators):
            cert = [(ONE, EMPTY, gi, EMPTY)] if sys_.certs is not None else None
            pending.append((gen, cert))
        self._absorb(pending)
        while self.queue:
            _, _, lead1, lead2, olap = heapq.heappop(self.queue)
            if lead1 not in sys_.rules or lead2 not in sys_.rules:
                continue
            spoly, cert = self._s_polynomial(lead1, lead2, olap)
            nf, cert = self._reduce_tracked(spoly, cert)
            if nf.is_zero():
                continue
            self._absorb([(nf, cert)])
        sys_.completed_degree = self.bound
        sys_.frozen = True
        sys_._clear_caches()
        return sys_

    def _s_polynomial(self, lead1, lead2, olap):
        sys_ = self.sys
        # olap = lead1 + y = x + lead2
        y = olap[len(lead1):]
        x = olap[: len(olap) - len(lead2)]
        t1 = sys_.rules[lead1]
        t2 = sys_.rules[lead2]
        spoly = t1 * NcPoly.from_word(y) - NcPoly.from_word(x) * t2
        cert = None
        if sys_.certs is not None:
            # o - tail1*y = poly1*y ; o - x*tail2 = x*poly2 ; S = x*poly2 - poly1*y
            cert = _cert_shift(sys_.certs[lead2], x, EMPTY) + _cert_scale(
                _cert_shift(sys_.certs[lead1], EMPTY, y), -ONE
            )
        return spoly, cert

    def _reduce_tracked(self, p, cert):
        sys_ = self.sys
        trace = [] if sys_.certs is not None else None
        work = dict(p.terms)
        out = {}
        while work:
            w = max(work, key=word_key)
            cf = work.pop(w)
            redex = None
            for lead in sys_.rules:
                i = w.find(lead)
                if i >= 0 and (redex is None or i < redex[0]):
                    redex = (i, lead)
            if redex is None:
                s = out.get(w)
                s = cf if s is None else s + cf
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
                continue
            i, lead = redex
            left, right = w[:i], w[i + len(lead):]
            if trace is not None:
                trace.append((cf, left, lead, right))
            for tw, tc in sys_.rules[lead].terms.items():
                nw = left + tw + right
                add = cf * tc
                s = work.get(nw)
                s = add if s is None else s + add
                if s:
                    work[nw] = s
                elif nw in work:
                    del work[nw]
        if cert is not None:
            for cf, left, lead, right in trace:
                cert = cert + _cert_scale(_cert_shift(sys_.certs[lead], left, right), -cf)
        return NcPoly(out), cert

    def _absorb(self, pending):
        """Reduce pending polynomials and install survivors as monic rules."""
        sys_ = self.sys
        while pending:
            pending.sort(key=lambda pc: word_key(max(pc[0].terms, key=word_key)))
            poly, cert = pending.pop(0)
            poly, cert = self._reduce_tracked(poly, cert)
            if poly.is_zero():
                continue
            lead, tail, lc = _monicize(poly)
            if len(lead) > self.bound:
                continue
            if len(sys_.rules) >= self.max_rules:
                raise CapacityError(
                    f"rule limit {self.max_rules} reached at degree {len(lead)}"
                )
            if cert is not None:
                cert = _cert_scale(cert, lc.inverse())
            # displace rules whose lead becomes reducible
            displaced = [l for l in sys_.rules if lead in l and l != lead]
            for l in displaced:
                old_tail = sys_.rules.pop(l)
                old_cert = sys_.certs.pop(l) if sys_.certs is not None else None
                pending.append((NcPoly.from_word(l) - old_tail, old_cert))
            sys_.rules[lead] = tail
            if sys_.certs is not None:
                sys_.certs[lead] = cert
            # re-normalize tails touched by the new lead
            for l in list(sys_.rules):
                if l == lead:
                    continue
                t = sys_.rules[l]
                if any(lead in w for w in t.terms):
                    c0 = sys_.certs[l] if sys_.certs is not None else None
                    nf, c1 = self._reduce_tracked(t, c0)
                    sys_.rules[l] = nf
                    if sys_.certs is not None:
                        sys_.certs[l] = c1
            self._enqueue_overlaps(lead)

    def _enqueue_overlaps(self, lead):
        for other in list(self.sys.rules):
            for u, v in ((lead, other), (other, lead)):
                m = min(len(u), len(v))
                for t in range(1, m):
                    if u.endswith(v[:t]):
                        olap = u + v[t:]
                        if len(olap) <= self.bound:
                            self.counter += 1
                            heapq.heappush(
                                self.queue, (word_key(olap), self.counter, u, v, olap)
                            )
            if other == lead:
                continue


def complete(c_mode="generic", bound=12, with_certificates=False, max_rules=100000):
    """Build a rewrite system completed up to the given overlap degree."""
    if bound < 4:
        raise ValueError("bound must be at least 4 (degree of the defining relations)")
    system = RewriteSystem(c_mode=c_mode, with_certificates=with_certificates)
    return _Completion(system, bound, max_rules).run()


def verify_certificate(system, lead):
    """Re-expand a rule certificate against the defining relations; exact check."""
    if system.certs is None:
        raise RewriteError("system was built without certificates")
    total = NcPoly({})
    for cf, left, gi, right in system.certs[lead]:
        g = system.generators[gi]
        total = total + (NcPoly.from_word(left) * g * NcPoly.from_word(right)).scale(cf)
    return total == NcPoly.from_word(lead) - system.rules[lead]
