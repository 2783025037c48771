"""Truncated q-series with exact rational exponents.

A series optionally carries Jacobi variables: each term is c * q^e * z^w with
e a Fraction and w a tuple of Fractions (empty for plain q-series). Every
coefficient of q^e with e < trunc is exact; nothing is known at or beyond
``trunc``.
"""
from __future__ import annotations

import cmath
import heapq
import math
from fractions import Fraction
from numbers import Number

from ..errors import DivisionByVanishingLead, NotUpperHalfPlane
from ..rational import root_of_unity, to_fraction

ZERO_TOL = 1e-13


def _is_zero(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c == 0
    return abs(c) < ZERO_TOL


def _div(a, b):
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / b
    return a / b


def _simplify(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class QSeries:
    __slots__ = ("terms", "trunc", "zrank")

    def __init__(self, terms=None, trunc=Fraction(10), zrank: int = 0):
        self.trunc = to_fraction(trunc) if not isinstance(trunc, Fraction) else trunc
        self.zrank = zrank
        self.terms: dict = {}
        if terms:
            for key, c in terms.items():
                e, w = key if isinstance(key, tuple) and len(key) == 2 and isinstance(key[1], tuple) else (key, ())
                e = Fraction(e)
                if len(w) != zrank:
                    raise ValueError(f"z exponent {w} does not have rank {zrank}")
                if e < self.trunc and not _is_zero(c):
                    k = (e, tuple(Fraction(x) for x in w))
                    self.terms[k] = self.terms.get(k, 0) + c
            self._prune()

    def _prune(self):
        self.terms = {k: _simplify(v) for k, v in self.terms.items() if not _is_zero(v) and k[0] < self.trunc}

    @classmethod
    def monomial(cls, c=1, e=0, w=(), trunc=Fraction(10)) -> "QSeries":
        return cls({(Fraction(e), tuple(w)): c}, trunc, len(w))

    @classmethod
    def one(cls, trunc) -> "QSeries":
        return cls.monomial(1, 0, (), trunc)

    def copy(self) -> "QSeries":
        out = QSeries(None, self.trunc, self.zrank)
        out.terms = dict(self.terms)
        return out

    # --- inspection -------------------------------------------------------
    @property
    def lead(self) -> Fraction:
        """Smallest exponent with a nonzero coefficient (trunc for the zero series)."""
        return min((e for e, _ in self.terms), default=self.trunc)

    def coefficient(self, e, w=()) -> complex:
        return self.terms.get((Fraction(e), tuple(Fraction(x) for x in w)), 0)

    def q_coefficients(self) -> list[tuple[Fraction, object]]:
        """Sorted (exponent, coefficient) pairs with Jacobi variables set to 1."""
        acc: dict = {}
        for (e, _), c in self.terms.items():
            acc[e] = acc.get(e, 0) + c
        return sorted((e, _simplify(c)) for e, c in acc.items() if not _is_zero(c))

    def grid(self) -> int:
        """Common denominator of all exponents relative to the leading one."""
        d = 1
        lead = self.lead
        for e, _ in self.terms:
            d = math.lcm(d, (e - lead).denominator)
        return d

    def __repr__(self):
        parts = []
        for (e, w), c in sorted(self.terms.items())[:8]:
            z = "".join(f" z{i}^{x}" for i, x in enumerate(w) if x)
            parts.append(f"{c}*q^{e}{z}")
        more = " + ..." if len(self.terms) > 8 else ""
        return "QSeries(" + " + ".join(parts) + more + f" + O(q^{self.trunc}))"

    # --- arithmetic -------------------------------------------------------
    def _check(self, other: "QSeries"):
        if self.zrank != other.zrank:
            raise ValueError(f"cannot combine series with Jacobi ranks {self.zrank} and {other.zrank}")

    def __add__(self, other):
        if isinstance(other, Number):
            other = QSeries.monomial(other, 0, (0,) * self.zrank, self.trunc)
        self._check(other)
        out = QSeries(None, min(self.trunc, other.trunc), self.zrank)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        out.terms = t
        out._prune()
        return out

    __radd__ = __add__

    def __neg__(self):
        out = self.copy()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            if _is_zero(other):
                return QSeries(None, self.trunc, self.zrank)
            out = self.copy()
            out.terms = {k: c * other for k, c in self.terms.items()}
            out._prune()
            return out
        self._check(other)
        trunc = min(self.trunc + other.lead, other.trunc + self.lead)
        a = sorted(self.terms.items())
        b = sorted(other.terms.items())
        t: dict = {}
        for (ea, wa), ca in a:
            limit = trunc - ea
            for (eb, wb), cb in b:
                if eb >= limit:
                    break
                k = (ea + eb, tuple(x + y for x, y in zip(wa, wb)))
                t[k] = t.get(k, 0) + ca * cb
        out = QSeries(None, trunc, self.zrank)
        out.terms = t
        out._prune()
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            out = self.copy()
            out.terms = {k: _div(c, other) for k, c in self.terms.items()}
            out._prune()
            return out
        self._check(other)
        return divide(self, other)

    def __rtruediv__(self, other):
        return QSeries.monomial(other, 0, (0,) * self.zrank, Fraction(10**6)) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("series powers must be integers")
        if n < 0:
            return QSeries.monomial(1, 0, (0,) * self.zrank, Fraction(10**6)) / (self ** (-n))
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return QSeries.monomial(1, 0, (0,) * self.zrank, self.trunc - self.lead)
        return result

    def shift(self, e) -> "QSeries":
        """Multiply by q^e."""
        e = Fraction(e)
        out = QSeries(None, self.trunc + e, self.zrank)
        out.terms = {(x + e, w): c for (x, w), c in self.terms.items()}
        return out

    def rescale(self, a) -> "QSeries":
        """Substitute q -> q^a (a > 0), i.e. tau -> a tau."""
        a = Fraction(a)
        if a <= 0:
            raise ValueError("rescaling factor must be positive")
        out = QSeries(None, self.trunc * a, self.zrank)
        out.terms = {(x * a, w): c for (x, w), c in self.terms.items()}
        return out

    def truncate(self, trunc) -> "QSeries":
        out = QSeries(None, min(self.trunc, Fraction(trunc)), self.zrank)
        out.terms = {k: c for k, c in self.terms.items() if k[0] < out.trunc}
        return out

    def specialize(self, u=None, pairing=None) -> "QSeries":
        """Set z = exp(2 pi i <u, w>); u = None sets every Jacobi variable to 1."""
        out = QSeries(None, self.trunc, 0)
        t: dict = {}
        for (e, w), c in self.terms.items():
            if u is not None:
                if pairing is None:
                    ph = sum(Fraction(a) * b for a, b in zip(u, w))
                else:
                    ph = sum(Fraction(pairing[i][j]) * Fraction(u[i]) * w[j]
                             for i in range(len(u)) for j in range(len(w)))
                c = c * root_of_unity(ph)
            k = (e, ())
            t[k] = t.get(k, 0) + c
        out.terms = t
        out._prune()
        return out

    # --- numerics ---------------------------------------------------------
    def evaluate(self, tau: complex, u=None, pairing=None) -> tuple[complex, float]:
        """Value at tau and a geometric bound on the dropped tail."""
        tau = complex(tau)
        if tau.imag <= 0:
            raise NotUpperHalfPlane(f"tau = {tau} is not in the upper half plane")
        s = self if self.zrank == 0 else self.specialize(u, pairing)
        total = 0j
        big = 0.0
        for (e, _), c in s.terms.items():
            total += complex(c) * cmath.exp(2j * math.pi * tau * float(e))
            big = max(big, abs(complex(c)))
        qa = math.exp(-2 * math.pi * tau.imag)
        step = qa ** (1.0 / s.grid())
        tail = max(big, 1.0) * qa ** float(s.trunc) / (1 - step) if step < 1 else math.inf
        return total, tail


def _poly_div(f: dict, g: dict, zrank: int) -> dict:
    """Exact quotient of Laurent polynomials in z (monomial divisor, or rank one)."""
    if len(g) == 1:
        (wg, cg), = g.items()
        return {tuple(a - b for a, b in zip(w, wg)): _div(c, cg) for w, c in f.items()}
    if zrank != 1:
        raise DivisionByVanishingLead("leading coefficient is not a monomial in several Jacobi variables")
    f = dict(f)
    gtop = max(g)
    gbot = min(g)
    fbot = min(f) if f else None
    out = {}
    guard = 0
    while f:
        top = max(f)
        qe = (top[0] - gtop[0],)
        if fbot is not None and qe[0] < fbot[0] - gbot[0]:
            raise DivisionByVanishingLead("leading coefficient does not divide the numerator")
        qc = _div(f[top], g[gtop])
        out[qe] = qc
        for w, c in g.items():
            k = (w[0] + qe[0],)
            v = f.get(k, 0) - qc * c
            if _is_zero(v):
                f.pop(k, None)
            else:
                f[k] = v
        guard += 1
        if guard > 100000:
            raise DivisionByVanishingLead("polynomial division did not terminate")
    return out


def divide(a: QSeries, b: QSeries) -> QSeries:
    """a / b with the leading q-coefficient of b as pivot."""
    if not b.terms:
        raise DivisionByVanishingLead("division by a series with no known nonzero term")
    b0 = b.lead
    a0 = a.lead
    trunc = min(a.trunc - b0, b.trunc + a0 - 2 * b0)
    lead_poly = {w: c for (e, w), c in b.terms.items() if e == b0}
    rest = [(e - b0, w, c) for (e, w), c in b.terms.items() if e != b0]
    # pending numerator coefficients grouped by exponent of the quotient
    pending: dict[Fraction, dict] = {}
    for (e, w), c in a.terms.items():
        slot = pending.setdefault(e - b0, {})
        slot[w] = slot.get(w, 0) + c
    heap = list(pending)
    heapq.heapify(heap)
    out: dict = {}
    while heap:
        e = heapq.heappop(heap)
        if e >= trunc:
            break
        poly = {w: c for w, c in pending.pop(e, {}).items() if not _is_zero(c)}
        if not poly:
            continue
        q = _poly_div(poly, lead_poly, a.zrank)
        for w, c in q.items():
            out[(e, w)] = c
        for m, wb, cb in rest:
            e2 = e + m
            if e2 >= trunc:
                continue
            slot = pending.get(e2)
            if slot is None:
                slot = pending[e2] = {}
                heapq.heappush(heap, e2)
            for w, c in q.items():
                k = tuple(x + y for x, y in zip(w, wb))
                slot[k] = slot.get(k, 0) - c * cb
    res = QSeries(None, trunc, a.zrank)
    res.terms = out
    res._prune()
    return res
