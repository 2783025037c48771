"""Standard modular building blocks as truncated series."""
from __future__ import annotations

import math
from fractions import Fraction

from ..lattice import Lattice, norm, pairing, short_vectors
from ..rational import root_of_unity
from .series import QSeries


def eta(trunc) -> QSeries:
    """Dedekind eta q^(1/24) prod (1 - q^n), from Euler's pentagonal sum."""
    trunc = Fraction(trunc)
    terms = {}
    k = 0
    while True:
        hits = 0
        for m in ({k, -k} if k else {0}):
            e = Fraction(1, 24) + Fraction(m * (3 * m - 1), 2)
            if e < trunc:
                terms[e] = (-1) ** (m % 2)
                hits += 1
        if not hits and k > 0:
            break
        k += 1
    return QSeries(terms, trunc)


def eta_at(scale, trunc) -> QSeries:
    """eta(scale * tau) known below q^trunc."""
    scale = Fraction(scale)
    return eta(trunc / scale).rescale(scale)


def euler_inverse(trunc) -> QSeries:
    """1 / prod_{n >= 1} (1 - q^n)."""
    trunc = Fraction(trunc)
    n_max = math.ceil(trunc)
    p = [0] * (n_max + 1)
    p[0] = 1
    for part in range(1, n_max + 1):
        for m in range(part, n_max + 1):
            p[m] += p[m - part]
    return QSeries({Fraction(n): p[n] for n in range(n_max + 1)}, trunc)


def lattice_theta(lat: Lattice, cls: int, u=None, trunc=10) -> QSeries:
    """Sum of q^(<x,x>/2) exp(2 pi i <u, x>) over the class cls + L, exponents below trunc."""
    trunc = Fraction(trunc)
    rep = lat.representatives[cls]
    terms: dict = {}
    for n in short_vectors(lat.gram, rep, 2 * trunc):
        x = tuple(a + b for a, b in zip(n, rep))
        e = norm(lat.gram, x) / 2
        if e >= trunc:
            continue
        c = 1 if u is None else root_of_unity(pairing(lat.gram, u, x))
        terms[e] = terms.get(e, 0) + c
    return QSeries(terms, trunc)


def minimal_char(u: int, v: int, r: int, s: int, trunc) -> QSeries:
    """Irreducible character of the (u, v) Virasoro minimal model, Rocha-Caridi form."""
    trunc = Fraction(trunc)
    c = 1 - Fraction(6 * (u - v) ** 2, u * v)
    den = 4 * u * v
    # the leading exponent can be negative for non-unitary models; pad for the product below
    top = trunc + c / 24 + max(Fraction(0), Fraction((u - v) ** 2, den)) + 1
    terms: dict = {}

    def expo(a: int) -> Fraction:
        return Fraction(a * a - (u - v) ** 2, den)

    for sign, b in ((1, r * v - s * u), (-1, r * v + s * u)):
        for direction in (1, -1):
            n = 0 if direction == 1 else -1
            while True:
                e = expo(2 * u * v * n + b)
                if e >= top:
                    break
                terms[e] = terms.get(e, 0) + sign
                n += direction
    num = QSeries(terms, top)
    return (num * euler_inverse(top)).shift(-c / 24).truncate(trunc)


def theta_mk(m: int, kappa: int, trunc) -> QSeries:
    """Theta_{m,kappa}(z, tau) = sum over n in Z + m/(2 kappa) of q^(kappa n^2) z^(kappa n)."""
    trunc = Fraction(trunc)
    terms: dict = {}
    base = Fraction(m, 2 * kappa)
    j = 0
    while True:
        added = False
        for n in {base + j, base - j}:
            e = kappa * n * n
            if e < trunc:
                terms[(e, (kappa * n,))] = terms.get((e, (kappa * n,)), 0) + 1
                added = True
        if not added:
            break
        j += 1
    return QSeries(terms, trunc, 1)


def sl2_char(k: int, lam: int, trunc) -> QSeries:
    """Weyl-Kac character of the level-k sl2 module of highest weight lam.

    The Jacobi variable z carries the exponent m/2 for Cartan weight m.
    """
    trunc = Fraction(trunc)
    pad = trunc + 1
    num = theta_mk(lam + 1, k + 2, pad) - theta_mk(-lam - 1, k + 2, pad)
    den = theta_mk(1, 2, pad) - theta_mk(-1, 2, pad)
    out = num / den
    return out.truncate(trunc)
