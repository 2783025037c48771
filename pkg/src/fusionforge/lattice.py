"""Even lattices: Smith normal form, discriminant groups, short vectors.

All arithmetic on Gram matrices and coset representatives is exact
(Python integers and Fractions). Vectors are coordinate tuples in the basis
the Gram matrix is written in; dual vectors have rational coordinates.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import NotEven, NotPositiveDefinite, NotSymmetric


def smith_normal_form(A):
    """Return (U, D, V) with U A V = D diagonal, U and V unimodular, d_i | d_{i+1}.

    Works on integer matrices given as nested lists; the result is exact.
    """
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(X, i, j):
        X[i], X[j] = X[j], X[i]

    def swap_cols(X, i, j):
        for row in X:
            row[i], row[j] = row[j], row[i]

    def add_row(X, src, dst, k):  # row dst += k * row src
        X[dst] = [a + k * b for a, b in zip(X[dst], X[src])]

    def add_col(X, src, dst, k):
        for row in X:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            # pivot: smallest nonzero |entry| in the remaining block
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return U, M, V
            i, j = best
            swap_rows(M, t, i)
            swap_rows(U, t, i)
            swap_cols(M, t, j)
            swap_cols(V, t, j)
            p = M[t][t]
            clean = True
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    add_row(M, t, i, -q)
                    add_row(U, t, i, -q)
                if M[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    add_col(M, t, j, -q)
                    add_col(V, t, j, -q)
                if M[t][j]:
                    clean = False
            if not clean:
                continue
            # divisibility: the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(M, bad[0], t, 1)
            add_row(U, bad[0], t, 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
    return U, M, V


def ldl(gram) -> list[list[Fraction]] | None:
    """Exact Gram-Schmidt data (mu, q) or None if the form is not positive definite.

    Returns a matrix Q with Q[i][i] the squared lengths and Q[i][j] (j > i) the
    mu coefficients, the layout used by the Fincke-Pohst enumeration.
    """
    n = len(gram)
    Q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if Q[i][i] <= 0:
            return None
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    return Q


def short_vectors(gram, center, bound: Fraction):
    """All integer n with (n + center)^T G (n + center) <= bound, exactly.

    Fincke-Pohst enumeration on a floating Cholesky with a small slack,
    followed by an exact filter, so no vector is missed.
    """
    G = [[Fraction(x) for x in row] for row in gram]
    r = len(G)
    c = [Fraction(x) for x in center]
    Q = ldl(G)
    if Q is None:
        raise NotPositiveDefinite("Gram matrix is not positive definite")
    qf = [[float(x) for x in row] for row in Q]
    cf = [float(x) for x in c]
    slack = 1e-9 * (1 + float(bound))
    out = []
    x = [0] * r

    def rec(i: int, remaining: float):
        # coordinate i sees the shift from coordinates above it
        shift = cf[i] + sum(qf[i][j] * (x[j] + cf[j]) for j in range(i + 1, r))
        q = qf[i][i]
        if remaining < -slack:
            return
        w = math.sqrt(max(remaining, 0.0) / q) + 1e-9
        lo = math.ceil(-shift - w - 1e-9)
        hi = math.floor(-shift + w + 1e-9)
        for v in range(lo, hi + 1):
            x[i] = v
            t = v + shift
            rest = remaining - q * t * t
            if i == 0:
                if rest >= -slack:
                    out.append(tuple(x))
            else:
                rec(i - 1, rest)
        x[i] = 0

    if r == 0:
        return [()]
    rec(r - 1, float(bound))
    result = []
    for n in out:
        y = [a + b for a, b in zip(n, c)]
        if norm(G, y) <= bound:
            result.append(n)
    return sorted(set(result))


def norm(G, x) -> Fraction:
    return sum(Fraction(G[i][j]) * x[i] * x[j] for i in range(len(x)) for j in range(len(x)))


def pairing(G, x, y) -> Fraction:
    return sum(Fraction(G[i][j]) * x[i] * y[j] for i in range(len(x)) for j in range(len(y)))


def _solve(G, y) -> tuple[Fraction, ...]:
    """Exact solution of G x = y."""
    n = len(G)
    A = [[Fraction(v) for v in row] + [Fraction(y[i])] for i, row in enumerate(G)]
    for col in range(n):
        piv = next(i for i in range(col, n) if A[i][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [v / p for v in A[col]]
        for i in range(n):
            if i != col and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[col])]
    return tuple(A[i][n] for i in range(n))


@dataclass(frozen=True, eq=False)
class Lattice:
    """Positive definite even lattice with its discriminant group L'/L.

    Classes are indexed 0..|L'/L|-1; class 0 is L itself. Internally a class is
    a tuple of residues modulo the nontrivial elementary divisors.
    """

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        G = self.gram
        r = len(G)
        if any(len(row) != r for row in G):
            raise NotSymmetric("Gram matrix is not square")
        for i in range(r):
            for j in range(r):
                if G[i][j] != G[j][i]:
                    raise NotSymmetric(f"Gram[{i}][{j}] = {G[i][j]} but Gram[{j}][{i}] = {G[j][i]}")
            if G[i][i] % 2:
                raise NotEven(f"Gram[{i}][{i}] = {G[i][i]} is odd")
        if ldl(G) is None:
            raise NotPositiveDefinite(f"Gram matrix {G} is not positive definite")

    @classmethod
    def from_gram(cls, gram) -> "Lattice":
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        for row, orig in zip(rows, gram):
            if any(Fraction(a) != Fraction(b) for a, b in zip(row, orig)):
                raise NotEven("Gram matrix must have integer entries")
        return cls(rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def snf(self):
        return smith_normal_form(self.gram)

    @cached_property
    def divisors(self) -> tuple[int, ...]:
        """Nontrivial elementary divisors of the discriminant group."""
        _, D, _ = self.snf
        return tuple(D[i][i] for i in range(self.rank) if D[i][i] != 1)

    @cached_property
    def _positions(self) -> tuple[int, ...]:
        _, D, _ = self.snf
        return tuple(i for i in range(self.rank) if D[i][i] != 1)

    @cached_property
    def _u_inverse(self):
        U, _, _ = self.snf
        inv = np.rint(np.linalg.inv(np.array(U, dtype=float))).astype(int)
        return [[int(v) for v in row] for row in inv]

    @property
    def order(self) -> int:
        return math.prod(self.divisors)

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*[range(d) for d in self.divisors]))

    @cached_property
    def _element_index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def element(self, cls: int) -> tuple[int, ...]:
        return self.elements[cls]

    def index_of(self, element) -> int:
        e = tuple(int(a) % d for a, d in zip(element, self.divisors))
        return self._element_index[e]

    def class_name(self, cls: int) -> str:
        e = self.elements[cls]
        if len(e) == 1:
            return str(e[0])
        return "(" + ",".join(map(str, e)) + ")"

    def add(self, a: int, b: int) -> int:
        return self.index_of([x + y for x, y in zip(self.elements[a], self.elements[b])])

    def neg(self, a: int) -> int:
        return self.index_of([-x for x in self.elements[a]])

    def scale(self, a: int, k: int) -> int:
        return self.index_of([k * x for x in self.elements[a]])

    def class_of(self, x) -> int:
        """Class of a dual-lattice vector given by rational coordinates."""
        G = self.gram
        y = [sum(Fraction(G[i][j]) * Fraction(x[j]) for j in range(self.rank)) for i in range(self.rank)]
        if any(v.denominator != 1 for v in y):
            raise ValueError(f"{x} is not in the dual lattice")
        U, _, _ = self.snf
        uy = [sum(U[i][j] * int(y[j]) for j in range(self.rank)) for i in range(self.rank)]
        return self.index_of([uy[p] for p in self._positions])

    def _some_vector(self, cls: int) -> tuple[Fraction, ...]:
        a = [0] * self.rank
        for p, v in zip(self._positions, self.elements[cls]):
            a[p] = v
        Ui = self._u_inverse
        y = [sum(Ui[i][j] * a[j] for j in range(self.rank)) for i in range(self.rank)]
        x = _solve(self.gram, y)
        return tuple(v - math.floor(v) for v in x)

    @cached_property
    def representatives(self) -> tuple[tuple[Fraction, ...], ...]:
        """Minimal-norm vector in each class; ties broken lexicographically."""
        reps = []
        for cls in range(self.order):
            x0 = self._some_vector(cls)
            bound = norm(self.gram, x0)
            shifts = short_vectors(self.gram, x0, bound)
            cands = [tuple(a + b for a, b in zip(n, x0)) for n in shifts]
            best = min(norm(self.gram, v) for v in cands)
            reps.append(min(v for v in cands if norm(self.gram, v) == best))
        return tuple(reps)

    def quad(self, cls: int) -> Fraction:
        """Half the minimal norm in the class: the lowest conformal weight."""
        v = self.representatives[cls]
        return norm(self.gram, v) / 2

    def bilinear(self, a: int, b: int) -> Fraction:
        """<a, b> mod 1."""
        v = pairing(self.gram, self.representatives[a], self.representatives[b])
        return v - math.floor(v)

    def subgroup(self, generators) -> tuple[int, ...]:
        """Subgroup of L'/L generated by the given classes, sorted."""
        found = {0}
        frontier = [0]
        gens = [int(g) for g in generators]
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = self.add(a, g)
                if b not in found:
                    found.add(b)
                    frontier.append(b)
        return tuple(sorted(found))

    def annihilator(self, subgroup) -> tuple[int, ...]:
        return tuple(c for c in range(self.order) if all(self.bilinear(c, s) == 0 for s in subgroup))

    def __repr__(self):
        return f"Lattice(gram={[list(r) for r in self.gram]})"
