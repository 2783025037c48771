"""Modular data of a rational vertex operator algebra.

A ``ModularData`` holds the simple-module labels (vacuum first), the central
charge, exact conformal weights, the unitary S-matrix and optionally a fusion
tensor ``N[i, j, k] = N_{ij}^k``. When the fusion tensor is absent it is
obtained from the S-matrix by the Verlinde formula.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    BadQdim,
    BadTwist,
    NegativeFusion,
    NonIntegerFusion,
    NonRealQdim,
    NotSelfDual,
    NotSimpleCurrent,
    UnknownLabel,
    VanishingDenominator,
)
from .rational import mod1, root_of_unity, to_fraction

DEFAULT_TOL = 1e-9
INTEGRALITY_TOL = 1e-6


class Statistics(enum.Enum):
    """Type of the algebra obtained by extending along an order-two current."""

    Z_VOA = "Z-VOA"
    Z_VOSA = "Z-VOSA"
    HALF_Z_VOSA = "1/2Z-VOSA"
    HALF_Z_VOA = "1/2Z-VOA"
    ORDINARY = "ordinary"

    @property
    def is_super(self) -> bool:
        return self in (Statistics.Z_VOSA, Statistics.HALF_Z_VOSA)

    @property
    def wrong_statistics(self) -> bool:
        # quantum dimension of the current is -1
        return self in (Statistics.Z_VOSA, Statistics.HALF_Z_VOA)


@dataclass(frozen=True, eq=False)
class ModularData:
    name: str
    labels: tuple[str, ...]
    central_charge: Fraction
    h: tuple[Fraction, ...]
    S: np.ndarray
    fusion: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        h = tuple(to_fraction(x) for x in self.h)
        S = np.asarray(self.S, dtype=complex)
        n = len(labels)
        if len(set(labels)) != n:
            raise UnknownLabel(f"duplicate label names in {self.name}")
        if S.shape != (n, n) or len(h) != n:
            raise ValueError(f"{self.name}: S has shape {S.shape}, expected {(n, n)} with {len(h)} weights")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "central_charge", to_fraction(self.central_charge))
        object.__setattr__(self, "S", S)
        if self.fusion is not None:
            N = np.asarray(self.fusion, dtype=np.int64)
            if N.shape != (n, n, n):
                raise ValueError(f"{self.name}: fusion tensor has shape {N.shape}")
            object.__setattr__(self, "fusion", N)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        """Label index from a name or an integer index."""
        if isinstance(label, (int, np.integer)):
            if 0 <= label < self.rank:
                return int(label)
            raise UnknownLabel(f"{self.name}: no label with index {label}")
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise UnknownLabel(f"{self.name}: no label named {label!r}") from None

    @property
    def twists(self) -> np.ndarray:
        return np.array([root_of_unity(x) for x in self.h])

    @property
    def T(self) -> np.ndarray:
        c24 = self.central_charge / 24
        return np.diag([root_of_unity(x - c24) for x in self.h])

    @cached_property
    def N(self) -> np.ndarray:
        if self.fusion is not None:
            return self.fusion
        return verlinde_fusion(self)

    @cached_property
    def dual(self) -> tuple[int, ...]:
        out = []
        for i in range(self.rank):
            hits = np.nonzero(self.N[i, :, 0])[0]
            if len(hits) != 1:
                raise NonIntegerFusion(f"{self.name}: label {self.labels[i]} has {len(hits)} duals")
            out.append(int(hits[0]))
        return tuple(out)

    def fuse(self, a, b) -> dict[int, int]:
        i, j = self.index(a), self.index(b)
        row = self.N[i, j]
        return {int(k): int(row[k]) for k in np.nonzero(row)[0]}

    def is_simple_current(self, j) -> bool:
        j = self.index(j)
        return bool(np.all(self.N[j].sum(axis=1) == 1))

    def current_product(self, j, x) -> int:
        """Index of the unique summand of j x x; j must be a simple current."""
        j, x = self.index(j), self.index(x)
        row = self.N[j, x]
        if row.sum() != 1:
            raise NotSimpleCurrent(f"{self.name}: {self.labels[j]} x {self.labels[x]} is not simple")
        return int(np.argmax(row))

    def __repr__(self):
        return f"ModularData({self.name!r}, rank={self.rank}, c={self.central_charge})"


def verlinde_raw(md: ModularData) -> np.ndarray:
    S = md.S
    s0 = S[0]
    bad = np.nonzero(np.abs(s0) < 1e-14)[0]
    if len(bad):
        raise VanishingDenominator(f"{md.name}: S[0, {md.labels[bad[0]]}] vanishes")
    return np.einsum("im,jm,km,m->ijk", S, S, S.conj(), 1.0 / s0)


def verlinde_fusion(md: ModularData, tol: float = INTEGRALITY_TOL) -> np.ndarray:
    """N_{ij}^k = sum_m S_im S_jm conj(S_km) / S_0m, rounded after checking integrality."""
    raw = verlinde_raw(md)
    rounded = np.rint(raw.real)
    err = np.abs(raw - rounded)
    worst = np.unravel_index(np.argmax(err), err.shape)
    if err[worst] >= tol:
        i, j, k = (md.labels[t] for t in worst)
        raise NonIntegerFusion(
            f"{md.name}: N[{i},{j}->{k}] = {raw[worst]:.3g} is {err[worst]:.2e} from an integer"
        )
    N = rounded.astype(np.int64)
    if (N < 0).any():
        i, j, k = (md.labels[t] for t in np.argwhere(N < 0)[0])
        raise NegativeFusion(f"{md.name}: N[{i},{j}->{k}] is negative")
    return N


def verlinde_residual(md: ModularData) -> float:
    raw = verlinde_raw(md)
    return float(np.max(np.abs(raw - np.rint(raw.real))))


def qdim(md: ModularData, i, tol: float = DEFAULT_TOL) -> float:
    i = md.index(i)
    d = md.S[0, i] / md.S[0, 0]
    if abs(d.imag) > tol:
        raise NonRealQdim(f"{md.name}: qdim of {md.labels[i]} is {d}")
    return float(d.real)


def monodromy_phase(md: ModularData, j, x) -> Fraction:
    """h(j x x) - h(j) - h(x) mod 1 for a simple current j."""
    j, x = md.index(j), md.index(x)
    jx = md.current_product(j, x)
    return mod1(md.h[jx] - md.h[j] - md.h[x])


def monodromy_charge(md: ModularData, j, x) -> complex:
    return root_of_unity(monodromy_phase(md, j, x))


def classify_simple_current(md: ModularData, j, tol: float = DEFAULT_TOL) -> Statistics:
    """Statistics of the extension by a self-dual simple current, from (twist, qdim)."""
    j = md.index(j)
    if not md.is_simple_current(j):
        raise NotSimpleCurrent(f"{md.name}: {md.labels[j]} is not a simple current")
    if md.current_product(j, j) != 0:
        raise NotSelfDual(f"{md.name}: {md.labels[j]} squared is not the vacuum")
    th = mod1(md.h[j])
    if th not in (0, Fraction(1, 2)):
        raise BadTwist(f"{md.name}: twist of {md.labels[j]} is exp(2 pi i {th}), not +-1")
    d = qdim(md, j, tol)
    if abs(abs(d) - 1) > tol:
        raise BadQdim(f"{md.name}: qdim of {md.labels[j]} is {d}, not +-1")
    table = {
        (0, 1): Statistics.Z_VOA,
        (0, -1): Statistics.Z_VOSA,
        (Fraction(1, 2), 1): Statistics.HALF_Z_VOSA,
        (Fraction(1, 2), -1): Statistics.HALF_Z_VOA,
    }
    return table[(th, 1 if d > 0 else -1)]


def tensor_product(a: ModularData, b: ModularData) -> ModularData:
    """Deligne product; label (i, j) sits at index i * rank(b) + j."""
    labels = [f"({x},{y})" for x in a.labels for y in b.labels]
    h = [x + y for x in a.h for y in b.h]
    S = np.kron(a.S, b.S)
    na, nb = a.rank, b.rank
    N = np.einsum("ijk,abc->iajbkc", a.N, b.N).reshape(na * nb, na * nb, na * nb)
    return ModularData(f"({a.name})x({b.name})", tuple(labels), a.central_charge + b.central_charge, tuple(h), S, N)


@dataclass
class Check:
    name: str
    passed: bool
    residual: float = 0.0
    detail: str = ""


@dataclass
class AxiomReport:
    name: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, key: str) -> Check:
        for c in self.checks:
            if c.name == key:
                return c
        raise KeyError(key)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "residual": c.residual, "detail": c.detail}
                for c in self.checks
            ],
        }


def _associativity_defect(N: np.ndarray) -> int:
    # sum_m N_ij^m N_mk^l against sum_m N_jk^m N_im^l, one i at a time
    n = N.shape[0]
    F = N.astype(float)
    flat_out = F.reshape(n, n * n)
    flat_in = F.reshape(n * n, n)
    worst = 0.0
    for i in range(n):
        left = (F[i] @ flat_out).reshape(n, n, n)
        right = (flat_in @ F[i]).reshape(n, n, n)
        worst = max(worst, float(np.max(np.abs(left - right))))
    return int(round(worst))


def check_axioms(
    md: ModularData,
    tol: float = DEFAULT_TOL,
    int_tol: float = INTEGRALITY_TOL,
    assoc_limit: int = 64,
) -> AxiomReport:
    """Run every structural check; never raises on a failed check."""
    S = md.S
    n = md.rank
    checks = []

    r = float(np.max(np.abs(S - S.T)))
    checks.append(Check("S symmetric", r < tol, r))
    r = float(np.max(np.abs(S @ S.conj().T - np.eye(n))))
    checks.append(Check("S unitary", r < tol, r))
    s00 = S[0, 0]
    checks.append(Check("S00 real positive", abs(s00.imag) < tol and s00.real > tol, abs(s00.imag),
                        f"S00 = {s00:.6g}"))
    # weights are exact rationals, so twists are roots of unity by construction
    checks.append(Check("twists roots of unity", all(isinstance(x, Fraction) for x in md.h)))

    try:
        r = verlinde_residual(md)
        N = verlinde_fusion(md, int_tol)
        checks.append(Check("Verlinde integrality", True, r))
    except (NonIntegerFusion, NegativeFusion, VanishingDenominator) as exc:
        checks.append(Check("Verlinde integrality", False, float("nan"), str(exc)))
        return AxiomReport(md.name, checks)

    if md.fusion is not None:
        diff = int(np.max(np.abs(md.fusion - N)))
        checks.append(Check("stored fusion matches Verlinde", diff == 0, diff))
    N = md.N

    unit = bool(np.array_equal(N[0], np.eye(n, dtype=N.dtype)))
    checks.append(Check("vacuum is the fusion unit", unit))
    comm = bool(np.array_equal(N, N.transpose(1, 0, 2)))
    checks.append(Check("fusion commutative", comm))
    duals_ok = all(np.sum(N[i, :, 0]) == 1 for i in range(n))
    checks.append(Check("unique duals", duals_ok))
    checks.append(Check("fusion non-negative", bool((N >= 0).all())))

    if duals_ok:
        C = np.zeros((n, n))
        for i in range(n):
            C[i, int(np.argmax(N[i, :, 0]))] = 1
        S2 = S @ S
        lam = S2[0, 0]
        r = float(np.max(np.abs(S2 - lam * C)))
        ok = r < tol and abs(abs(lam) - 1) < tol
        checks.append(Check("S^2 is charge conjugation", ok, r, f"scalar {lam:.6g}"))

    if n <= assoc_limit:
        d = _associativity_defect(N)
        checks.append(Check("fusion associative", d == 0, d))
    return AxiomReport(md.name, checks)


def find_label_matching(a: ModularData, b: ModularData, tol: float = DEFAULT_TOL) -> list[int] | None:
    """Permutation p with b.S[p[i], p[j]] ~ a.S[i, j] and equal twists, vacuum to vacuum."""
    if a.rank != b.rank or mod1(a.central_charge - b.central_charge) != 0:
        return None
    n = a.rank
    cands = [[j for j in range(n) if mod1(a.h[i] - b.h[j]) == 0] for i in range(n)]
    if 0 not in cands[0]:
        return None
    cands[0] = [0]
    order = sorted(range(n), key=lambda i: (i != 0, len(cands[i])))
    perm = [-1] * n
    used = set()

    def place(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in cands[i]:
            if j in used:
                continue
            ok = True
            for i2 in order[:pos]:
                j2 = perm[i2]
                if abs(a.S[i, i2] - b.S[j, j2]) > tol:
                    ok = False
                    break
            if ok and abs(a.S[i, i] - b.S[j, j]) <= tol:
                perm[i] = j
                used.add(j)
                if place(pos + 1):
                    return True
                used.discard(j)
                perm[i] = -1
        return False

    return perm if place(0) else None
