"""Commutant (coset) of a lattice VOA V_L inside a rational VOA V.

A module M_i of V decomposes over V_L as a sum of V_{mu+L} (x) M_{i,mu} with
mu running over the coset lambda_i + N/L of the discriminant group L'/L. Two
pairs (i, mu) and (j, mu') give the same coset module exactly when they differ
by a current: mu' - mu = nu in N'/L and M_j = M^nu x M_i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import (
    InconsistentAction,
    InternalInconsistency,
    NonIntegerCount,
    WeightMismatch,
)
from .lattice import Lattice
from .modular_data import ModularData, verlinde_fusion
from .rational import mod1, root_of_unity


@dataclass(frozen=True, eq=False)
class CosetSetup:
    name: str
    V: ModularData
    lattice: Lattice
    weights: tuple[int, ...]  # lambda_i as a class of L'/L, one per label of V
    N: tuple[int, ...]  # subgroup N/L of L'/L
    action: dict = field(default_factory=dict)  # nu in N'/L -> tuple mapping i to M^nu x M_i

    @cached_property
    def N_dual(self) -> tuple[int, ...]:
        return self.lattice.annihilator(self.N)

    def act(self, nu: int, i: int) -> int:
        return self.action[nu][i]

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        L = self.lattice
        return tuple(sorted((i, L.add(w, n)) for i, w in enumerate(self.weights) for n in self.N))

    @cached_property
    def _pair_set(self) -> frozenset:
        return frozenset(self.pairs)

    def in_domain(self, i: int, mu: int) -> bool:
        return (i, mu) in self._pair_set

    @cached_property
    def classes(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        L = self.lattice
        seen = set()
        out = []
        for p in self.pairs:
            if p in seen:
                continue
            i, mu = p
            orbit = tuple(sorted({(self.act(nu, i), L.add(mu, nu)) for nu in self.N_dual}))
            seen.update(orbit)
            out.append(orbit)
        return tuple(out)

    @cached_property
    def class_index(self) -> dict[tuple[int, int], int]:
        return {p: c for c, orbit in enumerate(self.classes) for p in orbit}

    def rep(self, c: int) -> tuple[int, int]:
        return self.classes[c][0]

    def class_name(self, c: int) -> str:
        i, mu = self.rep(c)
        return f"{self.V.labels[i]}@{self.lattice.class_name(mu)}"

    @property
    def rank(self) -> int:
        return self.lattice.rank


def build_setup(
    name: str,
    V: ModularData,
    lattice: Lattice,
    weights,
    N_generators,
    currents: dict | None = None,
    action: dict | None = None,
) -> CosetSetup:
    """Validate the data and close the current action over N'/L.

    ``currents`` maps classes nu of N'/L to the label of M^nu in V; the action
    is then read off from fusion. An explicit ``action`` overrides this.
    """
    L = lattice
    weights = tuple(int(w) for w in weights)
    if len(weights) != V.rank:
        raise InconsistentAction(f"{name}: {len(weights)} weights for {V.rank} labels")
    if weights[0] != 0:
        raise InconsistentAction(f"{name}: the vacuum must carry weight 0")
    Nsub = L.subgroup(N_generators)
    Ndual = L.annihilator(Nsub)
    perms: dict[int, tuple[int, ...]] = {0: tuple(range(V.rank))}
    if action:
        for nu, perm in action.items():
            perms[int(nu)] = tuple(int(x) for x in perm)
    elif currents:
        for nu, lab in currents.items():
            j = V.index(lab)
            perms[int(nu)] = tuple(V.current_product(j, i) for i in range(V.rank))
    # close under composition
    frontier = list(perms)
    while frontier:
        a = frontier.pop()
        for b in list(perms):
            c = L.add(a, b)
            composed = tuple(perms[a][perms[b][i]] for i in range(V.rank))
            if c in perms:
                if perms[c] != composed:
                    raise InconsistentAction(f"{name}: current action is not a group action at {L.class_name(c)}")
            else:
                perms[c] = composed
                frontier.append(c)
    if set(perms) != set(Ndual):
        missing = sorted(set(Ndual) - set(perms))
        extra = sorted(set(perms) - set(Ndual))
        raise InconsistentAction(f"{name}: currents cover {sorted(perms)}, N'/L is {list(Ndual)} "
                                 f"(missing {missing}, outside {extra})")
    Nset = set(Nsub)
    for nu, perm in perms.items():
        for i in range(V.rank):
            j = perm[i]
            diff = L.add(L.add(weights[j], L.neg(weights[i])), L.neg(nu))
            if diff not in Nset:
                raise InconsistentAction(
                    f"{name}: weight of M^{L.class_name(nu)} x {V.labels[i]} is off by {L.class_name(diff)}"
                )
    return CosetSetup(name, V, L, weights, Nsub, perms)


def coset_count(setup: CosetSetup) -> int:
    n = setup.V.rank * len(setup.N)
    if n % len(setup.N_dual):
        raise NonIntegerCount(f"{setup.name}: {n} pairs do not split into orbits of size {len(setup.N_dual)}")
    count = n // len(setup.N_dual)
    if count != len(setup.classes):
        raise InternalInconsistency(
            f"{setup.name}: {len(setup.classes)} classes but the count formula gives {count}"
        )
    return count


def _fusion_from(setup: CosetSetup, a: tuple[int, int], b: tuple[int, int]) -> np.ndarray:
    L = setup.lattice
    (i, mi), (j, mj) = a, b
    out = np.zeros(len(setup.classes), dtype=np.int64)
    mu = L.add(mi, mj)
    for k in np.nonzero(setup.V.N[i, j])[0]:
        if not setup.in_domain(int(k), mu):
            raise WeightMismatch(
                f"{setup.name}: {setup.V.labels[k]} in {setup.V.labels[i]} x {setup.V.labels[j]} "
                f"does not carry weight {L.class_name(mu)}"
            )
        out[setup.class_index[(int(k), mu)]] += setup.V.N[i, j, k]
    return out


def coset_fusion(setup: CosetSetup, check: bool = True) -> np.ndarray:
    """N^C[a, b, c] from the fusion of V, optionally checked on every pair of representatives."""
    n = len(setup.classes)
    NC = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            NC[a, b] = _fusion_from(setup, setup.rep(a), setup.rep(b))
            if check:
                for pa in setup.classes[a]:
                    for pb in setup.classes[b]:
                        if not np.array_equal(_fusion_from(setup, pa, pb), NC[a, b]):
                            raise InternalInconsistency(
                                f"{setup.name}: coset fusion depends on representatives at "
                                f"{setup.class_name(a)} x {setup.class_name(b)}"
                            )
    return NC


def reconstruct_v_fusion(setup: CosetSetup, NC: np.ndarray) -> np.ndarray:
    """Fusion of V recovered from coset fusion and the currents."""
    L = setup.lattice
    n = setup.V.rank
    reps = {setup.rep(c) for c in range(len(setup.classes))}
    inverse = {nu: tuple(int(np.argsort(setup.action[nu])[k]) for k in range(n)) for nu in setup.N_dual}
    NV = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            a = setup.class_index[(i, setup.weights[i])]
            b = setup.class_index[(j, setup.weights[j])]
            base = L.add(setup.weights[i], setup.weights[j])
            for mu in setup.N_dual:
                target = L.add(base, mu)
                for k in range(n):
                    if (k, target) in reps:
                        c = setup.class_index[(k, target)]
                        NV[i, j, inverse[mu][k]] += NC[a, b, c]
    return NV


def coset_ST(setup: CosetSetup, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """S and T of the coset, obtained by stripping the lattice factor from those of V."""
    L = setup.lattice
    V = setup.V
    n = len(setup.classes)
    reps = [setup.rep(c) for c in range(n)]
    scale = math.sqrt(L.order) / len(setup.N)

    def entry(p, q):
        (i, mi), (j, mj) = p, q
        return root_of_unity(-L.bilinear(mi, mj)) * scale * V.S[i, j]

    S = np.array([[entry(p, q) for q in reps] for p in reps])
    if check:
        for a in range(n):
            for b in range(n):
                for p in setup.classes[a]:
                    for q in setup.classes[b]:
                        if abs(entry(p, q) - S[a, b]) > 1e-9:
                            raise InternalInconsistency(
                                f"{setup.name}: coset S depends on representatives at "
                                f"{setup.class_name(a)}, {setup.class_name(b)}"
                            )
    r24 = Fraction(L.rank, 24)
    cV24 = V.central_charge / 24
    T = np.diag([root_of_unity(-L.quad(mu) + r24 + V.h[i] - cV24) for i, mu in reps])
    return S, T


def coset_weights(setup: CosetSetup) -> tuple[Fraction, ...]:
    """Conformal weights modulo 1, in [0, 1)."""
    return tuple(mod1(setup.V.h[i] - setup.lattice.quad(mu)) for i, mu in
                 (setup.rep(c) for c in range(len(setup.classes))))


def coset_modular_data(setup: CosetSetup, check: bool = True) -> ModularData:
    S, _ = coset_ST(setup, check)
    c = setup.V.central_charge - setup.lattice.rank
    names = tuple(setup.class_name(a) for a in range(len(setup.classes)))
    NC = coset_fusion(setup, check)
    md = ModularData(f"coset[{setup.name}]", names, c, coset_weights(setup), S, NC)
    if check and not np.array_equal(verlinde_fusion(md), NC):
        raise InternalInconsistency(f"{setup.name}: coset fusion disagrees with Verlinde of the coset S")
    return md


def coset_characters(setup: CosetSetup, v_character, trunc):
    """q-series of every coset class.

    ``v_character(i, u)`` must return the q-series of ch[M_i](u, tau) for a
    dual-lattice vector u (rational coordinates in the basis of L).
    """
    from .qseries import eta, lattice_theta

    L = setup.lattice
    r = L.rank
    extra = Fraction(r, 24) + 2
    out = {}
    cache = {}
    for c in range(len(setup.classes)):
        i, mu = setup.rep(c)
        total = None
        for g in range(L.order):
            key = (i, g)
            if key not in cache:
                cache[key] = v_character(i, L.representatives[g])
            term = cache[key] * root_of_unity(-L.bilinear(mu, g))
            total = term if total is None else total + term
        theta = lattice_theta(L, mu, None, trunc + extra)
        out[c] = total * eta(trunc + extra) ** r / theta / L.order
    return out


def forward_character(setup: CosetSetup, i: int, u, coset_chars: dict, trunc):
    """ch[M_i](u, tau) rebuilt from coset characters and lattice theta functions."""
    from .qseries import eta, lattice_theta

    L = setup.lattice
    total = None
    for n in setup.N:
        mu = L.add(setup.weights[i], n)
        c = setup.class_index[(i, mu)]
        term = lattice_theta(L, mu, u, trunc + 2) * coset_chars[c]
        total = term if total is None else total + term
    return total / eta(trunc + 2) ** L.rank

