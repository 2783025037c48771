"""Simple-current extensions.

A group of simple currents G acts on the labels of a base theory by fusion.
Orbits of that action label the modules of the extended (super)algebra;
local orbits (trivial monodromy with every current) are its ordinary modules,
the others are twisted (Ramond-type) modules.

For an order-two current J every non-fixed orbit X = {X0, X1 = J x X0}
carries two characters ch^{+-}[X] = ch[X0] +- ch[X1]. Their S-transformation
matrix ``stilde`` is built entry by entry from the base S-matrix; which
entries are allowed to be nonzero depends only on the quantum dimension d of J
and the monodromy charges, so the pattern is laid down explicitly and never
inferred from numerical zeros.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BadTwistPattern,
    FixedPointPresent,
    InternalInconsistency,
    NegativeFusion,
    NonIntegerFusion,
    NontrivialMutualMonodromy,
    NonUniqueMinimum,
    NotIntegralGlue,
    NotInvertible,
    UnsupportedGroupOrder,
    VanishingDenominator,
    WrongCase,
)
from .lattice import smith_normal_form
from .modular_data import (
    DEFAULT_TOL,
    INTEGRALITY_TOL,
    ModularData,
    Statistics,
    classify_simple_current,
    monodromy_phase,
    qdim,
    verlinde_fusion,
)
from .rational import mod1, root_of_unity


class Sector(enum.Enum):
    LOCAL = "local"
    TWISTED = "twisted"


@dataclass(frozen=True, eq=False)
class CurrentGroup:
    base: ModularData
    generators: tuple[int, ...]
    elements: tuple[int, ...]
    exponents: tuple[tuple[int, ...], ...]
    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def act(self, g: int, x: int) -> int:
        """Label of J^g x X, with g an index into ``elements``."""
        return self.base.current_product(self.elements[g], x)

    def orbit(self, x: int) -> tuple[int, ...]:
        return tuple(sorted({self.base.current_product(j, x) for j in self.elements}))

    def monodromy(self, x) -> tuple[Fraction, ...]:
        x = self.base.index(x)
        return tuple(monodromy_phase(self.base, g, x) for g in self.generators)


def build_current_group(md: ModularData, generators, tol: float = DEFAULT_TOL) -> CurrentGroup:
    gens = tuple(md.index(g) for g in generators)
    for g in gens:
        if not md.is_simple_current(g):
            raise NotInvertible(f"{md.name}: {md.labels[g]} is not invertible under fusion")

    def power(j: int, n: int) -> int:
        x = 0
        for _ in range(n):
            x = md.current_product(j, x)
        return x

    orders = []
    for g in gens:
        n, x = 1, g
        while x != 0:
            x = md.current_product(g, x)
            n += 1
        orders.append(n)

    seen: dict[int, tuple[int, ...]] = {}
    relations = [[o if i == t else 0 for i in range(len(gens))] for t, o in enumerate(orders)]
    for e in itertools.product(*[range(o) for o in orders]):
        x = 0
        for g, k in zip(gens, e):
            x = md.current_product(power(g, k), x)
        if x in seen:
            relations.append([a - b for a, b in zip(e, seen[x])])
        else:
            seen[x] = e
    elements = tuple(sorted(seen))
    exponents = tuple(seen[x] for x in elements)
    if gens:
        _, D, _ = smith_normal_form(relations)
        inv = tuple(D[i][i] for i in range(len(gens)) if D[i][i] not in (0, 1))
    else:
        inv = ()

    for a in elements:
        for b in elements:
            if monodromy_phase(md, a, b) != 0:
                raise NontrivialMutualMonodromy(
                    f"{md.name}: currents {md.labels[a]} and {md.labels[b]} have nontrivial mutual monodromy"
                )
    for a in elements:
        if mod1(md.h[a]) not in (0, Fraction(1, 2)):
            raise BadTwistPattern(f"{md.name}: twist of current {md.labels[a]} is not +-1")
        for b in elements:
            b2 = md.current_product(b, b)
            if mod1(md.h[md.current_product(b2, a)] - md.h[a]) != 0:
                raise BadTwistPattern(f"{md.name}: twist of {md.labels[a]} changes under the square of {md.labels[b]}")
    return CurrentGroup(md, gens, elements, exponents, inv)


def classify_sector(group: CurrentGroup, x) -> Sector:
    return Sector.LOCAL if all(p == 0 for p in group.monodromy(x)) else Sector.TWISTED


@dataclass(frozen=True)
class Orbit:
    index: int
    members: tuple[int, ...]  # members[0] is the representative (lowest label index)
    sector: Sector
    fixed: bool
    epsilon: int  # monodromy charge with an order-two current; +1 / -1 for local / twisted otherwise
    name: str

    @property
    def rep(self) -> int:
        return self.members[0]

    @property
    def partner(self) -> int:
        """J x rep for an order-two current (the rep itself on fixed points)."""
        return self.members[-1] if len(self.members) == 2 else self.members[0]


@dataclass(eq=False)
class ExtensionResult:
    group: CurrentGroup
    statistics: Statistics
    orbits: list[Orbit]
    current_qdim: float = 1.0
    current_twist: int = 1
    basis: list[tuple[int, int]] = field(default_factory=list)
    stilde: np.ndarray | None = None
    stilde_inv: np.ndarray | None = None
    n_plus: np.ndarray | None = None
    n_minus: np.ndarray | None = None

    @property
    def base(self) -> ModularData:
        return self.group.base

    def orbit_of(self, x) -> Orbit:
        x = self.base.index(x)
        for o in self.orbits:
            if x in o.members:
                return o
        raise KeyError(x)

    def orbit_index(self, key) -> int:
        if isinstance(key, Orbit):
            return key.index
        if isinstance(key, (int, np.integer)):
            return int(key)
        for o in self.orbits:
            if o.name == key:
                return o.index
        return self.orbit_of(key).index

    @property
    def local(self) -> list[Orbit]:
        return [o for o in self.orbits if o.sector is Sector.LOCAL]

    @property
    def twisted(self) -> list[Orbit]:
        return [o for o in self.orbits if o.sector is Sector.TWISTED]

    @property
    def fixed_points(self) -> list[Orbit]:
        return [o for o in self.orbits if o.fixed]

    def basis_names(self) -> list[str]:
        return [self.orbits[o].name + ("+" if s > 0 else "-") for o, s in self.basis]

    def counts(self) -> dict[str, int]:
        return {
            "labels": self.base.rank,
            "orbits": len(self.orbits),
            "local": len(self.local),
            "twisted": len(self.twisted),
            "fixed": len(self.fixed_points),
        }


def _orbits(group: CurrentGroup) -> list[Orbit]:
    md = group.base
    done = set()
    out = []
    two = group.order == 2
    for x in range(md.rank):
        if x in done:
            continue
        members = group.orbit(x)
        if two and len(members) == 2:
            # keep (X0, J x X0) order with the lowest index as X0
            members = (x, md.current_product(group.elements[1], x))
        done.update(members)
        sector = classify_sector(group, x)
        if two:
            eps = 1 if monodromy_phase(md, group.elements[1], x) == 0 else -1
        else:
            eps = 1 if sector is Sector.LOCAL else -1
        out.append(Orbit(len(out), tuple(members), sector, len(members) < group.order, eps, md.labels[x]))
    return out


def _position(ext: ExtensionResult, u: Orbit, z: Orbit) -> tuple[int, int] | None:
    """Signs (row of u, column of z) of the one entry of stilde that can be nonzero."""
    d = int(np.sign(ext.current_qdim))
    if not u.fixed and not z.fixed:
        return (d * z.epsilon, d * u.epsilon)
    if u.fixed and z.fixed:
        return None
    if z.fixed:
        # ch^-[U] sees fixed-point columns only from local U
        return (-1, 1) if u.sector is Sector.LOCAL else None
    return (1, -1) if z.sector is Sector.LOCAL else None


def _pattern_matrix(ext: ExtensionResult, S: np.ndarray) -> np.ndarray:
    pos = {b: i for i, b in enumerate(ext.basis)}
    M = np.zeros((len(ext.basis), len(ext.basis)), dtype=complex)
    for u in ext.orbits:
        for z in ext.orbits:
            p = _position(ext, u, z)
            if p is None:
                continue
            val = S[u.rep, z.rep]
            if not z.fixed:
                val = 2 * val
            M[pos[(u.index, p[0])], pos[(z.index, p[1])]] = val
    return M


def coefficient(ext: ExtensionResult, M: np.ndarray, u, z) -> complex:
    """The unique structurally allowed entry of M between orbits u and z (0 if none)."""
    u, z = ext.orbits[ext.orbit_index(u)], ext.orbits[ext.orbit_index(z)]
    p = _position(ext, u, z)
    if p is None:
        return 0j
    pos = {b: i for i, b in enumerate(ext.basis)}
    return M[pos[(u.index, p[0])], pos[(z.index, p[1])]]


def _round_fusion(raw: np.ndarray, what: str) -> np.ndarray:
    rounded = np.rint(raw.real)
    err = np.abs(raw - rounded)
    if err.size and err.max() >= INTEGRALITY_TOL:
        raise NonIntegerFusion(f"{what}: super-Verlinde value {raw.flat[err.argmax()]:.4g} is not an integer")
    return rounded.astype(np.int64)


def _selection(ext: ExtensionResult) -> np.ndarray:
    eps = np.array([o.epsilon for o in ext.orbits])
    return (eps[:, None, None] * eps[None, :, None]) == eps[None, None, :]


def _stilde_route(ext: ExtensionResult) -> tuple[np.ndarray, np.ndarray]:
    n = len(ext.orbits)
    Cf = np.array([[coefficient(ext, ext.stilde, u, z) for z in range(n)] for u in range(n)])
    Ci = np.array([[coefficient(ext, ext.stilde_inv, z, x) for x in range(n)] for z in range(n)])
    local = np.array([o.sector is Sector.LOCAL for o in ext.orbits])
    wrong = ext.current_qdim < 0
    # wrong statistics: N^+ runs over twisted Z, N^- over local Z; correct statistics the other way
    masks = {1: ~local if wrong else local, -1: local if wrong else ~local}
    sel = _selection(ext)
    out = {}
    for s, mask in masks.items():
        zs = np.nonzero(mask)[0]
        den = Cf[0, zs]
        if np.any(np.abs(den) < 1e-12):
            z = zs[np.argmin(np.abs(den))]
            raise VanishingDenominator(f"stilde entry (vacuum, {ext.orbits[z].name}) vanishes")
        raw = np.einsum("uz,wz,zx,z->uwx", Cf[:, zs], Cf[:, zs], Ci[zs, :], 1 / den)
        if s == 1 and not wrong:
            nfac = np.array([2 if o.fixed else 1 for o in ext.orbits])
            raw = raw * nfac[None, None, :]
        out[s] = _round_fusion(np.where(sel, raw, 0), f"{ext.base.name} N^{'+' if s > 0 else '-'}")
    return out[1], out[-1]


def _base_route(ext: ExtensionResult) -> tuple[np.ndarray, np.ndarray]:
    N = ext.base.N
    reps = [o.rep for o in ext.orbits]
    partners = [o.partner for o in ext.orbits]
    A = N[np.ix_(reps, reps, reps)]
    B = N[np.ix_(reps, reps, partners)]
    return A + B, A - B


def _grouped_s_route(ext: ExtensionResult) -> tuple[np.ndarray, np.ndarray]:
    """Verlinde formula of the base theory summed over orbits of the current."""
    S = ext.base.S
    Si = np.linalg.inv(S)
    d = int(np.sign(ext.current_qdim))
    reps = [o.rep for o in ext.orbits]
    zs = np.array([o.rep for o in ext.orbits])
    weight = np.array([1 if o.fixed else 2 for o in ext.orbits])
    eps = np.array([o.epsilon for o in ext.orbits])
    sel = _selection(ext)
    out = {}
    for s in (1, -1):
        fac = weight * (1 + s * d * eps)
        raw = np.einsum("uz,wz,zx,z->uwx", S[np.ix_(reps, zs)], S[np.ix_(reps, zs)], Si[np.ix_(zs, reps)],
                        fac / S[0, zs])
        out[s] = _round_fusion(np.where(sel, raw, 0), f"{ext.base.name} grouped Verlinde")
    return out[1], out[-1]


def build_extension(group: CurrentGroup, tol: float = DEFAULT_TOL) -> ExtensionResult:
    md = group.base
    orbits = _orbits(group)
    if group.order == 1:
        return ExtensionResult(group, Statistics.ORDINARY, orbits)
    if group.order > 2:
        ok = all(mod1(md.h[j]) == 0 and abs(qdim(md, j, tol) - 1) < tol for j in group.elements)
        if not ok:
            raise UnsupportedGroupOrder(
                f"{md.name}: super extensions need a current group of order 2, got {group.order}"
            )
        return ExtensionResult(group, Statistics.ORDINARY, orbits)

    J = group.elements[1]
    stats = classify_simple_current(md, J, tol)
    d = qdim(md, J, tol)
    theta = 1 if mod1(md.h[J]) == 0 else -1
    ext = ExtensionResult(group, stats, orbits, current_qdim=d, current_twist=theta)
    for o in orbits:
        ext.basis.append((o.index, 1))
        if not o.fixed:
            ext.basis.append((o.index, -1))
    fixed = ext.fixed_points
    if fixed and (d < 0 or any(o.sector is Sector.LOCAL for o in fixed)):
        # the signed-character pattern is only available when fixed points are twisted
        return ext
    ext.stilde = _pattern_matrix(ext, md.S)
    ext.stilde_inv = _pattern_matrix(ext, np.linalg.inv(md.S))
    resid = np.abs(ext.stilde @ ext.stilde_inv - np.eye(len(ext.basis))).max()
    if resid > 1e-8:
        raise InternalInconsistency(f"{md.name}: stilde pattern is not inverted by its partner ({resid:.2e})")
    full = _full_stilde(ext)
    resid = np.abs(full - ext.stilde).max()
    if resid > 1e-8:
        raise InternalInconsistency(f"{md.name}: stilde pattern disagrees with the signed-basis transform ({resid:.2e})")

    sp, sm = _stilde_route(ext)
    bp, bm = _base_route(ext)
    gp, gm = _grouped_s_route(ext)
    for name, (p, m) in {"base fusion": (bp, bm), "grouped Verlinde": (gp, gm)}.items():
        if not (np.array_equal(sp, p) and np.array_equal(sm, m)):
            bad = np.argwhere((sp != p) | (sm != m))[0]
            raise InternalInconsistency(
                f"{md.name}: super-Verlinde and {name} disagree at orbits {[orbits[i].name for i in bad]}"
            )
    if (sp < 0).any():
        raise NegativeFusion(f"{md.name}: negative N^+ entry")
    ext.n_plus, ext.n_minus = sp, sm
    return ext


def _full_stilde(ext: ExtensionResult) -> np.ndarray:
    """Signed-basis S-transform computed directly from characters, for cross-checking."""
    md = ext.base
    n = md.rank
    rows = []
    for o, s in ext.basis:
        orb = ext.orbits[o]
        v = np.zeros(n)
        if orb.fixed:
            v[orb.rep] = 2.0
        else:
            v[orb.members[0]] += 1
            v[orb.members[1]] += s
        rows.append(v)
    P = np.array(rows)
    image = P @ md.S  # rows: signed characters transformed, in the base basis
    # express each image in the signed basis; a fixed point's + character is 2 ch[X0]
    coeffs, *_ = np.linalg.lstsq(P.T.astype(complex), image.T, rcond=None)
    return coeffs.T


def super_verlinde(ext: ExtensionResult, route: str = "stilde") -> tuple[np.ndarray, np.ndarray]:
    """(N^+, N^-) indexed [U, W, X] by orbit."""
    if ext.group.order != 2:
        raise UnsupportedGroupOrder(f"super fusion rules need a current of order 2, got {ext.group.order}")
    if ext.stilde is None:
        raise FixedPointPresent(f"{ext.base.name}: fixed points block the signed-character S-matrix")
    if route == "stilde":
        return _stilde_route(ext)
    if route == "base":
        return _base_route(ext)
    if route == "grouped":
        return _grouped_s_route(ext)
    raise ValueError(f"unknown route {route!r}")


def _lowest(ext: ExtensionResult, candidates: list[Orbit], what: str) -> tuple[Orbit, int]:
    """Orbit of minimal conformal weight and its member carrying that weight."""
    h = ext.base.h
    if not candidates:
        raise NonUniqueMinimum(f"{ext.base.name}: no {what} orbit to take the minimum over")
    best = min(min(h[m] for m in o.members) for o in candidates)
    hits = [o for o in candidates if min(h[m] for m in o.members) == best]
    if len(hits) != 1:
        raise NonUniqueMinimum(f"{ext.base.name}: {len(hits)} {what} orbits share minimal weight {best}")
    o = hits[0]
    low = [m for m in o.members if h[m] == best]
    if len(low) != 1:
        raise NonUniqueMinimum(f"{ext.base.name}: both members of {o.name} have weight {best}")
    return o, low[0]


def lowest_orbits(ext: ExtensionResult) -> dict[int, tuple[Orbit, int]]:
    """Z_(+) (lowest local) and Z_(-) (lowest twisted, non-fixed) with their even members."""
    out = {}
    out[1] = _lowest(ext, ext.local, "local")
    tw = [o for o in ext.twisted if not o.fixed]
    try:
        out[-1] = _lowest(ext, tw, "twisted")
    except NonUniqueMinimum:
        if tw:
            raise
    return out


def adim(ext: ExtensionResult, x, sign: int) -> float:
    """Asymptotic dimension of ch^{sign}[X] relative to the vacuum orbit."""
    if ext.group.order != 2:
        raise UnsupportedGroupOrder("asymptotic dimensions need a current of order 2")
    o = ext.orbits[ext.orbit_index(x)]
    if o.fixed and sign < 0:
        return 0.0
    if o.index == 0:
        return 1.0
    # wrong statistics: ch^+ is governed by the lowest twisted orbit; correct: by the lowest local one
    key = -sign if ext.current_qdim < 0 else sign
    low = lowest_orbits(ext)
    if key not in low:
        raise NonUniqueMinimum(f"{ext.base.name}: no non-fixed twisted orbit for adim")
    _, z0 = low[key]
    S = ext.base.S
    if abs(S[0, z0]) < 1e-14:
        raise VanishingDenominator(f"{ext.base.name}: S[vacuum, {ext.base.labels[z0]}] vanishes")
    val = S[o.rep, z0] / S[0, z0]
    return float(val.real)


def t_rule(ext: ExtensionResult, x, sign: int) -> tuple[Fraction, int]:
    """ch^{sign}[X](tau + 1) = exp(2 pi i (phase - c/24)) ch^{target}[X](tau)."""
    o = ext.orbits[ext.orbit_index(x)]
    return mod1(ext.base.h[o.rep]), sign * o.epsilon * ext.current_twist


def t_tilde(ext: ExtensionResult) -> np.ndarray:
    pos = {b: i for i, b in enumerate(ext.basis)}
    c24 = ext.base.central_charge / 24
    T = np.zeros((len(ext.basis), len(ext.basis)), dtype=complex)
    for (o, s), i in pos.items():
        phase, target = t_rule(ext, o, s)
        if (o, target) in pos:
            T[i, pos[(o, target)]] = root_of_unity(phase - c24)
    return T


def extend_ordinary(group: CurrentGroup, tol: float = DEFAULT_TOL) -> ModularData:
    """Modular data of the extension by currents of twist 1 and quantum dimension 1."""
    md = group.base
    for j in group.elements:
        if mod1(md.h[j]) != 0 or abs(qdim(md, j, tol) - 1) > tol:
            raise WrongCase(f"{md.name}: current {md.labels[j]} does not have twist 1 and qdim 1")
    orbits = [o for o in _orbits(group) if o.sector is Sector.LOCAL]
    for o in orbits:
        if o.fixed:
            raise FixedPointPresent(f"{md.name}: local label {o.name} is fixed by a current")
    reps = [o.rep for o in orbits]
    S = group.order * md.S[np.ix_(reps, reps)]
    h = [min(md.h[m] for m in o.members) for o in orbits]
    ext = ModularData(f"{md.name}/{group.order}", tuple(o.name for o in orbits), md.central_charge, tuple(h), S)
    N = verlinde_fusion(ext)
    return ModularData(ext.name, ext.labels, ext.central_charge, ext.h, S, N)


def classify_screening_lattice(gram_N, rho, gamma) -> Statistics:
    """Type of the lattice extension N + gamma when the conformal vector is shifted by rho.

    Vectors are rational coordinates in the basis of N.
    """
    G = [[Fraction(x) for x in row] for row in gram_N]
    r = len(G)
    g = [Fraction(x) for x in gamma]
    p = [Fraction(x) for x in rho]

    def dot(a, b):
        return sum(G[i][j] * a[i] * b[j] for i in range(r) for j in range(r))

    if any((2 * x).denominator != 1 for x in g):
        raise NotIntegralGlue(f"2 gamma = {[2 * x for x in g]} is not in N")
    if all(x.denominator == 1 for x in g):
        raise NotIntegralGlue("gamma already lies in N")
    for i in range(r):
        e = [Fraction(int(i == j)) for j in range(r)]
        if dot(g, e).denominator != 1:
            raise NotIntegralGlue(f"<gamma, e_{i}> = {dot(g, e)} is not an integer")
    gg = dot(g, g)
    rg = dot(p, g)
    if gg.denominator != 1 or rg.denominator != 1:
        raise NotIntegralGlue(f"gamma^2 = {gg} and <rho, gamma> = {rg} must be integers")
    table = {
        (0, 0): Statistics.Z_VOA,
        (0, 1): Statistics.HALF_Z_VOA,
        (1, 0): Statistics.HALF_Z_VOSA,
        (1, 1): Statistics.Z_VOSA,
    }
    return table[(int(gg) % 2, int(rg) % 2)]
