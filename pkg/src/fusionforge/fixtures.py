"""Ready-made setups for the standard worked examples."""
from __future__ import annotations

from fractions import Fraction

from .coset import CosetSetup, build_setup
from .extension import ExtensionResult, build_current_group, build_extension
from .families import affine_sl2, from_descriptor, lattice, virasoro_minimal
from .lattice import Lattice
from .modular_data import tensor_product

FREE_FERMION = ("vir:u=3,v=4", "(1,3)")
# rank-one lattice of norm 6 times the (3,5) minimal model, glued along (beta/2, W(1,4))
BP = ("tensor:(lattice:gram=[[6]])x(vir:u=3,v=5)", "(3,(1,4))")
# same with norm 10; the glue current has integral weight and quantum dimension -1
WRONG_STAT = ("tensor:(lattice:gram=[[10]])x(vir:u=3,v=5)", "(5,(1,4))")


def extension_from(descriptor: str, *currents) -> ExtensionResult:
    md = from_descriptor(descriptor)
    return build_extension(build_current_group(md, currents))


def free_fermion() -> ExtensionResult:
    return extension_from(*FREE_FERMION)


def bp() -> ExtensionResult:
    return extension_from(*BP)


def wrong_stat() -> ExtensionResult:
    return extension_from(*WRONG_STAT)


def parafermion_setup(k: int) -> CosetSetup:
    """sl2 at level k over the rank-one lattice of norm 2k (its Cartan part)."""
    V = affine_sl2(k)
    L = Lattice.from_gram([[2 * k]])
    weights = [L.index_of([lam]) for lam in range(k + 1)]
    return build_setup(f"parafermion:k={k}", V, L, weights, [L.index_of([2])], currents={L.index_of([k]): str(k)})


def n2_setup(k: int) -> CosetSetup:
    """sl2 at level k times the norm-4 lattice, over the diagonal lattice of norm 2(k+2)."""
    V = tensor_product(affine_sl2(k), lattice([[4]])[0])
    m = 2 * (k + 2)
    L = Lattice.from_gram([[m]])
    weights = [L.index_of([lam - b]) for lam in range(k + 1) for b in range(4)]
    current = f"({k},2)"
    return build_setup(f"n2:k={k}", V, L, weights, [L.index_of([2])], currents={L.index_of([k + 2]): current})


def diag_toy_setup() -> CosetSetup:
    """Lattice diag(2,2) over the sublattice spanned by the diagonal vector (norm 4)."""
    V, big = lattice([[2, 0], [0, 2]])
    L = Lattice.from_gram([[4]])
    weights = []
    current = None
    for a in range(big.order):
        x = big.representatives[a]
        m = 2 * (x[0] + x[1])  # coefficient of (b1 + b2)/4 in the projection
        weights.append(L.index_of([int(m)]))
        if all(abs(v) == Fraction(1, 2) for v in x):
            current = V.labels[a]
    return build_setup("diag-toy", V, L, weights, [L.index_of([2])], currents={L.index_of([2]): current})


def n2_even_extension(k: int) -> ExtensionResult:
    from .coset import coset_modular_data

    setup = n2_setup(k)
    C = coset_modular_data(setup)
    J = setup.class_index[(_v_label(setup, 0, 2), 0)]
    return build_extension(build_current_group(C, [J]))


def _v_label(setup: CosetSetup, lam: int, b: int) -> int:
    return setup.V.index(f"({lam},{b})")


def ising():
    return virasoro_minimal(3, 4)


COSET_SETUPS = {
    "parafermion": parafermion_setup,
    "n2": n2_setup,
    "diag-toy": lambda: diag_toy_setup(),
}

EXTENSIONS = {
    "free-fermion": free_fermion,
    "bp": bp,
    "wrong-stat": wrong_stat,
}
