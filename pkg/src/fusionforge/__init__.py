"""Modular data, simple-current extensions and lattice cosets of rational VOAs."""
from __future__ import annotations

from .coset import (
    CosetSetup,
    build_setup,
    coset_characters,
    coset_count,
    coset_fusion,
    coset_modular_data,
    coset_ST,
    forward_character,
    reconstruct_v_fusion,
)
from .errors import FusionForgeError
from .extension import (
    CurrentGroup,
    ExtensionResult,
    Sector,
    adim,
    build_current_group,
    build_extension,
    classify_screening_lattice,
    extend_ordinary,
    super_verlinde,
    t_rule,
)
from .families import affine_sl2, from_descriptor, lattice, virasoro_minimal
from .lattice import Lattice, smith_normal_form
from .modular_data import (
    ModularData,
    Statistics,
    check_axioms,
    classify_simple_current,
    find_label_matching,
    monodromy_phase,
    qdim,
    tensor_product,
    verlinde_fusion,
)
from .serialize import canonical_dumps, from_json, to_json

__version__ = "0.1.0"

__all__ = [
    "CosetSetup",
    "CurrentGroup",
    "ExtensionResult",
    "FusionForgeError",
    "Lattice",
    "ModularData",
    "Sector",
    "Statistics",
    "adim",
    "affine_sl2",
    "build_current_group",
    "build_extension",
    "build_setup",
    "canonical_dumps",
    "check_axioms",
    "classify_screening_lattice",
    "classify_simple_current",
    "coset_ST",
    "coset_characters",
    "coset_count",
    "coset_fusion",
    "coset_modular_data",
    "extend_ordinary",
    "find_label_matching",
    "forward_character",
    "from_descriptor",
    "from_json",
    "lattice",
    "monodromy_phase",
    "qdim",
    "reconstruct_v_fusion",
    "smith_normal_form",
    "super_verlinde",
    "t_rule",
    "tensor_product",
    "to_json",
    "verlinde_fusion",
    "virasoro_minimal",
]
