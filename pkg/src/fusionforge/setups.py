"""Setup files: JSON descriptions of extensions and cosets.

An extension setup names a base category and the generating currents::

    {"schema": "fusionforge/1", "kind": "extension",
     "base": "vir:u=3,v=4", "currents": ["(1,3)"]}

The base may also be a coset, given as {"coset": <coset setup or name>}.
A coset setup lists the ambient category, the Gram matrix of L, the class
lambda_i of every label of V in L'/L, generators of N/L and the currents
realising N'/L::

    {"schema": "fusionforge/1", "kind": "coset", "V": "sl2:k=2",
     "lattice": [[4]], "weights": [0, 1, 2], "N_generators": [2],
     "currents": {"2": "2"}}

Classes are given either as an index into L'/L or as coordinates in the
Smith basis of L'/L. Built-in setups can be named instead of loaded, e.g.
"free-fermion", "bp", "wrong-stat", "parafermion:k=3", "n2:k=1",
"n2-even:k=1", "diag-toy".
"""
from __future__ import annotations

import json
import re
from importlib import resources
from pathlib import Path

from . import fixtures
from .coset import CosetSetup, build_setup, coset_modular_data
from .errors import SchemaError
from .extension import ExtensionResult, build_current_group, build_extension
from .families import from_descriptor
from .lattice import Lattice
from .serialize import SCHEMA

_NAMED = re.compile(r"^([a-z0-9-]+)(?::k=(\d+))?$")


def data_path(name: str) -> Path:
    return Path(str(resources.files("fusionforge") / "data" / name))


def available() -> list[str]:
    return sorted(p.name for p in resources.files("fusionforge").joinpath("data").iterdir() if p.name.endswith(".json"))


def read(source) -> dict:
    """Parse a setup from a dict, a file path or the name of a bundled data file."""
    if isinstance(source, dict):
        return source
    path = Path(source)
    if not path.exists():
        bundled = data_path(source if source.endswith(".json") else source + ".json")
        if bundled.exists():
            path = bundled
        else:
            raise FileNotFoundError(source)
    with open(path) as fh:
        data = json.load(fh)
    if data.get("schema") != SCHEMA:
        raise SchemaError(f"{path}: expected schema {SCHEMA!r}")
    return data


def _cls(L: Lattice, x) -> int:
    if isinstance(x, (list, tuple)):
        return L.index_of(x)
    x = int(x)
    if not 0 <= x < L.order:
        raise SchemaError(f"class index {x} outside L'/L of order {L.order}")
    return x


def coset_from_dict(d: dict) -> CosetSetup:
    try:
        V = from_descriptor(d["V"])
        L = Lattice.from_gram(d["lattice"])
        weights = [_cls(L, w) for w in d["weights"]]
        gens = [_cls(L, g) for g in d.get("N_generators", [])]
        currents = {_cls(L, json.loads(k) if k.startswith("[") else k): v for k, v in d.get("currents", {}).items()}
    except KeyError as exc:
        raise SchemaError(f"coset setup is missing {exc}") from exc
    return build_setup(d.get("name", "coset"), V, L, weights, gens, currents=currents)


def _builtin_coset(name: str) -> CosetSetup | None:
    m = _NAMED.match(name)
    if not m:
        return None
    key, k = m.group(1), m.group(2)
    if key in ("parafermion", "n2") and k is not None:
        return fixtures.COSET_SETUPS[key](int(k))
    if key == "diag-toy":
        return fixtures.diag_toy_setup()
    return None


def load_coset(source) -> CosetSetup:
    if isinstance(source, str):
        built = _builtin_coset(source)
        if built is not None:
            return built
    d = read(source)
    if d.get("kind", "coset") != "coset":
        raise SchemaError(f"expected a coset setup, got kind {d.get('kind')!r}")
    return coset_from_dict(d)


def load_extension(source) -> ExtensionResult:
    if isinstance(source, str):
        m = _NAMED.match(source)
        if m and m.group(1) in fixtures.EXTENSIONS and m.group(2) is None:
            return fixtures.EXTENSIONS[m.group(1)]()
        if m and m.group(1) == "n2-even" and m.group(2) is not None:
            return fixtures.n2_even_extension(int(m.group(2)))
    d = read(source)
    if d.get("kind") != "extension":
        raise SchemaError(f"expected an extension setup, got kind {d.get('kind')!r}")
    base = d.get("base")
    if isinstance(base, dict) and "coset" in base:
        md = coset_modular_data(load_coset(base["coset"]))
    elif isinstance(base, str):
        md = from_descriptor(base)
    else:
        raise SchemaError("extension setup needs a base descriptor or a coset")
    return build_extension(build_current_group(md, d.get("currents", [])))


def characters(source) -> dict | None:
    """Character assignment stored with an extension setup, if any."""
    if isinstance(source, str) and not Path(source).exists() and not data_path(
        source if source.endswith(".json") else source + ".json"
    ).exists():
        return None
    return read(source).get("characters")
