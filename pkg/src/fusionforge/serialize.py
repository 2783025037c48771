"""JSON round-trips. Rationals are written as 'p/q' strings, complex numbers as {re, im}."""
from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

from .errors import SchemaError
from .modular_data import ModularData
from .rational import frac_str, to_fraction

SCHEMA = "fusionforge/1"


def _cplx(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _uncplx(d) -> complex:
    if isinstance(d, dict):
        return complex(float(d["re"]), float(d.get("im", 0.0)))
    return complex(d)


def md_to_dict(md: ModularData, include_fusion: bool = True) -> dict:
    out = {
        "schema": SCHEMA,
        "name": md.name,
        "central_charge": frac_str(md.central_charge),
        "labels": list(md.labels),
        "h": [frac_str(x) for x in md.h],
        "S": [[_cplx(z) for z in row] for row in md.S],
    }
    if include_fusion and md.fusion is not None:
        out["fusion"] = md.fusion.tolist()
    return out


def md_from_dict(d: dict) -> ModularData:
    if d.get("schema") != SCHEMA:
        raise SchemaError(f"expected schema {SCHEMA!r}, got {d.get('schema')!r}")
    try:
        S = np.array([[_uncplx(z) for z in row] for row in d["S"]], dtype=complex)
        fusion = np.array(d["fusion"], dtype=np.int64) if d.get("fusion") is not None else None
        return ModularData(
            d["name"],
            tuple(d["labels"]),
            to_fraction(d["central_charge"]),
            tuple(to_fraction(x) for x in d["h"]),
            S,
            fusion,
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed modular data: {exc}") from exc


def to_json(md: ModularData) -> str:
    return json.dumps(md_to_dict(md))


def from_json(text: str) -> ModularData:
    return md_from_dict(json.loads(text))


def _canonical(obj, digits: int):
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return str(x)
        x = float(f"{x:.{digits}g}")
        return 0.0 if x == 0 else x
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _canonical(obj.real, digits), "im": _canonical(obj.imag, digits)}
    if isinstance(obj, np.ndarray):
        return _canonical(obj.tolist(), digits)
    if isinstance(obj, dict):
        return {str(k): _canonical(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v, digits) for v in obj]
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical_dumps(obj, digits: int = 15) -> str:
    """Deterministic JSON: sorted keys, floats at fixed significant digits, no negative zero."""
    return json.dumps(_canonical(obj, digits), sort_keys=True, indent=2)


def extension_to_dict(ext) -> dict:
    from .extension import adim, t_rule

    out = {
        "schema": SCHEMA,
        "base": ext.base.name,
        "currents": [ext.base.labels[j] for j in ext.group.elements],
        "group_invariants": list(ext.group.invariants),
        "statistics": ext.statistics.value,
        "counts": ext.counts(),
        "orbits": [
            {
                "name": o.name,
                "members": [ext.base.labels[m] for m in o.members],
                "sector": o.sector.value,
                "fixed_point": o.fixed,
                "epsilon": o.epsilon,
                "h": frac_str(min(ext.base.h[m] for m in o.members)),
            }
            for o in ext.orbits
        ],
    }
    if ext.stilde is not None:
        out["basis"] = ext.basis_names()
        out["stilde_normalization"] = "signed characters ch[X0] +- ch[X1]; entries are 2 S for non-fixed pairs"
        out["stilde"] = [
            {"row": out["basis"][i], "col": out["basis"][j], "value": ext.stilde[i, j]}
            for i, j in zip(*np.nonzero(np.abs(ext.stilde) > 1e-12))
        ]
        out["N_plus"] = ext.n_plus.tolist()
        out["N_minus"] = ext.n_minus.tolist()
        out["t_rule"] = {}
        for o, s in ext.basis:
            phase, target = t_rule(ext, o, s)
            key = ext.orbits[o].name + ("+" if s > 0 else "-")
            out["t_rule"][key] = {"phase": frac_str(phase), "target": ext.orbits[o].name + ("+" if target > 0 else "-")}
        ad = {}
        for sign in (1, -1):
            for o in ext.orbits:
                try:
                    ad[o.name + ("+" if sign > 0 else "-")] = adim(ext, o.index, sign)
                except Exception as exc:  # report rather than abort the dump
                    ad[o.name + ("+" if sign > 0 else "-")] = f"unavailable: {exc}"
        out["adim"] = ad
    return out
