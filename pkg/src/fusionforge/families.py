"""Closed-form families of modular data and the descriptor parser."""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction

import numpy as np

from .errors import DescriptorError, FusionForgeError, InternalInconsistency, NotCoprime
from .lattice import Lattice
from .modular_data import ModularData, tensor_product, verlinde_fusion
from .rational import root_of_unity


def sl2_fusion_rule(k: int, i: int, j: int, t: int) -> int:
    return int(abs(i - j) <= t <= min(i + j, 2 * k - i - j) and (i + j + t) % 2 == 0)


def affine_sl2(k: int) -> ModularData:
    """Level-k affine sl2; label lambda = 0..k is the highest weight."""
    if k < 1:
        raise DescriptorError(f"level must be a positive integer, got {k}")
    n = k + 1
    lam = np.arange(n)
    S = math.sqrt(2 / (k + 2)) * np.sin(np.pi * np.outer(lam + 1, lam + 1) / (k + 2))
    h = [Fraction(a * (a + 2), 4 * (k + 2)) for a in range(n)]
    N = np.array(
        [[[sl2_fusion_rule(k, i, j, t) for t in range(n)] for j in range(n)] for i in range(n)],
        dtype=np.int64,
    )
    md = ModularData(f"sl2:k={k}", tuple(str(a) for a in range(n)), Fraction(3 * k, k + 2), tuple(h), S, N)
    if not np.array_equal(verlinde_fusion(md), N):
        raise InternalInconsistency(f"sl2 level {k}: closed-form fusion disagrees with Verlinde")
    return md


def minimal_weight(u: int, v: int, r: int, s: int) -> Fraction:
    return Fraction((r * v - s * u) ** 2 - (u - v) ** 2, 4 * u * v)


def minimal_labels(u: int, v: int) -> list[tuple[int, int]]:
    """Kac table modulo (r, s) ~ (u - r, v - s); the smaller pair is kept."""
    return sorted({min((r, s), (u - r, v - s)) for r in range(1, u) for s in range(1, v)})


def virasoro_minimal(u: int, v: int) -> ModularData:
    if u < 2 or v < 2 or math.gcd(u, v) != 1:
        raise NotCoprime(f"minimal model needs coprime u, v >= 2, got ({u}, {v})")
    labels = minimal_labels(u, v)
    n = len(labels)
    S = np.empty((n, n))
    pref = 2 * math.sqrt(2 / (u * v))
    for a, (r, s) in enumerate(labels):
        for b, (rho, sig) in enumerate(labels):
            sign = -1 if (1 + s * rho + r * sig) % 2 else 1
            S[a, b] = pref * sign * math.sin(math.pi * v * r * rho / u) * math.sin(math.pi * u * s * sig / v)
    if S[0, 0] < 0:
        # the closed form fixes S only up to an overall sign; pick S00 > 0
        S = -S
    h = [minimal_weight(u, v, r, s) for r, s in labels]
    c = 1 - Fraction(6 * (u - v) ** 2, u * v)
    md = ModularData(f"vir:u={u},v={v}", tuple(f"({r},{s})" for r, s in labels), c, tuple(h), S)
    N = verlinde_fusion(md)
    return ModularData(md.name, md.labels, c, md.h, S, N)


def lattice(gram) -> tuple[ModularData, Lattice]:
    """Modular data of the lattice VOA of an even positive definite lattice."""
    L = gram if isinstance(gram, Lattice) else Lattice.from_gram(gram)
    n = L.order
    S = np.empty((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            S[a, b] = root_of_unity(L.bilinear(a, b)) / math.sqrt(n)
    N = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            N[a, b, L.add(a, b)] = 1
    h = [L.quad(a) for a in range(n)]
    name = "lattice:gram=" + json.dumps([list(r) for r in L.gram], separators=(",", ":"))
    md = ModularData(name, tuple(L.class_name(a) for a in range(n)), Fraction(L.rank), tuple(h), S, N)
    return md, L


def _split_tensor(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "(":
            if depth > 0:
                cur.append(ch)
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise DescriptorError(f"unbalanced parentheses in {body!r}")
            if depth > 0:
                cur.append(ch)
            else:
                parts.append("".join(cur).strip())
                cur = []
        elif depth == 0:
            if ch not in "x* ":
                raise DescriptorError(f"unexpected {ch!r} in tensor descriptor {body!r}")
        else:
            cur.append(ch)
        i += 1
    if depth != 0 or len(parts) < 2:
        raise DescriptorError(f"tensor descriptor needs '(A)x(B)', got {body!r}")
    return parts


def _params(body: str) -> dict[str, str]:
    out = {}
    for part in body.split(","):
        if "=" not in part:
            raise DescriptorError(f"expected key=value, got {part!r}")
        key, val = part.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def from_descriptor(desc: str) -> ModularData:
    """Build modular data from 'sl2:k=4', 'vir:u=3,v=5', 'lattice:gram=[[6]]', 'tensor:(A)x(B)'."""
    desc = desc.strip()
    kind, _, body = desc.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "sl2":
            return affine_sl2(int(_params(body)["k"]))
        if kind == "vir":
            p = _params(body)
            return virasoro_minimal(int(p["u"]), int(p["v"]))
        if kind == "lattice":
            m = re.fullmatch(r"\s*(gram|file)\s*=\s*(.+)", body)
            if not m:
                raise DescriptorError(f"lattice descriptor needs gram= or file=, got {body!r}")
            if m.group(1) == "gram":
                gram = json.loads(m.group(2))
            else:
                with open(m.group(2)) as fh:
                    gram = json.load(fh)
                    if isinstance(gram, dict):
                        gram = gram["gram"]
            return lattice(gram)[0]
        if kind == "tensor":
            factors = [from_descriptor(p) for p in _split_tensor(body)]
            md = factors[0]
            for f in factors[1:]:
                md = tensor_product(md, f)
            return md
    except FusionForgeError:
        raise
    except (KeyError, ValueError) as exc:
        raise DescriptorError(f"cannot parse descriptor {desc!r}: {exc}") from exc
    raise DescriptorError(f"unknown family {kind!r} in {desc!r}")
