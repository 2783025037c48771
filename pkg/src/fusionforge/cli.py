"""Command-line front end.

    fusionforge family "sl2:k=2"
    fusionforge extend free-fermion
    fusionforge extend "vir:u=3,v=4" --current "(1,3)"
    fusionforge coset parafermion-k2
    fusionforge fuse "sl2:k=3" 1 2
    fusionforge verlinde "vir:u=3,v=5"
    fusionforge chars "ETA(1/2)/ETA(1)" --trunc 10
    fusionforge verify paper-examples

Exit status is 0 when every check passes, 1 when a check fails and 2 on
bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import setups
from .coset import coset_count, coset_modular_data, coset_ST
from .errors import FusionForgeError
from .extension import build_current_group, build_extension
from .families import from_descriptor
from .modular_data import ModularData, check_axioms, qdim, verlinde_fusion
from .qseries import evaluate_expression
from .rational import frac_str
from .serialize import canonical_dumps, extension_to_dict, md_to_dict
from .suites import SUITES, run_suite

DEFAULT_TOL = 1e-9


@dataclass
class CommandConfig:
    subcommand: str
    target: str | None = None
    fmt: str = "table"
    tol: float | None = None
    trunc: int | None = None
    taus: list[complex] = field(default_factory=list)
    out: str | None = None

    def __post_init__(self):
        if self.tol is not None and self.tol <= 0:
            raise ValueError("--tol must be positive")
        if self.trunc is not None and self.trunc <= 0:
            raise ValueError("--trunc must be positive")


def parse_tau(text: str) -> complex:
    t = text.strip().replace("i", "j").replace(" ", "")
    if t in ("j", "+j"):
        return 1j
    try:
        return complex(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read tau {text!r}; use forms like 0.7i or 0.1+1.2i") from None


def _fmt_c(z, digits: int = 6, zero: float = 1e-12) -> str:
    z = complex(z)
    z = complex(0.0 if abs(z.real) < zero else z.real, 0.0 if abs(z.imag) < zero else z.imag)
    if abs(z.imag) < 10 ** -(digits + 3):
        return f"{z.real:.{digits}g}"
    return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"


def _series_text(terms) -> str:
    out = ""
    for e, c in terms:
        c = complex(c)
        neg = abs(c.imag) < 1e-12 and c.real < 0
        coeff = _fmt_c(-c if neg else c)
        if "i" in coeff:
            coeff = f"({coeff})"
        out += (" - " if neg else " + ") if out else ("-" if neg else "")
        out += f"{coeff} q^{frac_str(Fraction(e))}"
    return out or "0"


def _matrix_lines(labels, M) -> list[str]:
    width = max(len(x) for x in labels)
    cells = [[_fmt_c(z) for z in row] for row in M]
    cw = max(len(c) for row in cells for c in row)
    out = [" " * width + "  " + " ".join(l.rjust(cw) for l in labels)]
    for lab, row in zip(labels, cells):
        out.append(lab.rjust(width) + "  " + " ".join(c.rjust(cw) for c in row))
    return out


def _check_lines(checks) -> list[str]:
    return [f"  {'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.residual:.3g}]" if c.residual else "")
            + (f"  {c.detail}" if c.detail and not c.passed else "") for c in checks]


# ---------------------------------------------------------------- commands

def cmd_family(cfg: CommandConfig) -> tuple[dict, list[str], bool]:
    md = from_descriptor(cfg.target)
    rep = check_axioms(md, tol=cfg.tol or DEFAULT_TOL)
    data = md_to_dict(md)
    data["qdim"] = [qdim(md, i) for i in range(md.rank)]
    data["axioms"] = rep.to_dict()
    lines = [f"{md.name}: {md.rank} labels, c = {frac_str(md.central_charge)}", ""]
    lines += [f"  {lab:>12}  h = {frac_str(h):>8}  qdim = {data['qdim'][i]:.6g}"
              for i, (lab, h) in enumerate(zip(md.labels, md.h))]
    lines += ["", "S ="] + _matrix_lines(md.labels, md.S) + ["", "axioms:"] + _check_lines(rep.checks)
    return data, lines, rep.passed


def _fusion_entries(md: ModularData, N) -> list[dict]:
    out = []
    for i, j, k in zip(*np.nonzero(N)):
        out.append({"a": md.labels[i], "b": md.labels[j], "c": md.labels[k], "n": int(N[i, j, k])})
    return out


def cmd_fuse(cfg: CommandConfig, a: str, b: str) -> tuple[dict, list[str], bool]:
    md = from_descriptor(cfg.target)
    res = md.fuse(a, b)
    terms = {md.labels[k]: n for k, n in res.items()}
    text = " + ".join(f"{n}*{lab}" if n > 1 else lab for lab, n in terms.items()) or "0"
    data = {"family": md.name, "a": md.labels[md.index(a)], "b": md.labels[md.index(b)], "product": terms}
    return data, [f"{data['a']} x {data['b']} = {text}"], True


def cmd_verlinde(cfg: CommandConfig) -> tuple[dict, list[str], bool]:
    from .modular_data import verlinde_residual

    md = from_descriptor(cfg.target)
    N = verlinde_fusion(md)
    r = verlinde_residual(md)
    entries = _fusion_entries(md, N)
    data = {"family": md.name, "integrality_residual": r, "fusion": entries}
    lines = [f"{md.name}: Verlinde integrality residual {r:.3g}"]
    lines += [f"  N[{e['a']}, {e['b']} -> {e['c']}] = {e['n']}" for e in entries]
    return data, lines, True


def _load_ext(cfg: CommandConfig, currents):
    if currents:
        md = from_descriptor(cfg.target)
        return build_extension(build_current_group(md, currents, tol=cfg.tol or DEFAULT_TOL))
    return setups.load_extension(cfg.target)


def cmd_extend(cfg: CommandConfig, currents) -> tuple[dict, list[str], bool]:
    ext = _load_ext(cfg, currents)
    md = ext.base
    if ext.group.order == 1:
        data = {"statistics": ext.statistics.value, "currents": [], "base": md_to_dict(md)}
        return data, [f"{md.name}: trivial current group, data unchanged"] + \
            _matrix_lines(md.labels, md.S), True
    data = extension_to_dict(ext)
    c = ext.counts()
    lines = [f"{md.name} extended by {', '.join(data['currents'][1:])}",
             f"case: {ext.statistics.value}",
             f"{c['labels']} labels, {c['orbits']} orbits, {c['local']} local, {c['twisted']} twisted, "
             f"{c['fixed']} fixed", ""]
    for o in data["orbits"]:
        lines.append(f"  {o['name']:>14}  {o['sector']:<8} h = {o['h']:>8}  members {' '.join(o['members'])}"
                     + ("  (fixed)" if o["fixed_point"] else ""))
    if ext.stilde is not None:
        names = ext.basis_names()
        lines += ["", "S-tilde ="] + _matrix_lines(names, ext.stilde)
        orbit_names = [o.name for o in ext.orbits]
        for tag, N in (("N+", ext.n_plus), ("N-", ext.n_minus)):
            lines.append("")
            for i, j, k in zip(*np.nonzero(N)):
                lines.append(f"  {tag}[{orbit_names[i]}, {orbit_names[j]} -> {orbit_names[k]}] = {int(N[i, j, k])}")
        lines += ["", "asymptotic dimensions:"]
        lines += [f"  adim[{k}] = {v if isinstance(v, str) else f'{v:.10g}'}" for k, v in data["adim"].items()]
    return data, lines, True


def cmd_coset(cfg: CommandConfig) -> tuple[dict, list[str], bool]:
    setup = setups.load_coset(cfg.target)
    count = coset_count(setup)
    md = coset_modular_data(setup)
    _, T = coset_ST(setup)
    rep = check_axioms(md, tol=cfg.tol or DEFAULT_TOL)
    data = {
        "setup": setup.name,
        "count": count,
        "classes": [{"name": setup.class_name(c), "members": [f"{setup.V.labels[i]}@{setup.lattice.class_name(m)}"
                                                              for i, m in setup.classes[c]]}
                    for c in range(count)],
        "modular_data": md_to_dict(md),
        "T": [T[i, i] for i in range(count)],
        "fusion": _fusion_entries(md, md.N),
        "axioms": rep.to_dict(),
    }
    lines = [f"coset of {setup.name}: {count} classes, c = {frac_str(md.central_charge)}", ""]
    lines += [f"  {md.labels[c]:>14}  h = {frac_str(md.h[c]):>8} (mod 1)  T = {_fmt_c(T[c, c])}" for c in range(count)]
    lines += ["", "S ="] + _matrix_lines(md.labels, md.S) + ["", "fusion:"]
    lines += [f"  {e['a']} x {e['b']} -> {e['n']} {e['c']}" for e in data["fusion"]]
    lines += ["", "axioms:"] + _check_lines(rep.checks)
    return data, lines, rep.passed


def cmd_chars(cfg: CommandConfig, exprs, show: int) -> tuple[dict, list[str], bool]:
    trunc = cfg.trunc or 20
    taus = cfg.taus or [1j]
    data = {"trunc": trunc, "series": []}
    lines = []
    for text in exprs:
        s = evaluate_expression(text, trunc)
        terms = sorted(s.terms.items(), key=lambda kv: kv[0][0])
        shown = [(e, c) for (e, _), c in terms][:show]
        values = []
        for tau in taus:
            v, tail = s.evaluate(tau)
            values.append({"tau": [tau.real, tau.imag], "value": v, "tail_bound": tail})
        data["series"].append({
            "expression": text,
            "coefficients": [{"exponent": frac_str(Fraction(e)), "coefficient": c} for e, c in shown],
            "values": values,
        })
        lines.append(f"{text}  (known below q^{frac_str(s.trunc)})")
        lines.append("  " + _series_text(shown))
        for v in values:
            tau = complex(*v["tau"])
            lines.append(f"  at tau = {_fmt_c(tau)}: {_fmt_c(v['value'], 12)}  (tail < {v['tail_bound']:.2g})")
    return data, lines, True


def cmd_verify(cfg: CommandConfig, registry) -> tuple[dict, list[str], bool]:
    res = run_suite(cfg.target, tol=cfg.tol, trunc=cfg.trunc, taus=cfg.taus or None, registry=registry)
    lines = [f"suite {res.name}: {'PASS' if res.passed else 'FAIL'} ({len(res.checks)} checks)"]
    lines += [f"  warning: {w}" for w in res.warnings]
    lines += [f"  {'PASS' if c.passed else 'FAIL'}  {c.name}  [residual {c.residual:.3g}]"
              + (f"  {c.detail}" if c.detail and not c.passed else "") for c in res.checks]
    return res.to_dict(), lines, res.passed


# ---------------------------------------------------------------- argument handling

def _common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--tol", type=float, default=d, help="tolerance override for numerical checks")
    p.add_argument("--trunc", type=int, default=d, help="q-series truncation order")
    p.add_argument("--tau", type=parse_tau, action="append", default=d,
                   help="sample point in the upper half plane, e.g. 0.7i (repeatable)")
    p.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS if suppress else "table")
    p.add_argument("--out", default=d, help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fusionforge", description="Modular data of rational VOAs, "
                                     "simple current extensions and lattice cosets.")
    _common(parser, suppress=False)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("family", help="build modular data from a descriptor and check the axioms")
    p.add_argument("descriptor", help='e.g. "sl2:k=4", "vir:u=3,v=5", "lattice:gram=[[6]]", "tensor:(A)x(B)"')
    _common(p, True)

    p = sub.add_parser("extend", help="simple current extension")
    p.add_argument("source", help="setup name or file, or a family descriptor together with --current")
    p.add_argument("--current", action="append", default=[], help="current label (repeatable)")
    _common(p, True)

    p = sub.add_parser("coset", help="commutant of a lattice VOA")
    p.add_argument("setup", help="setup name or file, e.g. parafermion-k2, n2:k=1, diag-toy")
    _common(p, True)

    p = sub.add_parser("fuse", help="fusion product of two labels")
    p.add_argument("descriptor")
    p.add_argument("a")
    p.add_argument("b")
    _common(p, True)

    p = sub.add_parser("verlinde", help="full fusion tensor from the Verlinde formula")
    p.add_argument("descriptor")
    _common(p, True)

    p = sub.add_parser("chars", help="expand character expressions")
    p.add_argument("expressions", nargs="+")
    p.add_argument("--show", type=int, default=12, help="number of terms to print")
    _common(p, True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--registry", help="JSON list of family descriptors for the axioms suite")
    _common(p, True)
    return parser


def _config(args) -> CommandConfig:
    target = getattr(args, "descriptor", None) or getattr(args, "source", None) or getattr(args, "setup", None) \
        or getattr(args, "suite", None)
    return CommandConfig(args.subcommand, target, args.format, args.tol, args.trunc, args.tau or [], args.out)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.subcommand == "family":
            data, lines, ok = cmd_family(cfg)
        elif cfg.subcommand == "extend":
            data, lines, ok = cmd_extend(cfg, args.current)
        elif cfg.subcommand == "coset":
            data, lines, ok = cmd_coset(cfg)
        elif cfg.subcommand == "fuse":
            data, lines, ok = cmd_fuse(cfg, args.a, args.b)
        elif cfg.subcommand == "verlinde":
            data, lines, ok = cmd_verlinde(cfg)
        elif cfg.subcommand == "chars":
            data, lines, ok = cmd_chars(cfg, args.expressions, args.show)
        else:
            registry = None
            if args.registry:
                with open(args.registry) as fh:
                    registry = json.load(fh)
            data, lines, ok = cmd_verify(cfg, registry)
    except (FusionForgeError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"fusionforge: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = canonical_dumps(data) if cfg.fmt == "json" else "\n".join(lines)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # output piped into head or similar; silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
