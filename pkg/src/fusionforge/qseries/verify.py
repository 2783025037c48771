"""Numerical checks of modular transformation laws on truncated characters."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import NotUpperHalfPlane
from .grammar import evaluate_expression
from .series import QSeries

DEFAULT_TAUS = (0.7j, 1.0j, 1.3j)


@dataclass
class TransformCheck:
    tau: complex
    residual: float
    tail: float


@dataclass
class TransformReport:
    label: str
    tol: float
    checks: list[TransformCheck] = field(default_factory=list)

    @property
    def residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    @property
    def tail(self) -> float:
        return max((c.tail for c in self.checks), default=0.0)

    @property
    def passed(self) -> bool:
        return self.residual < self.tol and self.tail < self.tol

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "tol": self.tol,
            "checks": [
                {"tau": [c.tau.real, c.tau.imag], "residual": c.residual, "tail": c.tail} for c in self.checks
            ],
        }


def evaluate(series: QSeries, tau: complex, u=None, pairing=None) -> tuple[complex, float]:
    return series.evaluate(tau, u, pairing)


def evaluate_vector(series: Sequence[QSeries], tau: complex) -> tuple[np.ndarray, float]:
    vals, tails = zip(*(s.evaluate(tau) for s in series))
    return np.array(vals), max(tails)


def verify_transformation(
    matrix: np.ndarray,
    series: Sequence[QSeries],
    taus: Sequence[complex] = DEFAULT_TAUS,
    tol: float = 1e-6,
    kind: str = "S",
    label: str = "",
) -> TransformReport:
    """Check f(g tau) = M f(tau) for g = S (tau -> -1/tau) or T (tau -> tau + 1).

    The residual is relative to the size of the character vector.
    """
    report = TransformReport(label or kind, tol)
    M = np.asarray(matrix)
    for tau in taus:
        tau = complex(tau)
        if tau.imag <= 0:
            raise NotUpperHalfPlane(f"tau = {tau} is not in the upper half plane")
        moved = -1 / tau if kind == "S" else tau + 1
        lhs, t1 = evaluate_vector(series, moved)
        rhs, t2 = evaluate_vector(series, tau)
        rhs = M @ rhs
        scale = max(1.0, float(np.max(np.abs(rhs))))
        report.checks.append(TransformCheck(tau, float(np.max(np.abs(lhs - rhs))) / scale, max(t1, t2)))
    return report


def series_from_assignment(assignment: dict, keys: Sequence[str], trunc) -> list[QSeries]:
    """Evaluate character expressions in the given key order; '0' means a vanishing character."""
    out = []
    for k in keys:
        if k not in assignment:
            raise KeyError(f"no character expression for {k}")
        out.append(evaluate_expression(str(assignment[k]), trunc))
    return out


def verify_extension_characters(
    ext,
    assignment: dict,
    taus: Sequence[complex] = DEFAULT_TAUS,
    trunc=60,
    tol: float = 1e-6,
) -> tuple[TransformReport, TransformReport]:
    """S- and T-checks of signed characters of an order-two extension."""
    from ..extension import t_tilde

    keys = ext.basis_names()
    series = series_from_assignment(assignment, keys, trunc)
    s_rep = verify_transformation(ext.stilde, series, taus, tol, "S", f"{ext.base.name} S")
    t_rep = verify_transformation(t_tilde(ext), series, taus, tol, "T", f"{ext.base.name} T")
    return s_rep, t_rep


def check_callable(f: Callable[[complex], np.ndarray], g: Callable[[complex], np.ndarray], taus, tol, label=""):
    """Generic residual check between two vector-valued functions of tau."""
    report = TransformReport(label, tol)
    for tau in taus:
        a, b = f(tau), g(tau)
        report.checks.append(TransformCheck(complex(tau), float(np.max(np.abs(np.asarray(a) - np.asarray(b)))), 0.0))
    return report
