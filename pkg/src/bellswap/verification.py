"""Sweep-style verification that the exact predictions all hold.

Runs the closed form against the brute-force decomposition, checks sector
conservation and normalization on random settings, and checks every claimed
certainty on the special-phase angle families.  Used by the verify-qm
command; any violation is reported with the offending setting.
"""

from __future__ import annotations

import math

import numpy as np

from .correlations import (
    CERTAINTY_TOL,
    DEFAULT_ANGLE_TOL,
    bell_polarization_distribution,
    joint_bell_probabilities,
    kappa_of,
    perfect_correlation_report,
)
from .quantum import (
    BELL_ORDER,
    AngleSettings,
    apply_all_rotations,
    bell_bell_amplitudes_closed_form,
    bell_bell_amplitudes_numeric,
    make_vw_state,
)

__all__ = ["CLOSED_FORM_TOL", "special_family_settings", "run_qm_verification"]

#: Allowed closed-form vs numeric entry-wise deviation.
CLOSED_FORM_TOL = 1e-10

#: (family name, builder) pairs; each builder maps random (alpha, beta) to a
#: setting whose sector phases land on the named special values.
_FAMILIES = (
    ("zeta=(0,0)", lambda a, b: AngleSettings(a, a, b, b)),
    ("zeta=(pi,pi)", lambda a, b: AngleSettings(a + math.pi, a, b, b)),
    ("zeta=(-pi/2,0)", lambda a, b: AngleSettings(a, a + math.pi / 4, b, b + math.pi / 4)),
    ("zeta=(0,-pi/2)", lambda a, b: AngleSettings(a, a + math.pi / 4, b + math.pi / 4, b)),
    ("zeta=(pi,0)", lambda a, b: AngleSettings(a + math.pi / 2, a, b + math.pi / 2, b)),
)


def special_family_settings(
    rng: np.random.Generator, per_family: int
) -> list[tuple[str, AngleSettings]]:
    """Random instantiations of each special-phase family."""
    out = []
    for name, build in _FAMILIES:
        for _ in range(per_family):
            alpha, beta = rng.uniform(0.0, 2.0 * math.pi, size=2)
            out.append((name, build(alpha, beta)))
    return out


def _kappa_mismatch_probability(probs: np.ndarray) -> float:
    total = 0.0
    for i, bc in enumerate(BELL_ORDER):
        for j, ad in enumerate(BELL_ORDER):
            if kappa_of(bc) != kappa_of(ad):
                total += float(probs[i, j])
    return total


def run_qm_verification(
    grid: int = 4,
    tol: float = DEFAULT_ANGLE_TOL,
    seed: int = 12345,
    per_family: int = 20,
) -> dict:
    """Run every analytic check; returns a JSON-ready report.

    ``grid`` controls the random sweep size (grid**4 settings).  The report's
    ``passed`` field is True iff no check produced a violation.
    """
    if grid < 1:
        raise ValueError("grid must be >= 1")
    rng = np.random.default_rng(seed)
    random_settings = [
        AngleSettings(*rng.uniform(0.0, 2.0 * math.pi, size=4)) for _ in range(grid**4)
    ]
    family_settings = special_family_settings(rng, per_family)

    checks = {
        "closed_form_vs_numeric": {"max_value": 0.0, "threshold": CLOSED_FORM_TOL},
        "double_bell_completeness": {"max_value": 0.0, "threshold": 1e-12},
        "kappa_mismatch_probability": {"max_value": 0.0, "threshold": 1e-12},
        "distribution_normalization": {"max_value": 0.0, "threshold": 1e-12},
        "perfect_correlations": {"max_value": 0.0, "threshold": CERTAINTY_TOL},
    }
    violations: list[dict] = []

    def record(check: str, value: float, angles: AngleSettings, detail: str = "") -> None:
        entry = checks[check]
        entry["max_value"] = max(entry["max_value"], value)
        if value >= entry["threshold"]:
            violations.append(
                {
                    "check": check,
                    "angles": list(angles.as_tuple()),
                    "value": value,
                    "detail": detail,
                }
            )

    for angles in random_settings + [setting for _, setting in family_settings]:
        state = apply_all_rotations(make_vw_state(), angles)
        numeric = bell_bell_amplitudes_numeric(state)
        closed = bell_bell_amplitudes_closed_form(angles)
        record(
            "closed_form_vs_numeric",
            float(np.max(np.abs(numeric.coeffs - closed.coeffs))),
            angles,
        )
        record("double_bell_completeness", abs(numeric.total_weight() - 1.0), angles)
        record(
            "kappa_mismatch_probability",
            _kappa_mismatch_probability(joint_bell_probabilities(angles)),
            angles,
        )
        record(
            "distribution_normalization",
            abs(sum(bell_polarization_distribution(angles).values()) - 1.0),
            angles,
        )

    for family, angles in family_settings:
        report = perfect_correlation_report(angles, tol=tol)
        for sector in report.sectors:
            if sector.predicted_product is None:
                continue
            worst = max(sector.violation_probability, sector.pairing_violation_probability)
            record(
                "perfect_correlations",
                worst,
                angles,
                detail=f"family {family}, kappa {sector.kappa:+d}",
            )

    passed = not violations
    for entry in checks.values():
        entry["passed"] = entry["max_value"] < entry["threshold"]
    return {
        "format_version": 1,
        "command": "verify-qm",
        "grid": grid,
        "tol": tol,
        "seed": seed,
        "random_settings": len(random_settings),
        "family_settings": len(family_settings),
        "checks": checks,
        "violations": violations,
        "passed": passed,
    }
