"""Experiment predictions for the swapped state.

Two detector arrangements are covered:

- double Bell: both pairs (b, c) and (a, d) meet a Bell-state analyzer;
  predictions are a 4x4 joint probability matrix.
- Bell/polarization: only (b, c) meets the analyzer while a and d go to
  polarizers; predictions are 16 joint probabilities over
  (Bell outcome, pol_a, pol_d).

The sector parity kappa is +1 on {phi+, psi-} and -1 on {phi-, psi+}; it is
perfectly correlated between the two pairs at every angle setting.  Within a
sector the relevant phase is zeta_kappa = (phi1 - phi2) + kappa*(phi3 - phi4);
at zeta = 0 or +-pi the product a * F * d of the outer polarizations with the
analyzer's polarization product F is +1 with certainty, and at zeta = +-pi/2
it is -1 with certainty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .quantum import (
    BELL_ORDER,
    BELL_VECTORS,
    AngleSettings,
    BellOutcome,
    FourPhotonState,
    Polarization,
    apply_all_rotations,
    bell_bell_amplitudes_numeric,
    make_vw_state,
)

__all__ = [
    "DEFAULT_ANGLE_TOL",
    "CERTAINTY_TOL",
    "PhaseClass",
    "EventRecord",
    "SectorReport",
    "PerfectCorrelationReport",
    "OUTCOME_ORDER",
    "kappa_of",
    "f_value_of",
    "zeta",
    "classify_zeta",
    "rotated_vw_state",
    "joint_bell_probabilities",
    "bell_polarization_distribution",
    "perfect_correlation_report",
    "sample_events",
]

#: Default tolerance (radians) for recognizing the special phase values.
DEFAULT_ANGLE_TOL = 1e-9

#: Probability residual below which a correlation counts as certain.
CERTAINTY_TOL = 1e-12

_KAPPA = {
    BellOutcome.PHI_PLUS: +1,
    BellOutcome.PSI_MINUS: +1,
    BellOutcome.PHI_MINUS: -1,
    BellOutcome.PSI_PLUS: -1,
}

_F_VALUE = {
    BellOutcome.PHI_PLUS: +1,
    BellOutcome.PHI_MINUS: +1,
    BellOutcome.PSI_PLUS: -1,
    BellOutcome.PSI_MINUS: -1,
}

#: Bell outcomes of each parity sector, in BELL_ORDER.
SECTOR_OUTCOMES = {
    +1: (BellOutcome.PHI_PLUS, BellOutcome.PSI_MINUS),
    -1: (BellOutcome.PHI_MINUS, BellOutcome.PSI_PLUS),
}

#: Fixed sampling order of the 16 Bell/polarization outcomes.
OUTCOME_ORDER: tuple[tuple[BellOutcome, Polarization, Polarization], ...] = tuple(
    (bell, pol_a, pol_d)
    for bell in BELL_ORDER
    for pol_a in (Polarization.H, Polarization.V)
    for pol_d in (Polarization.H, Polarization.V)
)


def kappa_of(outcome: BellOutcome) -> int:
    """Sector parity: +1 for phi+/psi-, -1 for phi-/psi+."""
    return _KAPPA[outcome]


def f_value_of(outcome: BellOutcome) -> int:
    """Polarization product of a Bell state: +1 for HH/VV, -1 for HV/VH."""
    return _F_VALUE[outcome]


def zeta(angles: AngleSettings, kappa: int) -> float:
    """Sector phase (phi1 - phi2) + kappa * (phi3 - phi4)."""
    if kappa not in (-1, +1):
        raise ValueError(f"kappa must be +1 or -1, got {kappa}")
    return (angles.phi1 - angles.phi2) + kappa * (angles.phi3 - angles.phi4)


class PhaseClass(Enum):
    """Where a sector phase falls modulo 2*pi."""

    ZERO_OR_PI = "zero-or-pi"
    HALF_PI = "half-pi"
    GENERIC = "generic"

    @property
    def predicted_product(self) -> int | None:
        """Certain value of a*F*d in the sector, if any."""
        if self is PhaseClass.ZERO_OR_PI:
            return +1
        if self is PhaseClass.HALF_PI:
            return -1
        return None


def classify_zeta(angles: AngleSettings, kappa: int, tol: float = DEFAULT_ANGLE_TOL) -> PhaseClass:
    """Classify zeta_kappa modulo 2*pi.

    Reduction modulo pi folds 0, +-pi onto 0 and +-pi/2 onto pi/2, so the
    comparison needs only two distances.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    residue = zeta(angles, kappa) % math.pi
    if residue < tol or math.pi - residue < tol:
        return PhaseClass.ZERO_OR_PI
    if abs(residue - math.pi / 2) < tol:
        return PhaseClass.HALF_PI
    return PhaseClass.GENERIC


def rotated_vw_state(angles: AngleSettings) -> FourPhotonState:
    """The two-singlet source state after all four rotations."""
    return apply_all_rotations(make_vw_state(), angles)


def joint_bell_probabilities(angles: AngleSettings) -> np.ndarray:
    """4x4 joint outcome probabilities of the double Bell arrangement.

    Rows index the (b, c) outcome and columns the (a, d) outcome, both in
    BELL_ORDER.  Computed from the numerically decomposed state, not the
    closed form, so cross-sector entries vanish as a prediction rather
    than by construction.
    """
    return bell_bell_amplitudes_numeric(rotated_vw_state(angles)).probabilities()


def bell_polarization_distribution(
    angles: AngleSettings,
) -> dict[tuple[BellOutcome, Polarization, Polarization], float]:
    """Joint probabilities of the Bell/polarization arrangement (16 entries)."""
    tensor = rotated_vw_state(angles).as_tensor()
    dist: dict[tuple[BellOutcome, Polarization, Polarization], float] = {}
    for bell in BELL_ORDER:
        amp_ad = np.einsum("bc,abcd->ad", BELL_VECTORS[bell].conj(), tensor)
        for pol_a in (Polarization.H, Polarization.V):
            for pol_d in (Polarization.H, Polarization.V):
                prob = abs(amp_ad[pol_a.index, pol_d.index]) ** 2
                dist[(bell, pol_a, pol_d)] = float(prob)
    return dist


@dataclass(frozen=True)
class EventRecord:
    """One simulated coincidence with its derived correlation values."""

    angles: AngleSettings
    bc_outcome: BellOutcome
    pol_a: Polarization
    pol_d: Polarization
    kappa: int
    f_value: int
    a_value: int
    d_value: int
    product: int

    @classmethod
    def build(
        cls,
        angles: AngleSettings,
        bc_outcome: BellOutcome,
        pol_a: Polarization,
        pol_d: Polarization,
    ) -> "EventRecord":
        a_value = pol_a.sign
        d_value = pol_d.sign
        f_value = f_value_of(bc_outcome)
        return cls(
            angles=angles,
            bc_outcome=bc_outcome,
            pol_a=pol_a,
            pol_d=pol_d,
            kappa=kappa_of(bc_outcome),
            f_value=f_value,
            a_value=a_value,
            d_value=d_value,
            product=a_value * f_value * d_value,
        )


def sample_events(angles: AngleSettings, n: int, seed: int) -> list[EventRecord]:
    """Draw n i.i.d. events from the Bell/polarization distribution.

    Sampling is inverse-CDF over OUTCOME_ORDER with numpy's seeded
    generator, so a given (angles, n, seed) always yields the same list.
    """
    if n < 0:
        raise ValueError("event count must be >= 0")
    dist = bell_polarization_distribution(angles)
    cdf = np.cumsum([dist[key] for key in OUTCOME_ORDER])
    rng = np.random.default_rng(seed)
    draws = np.searchsorted(cdf, rng.random(n), side="right")
    draws = np.minimum(draws, len(OUTCOME_ORDER) - 1)
    events = []
    for idx in draws:
        bell, pol_a, pol_d = OUTCOME_ORDER[idx]
        events.append(EventRecord.build(angles, bell, pol_a, pol_d))
    return events


@dataclass(frozen=True)
class SectorReport:
    """Perfect-correlation verdict for one parity sector at one setting."""

    kappa: int
    zeta: float
    phase_class: PhaseClass
    predicted_product: int | None
    sector_probability: float
    violation_probability: float | None
    product_certain: bool | None
    bell_pairing: dict[BellOutcome, BellOutcome] | None
    pairing_violation_probability: float | None
    pairing_certain: bool | None

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "zeta": self.zeta,
            "phase_class": self.phase_class.value,
            "predicted_product": self.predicted_product,
            "sector_probability": self.sector_probability,
            "violation_probability": self.violation_probability,
            "product_certain": self.product_certain,
            "bell_pairing": (
                None
                if self.bell_pairing is None
                else {bc.value: ad.value for bc, ad in self.bell_pairing.items()}
            ),
            "pairing_violation_probability": self.pairing_violation_probability,
            "pairing_certain": self.pairing_certain,
        }


@dataclass(frozen=True)
class PerfectCorrelationReport:
    """Per-sector certainty verdicts for one angle setting."""

    angles: AngleSettings
    sectors: tuple[SectorReport, SectorReport]

    @property
    def holds(self) -> bool:
        """True unless some claimed certainty fails; generic sectors don't claim."""
        for sector in self.sectors:
            if sector.product_certain is False or sector.pairing_certain is False:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "angles": list(self.angles.as_tuple()),
            "sectors": [sector.to_dict() for sector in self.sectors],
            "holds": self.holds,
        }


def _sector_pairing(kappa: int, phase_class: PhaseClass) -> dict[BellOutcome, BellOutcome]:
    first, second = SECTOR_OUTCOMES[kappa]
    if phase_class is PhaseClass.ZERO_OR_PI:
        return {first: first, second: second}
    return {first: second, second: first}


def perfect_correlation_report(
    angles: AngleSettings,
    tol: float = DEFAULT_ANGLE_TOL,
    certainty_tol: float = CERTAINTY_TOL,
) -> PerfectCorrelationReport:
    """Check every certainty the state predicts at this setting.

    For each sector whose zeta classifies as zero-or-pi or half-pi the
    report verifies, from the Bell/polarization distribution, that the
    conditional product a*F*d equals the predicted sign up to a residual
    probability below ``certainty_tol``, and from the double Bell
    probabilities that the sector's exact Bell-to-Bell pairing holds.
    Generic sectors carry no claim.
    """
    dist = bell_polarization_distribution(angles)
    bell_probs = joint_bell_probabilities(angles)
    sectors = []
    for kappa in (+1, -1):
        phase_class = classify_zeta(angles, kappa, tol)
        zeta_value = zeta(angles, kappa)
        sector_prob = sum(
            prob for (bell, _, _), prob in dist.items() if kappa_of(bell) == kappa
        )
        if phase_class is PhaseClass.GENERIC:
            sectors.append(
                SectorReport(
                    kappa=kappa,
                    zeta=zeta_value,
                    phase_class=phase_class,
                    predicted_product=None,
                    sector_probability=sector_prob,
                    violation_probability=None,
                    product_certain=None,
                    bell_pairing=None,
                    pairing_violation_probability=None,
                    pairing_certain=None,
                )
            )
            continue
        predicted = phase_class.predicted_product
        violation = sum(
            prob
            for (bell, pol_a, pol_d), prob in dist.items()
            if kappa_of(bell) == kappa
            and pol_a.sign * f_value_of(bell) * pol_d.sign != predicted
        )
        pairing = _sector_pairing(kappa, phase_class)
        pairing_violation = 0.0
        for bc, expected_ad in pairing.items():
            row = BELL_ORDER.index(bc)
            for col, ad in enumerate(BELL_ORDER):
                if ad is not expected_ad:
                    pairing_violation += float(bell_probs[row, col])
        sectors.append(
            SectorReport(
                kappa=kappa,
                zeta=zeta_value,
                phase_class=phase_class,
                predicted_product=predicted,
                sector_probability=sector_prob,
                violation_probability=violation,
                product_certain=violation < certainty_tol,
                bell_pairing=pairing,
                pairing_violation_probability=pairing_violation,
                pairing_certain=pairing_violation < certainty_tol,
            )
        )
    return PerfectCorrelationReport(angles=angles, sectors=tuple(sectors))
