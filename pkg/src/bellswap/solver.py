"""Decide +-1 parity-constraint systems and certify the answer.

Two independent procedures:

- enumerate_solve tries every assignment (guarded at 24 unknowns) and, on
  failure, searches for the smallest constraint subset whose product reads
  "+1 = -1".  It is the trusted oracle.
- gf2_solve maps each unknown v to a bit via v = (-1)^bit, turning every
  constraint into a linear parity equation, and eliminates with full row
  pedigree tracking; an inconsistent row's pedigree is the certificate.
  It scales to thousands of unknowns.

A certificate is a list of constraint ids such that every variable occurs an
even number of times across them while the required signs multiply to -1;
verify_certificate re-checks that property (or a SAT model) from scratch,
trusting nothing the solvers did.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lhv import ConstraintSet

__all__ = [
    "SolveStatus",
    "SolveResult",
    "enumerate_solve",
    "gf2_solve",
    "verify_certificate",
]

#: enumerate_solve refuses systems with more unknowns than this.
ENUMERATION_GUARD = 24

_CHUNK = 1 << 20
_SUBSET_BUDGET = 500_000


class SolveStatus(Enum):
    SAT = "sat"
    UNSAT = "unsat"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve: a full model, or an UNSAT certificate."""

    status: SolveStatus
    model: dict[int, int] | None = None
    certificate: tuple[int, ...] | None = None


def _parity_rows(cs: ConstraintSet) -> list[tuple[int, int]]:
    """Each constraint as (variable parity bitmask, rhs bit).

    A variable occurring twice in one constraint cancels out of the mask;
    rhs is 1 exactly when the required sign is -1.
    """
    rows = []
    for constraint in cs.constraints:
        mask = 0
        for vid in constraint.var_ids:
            mask ^= 1 << vid
        rows.append((mask, 0 if constraint.required_sign == +1 else 1))
    return rows


def _scan_assignments(rows: list[tuple[int, int]], n_variables: int) -> int | None:
    """Lowest assignment index satisfying all rows, or None.

    Bit i of the index is variable i's exponent: value +1 for bit 0, -1
    for bit 1.
    """
    total = 1 << n_variables
    for start in range(0, total, _CHUNK):
        ks = np.arange(start, min(start + _CHUNK, total), dtype=np.uint32)
        ok = np.ones(ks.shape, dtype=bool)
        for mask, rhs in rows:
            parity = np.bitwise_count(ks & np.uint32(mask)).astype(np.uint8) & 1
            ok &= parity == rhs
            if not ok.any():
                break
        hits = np.flatnonzero(ok)
        if hits.size:
            return int(ks[hits[0]])
    return None


def _subset_certificate(rows: list[tuple[int, int]], budget: int = _SUBSET_BUDGET) -> list[int] | None:
    """Smallest constraint subset multiplying to "+1 = -1", by exhaustive
    search over subset sizes; gives up beyond the combination budget."""
    m = len(rows)
    tried = 0
    for size in range(1, m + 1):
        count = math.comb(m, size)
        if tried + count > budget and size > 1:
            return None
        for subset in itertools.combinations(range(m), size):
            mask = 0
            rhs = 0
            for i in subset:
                mask ^= rows[i][0]
                rhs ^= rows[i][1]
            if mask == 0 and rhs == 1:
                return list(subset)
        tried += count
    return None


def _deletion_certificate(rows: list[tuple[int, int]], n_variables: int) -> list[int]:
    """Deletion-minimal unsatisfiable subset.

    An irreducible inconsistent parity system always multiplies out to
    "+1 = -1" as a whole, so the surviving subset is a valid certificate.
    """
    active = list(range(len(rows)))
    for i in list(active):
        trial = [j for j in active if j != i]
        if _scan_assignments([rows[j] for j in trial], n_variables) is None:
            active = trial
    return active


def enumerate_solve(cs: ConstraintSet, max_variables: int = ENUMERATION_GUARD) -> SolveResult:
    """Exhaustive decision: lowest satisfying assignment, else a minimal
    certificate.  Raises ValueError beyond the variable guard."""
    n = cs.n_variables
    if n > max_variables:
        raise ValueError(f"enumeration guard exceeded: {n} variables > {max_variables}")
    rows = _parity_rows(cs)
    assignment = _scan_assignments(rows, n)
    if assignment is not None:
        model = {i: (+1 if ((assignment >> i) & 1) == 0 else -1) for i in range(n)}
        return SolveResult(SolveStatus.SAT, model=model)
    certificate = _subset_certificate(rows)
    if certificate is None:
        certificate = _deletion_certificate(rows, n)
    return SolveResult(SolveStatus.UNSAT, certificate=tuple(certificate))


def gf2_solve(cs: ConstraintSet) -> SolveResult:
    """Gaussian elimination over the two-element field with pedigree rows.

    Columns are eliminated in variable-id order and the first eligible row
    is always the pivot, so certificates are reproducible.  Free variables
    are assigned +1.
    """
    n = cs.n_variables
    rows = [[mask, rhs, 1 << i] for i, (mask, rhs) in enumerate(_parity_rows(cs))]
    pivot_row = 0
    for col in range(n):
        pivot = None
        for r in range(pivot_row, len(rows)):
            if (rows[r][0] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        for r in range(len(rows)):
            if r != pivot_row and ((rows[r][0] >> col) & 1):
                rows[r][0] ^= rows[pivot_row][0]
                rows[r][1] ^= rows[pivot_row][1]
                rows[r][2] ^= rows[pivot_row][2]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    for mask, rhs, pedigree in rows:
        if mask == 0 and rhs == 1:
            certificate = tuple(i for i in range(len(cs.constraints)) if (pedigree >> i) & 1)
            return SolveResult(SolveStatus.UNSAT, certificate=certificate)
    assignment = 0
    for mask, rhs, _ in rows:
        if mask == 0:
            continue
        pivot_col = (mask & -mask).bit_length() - 1
        if rhs:
            assignment |= 1 << pivot_col
    model = {i: (+1 if ((assignment >> i) & 1) == 0 else -1) for i in range(n)}
    return SolveResult(SolveStatus.SAT, model=model)


def verify_certificate(cs: ConstraintSet, result: SolveResult) -> bool:
    """Re-check a result against its constraint set from first principles.

    SAT results need a total +-1 model satisfying every constraint; UNSAT
    results need the even-cancellation / odd-sign property.  Ids that do
    not exist in cs raise ValueError.
    """
    if result.status is SolveStatus.SAT:
        model = result.model
        if model is None:
            return False
        unknown = [vid for vid in model if not 0 <= vid < cs.n_variables]
        if unknown:
            raise ValueError(f"model references unknown variable ids {unknown}")
        if len(model) != cs.n_variables:
            return False
        if any(value not in (-1, +1) for value in model.values()):
            return False
        for constraint in cs.constraints:
            product = 1
            for vid in constraint.var_ids:
                product *= model[vid]
            if product != constraint.required_sign:
                return False
        return True
    certificate = result.certificate
    if not certificate:
        return False
    counts: Counter[int] = Counter()
    sign = 1
    for cid in certificate:
        if not 0 <= cid < len(cs.constraints):
            raise ValueError(f"certificate references unknown constraint id {cid}")
        constraint = cs.constraints[cid]
        sign *= constraint.required_sign
        for vid in constraint.var_ids:
            counts[vid] += 1
    return sign == -1 and all(count % 2 == 0 for count in counts.values())
