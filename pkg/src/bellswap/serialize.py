"""Stable on-disk formats: constraint-set JSON and event CSV.

All JSON documents carry a ``format_version`` field.  Floats are written
with Python's shortest round-trip repr, so parse(serialize(x)) == x exactly.
The CSV schema is versioned by its pinned header row; columns, value
vocabulary, and LF line endings are fixed and golden-tested.
"""

from __future__ import annotations

import csv
import json
from typing import IO, Iterable

from .correlations import EventRecord
from .lhv import (
    ConstraintSet,
    FunctionTag,
    HiddenContext,
    ParityConstraint,
    Provenance,
    SignVariable,
    quantize_angle,
)
from .solver import SolveResult, SolveStatus

__all__ = [
    "FORMAT_VERSION",
    "EVENT_CSV_COLUMNS",
    "constraint_set_to_dict",
    "constraint_set_from_dict",
    "dump_constraint_set",
    "load_constraint_set",
    "solve_result_to_dict",
    "write_events_csv",
]

FORMAT_VERSION = 1

EVENT_CSV_COLUMNS = (
    "event_id",
    "phi1",
    "phi2",
    "phi3",
    "phi4",
    "bc_outcome",
    "pol_a",
    "pol_d",
    "kappa",
    "f",
    "a",
    "d",
    "product",
)


def constraint_set_to_dict(cs: ConstraintSet) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "context": {"kappa": cs.context.kappa, "label": cs.context.label},
        "variables": [
            {"id": i, "tag": var.tag.value, "angles": list(var.angles)}
            for i, var in enumerate(cs.variables)
        ],
        "constraints": [
            {
                "id": i,
                "vars": list(constraint.var_ids),
                "required_sign": constraint.required_sign,
                "provenance": {
                    "angles": list(constraint.provenance.angles),
                    "zeta": constraint.provenance.zeta,
                    "equation": constraint.provenance.equation,
                },
            }
            for i, constraint in enumerate(cs.constraints)
        ],
    }


def constraint_set_from_dict(doc: dict) -> ConstraintSet:
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {version!r}")
    context = HiddenContext(
        kappa=int(doc["context"]["kappa"]), label=str(doc["context"].get("label", ""))
    )
    variables: list[SignVariable] = []
    for i, entry in enumerate(doc["variables"]):
        if int(entry["id"]) != i:
            raise ValueError("variable ids must be 0..n-1 in order")
        variables.append(
            SignVariable(
                tag=FunctionTag(entry["tag"]),
                keys=tuple(quantize_angle(float(a)) for a in entry["angles"]),
            )
        )
    constraints: list[ParityConstraint] = []
    for i, entry in enumerate(doc["constraints"]):
        if int(entry["id"]) != i:
            raise ValueError("constraint ids must be 0..n-1 in order")
        prov = entry["provenance"]
        angles = tuple(float(a) for a in prov["angles"])
        if len(angles) != 4:
            raise ValueError("provenance angles must have 4 entries")
        constraints.append(
            ParityConstraint(
                var_ids=tuple(int(v) for v in entry["vars"]),
                required_sign=int(entry["required_sign"]),
                provenance=Provenance(angles, float(prov["zeta"]), str(prov["equation"])),
            )
        )
    return ConstraintSet(context=context, variables=variables, constraints=constraints)


def dump_constraint_set(cs: ConstraintSet, fp: IO[str]) -> None:
    json.dump(constraint_set_to_dict(cs), fp, indent=2)
    fp.write("\n")


def load_constraint_set(fp: IO[str]) -> ConstraintSet:
    return constraint_set_from_dict(json.load(fp))


def solve_result_to_dict(cs: ConstraintSet, result: SolveResult, verified: bool) -> dict:
    """Result document with human-readable variable labels and, on UNSAT,
    the full provenance of every certificate line."""
    doc: dict = {
        "format_version": FORMAT_VERSION,
        "status": result.status.value,
        "verified": verified,
    }
    if result.status is SolveStatus.SAT:
        doc["model"] = {cs.variables[vid].label: value for vid, value in sorted(result.model.items())}
        doc["certificate"] = None
    else:
        doc["model"] = None
        doc["certificate"] = [
            {
                "id": cid,
                "variables": [cs.variables[vid].label for vid in cs.constraints[cid].var_ids],
                "required_sign": cs.constraints[cid].required_sign,
                "provenance": {
                    "angles": list(cs.constraints[cid].provenance.angles),
                    "zeta": cs.constraints[cid].provenance.zeta,
                    "equation": cs.constraints[cid].provenance.equation,
                },
            }
            for cid in result.certificate
        ]
    return doc


def write_events_csv(fp: IO[str], events: Iterable[EventRecord]) -> int:
    """Write the pinned event schema; returns the number of rows written.

    Angles use shortest round-trip repr and rows get LF endings, so equal
    event lists serialize to identical bytes.
    """
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(EVENT_CSV_COLUMNS)
    count = 0
    for event_id, event in enumerate(events):
        writer.writerow(
            (
                event_id,
                repr(event.angles.phi1),
                repr(event.angles.phi2),
                repr(event.angles.phi3),
                repr(event.angles.phi4),
                event.bc_outcome.value,
                event.pol_a.value,
                event.pol_d.value,
                event.kappa,
                event.f_value,
                event.a_value,
                event.d_value,
                event.product,
            )
        )
        count += 1
    return count
