"""Structured pass/fail reports for verification checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    relation: str
    status: str = "pass"          # "pass" | "fail"
    witness: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.status == "pass"

    def to_json(self):
        out = {"relation": self.relation, "status": self.status}
        if self.witness:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out

    def __str__(self):
        return json.dumps(self.to_json(), sort_keys=True, default=str)


def passed(relation, **details):
    return CheckReport(relation, "pass", {}, details)


def failed(relation, witness, **details):
    return CheckReport(relation, "fail", witness, details)


def matrix_identity(relation, lhs, rhs, **details):
    """Compare two LinearOperators exactly; witness is the first bad entry."""
    diff = lhs.first_difference(rhs)
    if diff is None:
        return passed(relation, **details)
    col, row, a, b = diff
    return failed(relation,
                  {"col_weight": list(col), "row_weight": list(row),
                   "lhs": str(a), "rhs": str(b)}, **details)
