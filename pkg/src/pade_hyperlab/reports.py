"""Identity reports shared by the checking modules."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any

from .numerics import EqPolicy, common_field, default_policy, scalar_eq


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of comparing the two sides of an identity."""

    name: str
    lhs: Any
    rhs: Any
    holds: bool
    details: dict = dc_field(default_factory=dict)

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)

    def to_json(self) -> dict:
        field = common_field([self.lhs, self.rhs])
        residual = self.residual
        out = {
            "identity": str(getattr(self.name, "value", self.name)),
            "holds": self.holds,
            "lhs": field.to_json(self.lhs),
            "rhs": field.to_json(self.rhs),
            "residual": field.to_json(residual) if field.exact else float(residual),
        }
        if self.details:
            out["details"] = self.details
        return out


def make_report(name, lhs, rhs, policy: EqPolicy | None = None, **details) -> IdentityReport:
    field = common_field([lhs, rhs])
    lhs, rhs = field(lhs), field(rhs)
    policy = policy or default_policy(field)
    return IdentityReport(name, lhs, rhs, scalar_eq(lhs, rhs, policy), details)
