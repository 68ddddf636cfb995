"""Result record shared by every verification check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List


@dataclass
class CheckReport:
    name: str
    passed: bool
    cases: int = 0
    failures: List[dict] = field(default_factory=list)
    notes: Dict[str, object] = field(default_factory=dict)

    def fail(self, limit: int = 20, **payload):
        self.passed = False
        if len(self.failures) < limit:
            self.failures.append(payload)
