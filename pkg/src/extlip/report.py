import hashlib
import json
from dataclasses import asdict, dataclass, field

from .io import jsonable


@dataclass
class Result:
    name: str
    value: object
    witness: object = None
    provenance: str = "closed-form"


@dataclass
class Check:
    property: str
    status: str
    lhs: object
    rhs: object
    tolerance: float
    instance: int = None
    witness: object = None


@dataclass
class AnalysisReport:
    command: list
    inputs_digest: str
    results: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @staticmethod
    def digest(inputs):
        blob = json.dumps(jsonable(inputs), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def result(self, name, value, witness=None, provenance="closed-form"):
        self.results.append(Result(name, value, witness, provenance))

    def check(self, prop, ok, lhs, rhs, tol, instance=None, witness=None):
        self.checks.append(Check(prop, "pass" if ok else "fail", lhs, rhs, tol, instance, witness))
        return ok

    @property
    def passed(self):
        return all(c.status == "pass" for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self):
        return jsonable({
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "results": [asdict(r) for r in self.results],
            "checks": [asdict(c) for c in self.checks],
            "notes": self.notes,
            "passed": self.passed,
        })

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=1)

    def summary(self):
        by_prop = {}
        for c in self.checks:
            ok, total = by_prop.get(c.property, (0, 0))
            by_prop[c.property] = (ok + (c.status == "pass"), total + 1)
        lines = [f"{' '.join(map(str, self.command))}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            lines.append(f"  {r.name} = {jsonable(r.value)} [{r.provenance}]")
        for prop, (ok, total) in by_prop.items():
            lines.append(f"  {prop}: {ok}/{total} pass")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)
