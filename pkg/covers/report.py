"""Pass/fail records produced by the verification harness."""
import json

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


class CheckResult(object):

    def __init__(self, name, status, witness=None, timing=None):
        if status not in (PASS, FAIL, SKIPPED):
            raise ValueError("unknown check status {!r}".format(status))
        if status == FAIL and witness is None:
            raise ValueError("failed check {} needs a witness".format(name))
        self.name = name
        self.status = status
        self.witness = witness
        self.timing = timing

    @classmethod
    def from_bool(cls, name, holds, witness=None):
        if holds:
            return cls(name, PASS)
        return cls(name, FAIL, witness if witness is not None else "identity does not hold")

    def to_json(self, include_timing=False):
        record = {"name": self.name, "status": self.status, "witness": self.witness}
        if include_timing:
            record["timing"] = self.timing
        return record

    def __repr__(self):
        return "CheckResult({}, {})".format(self.name, self.status)


class VerificationReport(object):
    """All check results for one graph, keyed by its canonical certificate."""

    def __init__(self, graph_id, checks=()):
        self.graph_id = graph_id
        self.checks = []
        for check in checks:
            self.add(check)

    def add(self, check: CheckResult):
        if any(c.name == check.name for c in self.checks):
            raise ValueError("check {} recorded twice for {}".format(check.name, self.graph_id))
        self.checks.append(check)

    def status_of(self, name):
        return next(c.status for c in self.checks if c.name == name)

    @property
    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def passed(self):
        return not self.failures

    def to_json(self, include_timing=False):
        return {"graph_id": self.graph_id,
                "checks": [c.to_json(include_timing) for c in self.checks]}

    def to_json_line(self, include_timing=False):
        return json.dumps(self.to_json(include_timing), sort_keys=True)

    def __repr__(self):
        return "VerificationReport({}, {} checks, {} failed)".format(
            self.graph_id, len(self.checks), len(self.failures))
