"""Pass/fail reporting shared by every checker suite.

A Report is a list of named checks.  A FAIL always carries a witness: the
fully serialized inputs plus the nonzero defect, enough to replay the case
by hand.  Witness values are strings ("p/q" rationals, index tuples) so the
JSON form is exact.
"""

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
SKIP = "SKIP"

TOOL_NAME = "omnilie"
TOOL_VERSION = "0.1.0"


@dataclass
class Check:
    name: str
    status: str
    witness: dict | None = None
    detail: str = ""

    def to_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    seed: int | None = None
    mode: str = ""
    detail: str = ""

    def add(self, name, status, witness=None, detail=""):
        if status == FAIL and witness is None:
            raise ValueError("FAIL check %r must carry a witness" % name)
        self.checks.append(Check(name, status, witness, detail))

    def add_pass(self, name, detail=""):
        self.add(name, PASS, detail=detail)

    def add_fail(self, name, witness, detail=""):
        self.add(name, FAIL, witness=witness, detail=detail)

    def add_skip(self, name, detail=""):
        self.add(name, SKIP, detail=detail)

    @property
    def status(self):
        if any(c.status == FAIL for c in self.checks):
            return FAIL
        if self.checks and all(c.status == SKIP for c in self.checks):
            return SKIP
        return PASS

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        d = {
            "suite": self.suite,
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.seed is not None:
            d["seed"] = self.seed
        if self.mode:
            d["mode"] = self.mode
        if self.detail:
            d["detail"] = self.detail
        return d

    def summary_lines(self):
        lines = ["[%s] %s" % (self.status, self.suite)]
        for c in self.checks:
            line = "  %-4s %s" % (c.status, c.name)
            if c.detail:
                line += "  (%s)" % c.detail
            lines.append(line)
            if c.witness is not None:
                lines.append("       witness: %s" % (c.witness,))
        return lines
