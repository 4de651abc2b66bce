"""Check records shared by the verification routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckRecord:
    check: str
    indices: tuple = ()
    holds: bool = True
    residual: object = None     # NCPoly, LaurentPoly, str or None
    detail: str = ""
    family: str = ""

    def residual_text(self, cap=400):
        if self.residual is None:
            return ""
        text = str(self.residual)
        if len(text) > cap:
            text = text[:cap] + "...[%d chars]" % len(text)
        return text


@dataclass
class CheckReport:
    title: str
    records: list = field(default_factory=list)

    def add(self, check, holds, residual=None, indices=(), detail="", family=""):
        rec = CheckRecord(check, tuple(indices), bool(holds), residual, detail, family)
        self.records.append(rec)
        return rec

    def extend(self, other, prefix=""):
        for r in other.records:
            self.records.append(CheckRecord(prefix + r.check, r.indices, r.holds, r.residual,
                                            r.detail, r.family))
        return self

    @property
    def all_hold(self):
        return all(r.holds for r in self.records)

    @property
    def passed(self):
        return sum(r.holds for r in self.records)

    @property
    def failed(self):
        return len(self.records) - self.passed

    def counts_by_family(self):
        out = {}
        for r in self.records:
            tot, ok = out.get(r.family, (0, 0))
            out[r.family] = (tot + 1, ok + r.holds)
        return out

    def failures(self):
        return [r for r in self.records if not r.holds]

    def __len__(self):
        return len(self.records)

    def __str__(self):
        lines = ["%s: %d/%d hold" % (self.title, self.passed, len(self.records))]
        for r in self.failures():
            lines.append("  FAIL %s %s residual=%s" % (r.check, r.indices, r.residual_text(120)))
        return "\n".join(lines)


# one-parameter and multiparameter relation reports share this shape
RelationReport = CheckReport
