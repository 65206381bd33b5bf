"""Run reports and their text and machine renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_SEMANTIC_ERROR = 3


@dataclass
class Report:
    command: str
    options: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    error: Optional[dict] = None
    status: int = EXIT_OK

    def add_check(self, name: str, passed: bool, **detail) -> None:
        self.checks.append({"name": name, "passed": bool(passed), **detail})

    def finalize(self) -> "Report":
        if self.error is None:
            self.status = EXIT_OK if all(c["passed"] for c in self.checks) else EXIT_CHECK_FAILED
        return self

    def to_machine(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False, indent=2)

    @classmethod
    def from_machine(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.error is not None:
            where = ""
            if self.error.get("line"):
                where = f" (line {self.error['line']}, column {self.error['column']})"
            lines.append(f"error [{self.error['kind']}]{where}: {self.error['message']}")
        for res in self.results:
            lines.extend(_render_result(res))
        for c in self.checks:
            mark = "PASS" if c["passed"] else "FAIL"
            extra = ""
            if not c["passed"] and ("expected" in c or "actual" in c):
                extra = f"  expected {c.get('expected')}, got {c.get('actual')}"
            lines.append(f"[{mark}] {c['name']}{extra}")
        if self.checks:
            passed = sum(c["passed"] for c in self.checks)
            lines.append(f"{passed}/{len(self.checks)} checks passed")
        lines.append(f"exit status: {self.status}")
        return "\n".join(lines)


def _render_result(res: dict) -> list[str]:
    kind = res.get("kind")
    head = f"- {kind}"
    if "point" in res:
        head += f" x={res['point']}"
    if "partition" in res:
        head += f" partition={res['partition']}"
    lines = [head]
    if "blocks" in res:
        for b in res["blocks"]:
            lines.append(f"    block {b['id']}: {b['set']}")
    if "threads" in res:
        if not res["threads"]:
            lines.append("    (no threads: the inverse limit is empty)")
        for k, t in enumerate(res["threads"]):
            lines.append(f"    thread {k}:")
            lines.extend(f"      {lab}: block {bid} = {expr}" for lab, bid, expr in t)
    if "thread" in res:
        lines.extend(f"    {lab}: block {bid} = {expr}" for lab, bid, expr in res["thread"])
    for key in ("cofinal_chain", "minima", "chosen", "intersection", "verdict", "certificate", "note", "directed"):
        if key in res:
            lines.append(f"    {key}: {res[key]}")
    return lines
