"""Evidence rendering: number-stripped line diff with highlight flags.

The new log is diffed line-by-line against the exemplar record after all
digit runs are removed, so timestamps, counters and addresses never count
as differences. Rows that differ are highlighted; equal rows never are.
"""

from __future__ import annotations

import difflib
import enum
import re
from dataclasses import dataclass
from typing import Optional, Sequence

DIGIT_RUN_RE = re.compile(r"[0-9]+")


class DiffOp(enum.Enum):
    EQUAL = "equal"
    CHANGE = "change"
    DELETE = "delete"
    INSERT = "insert"


@dataclass(frozen=True)
class DiffRow:
    left_line: Optional[str]
    right_line: Optional[str]
    op: DiffOp

    @property
    def highlighted(self) -> bool:
        return self.op is not DiffOp.EQUAL

    def to_json_dict(self) -> dict:
        return {
            "left": self.left_line,
            "right": self.right_line,
            "op": self.op.value,
            "hl": self.highlighted,
        }


DiffView = list[DiffRow]


def strip_numbers(lines: Sequence[str]) -> list[str]:
    """Remove every maximal decimal-digit run; line count is preserved."""
    return [DIGIT_RUN_RE.sub("", line) for line in lines]


def line_edit_script(a: Sequence[str], b: Sequence[str]) -> DiffView:
    """LCS-based line alignment of a (left) against b (right).

    Replace blocks pair up line-for-line as changes; surplus lines on
    either side become deletes or inserts.
    """
    rows: DiffView = []
    matcher = difflib.SequenceMatcher(None, list(a), list(b), autojunk=False)
    for tag, a0, a1, b0, b1 in matcher.get_opcodes():
        if tag == "equal":
            for i in range(a1 - a0):
                rows.append(DiffRow(a[a0 + i], b[b0 + i], DiffOp.EQUAL))
        elif tag == "delete":
            for i in range(a0, a1):
                rows.append(DiffRow(a[i], None, DiffOp.DELETE))
        elif tag == "insert":
            for j in range(b0, b1):
                rows.append(DiffRow(None, b[j], DiffOp.INSERT))
        else:  # replace
            paired = min(a1 - a0, b1 - b0)
            for i in range(paired):
                rows.append(DiffRow(a[a0 + i], b[b0 + i], DiffOp.CHANGE))
            for i in range(a0 + paired, a1):
                rows.append(DiffRow(a[i], None, DiffOp.DELETE))
            for j in range(b0 + paired, b1):
                rows.append(DiffRow(None, b[j], DiffOp.INSERT))
    return rows


def render_diff(new_lines: Sequence[str], exemplar_lines: Sequence[str]) -> DiffView:
    """Diff the new log (left) against the exemplar (right), numbers stripped."""
    return line_edit_script(strip_numbers(new_lines), strip_numbers(exemplar_lines))


def diff_to_json(view: DiffView) -> list[dict]:
    return [row.to_json_dict() for row in view]
