"""Profile file format and JSON analysis reports.

Wire format (UTF-8, LF or CRLF):

    # NUMBER ALTERNATIVES: 3
    # NUMBER VOTERS: 4
    # ALTERNATIVE NAME 1: apple
    2: 1,2,3
    2: 3,2,1

Comment/header lines start with '#'.  Body lines are
"multiplicity: id1,id2,...,idm" with 1-based alternative ids; multiplicities
expand on load.  Only strict complete rankings are supported.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Optional

from .core import Profile

SCHEMA_VERSION = 1

_ALT_COUNT_RE = re.compile(r"#\s*NUMBER\s+ALTERNATIVES\s*:\s*(\d+)\s*$")
_VOTER_COUNT_RE = re.compile(r"#\s*NUMBER\s+VOTERS\s*:\s*(\d+)\s*$")
_ALT_NAME_RE = re.compile(r"#\s*ALTERNATIVE\s+NAME\s+(\d+)\s*:\s*(.*?)\s*$")


class ProfileFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def parse_profile(text: str) -> Profile:
    m: Optional[int] = None
    n: Optional[int] = None
    names: dict[int, str] = {}
    votes: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if (mt := _ALT_COUNT_RE.match(line)) is not None:
                m = int(mt.group(1))
            elif (mt := _VOTER_COUNT_RE.match(line)) is not None:
                n = int(mt.group(1))
            elif (mt := _ALT_NAME_RE.match(line)) is not None:
                names[int(mt.group(1))] = mt.group(2)
            continue
        if m is None:
            raise ProfileFormatError("ballot before NUMBER ALTERNATIVES header", lineno)
        head, sep, body = line.partition(":")
        if not sep:
            raise ProfileFormatError("expected 'count: id1,id2,...'", lineno)
        try:
            count = int(head.strip())
            ids = tuple(int(tok.strip()) for tok in body.split(","))
        except ValueError:
            raise ProfileFormatError("malformed ballot line", lineno) from None
        if count < 1:
            raise ProfileFormatError("multiplicity must be positive", lineno)
        if sorted(ids) != list(range(1, m + 1)):
            raise ProfileFormatError(
                f"ballot is not a permutation of 1..{m}", lineno)
        vote = tuple(a - 1 for a in ids)
        votes.extend([vote] * count)
    if m is None:
        raise ProfileFormatError("missing NUMBER ALTERNATIVES header")
    if n is not None and n != len(votes):
        raise ProfileFormatError(
            f"declared {n} voters but ballots sum to {len(votes)}")
    if not votes:
        raise ProfileFormatError("no ballots")
    name_tuple: Optional[tuple[str, ...]] = None
    if names:
        if sorted(names) != list(range(1, m + 1)):
            raise ProfileFormatError("alternative names must cover 1..m exactly")
        name_tuple = tuple(names[k] for k in range(1, m + 1))
    return Profile(m=m, n=len(votes), votes=tuple(votes), names=name_tuple)


def write_profile(p: Profile) -> str:
    lines = [f"# NUMBER ALTERNATIVES: {p.m}", f"# NUMBER VOTERS: {p.n}"]
    if p.names is not None:
        for k, name in enumerate(p.names, start=1):
            lines.append(f"# ALTERNATIVE NAME {k}: {name}")
    run_vote: Optional[tuple[int, ...]] = None
    run_len = 0
    for v in list(p.votes) + [None]:
        if v == run_vote and v is not None:
            run_len += 1
            continue
        if run_vote is not None:
            ids = ",".join(str(a + 1) for a in run_vote)
            lines.append(f"{run_len}: {ids}")
        run_vote = v
        run_len = 1
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DomainResult:
    """Outcome of one recognizer: a witness on membership, otherwise an
    explanation (a forbidden-subprofile certificate when the domain has one,
    or a generic non-membership marker)."""

    domain: str
    member: bool
    witness: Optional[dict[str, Any]] = None
    certificate: Optional[dict[str, Any]] = None
    wall_time: Optional[float] = None

    def __post_init__(self):
        if (self.witness is None) == (self.certificate is None):
            raise ValueError("exactly one of witness/certificate is required")


@dataclass(frozen=True)
class AnalysisReport:
    entries: tuple[DomainResult, ...]


def report_to_json(report: AnalysisReport, *, include_timing: bool = True,
                   pretty: bool = False) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "domains": [
            _entry_dict(e, include_timing=include_timing)
            for e in report.entries
        ],
    }
    return json.dumps(doc, indent=2 if pretty else None)


def _entry_dict(e: DomainResult, *, include_timing: bool) -> dict[str, Any]:
    d: dict[str, Any] = {"domain": e.domain, "member": e.member}
    if e.witness is not None:
        d["witness"] = e.witness
    if e.certificate is not None:
        d["certificate"] = e.certificate
    if include_timing and e.wall_time is not None:
        d["wall_time"] = e.wall_time
    return d
