"""Claim checkers over finite prefixes.

Every checker is a pure function from concrete finite sets to data; the
callers (CLI, tests) decide what counts as failure.  The profile checks
assume prefix-complete inputs: a set passed with bound N must contain
every element <= N of whatever infinite set it stands for, which makes
the truncated profiles exact on [0, N].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .construct import LemmaStepCert, Schedule, attempt_lemma_step, build_prefix
from .intset import IntSet
from .repcore import rep_profile

__all__ = [
    "StepCondition",
    "PairReport",
    "verify_equal_rep",
    "union_covered_prefix",
    "detect_interval_union",
    "detect_intersection_ap",
    "verify_pair",
    "verify_theorem",
    "verify_lemma_claims",
    "report_text",
    "report_json_dict",
    "report_json",
]


def verify_equal_rep(a: IntSet, b: IntSet, bound: int) -> tuple[bool, Optional[int]]:
    """Profile equality on [0, bound]; on failure, the least divergent n."""
    divergence = rep_profile(a, bound).first_divergence(rep_profile(b, bound))
    return divergence is None, divergence


def union_covered_prefix(a: IntSet, b: IntSet, bound: int) -> int:
    """Largest e <= bound with [0, e] contained in a union b; -1 if none."""
    full = (1 << (bound + 1)) - 1
    holes = ~(a.mask | b.mask) & full
    if holes == 0:
        return bound
    return (holes & -holes).bit_length() - 2


def detect_interval_union(a: IntSet, b: IntSet, bound: int) -> bool:
    """True iff the union covers the whole interval [0, bound]."""
    return union_covered_prefix(a, b, bound) == bound


def detect_intersection_ap(
    a: IntSet, b: IntSet, bound: int
) -> Optional[tuple[int, int, int]]:
    """(first, difference, count) when the intersection within [0, bound]
    is exactly an arithmetic progression; None otherwise.

    A singleton reports (first, 0, 1): progression-compatible with the
    difference still undetermined.
    """
    members = ((a & b).truncate(bound)).to_array()
    if members.size == 0:
        return None
    if members.size == 1:
        return int(members[0]), 0, 1
    gaps = set(int(g) for g in members[1:] - members[:-1])
    if len(gaps) != 1:
        return None
    return int(members[0]), gaps.pop(), int(members.size)


@dataclass(frozen=True)
class StepCondition:
    """Outcome of the collision checks for one build step."""

    index: int
    m: int
    precondition_ok: bool
    moreover_ok: bool


@dataclass(frozen=True)
class PairReport:
    """Everything the checkers established about one pair on [0, bound]."""

    bound: int
    rep_equal: bool
    first_divergence: Optional[int]
    union_covers_to: int
    intersection_ap: Optional[tuple[int, int, int]]
    expected_ap: Optional[tuple[int, int]] = None
    lemma_conditions: tuple[StepCondition, ...] = field(default=(), repr=False)

    @property
    def union_is_interval(self) -> bool:
        return self.union_covers_to >= self.bound

    @property
    def ap_matches_expected(self) -> bool:
        """Detected progression consistent with the expected (first, difference).

        A singleton intersection matches on its first element alone.
        """
        if self.expected_ap is None:
            return True
        if self.intersection_ap is None:
            return False
        first, difference, count = self.intersection_ap
        want_first, want_difference = self.expected_ap
        if first != want_first:
            return False
        return count == 1 or difference == want_difference


def verify_pair(
    a: IntSet,
    b: IntSet,
    bound: int,
    expected_ap: Optional[tuple[int, int]] = None,
    lemma_conditions: tuple[StepCondition, ...] = (),
) -> PairReport:
    """Run all pair checkers and collect the outcomes."""
    rep_equal, divergence = verify_equal_rep(a, b, bound)
    return PairReport(
        bound=bound,
        rep_equal=rep_equal,
        first_divergence=divergence,
        union_covers_to=union_covered_prefix(a, b, bound),
        intersection_ap=detect_intersection_ap(a, b, bound),
        expected_ap=expected_ap,
        lemma_conditions=lemma_conditions,
    )


def verify_theorem(l: int, bound: int) -> PairReport:
    """Build the theorem-schedule prefix and check all three claims.

    Expects profile equality on [0, bound], union covering [0, bound],
    and the intersection progression starting at 2^(2l)-1 with difference
    2^(2l+1)-1.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if bound < 1 << (2 * l + 1):
        raise ValueError(f"bound must be >= 2^(2l+1) = {1 << (2 * l + 1)}")
    result = build_prefix(Schedule.theorem(l), bound)
    conditions = tuple(
        StepCondition(i, cert.m, cert.precondition_ok, cert.moreover_ok)
        for i, cert in enumerate(result.certs)
    )
    expected = ((1 << (2 * l)) - 1, (1 << (2 * l + 1)) - 1)
    return verify_pair(result.a, result.b, bound, expected_ap=expected, lemma_conditions=conditions)


def verify_lemma_claims(a0: IntSet, b0: IntSet, m: int) -> LemmaStepCert:
    """Check every step claim by direct set computation; never raises.

    Includes the interval specializations (union [0, m-1] extending to
    [0, 2m-1], partitions staying partitions) when their hypotheses hold.
    """
    _, _, cert = attempt_lemma_step(a0, b0, m)
    return cert


def _ap_dict(ap: Optional[tuple[int, int, int]]) -> Optional[dict]:
    if ap is None:
        return None
    first, difference, count = ap
    return {"first": first, "difference": difference, "count": count}


def report_json_dict(report: PairReport) -> dict:
    """PairReport as a JSON-ready dict with fixed key order."""
    return {
        "schema_version": 1,
        "bound": report.bound,
        "rep_equal": report.rep_equal,
        "first_divergence": report.first_divergence,
        "union_covers_to": report.union_covers_to,
        "union_is_interval": report.union_is_interval,
        "intersection_ap": _ap_dict(report.intersection_ap),
        "expected_ap": (
            None
            if report.expected_ap is None
            else {"first": report.expected_ap[0], "difference": report.expected_ap[1]}
        ),
        "ap_matches_expected": report.ap_matches_expected,
        "lemma_conditions": [
            {
                "index": c.index,
                "m": c.m,
                "precondition_ok": c.precondition_ok,
                "moreover_ok": c.moreover_ok,
            }
            for c in report.lemma_conditions
        ],
    }


def report_json(report: PairReport) -> str:
    return json.dumps(report_json_dict(report), indent=2) + "\n"


def report_text(report: PairReport) -> str:
    """Line-oriented report, stable across runs."""
    lines = [
        f"bound {report.bound}",
        f"rep_equal {'yes' if report.rep_equal else 'no'}",
    ]
    if report.first_divergence is not None:
        lines.append(f"first_divergence {report.first_divergence}")
    lines.append(f"union_covers_to {report.union_covers_to}")
    lines.append(f"union_is_interval {'yes' if report.union_is_interval else 'no'}")
    if report.intersection_ap is None:
        lines.append("intersection_ap none")
    else:
        first, difference, count = report.intersection_ap
        lines.append(f"intersection_ap first={first} difference={difference} count={count}")
    if report.expected_ap is not None:
        lines.append(
            f"expected_ap first={report.expected_ap[0]} difference={report.expected_ap[1]} "
            f"matched={'yes' if report.ap_matches_expected else 'no'}"
        )
    for c in report.lemma_conditions:
        lines.append(
            f"step {c.index} m={c.m} precondition={'ok' if c.precondition_ok else 'violated'} "
            f"moreover={'ok' if c.moreover_ok else 'no'}"
        )
    return "\n".join(lines) + "\n"
