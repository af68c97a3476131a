"""The doubling step, translation schedules, and prefix builds.

One step of the construction takes a pair (A, B) and a translation m
with m outside (A - B) union (B - A), and produces

    A' = A union (m + B),    B' = B union (m + A).

The step preserves equality of representation functions, and iterating
it with a suitable schedule of translations grows pairs whose union and
intersection can be steered precisely.  Three schedules are built in:

* ``dombi``      m_i = 2^(i+1); the two sets partition [0, N] for every
                 prefix, and the first set is exactly the integers with
                 an even binary digit sum.
* ``theorem``    doubling up to step 2l-2, then 2^(2l)-1 once, then
                 m_i = 2^(i+1) - 2^(i-2l); the pair covers [0, N] and
                 intersects in the arithmetic progression
                 (2^(2l)-1) + (2^(2l+1)-1) k.
* ``general``    like ``theorem`` below step 2l, then m_i = 2^(i-2l) * m;
                 after translating by r - (2^(2l)-1) the intersection is
                 {r + m k} while the union no longer covers an interval
                 (unless r, m take the ``theorem`` values).

Every step is certified: the certificate records the collision-freeness
precondition, the union/intersection claims as actually verified on the
outputs, and the strengthened (disjoint/equality) forms when m also
avoids both self-difference sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BoundExceeded, PreconditionViolated
from .intset import IntSet
from .repcore import difference_witness, in_self_difference

__all__ = [
    "MAX_SCHEDULE_VALUE",
    "MAX_BUILD_BOUND",
    "Schedule",
    "LemmaStepCert",
    "BuildResult",
    "lemma_step",
    "attempt_lemma_step",
    "build_prefix",
    "untruncated_bound",
    "step_log",
]

# Schedule values above this raise OverflowError: profiles and set masks
# are indexed by int64 arithmetic downstream.
MAX_SCHEDULE_VALUE = 1 << 62

# Builds allocate bit masks and profiles of this many entries; refuse
# bounds that would silently ask for gigabytes.
MAX_BUILD_BOUND = 1 << 26

_BASE_A = IntSet((0,))
_BASE_B = IntSet((1,))


@dataclass(frozen=True)
class Schedule:
    """Rule producing the translation sequence m_0, m_1, ..."""

    kind: str
    l: Optional[int] = None
    r: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind == "dombi":
            if (self.l, self.r, self.m) != (None, None, None):
                raise ValueError("dombi schedule takes no parameters")
        elif self.kind == "theorem":
            if self.l is None or self.l < 1:
                raise ValueError("theorem schedule requires l >= 1")
            if (self.r, self.m) != (None, None):
                raise ValueError("theorem schedule takes only l")
        elif self.kind == "general":
            if self.l is None or self.l < 1:
                raise ValueError("general schedule requires l >= 1")
            if self.r is None or self.m is None:
                raise ValueError("general schedule requires r and m")
            if self.r < (1 << (2 * self.l)) - 1:
                raise ValueError(
                    f"general schedule requires r >= 2^(2l)-1 = {(1 << (2 * self.l)) - 1}"
                )
            if self.m < (1 << (2 * self.l + 1)) - 1:
                raise ValueError(
                    f"general schedule requires m >= 2^(2l+1)-1 = {(1 << (2 * self.l + 1)) - 1}"
                )
        else:
            raise ValueError(f"unknown schedule kind {self.kind!r}")

    @classmethod
    def dombi(cls) -> "Schedule":
        return cls("dombi")

    @classmethod
    def theorem(cls, l: int) -> "Schedule":
        return cls("theorem", l=l)

    @classmethod
    def general(cls, l: int, r: int, m: int) -> "Schedule":
        return cls("general", l=l, r=r, m=m)

    def value(self, i: int) -> int:
        """The translation m_i; total, raises OverflowError past the cap."""
        if i < 0:
            raise ValueError("schedule index must be non-negative")
        if self.kind == "dombi":
            out = 1 << (i + 1)
        elif self.kind == "theorem":
            if i <= 2 * self.l - 2:
                out = 1 << (i + 1)
            elif i == 2 * self.l - 1:
                out = (1 << (2 * self.l)) - 1
            else:
                out = (1 << (i + 1)) - (1 << (i - 2 * self.l))
        else:
            if i <= 2 * self.l - 2:
                out = 1 << (i + 1)
            elif i == 2 * self.l - 1:
                out = (1 << (2 * self.l)) - 1
            else:
                out = (1 << (i - 2 * self.l)) * self.m
        if out > MAX_SCHEDULE_VALUE:
            raise OverflowError(f"schedule value m_{i} exceeds {MAX_SCHEDULE_VALUE}")
        return out

    def translation(self) -> int:
        """Final translation applied to a built prefix (general kind only)."""
        if self.kind == "general":
            return self.r - ((1 << (2 * self.l)) - 1)
        return 0


@dataclass(frozen=True)
class LemmaStepCert:
    """What one doubling step actually verified on its outputs.

    ``precondition_ok`` is the collision-freeness of m; when it is False
    the step was rejected and every other field is meaningless.  The
    union identity, the intersection lower bound (with its two parts
    disjoint), and -- when m also avoids both self-difference sets
    (``moreover_ok``) -- disjointness of the union identity and equality
    of the intersection bound, are each checked by direct set
    computation, never assumed.  The interval fields record the
    specializations "union [0, m-1] extends to [0, 2m-1]" and "a
    partition stays a partition"; they are None when the hypothesis does
    not apply.
    """

    m: int
    precondition_ok: bool
    witness: Optional[tuple[int, int]] = None
    moreover_ok: bool = False
    union_identity_ok: bool = False
    intersection_claim_ok: bool = False
    disjoint_union_ok: bool = False
    intersection_equal: bool = False
    interval_extends: Optional[bool] = None
    partition_extends: Optional[bool] = None


def attempt_lemma_step(
    a0: IntSet, b0: IntSet, m: int
) -> tuple[Optional[IntSet], Optional[IntSet], LemmaStepCert]:
    """Run one doubling step defensively; never raises.

    On a precondition violation the outputs are None and the certificate
    carries the witness pair.
    """
    if m < 0:
        raise ValueError("translation m must be non-negative")
    witness = difference_witness(a0, b0, m)
    if witness is not None:
        return None, None, LemmaStepCert(m=m, precondition_ok=False, witness=witness)

    a1 = a0 | b0.translate(m)
    b1 = b0 | a0.translate(m)

    union0 = a0 | b0
    inter0 = a0 & b0
    union_shifted = union0.translate(m)
    inter_shifted = inter0.translate(m)
    inter_lower = inter0 | inter_shifted

    union_identity_ok = (a1 | b1) == (union0 | union_shifted)
    intersection_claim_ok = inter_lower.issubset(a1 & b1) and inter0.isdisjoint(inter_shifted)
    moreover_ok = not (in_self_difference(a0, m) or in_self_difference(b0, m))
    disjoint_union_ok = union0.isdisjoint(union_shifted)
    intersection_equal = (a1 & b1) == inter_lower

    interval_extends = None
    partition_extends = None
    if m >= 1 and union0 == IntSet.interval(0, m - 1):
        interval_extends = (a1 | b1) == IntSet.interval(0, 2 * m - 1)
        if not inter0:
            partition_extends = interval_extends and not (a1 & b1)

    cert = LemmaStepCert(
        m=m,
        precondition_ok=True,
        witness=None,
        moreover_ok=moreover_ok,
        union_identity_ok=union_identity_ok,
        intersection_claim_ok=intersection_claim_ok,
        disjoint_union_ok=disjoint_union_ok,
        intersection_equal=intersection_equal,
        interval_extends=interval_extends,
        partition_extends=partition_extends,
    )
    return a1, b1, cert


def lemma_step(a0: IntSet, b0: IntSet, m: int) -> tuple[IntSet, IntSet, LemmaStepCert]:
    """One doubling step; raises PreconditionViolated with a witness."""
    a1, b1, cert = attempt_lemma_step(a0, b0, m)
    if not cert.precondition_ok:
        raise PreconditionViolated(m, cert.witness)
    return a1, b1, cert


@dataclass(frozen=True)
class BuildResult:
    """A built prefix with its full certification trail.

    ``a``/``b`` are the final sets: translated (general schedule) and
    truncated to [0, bound].  ``states`` holds the untranslated pair
    after 0, 1, 2, ... steps, so states[i] is the pair the i-th step was
    applied to and states[-1] the pair before translation/truncation.
    """

    a: IntSet
    b: IntSet
    bound: int
    schedule: Schedule
    steps: tuple[int, ...]
    certs: tuple[LemmaStepCert, ...]
    states: tuple[tuple[IntSet, IntSet], ...]
    translation: int


def build_prefix(schedule: Schedule, bound: int) -> BuildResult:
    """Build the prefix [0, bound] of the sets the schedule generates.

    Starts from A = {0}, B = {1} and applies doubling steps while
    m_i <= bound; stopping there is exact because every element a later
    step would add is at least m_i > bound.  For the general schedule the
    final pair is translated by r - (2^(2l)-1) and re-truncated, so the
    result is the [0, bound] prefix of the translated infinite pair.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if bound > MAX_BUILD_BOUND:
        raise BoundExceeded(f"build bound {bound} above supported maximum {MAX_BUILD_BOUND}")
    a, b = _BASE_A, _BASE_B
    steps: list[int] = []
    certs: list[LemmaStepCert] = []
    states: list[tuple[IntSet, IntSet]] = [(a, b)]
    i = 0
    while True:
        m = schedule.value(i)
        if m > bound:
            break
        a1, b1, cert = attempt_lemma_step(a, b, m)
        if not cert.precondition_ok:
            raise PreconditionViolated(m, cert.witness, step=i)
        a, b = a1, b1
        steps.append(m)
        certs.append(cert)
        states.append((a, b))
        i += 1
    t = schedule.translation()
    final_a = a.translate(t).truncate(bound)
    final_b = b.translate(t).truncate(bound)
    return BuildResult(
        a=final_a,
        b=final_b,
        bound=bound,
        schedule=schedule,
        steps=tuple(steps),
        certs=tuple(certs),
        states=tuple(states),
        translation=t,
    )


def untruncated_bound(schedule: Schedule, cap: int) -> Optional[int]:
    """Largest bound <= cap at which a build loses nothing to truncation.

    At such a bound the final pair is exactly the image of the last
    applied step (translated for the general schedule), which is what
    step-inverse round trips require.  None when even the first step
    does not fit under ``cap``.
    """
    t = schedule.translation()
    a, b = _BASE_A, _BASE_B
    best = None
    i = 0
    while True:
        m = schedule.value(i)
        a2, b2, cert = attempt_lemma_step(a, b, m)
        if not cert.precondition_ok:
            return best
        top = t + max(a2.max(), b2.max())
        if top > cap:
            return best
        if m <= top < schedule.value(i + 1):
            best = top
        a, b = a2, b2
        i += 1


def step_log(result: BuildResult) -> str:
    """Line-oriented step log: index, m_i, flags, output sizes."""
    lines = ["# step m precondition moreover size_a size_b"]
    for i, cert in enumerate(result.certs):
        after_a, after_b = result.states[i + 1]
        lines.append(
            f"{i} {cert.m} {int(cert.precondition_ok)} {int(cert.moreover_ok)} "
            f"{len(after_a)} {len(after_b)}"
        )
    return "\n".join(lines) + "\n"
