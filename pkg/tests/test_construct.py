import random

import pytest

from eqrep.construct import (
    MAX_BUILD_BOUND,
    BuildResult,
    Schedule,
    attempt_lemma_step,
    build_prefix,
    lemma_step,
    step_log,
)
from eqrep.errors import BoundExceeded, PreconditionViolated
from eqrep.intset import IntSet
from eqrep.repcore import (
    cross_pair_counts,
    in_difference,
    ordered_pair_counts,
    rep_profile,
    rep_profile_naive,
)


class TestSchedule:
    def test_theorem_values(self):
        s = Schedule.theorem(1)
        assert [s.value(i) for i in range(4)] == [2, 3, 7, 14]

    def test_dombi_values(self):
        s = Schedule.dombi()
        assert [s.value(i) for i in range(3)] == [2, 4, 8]

    def test_general_values(self):
        s = Schedule.general(1, r=3, m=9)
        assert s.value(2) == 9 and s.value(3) == 18
        assert [s.value(i) for i in range(2)] == [2, 3]

    def test_strictly_increasing(self):
        for s in (Schedule.dombi(), Schedule.theorem(1), Schedule.theorem(3),
                  Schedule.general(2, r=20, m=40)):
            values = [s.value(i) for i in range(20)]
            assert all(x < y for x, y in zip(values, values[1:]))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            Schedule.theorem(0)
        with pytest.raises(ValueError):
            Schedule.general(1, r=2, m=9)  # r below 2^(2l)-1
        with pytest.raises(ValueError):
            Schedule.general(1, r=3, m=6)  # m below 2^(2l+1)-1
        with pytest.raises(ValueError):
            Schedule("dombi", l=1)
        with pytest.raises(ValueError):
            Schedule("nope")
        with pytest.raises(ValueError):
            Schedule.dombi().value(-1)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            Schedule.dombi().value(80)
        with pytest.raises(OverflowError):
            Schedule.general(1, r=3, m=(1 << 61)).value(4)

    def test_translation(self):
        assert Schedule.dombi().translation() == 0
        assert Schedule.theorem(2).translation() == 0
        assert Schedule.general(1, r=5, m=9).translation() == 2
        assert Schedule.general(1, r=3, m=9).translation() == 0


class TestLemmaStep:
    def test_base_step(self):
        a1, b1, cert = lemma_step(IntSet((0,)), IntSet((1,)), 2)
        assert a1.to_list() == [0, 3]
        assert b1.to_list() == [1, 2]
        assert cert.precondition_ok and cert.moreover_ok
        assert cert.union_identity_ok and cert.intersection_claim_ok
        assert cert.disjoint_union_ok and cert.intersection_equal
        # union [0,1] extends to [0,3], and the partition survives
        assert cert.interval_extends is True
        assert cert.partition_extends is True

    def test_overlap_step(self):
        a1, b1, cert = lemma_step(IntSet((0, 3)), IntSet((1, 2)), 3)
        assert a1.to_list() == [0, 3, 4, 5]
        assert b1.to_list() == [1, 2, 3, 6]
        assert cert.precondition_ok
        assert not cert.moreover_ok  # 3 is a difference within {0, 3}
        assert (a1 & b1).to_list() == [3]
        assert cert.union_identity_ok and cert.intersection_claim_ok
        assert not cert.disjoint_union_ok
        assert not cert.intersection_equal  # {3} strictly contains the empty lower bound

    def test_violation_carries_witness(self):
        with pytest.raises(PreconditionViolated) as exc:
            lemma_step(IntSet((0, 3)), IntSet((1, 2)), 2)
        assert exc.value.m == 2
        assert exc.value.witness == (3, 1)

    def test_zero_translation_merges(self):
        # m = 0 is legal exactly when the sets are disjoint
        a1, b1, cert = lemma_step(IntSet((0, 2)), IntSet((1, 5)), 0)
        assert a1 == b1 == IntSet((0, 1, 2, 5))
        assert cert.precondition_ok
        with pytest.raises(PreconditionViolated):
            lemma_step(IntSet((0,)), IntSet((0,)), 0)

    def test_swap_symmetry(self):
        rng = random.Random(42)
        for _ in range(40):
            a = IntSet(rng.sample(range(40), rng.randint(1, 6)))
            b = IntSet(rng.sample(range(40), rng.randint(1, 6)))
            for m in range(90):
                if in_difference(a, b, m):
                    continue
                a1, b1, cert = lemma_step(a, b, m)
                b2, a2, cert2 = lemma_step(b, a, m)
                assert (a1, b1) == (a2, b2)
                assert cert == cert2
                break

    def test_attempt_does_not_raise(self):
        a1, b1, cert = attempt_lemma_step(IntSet((0, 3)), IntSet((1, 2)), 2)
        assert a1 is None and b1 is None
        assert not cert.precondition_ok
        assert cert.witness == (3, 1)


def random_step_chain(rng, max_element=200, max_steps=4):
    """A chain of random valid doubling steps from ({0}, {1})."""
    a, b = IntSet((0,)), IntSet((1,))
    trail = []
    for _ in range(rng.randint(1, max_steps)):
        top = max(a.max(), b.max())
        candidates = [m for m in range(max_element - top + 1) if not in_difference(a, b, m)]
        if not candidates:
            break
        m = rng.choice(candidates)
        a1, b1, cert = lemma_step(a, b, m)
        trail.append((a, b, m, a1, b1, cert))
        a, b = a1, b1
    return trail


class TestLemmaSoundness:
    def test_profile_equality_preserved(self):
        rng = random.Random(2024)
        for _ in range(60):
            for a0, b0, m, a1, b1, cert in random_step_chain(rng):
                bound = 2 * max(a1.max(), b1.max())
                assert rep_profile(a1, bound) == rep_profile(b1, bound)

    def test_counting_identity(self):
        # ordered_{A'}(n) = ordered_A(n) + ordered_B(n-2m) + 2*cross_{A,B}(n-m)
        # rep_{A'}(n) = rep_A(n) + rep_B(n-2m) + cross_{A,B}(n-m)
        rng = random.Random(99)
        for _ in range(40):
            for a0, b0, m, a1, b1, cert in random_step_chain(rng, max_element=120):
                bound = 2 * max(a1.max(), b1.max())
                ordered1 = ordered_pair_counts(a1, bound)
                ordered0 = ordered_pair_counts(a0, bound)
                ordered_b0 = ordered_pair_counts(b0, bound)
                cross = cross_pair_counts(a0, b0, bound)
                rep1 = rep_profile(a1, bound)
                rep0 = rep_profile(a0, bound)
                rep_b0 = rep_profile(b0, bound)
                for n in range(bound + 1):
                    shifted = ordered_b0[n - 2 * m] if n >= 2 * m else 0
                    crossed = cross[n - m] if n >= m else 0
                    assert ordered1[n] == ordered0[n] + shifted + 2 * crossed
                    rep_shift = rep_b0[n - 2 * m] if n >= 2 * m else 0
                    assert rep1[n] == rep0[n] + rep_shift + crossed


class TestBuildPrefix:
    def test_theorem_l1_example(self):
        result = build_prefix(Schedule.theorem(1), 13)
        assert result.a.to_list() == [0, 3, 4, 5, 8, 9, 10, 13]
        assert result.b.to_list() == [1, 2, 3, 6, 7, 10, 11, 12]
        assert result.steps == (2, 3, 7)
        assert (result.a & result.b).to_list() == [3, 10]

    def test_dombi_example(self):
        result = build_prefix(Schedule.dombi(), 7)
        assert result.a.to_list() == [0, 3, 5, 6]
        assert result.b.to_list() == [1, 2, 4, 7]

    def test_trivial_bound(self):
        for schedule in (Schedule.dombi(), Schedule.theorem(1), Schedule.theorem(3),
                         Schedule.general(1, r=3, m=7)):
            result = build_prefix(schedule, 1)
            assert result.a.to_list() == [0]
            assert result.b.to_list() == [1]
            assert result.steps == ()

    def test_general_translated_prefix(self):
        # translation by r - (2^(2l)-1) shifts the whole prefix
        result = build_prefix(Schedule.general(1, r=5, m=9), 4)
        assert result.translation == 2
        assert result.a.to_list() == [2]
        assert result.b.to_list() == [3, 4]

    def test_every_step_certified(self):
        result = build_prefix(Schedule.theorem(2), 1 << 10)
        assert len(result.certs) == len(result.steps)
        assert all(cert.precondition_ok for cert in result.certs)
        assert all(cert.union_identity_ok and cert.intersection_claim_ok
                   for cert in result.certs)

    def test_prefix_stability(self):
        for schedule in (Schedule.dombi(), Schedule.theorem(1),
                         Schedule.general(1, r=5, m=9)):
            bounds = [1, 7, 13, 100, 1 << 10]
            results = {n: build_prefix(schedule, n) for n in bounds}
            for n1 in bounds:
                for n2 in bounds:
                    shared = min(n1, n2)
                    assert results[n1].a.truncate(shared) == results[n2].a.truncate(shared)
                    assert results[n1].b.truncate(shared) == results[n2].b.truncate(shared)

    def test_partition_invariant_and_overlap_event(self):
        for l in (1, 2, 3):
            schedule = Schedule.theorem(l)
            result = build_prefix(schedule, 1 << (2 * l + 2))
            for i in range(2 * l):
                ai, bi = result.states[i]
                end = schedule.value(i) - 1 if i < 2 * l - 1 else schedule.value(i)
                assert (ai | bi) == IntSet.interval(0, end), (l, i)
                assert not (ai & bi), (l, i)
            a_over, b_over = result.states[2 * l]
            assert (a_over & b_over) == IntSet((schedule.value(2 * l - 1),))

    def test_dombi_even_digit_sum_oracle(self):
        for k in (3, 6, 10):
            bound = (1 << k) - 1
            result = build_prefix(Schedule.dombi(), bound)
            evil = [n for n in range(bound + 1) if bin(n).count("1") % 2 == 0]
            assert result.a.to_list() == evil
            assert result.b.to_list() == [n for n in range(bound + 1) if n not in result.a]

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            build_prefix(Schedule.dombi(), 0)
        with pytest.raises(BoundExceeded):
            build_prefix(Schedule.dombi(), MAX_BUILD_BOUND + 1)

    def test_precondition_abort_reports_step(self):
        class BadSchedule:
            def value(self, i):
                return 1  # collides immediately: 1 - 0 = 1

            def translation(self):
                return 0

        with pytest.raises(PreconditionViolated) as exc:
            build_prefix(BadSchedule(), 10)
        assert exc.value.step == 0

    def test_step_log_format(self):
        result = build_prefix(Schedule.theorem(1), 13)
        lines = step_log(result).splitlines()
        assert lines[0].startswith("#")
        assert lines[1] == "0 2 1 1 2 2"
        assert lines[2] == "1 3 1 0 4 4"
        assert lines[3] == "2 7 1 1 8 8"


def test_build_profiles_match_naive_oracle(backend):
    result = build_prefix(Schedule.theorem(1), 200)
    bound = 200
    assert rep_profile(result.a, bound) == rep_profile_naive(result.a, bound)
    assert rep_profile(result.b, bound) == rep_profile_naive(result.b, bound)
    assert rep_profile(result.a, bound) == rep_profile(result.b, bound)
