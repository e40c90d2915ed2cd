import json
from pathlib import Path
from random import Random

import pytest

from doxa.errors import AgentRangeError, NotL0Error
from doxa.generators import random_cmab, random_formula, random_l0
from doxa.mab import (
    MAB,
    BeliefBase,
    alternatives,
    eval_base,
    eval_mab,
    is_alternative,
    is_cmab,
)
from doxa.syntax import (
    And,
    Atom,
    Box,
    Exp,
    FALSE,
    Not,
    TRUE,
    parse_formula,
)

P, Q = Atom("p"), Atom("q")

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "common_ground.json"


def example_base() -> BeliefBase:
    return BeliefBase.of(2, {1: [P, Exp(2, P)], 2: [P]}, {"p", "q"})


def fixture_mab() -> MAB:
    return MAB.from_json(json.loads(FIXTURE.read_text()))


class TestEvalBase:
    def test_explicit_membership(self):
        assert eval_base(example_base(), Exp(1, P))

    def test_membership_is_structural(self):
        # p & p is a different formula from p, so it is not believed.
        assert not eval_base(example_base(), Exp(1, And(P, P)))

    def test_atom_from_valuation(self):
        assert eval_base(example_base(), Q)

    def test_rejects_box(self):
        with pytest.raises(NotL0Error):
            eval_base(example_base(), Box(1, P))

    def test_agent_out_of_range(self):
        with pytest.raises(AgentRangeError):
            eval_base(example_base(), Exp(5, P))


class TestAlternatives:
    def test_empty_beliefs_accept_everything(self):
        b = BeliefBase.of(1, {}, set())
        other = BeliefBase.of(1, {1: [P]}, {"q"})
        assert is_alternative(b, other, 1)

    def test_atom_belief(self):
        b = BeliefBase.of(1, {1: [P]}, set())
        assert is_alternative(b, BeliefBase.of(1, {}, {"p"}), 1)
        assert not is_alternative(b, BeliefBase.of(1, {}, set()), 1)

    def test_explicit_belief_requirement(self):
        b = BeliefBase.of(2, {1: [P, Exp(2, P)]}, set())
        candidate = BeliefBase.of(2, {}, {"p"})
        assert not is_alternative(b, candidate, 1)

    def test_alternatives_order_and_vacuity(self):
        m = fixture_mab()
        assert alternatives(m, 1) == list(m.context)[:2]
        assert alternatives(MAB(example_base(), ()), 1) == []
        empty_agent = MAB(BeliefBase.of(2, {}, set()), m.context)
        assert alternatives(empty_agent, 1) == list(m.context)


class TestEvalMab:
    def test_worked_example(self):
        m = fixture_mab()
        f = parse_formula("Box[1](p & q) & Box[2](p & q) & Box[1] Box[2] (p & q)", 2)
        assert eval_mab(m, f)

    def test_empty_context_box_vacuous(self):
        m = MAB(example_base(), ())
        assert eval_mab(m, Box(1, FALSE))
        assert not is_cmab(m)

    def test_true_everywhere(self):
        assert eval_mab(fixture_mab(), TRUE)

    def test_l0_agrees_with_base(self):
        rng = Random(31)
        for _ in range(100):
            m = random_cmab(rng, 2)
            f = random_l0(rng, 3, 2)
            assert eval_mab(m, f) == eval_base(m.base, f)


class TestIsCmab:
    def test_fixture_is_consistent(self):
        assert is_cmab(fixture_mab())

    def test_empty_context_is_not(self):
        assert not is_cmab(MAB(example_base(), ()))

    def test_single_empty_member(self):
        c = BeliefBase.of(2, {}, set())
        assert is_cmab(MAB(c, (c,)))


class TestSemanticShadows:
    def test_explicit_implies_implicit(self):
        rng = Random(17)
        for _ in range(80):
            m = random_cmab(rng, 2)
            alpha = random_l0(rng, 2, 2)
            i = rng.randint(1, 2)
            if eval_mab(m, Exp(i, alpha)):
                assert eval_mab(m, Box(i, alpha))

    def test_no_inconsistent_implicit_beliefs(self):
        rng = Random(18)
        for _ in range(80):
            m = random_cmab(rng, 2)
            phi = random_formula(rng, 2, 2)
            i = rng.randint(1, 2)
            assert not eval_mab(m, And(Box(i, phi), Box(i, Not(phi))))


class TestNonClosure:
    def test_not_closed_under_commutation(self):
        witness = BeliefBase.of(1, {}, {"p", "q"})
        base = BeliefBase.of(1, {1: [And(P, Q)]}, {"p", "q"})
        m = MAB(base, (witness,))
        assert is_cmab(m)
        assert eval_mab(m, Exp(1, And(P, Q)))
        assert not eval_mab(m, Exp(1, And(Q, P)))

    def test_not_closed_under_conjunction(self):
        witness = BeliefBase.of(1, {}, {"p", "q"})
        base = BeliefBase.of(1, {1: [P, Q]}, {"p", "q"})
        m = MAB(base, (witness,))
        assert is_cmab(m)
        assert eval_mab(m, And(Exp(1, P), Exp(1, Q)))
        assert not eval_mab(m, Exp(1, And(P, Q)))


class TestStructureAndJson:
    def test_context_deduplication(self):
        b = example_base()
        m = MAB(b, (b, b, BeliefBase.of(2, {}, set()), b))
        assert len(m.context) == 2

    def test_belief_base_rejects_box(self):
        with pytest.raises(NotL0Error):
            BeliefBase.of(1, {1: [Box(1, P)]}, set())

    def test_json_round_trip(self):
        m = fixture_mab()
        again = MAB.from_json(json.loads(json.dumps(m.to_json())))
        assert again == m

    def test_random_json_round_trip(self):
        rng = Random(77)
        for _ in range(25):
            m = random_cmab(rng, 2)
            assert MAB.from_json(m.to_json()) == m
