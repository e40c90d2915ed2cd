from random import Random

import pytest
from hypothesis import given, strategies as st

from doxa.errors import AgentRangeError, ParseError, StratificationError
from doxa.generators import random_formula
from doxa.syntax import (
    And,
    Atom,
    Box,
    Exp,
    FALSE,
    Iff,
    Implies,
    Not,
    Or,
    Poss,
    TRUE,
    agents,
    atoms,
    is_l0,
    parse_formula,
    print_formula,
    size,
    subformulas,
)

P, Q, R = Atom("p"), Atom("q"), Atom("r")


class TestParse:
    def test_exp_atom(self):
        assert parse_formula("Exp[1] p", 2) == Exp(1, P)

    def test_box_conjunction(self):
        assert parse_formula("Box[1] (p & q)", 2) == Box(1, And(P, Q))

    def test_exp_over_box_rejected(self):
        with pytest.raises(StratificationError):
            parse_formula("Exp[1] Box[2] p", 2)

    def test_nested_exp_allowed(self):
        f = parse_formula("Exp[1] Exp[2] p", 2)
        assert f == Exp(1, Exp(2, P)) and is_l0(f)

    def test_precedence(self):
        assert parse_formula("~p & q", 1) == And(Not(P), Q)
        assert parse_formula("p & q | r", 1) == Or(And(P, Q), R)
        assert parse_formula("p | q -> r", 1) == Implies(Or(P, Q), R)
        assert parse_formula("p -> q <-> r", 1) == Iff(Implies(P, Q), R)
        assert parse_formula("Box[1] p & q", 1) == And(Box(1, P), Q)
        assert parse_formula("~Box[1] p", 1) == Not(Box(1, P))

    def test_right_assoc_implication(self):
        assert parse_formula("p -> q -> r", 1) == Implies(P, Implies(Q, R))

    def test_left_assoc_conjunction(self):
        assert parse_formula("p & q & r", 1) == And(And(P, Q), R)

    def test_sugar(self):
        assert parse_formula("true", 1) == TRUE
        assert parse_formula("false", 1) == FALSE
        assert parse_formula("Poss[1] p", 1) == Poss(1, P) == Not(Box(1, Not(P)))

    def test_agent_range(self):
        with pytest.raises(AgentRangeError):
            parse_formula("Exp[3] p", 2)
        with pytest.raises(AgentRangeError):
            parse_formula("Box[0] p", 2)
        with pytest.raises(AgentRangeError):
            parse_formula("p", 0)

    def test_reserved_underscore(self):
        with pytest.raises(ParseError):
            parse_formula("_f_1_w0", 1)

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_formula("p &", 1)
        assert exc.value.line == 1 and exc.value.col == 4
        with pytest.raises(ParseError) as exc:
            parse_formula("p\n& & q", 1)
        assert exc.value.line == 2

    def test_unknown_operator(self):
        with pytest.raises(ParseError) as exc:
            parse_formula("Know[1] p", 2)
        assert "Exp" in str(exc.value)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_formula("p q", 1)

    def test_unbalanced_paren(self):
        with pytest.raises(ParseError):
            parse_formula("(p & q", 1)


class TestPrint:
    def test_canonical_forms(self):
        assert print_formula(Exp(1, P)) == "Exp[1] p"
        assert print_formula(Not(P)) == "~p"
        assert print_formula(And(P, Q)) == "(p & q)"
        assert print_formula(Box(2, Not(And(P, Q)))) == "Box[2] ~(p & q)"

    def test_seeded_round_trip(self):
        rng = Random(2024)
        for _ in range(300):
            f = random_formula(rng, 6, 3)
            assert parse_formula(print_formula(f), 3) == f

    @given(st.integers(min_value=0, max_value=2**63))
    def test_round_trip_property(self, seed):
        f = random_formula(Random(seed), 5, 2)
        assert parse_formula(print_formula(f), 2) == f


def _subformulas_oracle(f):
    # Independent enumeration: explicit recursion, no worklist sharing.
    if isinstance(f, Atom):
        return {f}
    if isinstance(f, Not):
        return {f} | _subformulas_oracle(f.child)
    if isinstance(f, And):
        return {f} | _subformulas_oracle(f.left) | _subformulas_oracle(f.right)
    if isinstance(f, (Exp, Box)):
        return {f} | _subformulas_oracle(f.child)
    raise AssertionError


class TestStructure:
    def test_subformulas_examples(self):
        f = Box(1, And(P, Q))
        assert subformulas(f) == {f, And(P, Q), P, Q}
        assert subformulas(P) == {P}
        assert subformulas(Exp(1, P)) == {Exp(1, P), P}

    def test_subformulas_against_oracle(self):
        rng = Random(5)
        for _ in range(100):
            f = random_formula(rng, 5, 2)
            assert subformulas(f) == _subformulas_oracle(f)

    def test_subformulas_bounded_and_closed(self):
        rng = Random(6)
        for _ in range(100):
            f = random_formula(rng, 5, 2)
            subs = subformulas(f)
            assert len(subs) <= size(f)
            for g in subs:
                assert subformulas(g) <= subs

    def test_atoms(self):
        assert atoms(And(P, Not(Q))) == {"p", "q"}
        assert atoms(Exp(1, P)) == {"p"}
        assert atoms([Implies(P, Q), Box(1, R)]) == {"p", "q", "r"}

    def test_is_l0(self):
        assert is_l0(Exp(1, Exp(2, P)))
        assert not is_l0(Box(1, P))
        assert is_l0(And(P, Q))

    def test_agents(self):
        assert agents(And(Exp(1, P), Box(3, Q))) == {1, 3}
        assert agents(P) == set()

    def test_constructor_stratification(self):
        with pytest.raises(StratificationError):
            Exp(1, Box(1, P))
        with pytest.raises(StratificationError):
            Exp(1, And(P, Not(Box(2, Q))))

    def test_constructor_agent_check(self):
        with pytest.raises(AgentRangeError):
            Box(0, P)
        with pytest.raises(AgentRangeError):
            Exp(-1, P)

    def test_bad_atom_name(self):
        with pytest.raises(ValueError):
            Atom("P")
        with pytest.raises(ValueError):
            Atom("true")
