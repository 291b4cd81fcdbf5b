import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pdlarg import (BOTTOM, TOP, And, Atom, Iff, Implies, Not, Or, ParseError, Vocabulary,
                    VocabularyError, contrary, dpll_satisfiable, entails, equivalent_sets,
                    is_consistent, parse_formula, restricted_closure)
from pdlarg.generate import random_formula

a, b, c = Atom("a"), Atom("b"), Atom("c")
P = parse_formula


def brute_entails(gamma, phi, names):
    """Evaluate every assignment directly, without the bitmask tables."""
    def ev(f, env):
        if isinstance(f, Atom):
            return env[f.name]
        if f == TOP:
            return True
        if f == BOTTOM:
            return False
        if isinstance(f, Not):
            return not ev(f.operand, env)
        lhs, rhs = ev(f.left, env), ev(f.right, env)
        return {And: lhs and rhs, Or: lhs or rhs, Implies: (not lhs) or rhs, Iff: lhs == rhs}[type(f)]
    for bits in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, bits))
        if all(ev(g, env) for g in gamma) and not ev(phi, env):
            return False
    return True


formulas = st.builds(lambda seed, d: random_formula(random.Random(seed), ["a", "b", "c", "d"], d),
                     st.integers(0, 10**9), st.integers(0, 3))


class TestParse:
    def test_precedence(self):
        assert P("~a & b | c") == Or(And(Not(a), b), c)
        assert P("a -> b -> c") == Implies(a, Implies(b, c))
        assert P("a <-> b -> c") == Iff(a, Implies(b, c))
        assert P("(a | b) & c") == And(Or(a, b), c)
        assert P("true") == TOP and P("false") == BOTTOM

    def test_render_round_trip(self):
        for text in ["~(c2 & c4)", "a -> b -> c", "(a -> b) -> c", "~~a", "a & (b | c)", "a <-> ~b"]:
            assert P(str(P(text))) == P(text)

    @given(formulas)
    def test_render_round_trip_random(self, f):
        assert P(str(f)) == f

    def test_error_position(self):
        with pytest.raises(ParseError) as err:
            P("a & & b", line=3, column=5)
        assert err.value.line == 3 and err.value.column >= 5

    def test_undeclared_atom(self):
        with pytest.raises(ParseError, match="undeclared atom 'z'") as err:
            P("a & z", Vocabulary(["a"]))
        assert err.value.column == 5

    def test_operators(self):
        assert (a & b) == And(a, b) and (a | b) == Or(a, b) and ~a == Not(a) and (a >> b) == Implies(a, b)


class TestEntails:
    def test_modus_ponens(self):
        assert entails([a, a >> b], b)

    def test_atom_not_tautology(self):
        assert not entails([], a)

    def test_blocking_conclusion(self):
        assert entails([P("c1"), P("~(c2 & c4)"), P("c4")], P("~c2"))

    def test_undeclared_atom(self):
        with pytest.raises(VocabularyError):
            entails([a], b, Vocabulary(["a"]))

    def test_methods_agree_on_examples(self):
        for gamma, phi in [([a, a >> b], b), ([], a), ([a, Not(a)], c), ([a | b, Not(a)], b)]:
            assert entails(gamma, phi, method="truth-table") == entails(gamma, phi, method="dpll")

    @settings(max_examples=200)
    @given(st.lists(formulas, max_size=4), formulas)
    def test_matches_direct_evaluation(self, gamma, phi):
        assert entails(gamma, phi, Vocabulary("abcd")) == brute_entails(gamma, phi, "abcd")

    @settings(max_examples=200)
    @given(st.lists(formulas, max_size=3), formulas, formulas)
    def test_monotone(self, gamma, extra, phi):
        if entails(gamma, phi, Vocabulary("abcd")):
            assert entails(gamma + [extra], phi, Vocabulary("abcd"))

    def test_dpll_beyond_truth_table_bound(self):
        names = [f"x{i}" for i in range(20)]
        chain = [Implies(Atom(x), Atom(y)) for x, y in zip(names, names[1:])]
        with pytest.raises(VocabularyError, match="limited to 16"):
            Vocabulary(names).models(Atom("x0"))
        assert entails([Atom("x0")] + chain, Atom("x19"))
        assert not entails(chain, Atom("x19"))


class TestContrary:
    def test_adds_negation(self):
        assert contrary(a) == Not(a)

    def test_strips_negation(self):
        assert contrary(Not(a)) == a

    def test_strips_one_negation_only(self):
        assert contrary(Not(Not(a))) == Not(a)

    @given(formulas)
    def test_involution_up_to_equivalence(self, f):
        assert equivalent_sets([contrary(contrary(f))], [f], Vocabulary("abcd"))


class TestConsistency:
    def test_examples(self):
        assert not is_consistent([a, Not(a)])
        assert is_consistent([])
        assert not is_consistent([a, b, Not(a & b)])

    @settings(max_examples=200)
    @given(st.lists(formulas, max_size=4))
    def test_consistent_iff_not_entails_false(self, gamma):
        v = Vocabulary("abcd")
        assert is_consistent(gamma, v) == (not entails(gamma, BOTTOM, v))
        assert is_consistent(gamma, v) == dpll_satisfiable(gamma)


class TestRestrictedClosure:
    def test_examples(self):
        assert restricted_closure([a], [a, b, Not(b)]) == {a}
        assert restricted_closure([a, a >> b], [b, Not(b)]) == {b}
        assert restricted_closure([P("c3")], [P("c3"), P("c4")]) == {P("c3")}

    @settings(max_examples=100)
    @given(st.lists(formulas, max_size=3), st.lists(formulas, max_size=6))
    def test_subset_of_targets_and_entailed(self, gamma, targets):
        v = Vocabulary("abcd")
        out = restricted_closure(gamma, targets, v)
        assert out <= set(targets)
        assert out == {t for t in targets if brute_entails(gamma, t, "abcd")}
