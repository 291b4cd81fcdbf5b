import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from pdlarg import (CapacityError, OrderConflictError, PDT, Default, PriorityRelation, Vocabulary,
                    all_strict_partial_orders, linearisations, max_elements, parse_formula,
                    partial_linearisation, transitive_closure, validate_pdt)
from pdlarg.generate import random_order

from theories import PENGUIN, four_args, load


def kinds(t):
    return {v.kind for v in validate_pdt(t)}


orders = st.builds(lambda seed, n, dens: random_order(random.Random(seed), [f"x{i}" for i in range(n)], dens),
                   st.integers(0, 10**9), st.integers(0, 6), st.floats(0, 1))


class TestPriorityRelation:
    def test_closed_and_queries(self):
        p = PriorityRelation("abc", [("a", "b"), ("b", "c")])
        assert ("a", "c") in p.pairs and p.less("a", "c") and p.is_total()
        assert list(p.as_chain()) == ["a", "b", "c"]
        assert p == PriorityRelation.chain("abc")

    def test_cycle_witness(self):
        p = PriorityRelation(["d1", "d2"], [("d1", "d2"), ("d2", "d1")])
        assert not p.is_strict_partial_order()
        assert set(p.cycle_witness()) == {"d1", "d2"}

    def test_restrict_and_extends(self):
        p = PriorityRelation.chain("abcd")
        assert p.restrict("ac").pairs == {("a", "c")}
        assert p.extends(PriorityRelation("abcd", [("a", "d")]))
        assert not PriorityRelation("abcd").extends(p)


class TestValidate:
    def test_penguin_ok(self):
        assert validate_pdt(load(PENGUIN)) == []

    def test_cycle(self):
        t = PDT((), (Default("d1", parse_formula("true"), parse_formula("a")),
                     Default("d2", parse_formula("true"), parse_formula("b"))),
                PriorityRelation(["d1", "d2"], [("d1", "d2"), ("d2", "d1")]))
        assert "cycle" in kinds(t)

    def test_inconsistent_facts(self):
        t = PDT((parse_formula("a"), parse_formula("~a")), ())
        assert kinds(t) == {"inconsistent-facts"}

    def test_dangling_and_duplicate(self):
        d = Default("d1", parse_formula("true"), parse_formula("a"))
        assert "duplicate-id" in kinds(PDT((), (d, d)))
        assert "dangling-id" in kinds(PDT((), (d,), PriorityRelation(["d1", "d9"], [("d1", "d9")])))

    def test_undeclared_atom(self):
        d = Default("d1", parse_formula("true"), parse_formula("b"))
        assert "undeclared-atom" in kinds(PDT((), (d,), vocabulary=Vocabulary(["a"])))


class TestLinearisations:
    def test_examples(self):
        assert len(linearisations(PriorityRelation(["d1", "d2"]))) == 2
        assert len(linearisations(PriorityRelation(["d1", "d2", "d3"], [("d3", "d2")]))) == 3
        chain = PriorityRelation.chain(["d1", "d2", "d3"])
        assert linearisations(chain) == [chain]

    @pytest.mark.parametrize("n", range(7))
    def test_empty_order_count(self, n):
        assert len(linearisations(PriorityRelation([f"x{i}" for i in range(n)]))) == math.factorial(n)

    def test_deterministic_order(self):
        lins = linearisations(PriorityRelation(["b", "a", "c"]))
        assert [l.as_chain() for l in lins] == sorted(l.as_chain() for l in lins)

    def test_capacity(self):
        with pytest.raises(CapacityError) as err:
            linearisations(PriorityRelation([f"x{i}" for i in range(10)]))
        assert "9" in str(err.value)
        with pytest.raises(CapacityError):
            linearisations(PriorityRelation([f"x{i}" for i in range(8)]), max_count=100)

    @settings(max_examples=150)
    @given(orders)
    def test_every_output_is_a_total_extension(self, p):
        lins = linearisations(p)
        assert lins and len({tuple(l.as_chain()) for l in lins}) == len(lins)
        for l in lins:
            assert l.is_total() and l.is_strict_partial_order() and l.extends(p)


class TestPartialLinearisation:
    def test_empty_u(self):
        p = PriorityRelation("abc", [("a", "b")])
        assert partial_linearisation(p, [], []) == p

    def test_full_u(self):
        p = PriorityRelation("abc", [("a", "b")])
        assert partial_linearisation(p, "abc", "cab") == PriorityRelation.chain("cab")

    def test_nonlower_step(self):
        t, sp = four_args()
        u = ["r1", "r2", "r3", "r4"]
        out = partial_linearisation(sp, u, ["r3", "r1", "r2", "r4"])
        assert out.restrict(u) == PriorityRelation.chain(["r3", "r1", "r2", "r4"])
        assert out.extends(sp)
        assert list(out.as_chain()) == ["r6", "r5", "r3", "r1", "r2", "r4"]

    def test_conflict(self):
        p = PriorityRelation("ab", [("a", "b")])
        with pytest.raises(OrderConflictError) as err:
            partial_linearisation(p, "ab", "ba")
        assert set(err.value.cycle) == {"a", "b"}

    @settings(max_examples=150)
    @given(orders, st.integers(0, 10**9))
    def test_total_on_u_and_extends(self, p, seed):
        rng = random.Random(seed)
        u = [x for x in p.carrier if rng.random() < 0.6]
        u_lin = rng.choice(linearisations(p.restrict(u)))
        out = partial_linearisation(p, u, u_lin)
        assert out.is_strict_partial_order() and out.extends(p)
        assert out.restrict(u) == u_lin.restrict(u)


class TestMaxElements:
    def test_examples(self):
        assert max_elements(PriorityRelation.chain("abc"), "abc") == {"c"}
        assert max_elements(PriorityRelation("ab"), "ab") == {"a", "b"}
        assert max_elements(PriorityRelation(["r1", "r2", "r3"], [("r3", "r2")]), ["r1", "r3"]) == {"r1", "r3"}


class TestAllOrders:
    def test_counts(self):
        assert [len(all_strict_partial_orders(list(range(n)))) for n in range(6)] == [1, 1, 3, 19, 219, 4231]

    def test_orders_are_distinct_strict_partial_orders(self):
        orders = all_strict_partial_orders(list("abcd"))
        assert len({o.pairs for o in orders}) == len(orders)
        for o in orders:
            assert transitive_closure(o.pairs) == o.pairs and not any((b, a) in o.pairs for a, b in o.pairs)

    def test_cap(self):
        with pytest.raises(CapacityError):
            all_strict_partial_orders(list("abcdef"))
