import random

import pytest

from pdlarg import (PDT, CapacityError, PriorityRelation, analyse, args_restricted, attacks,
                    build_store, defeats, entails, generate_stable_extension, has_attack_pair,
                    parse_formula, stable_extensions)
from pdlarg.generate import random_pdt

from theories import BLOCKED, CHAIN5, PENGUIN, four_args, load

P = parse_formula


def pick(store, conclusion, dr=None):
    found = [a for a in store.find(P(conclusion)) if dr is None or a.dr == set(dr)]
    assert len(found) == 1, (conclusion, dr, found)
    return found[0]


def fuzz(count, total):
    for seed in range(count):
        rng = random.Random(f"args-{seed}")
        yield random_pdt(rng, rng.randint(0, 5), rng.randint(1, 5), total=total)


class TestStore:
    def test_penguin(self):
        store = build_store(load(PENGUIN))
        a0, a, b = pick(store, "a"), pick(store, "b"), pick(store, "~b")
        assert a0.dr == {"r1"} and a.dr == {"r1", "r2"} and b.dr == {"r3"}
        assert a.children == (a0,)
        assert len(store) == 3

    def test_chain5(self):
        store = build_store(load(CHAIN5))
        pick(store, "c2", {"r1", "r2"})
        b = pick(store, "c4", {"r3", "r4"})
        c = pick(store, "~(c2 & c4)", {"r1", "r5"})
        d = pick(store, "~c2", {"r1", "r3", "r4", "r5"})
        assert d.kind == "strict" and set(d.children) == {b, c}

    def test_facts_only(self):
        t = PDT((P("a"),), ())
        store = build_store(t)
        assert [x.kind for x in store] == ["axiom"] and {x.id for x in store.strict_arguments()} == set(store.arguments)

    def test_invariants(self):
        for t in fuzz(200, total=False):
            store = build_store(t)
            for x in store:
                assert set(x.subarguments()) <= set(store.arguments)
                if x.kind == "axiom":
                    assert x.conclusion in t.facts and not x.dr and not x.children
                elif x.kind == "defeasible":
                    d = t.default(x.top_rule)
                    assert x.conclusion == d.consequent
                    assert x.dr == frozenset().union(*(c.dr for c in x.children)) | {d.id}
                    assert [c.conclusion for c in x.children] == ([] if d.antecedent == P("true") else [d.antecedent])
                else:
                    assert x.top_rule is None
                    assert entails([c.conclusion for c in x.children], x.conclusion, t.vocabulary)
                    assert x.dr == frozenset().union(*(c.dr for c in x.children))

    def test_capacity(self):
        with pytest.raises(CapacityError):
            build_store(load(CHAIN5), max_arguments=3)


class TestArgsRestricted:
    def test_penguin(self):
        store = build_store(load(PENGUIN))
        assert args_restricted(store, {"r1", "r2", "r3"}) == set(store.arguments)
        assert args_restricted(store, set()) == set() and store.strict_arguments() == []
        assert args_restricted(store, {"r1", "r2"}) == {pick(store, "a").id, pick(store, "b").id}


class TestAttackDefeat:
    def test_penguin_mutual(self):
        t = load(PENGUIN)
        a = analyse(t)
        x, y = pick(a.store, "b"), pick(a.store, "~b")
        assert attacks(x, y) and attacks(y, x)
        assert a.sp.pairs == {("r2", "r1")}
        assert defeats(x, y, a.sp) and defeats(y, x, a.sp)
        a0 = pick(a.store, "a")
        assert a.graph.defeats == {(x.id, y.id), (y.id, x.id)}
        assert not any(tgt == a0.id for _, tgt in a.graph.defeats)

    def test_chain5(self):
        a = analyse(load(CHAIN5))
        weak, strong = pick(a.store, "c2"), pick(a.store, "~c2", {"r1", "r3", "r4", "r5"})
        assert attacks(strong, weak) and defeats(strong, weak, a.sp)
        assert not defeats(weak, strong, a.sp)

    def test_strict_attacker_always_defeats(self):
        a = analyse(load(BLOCKED))
        fact, step = pick(a.store, "a"), pick(a.store, "~a")
        assert fact.kind == "axiom" and defeats(fact, step, a.sp)
        assert a.sp == PriorityRelation.chain(["r2", "r1"])

    def test_nothing_attacks_an_axiom(self):
        a = analyse(load(BLOCKED))
        fact = pick(a.store, "a")
        assert not any(attacks(x, fact) for x in a.store)

    def test_four_args_chain(self):
        t, sp = four_args()
        a = analyse(t, sp=sp)
        A, B = pick(a.store, "~b", {"r1"}), pick(a.store, "b", {"r2", "r3"})
        C, D = pick(a.store, "~b", {"r4", "r5"}), pick(a.store, "b", {"r6"})
        assert a.graph.defeats == {(A.id, B.id), (B.id, C.id), (C.id, D.id), (A.id, D.id)}

    def test_no_rules_no_edges(self):
        a = analyse(PDT((P("a"),), ()))
        assert not a.graph.attacks and not a.graph.defeats

    def test_graph_invariants(self):
        for t in fuzz(150, total=False):
            a = analyse(t)
            assert a.graph.defeats <= a.graph.attacks
            for x, y in a.graph.defeats:
                for z in a.store:
                    if y in z.subarguments():
                        assert (x, z.id) in a.graph.defeats


class TestGenerator:
    def test_examples(self):
        a = analyse(load(BLOCKED))
        kept = generate_stable_extension(a.store, a.sp)
        assert kept == {"r2"}
        assert args_restricted(a.store, kept) == {pick(a.store, "a").id, pick(a.store, "b").id}
        a = analyse(load(CHAIN5))
        assert generate_stable_extension(a.store, a.sp) == {"r1", "r3", "r4", "r5"}
        a = analyse(PDT((P("a"),), ()))
        assert generate_stable_extension(a.store, a.sp) == set()

    def test_kept_set_is_conflict_free_and_consistent(self):
        for t in fuzz(200, total=True):
            a = analyse(t)
            kept = args_restricted(a.store, generate_stable_extension(a.store, a.sp))
            assert not has_attack_pair(a.store, kept)
            assert t.vocabulary.models_of_set(a.store.conclusions(kept))

    def test_membership_follows_rules(self):
        for t in fuzz(200, total=True):
            a = analyse(t)
            for ext in stable_extensions(a.af):
                rules = frozenset().union(*(a.store[i].dr for i in ext)) if ext else frozenset()
                assert ext == args_restricted(a.store, rules)
                assert all(a.store[i].is_consistent() for i in ext)
