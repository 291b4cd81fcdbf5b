import random

import pytest

from pdlarg import (AbstractAF, CapacityError, InputError, analyse, brute_force_extensions,
                    characteristic, complete_extensions, grounded, is_complete, is_conflict_free,
                    is_stable, lpdt_corpus, preferred_extensions, stable_extensions)
from pdlarg.generate import random_af_edges


def af(vertices, edges=()):
    return AbstractAF(list(vertices), list(edges))


def sets(*groups):
    return sorted(sorted(g) for g in groups)


def norm(exts):
    return sorted(sorted(e) for e in exts)


MUTUAL = af("ab", [("a", "b"), ("b", "a")])
CYCLE3 = af("abc", [("a", "b"), ("b", "c"), ("c", "a")])


class TestCharacteristic:
    def test_examples(self):
        assert characteristic(af("ab"), set()) == {"a", "b"}
        assert characteristic(af("ab", [("a", "b")]), set()) == {"a"}
        assert characteristic(MUTUAL, {"a"}) == {"a"}


class TestGrounded:
    def test_examples(self):
        assert grounded(af("abc")) == {"a", "b", "c"}
        assert grounded(MUTUAL) == set()
        assert grounded(af("abc", [("a", "b"), ("b", "c")])) == {"a", "c"}

    def test_equals_unique_stable_on_lpdt_graphs(self):
        for t in lpdt_corpus(60, seed=7):
            g = analyse(t).af
            assert stable_extensions(g) == [grounded(g)]


class TestExtensions:
    def test_mutual(self):
        assert norm(complete_extensions(MUTUAL)) == sets((), "a", "b")
        assert norm(stable_extensions(MUTUAL)) == sets("a", "b")
        assert norm(preferred_extensions(MUTUAL)) == sets("a", "b")

    def test_edgeless(self):
        g = af("a")
        assert complete_extensions(g) == stable_extensions(g) == preferred_extensions(g) == [{"a"}]

    def test_odd_cycle(self):
        assert stable_extensions(CYCLE3) == []
        assert complete_extensions(CYCLE3) == preferred_extensions(CYCLE3) == [set()]

    def test_self_attack(self):
        g = af("ab", [("a", "a"), ("a", "b")])
        assert stable_extensions(g) == [] and grounded(g) == set()
        assert not is_conflict_free(g, {"a"})

    def test_predicates(self):
        assert is_complete(MUTUAL, {"a"}) and is_stable(MUTUAL, {"b"}) and not is_stable(MUTUAL, set())

    def test_unknown_vertex(self):
        with pytest.raises(InputError):
            AbstractAF(["a"], [("a", "z")])

    def test_search_budget(self):
        vs = [f"v{i}" for i in range(24)]
        edges = [(vs[i], vs[i + 1]) for i in range(0, 24, 2)] + [(vs[i + 1], vs[i]) for i in range(0, 24, 2)]
        with pytest.raises(CapacityError):
            complete_extensions(af(vs, edges), max_nodes=100)


class TestAgainstBruteForce:
    @pytest.mark.parametrize("semantics", ["grounded", "complete", "preferred", "stable"])
    def test_random_graphs(self, semantics):
        solve = {"grounded": lambda g: [grounded(g)], "complete": complete_extensions,
                 "preferred": preferred_extensions, "stable": stable_extensions}[semantics]
        for seed in range(150):
            rng = random.Random(f"dung-{seed}")
            vs, edges = random_af_edges(rng, rng.randint(0, 10), rng.choice((0.1, 0.2, 0.35)))
            g = af(vs, edges)
            assert norm(solve(g)) == norm(brute_force_extensions(g, semantics))

    def test_inclusions(self):
        for seed in range(150):
            rng = random.Random(f"incl-{seed}")
            vs, edges = random_af_edges(rng, rng.randint(0, 12), rng.choice((0.1, 0.2, 0.35)))
            g = af(vs, edges)
            comp, pref, stab = complete_extensions(g), preferred_extensions(g), stable_extensions(g)
            ground = grounded(g)
            assert all(ground <= c for c in comp)
            assert all(s in pref for s in stab) and all(p in comp for p in pref)

    def test_stable_survives_added_edges_outside(self):
        for seed in range(150):
            rng = random.Random(f"span-{seed}")
            vs, edges = random_af_edges(rng, rng.randint(1, 10), 0.2)
            small = af(vs, edges)
            extra = [e for e in random_af_edges(rng, len(vs), 0.15)[1]]
            big = af(vs, set(edges) | set(extra))
            for s in stable_extensions(small):
                if is_conflict_free(big, s):
                    assert is_stable(big, s)
