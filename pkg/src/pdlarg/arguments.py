"""Arguments, attacks and defeats for the argumentative reading of a PDT.

Every default becomes a defeasible rule with the same id. Strict reasoning is
classical consequence, so a strict step is a single oracle-checked inference
from a minimal set of child conclusions. The construction is confined to a
finite target set of conclusions: rule antecedents, rule consequents and their
contraries, the facts, and anything supplied by the caller.

Stored arguments are canonical up to their top rule, defeasible rule set and
conclusion. A strict candidate is dropped when an argument with the same
conclusion and no more defeasible rules is already stored; such an argument
attacks and defeats at least as much and belongs to every ``Args(R)`` the
candidate belongs to.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable

from .errors import CapacityError
from .logic import TOP, Formula, Vocabulary, contrary
from .sp import deli_less
from .theory import PDT, PriorityRelation

__all__ = [
    "Argument", "ArgumentStore", "DefeatGraph", "build_store", "args_restricted",
    "attacks", "defeats", "build_defeat_graph", "generate_stable_extension",
    "has_attack_pair", "MAX_ARGUMENTS", "MAX_STRICT_CHILDREN",
]

MAX_ARGUMENTS = 20_000
MAX_STRICT_CHILDREN = 4

AXIOM, DEFEASIBLE, STRICT = "axiom", "defeasible", "strict"


@dataclass(frozen=True, eq=False)
class Argument:
    kind: str
    conclusion: Formula
    top_rule: str | None
    children: tuple["Argument", ...]
    dr: frozenset[str]
    premises: frozenset[Formula]
    id: str
    # models of every sub-argument conclusion taken together
    closure_models: int = field(repr=False)
    # (rule, sub-argument) for each defeasible-topped sub-argument
    defeasible_subs: tuple[tuple[str, "Argument"], ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, Argument) and self.id == other.id

    def __hash__(self):
        return hash(self.id)

    @property
    def is_strict(self) -> bool:
        return not self.dr

    def subarguments(self) -> dict[str, "Argument"]:
        out = {self.id: self}
        for c in self.children:
            out.update(c.subarguments())
        return out

    def is_consistent(self) -> bool:
        return self.closure_models != 0

    def render(self) -> str:
        if self.kind == AXIOM:
            return f"[{self.conclusion}]"
        inner = ", ".join(c.render() for c in self.children)
        arrow = "=>" if self.kind == DEFEASIBLE else "->"
        label = f"{arrow}{self.top_rule}" if self.top_rule else arrow
        return f"[{inner}{' ' if inner else ''}{label} {self.conclusion}]"

    def __str__(self):
        return self.render()


def _make(kind, conclusion, top_rule, children, vocab: Vocabulary, rule_cons=None) -> Argument:
    children = tuple(sorted(children, key=lambda c: c.id))
    dr = frozenset().union(*(c.dr for c in children)) if children else frozenset()
    premises = frozenset().union(*(c.premises for c in children)) if children else frozenset()
    models = vocab.models(conclusion)
    for c in children:
        models &= c.closure_models
    subs: dict[tuple[str, str], tuple[str, Argument]] = {}
    for c in children:
        for rule, sub in c.defeasible_subs:
            subs[(rule, sub.id)] = (rule, sub)
    if kind == AXIOM:
        premises = frozenset([conclusion])
    digest = hashlib.sha1(
        f"{kind}|{top_rule}|{conclusion}|{','.join(c.id for c in children)}".encode()).hexdigest()[:10]
    arg_id = f"{kind[0]}{digest}"
    if kind == DEFEASIBLE:
        dr = dr | {top_rule}
    arg = Argument(kind, conclusion, top_rule, children, dr, premises, arg_id, models, ())
    if kind == DEFEASIBLE:
        subs[(top_rule, arg_id)] = (top_rule, arg)
    object.__setattr__(arg, "defeasible_subs", tuple(subs[k] for k in sorted(subs)))
    return arg


class ArgumentStore:
    """Finite, subargument-closed family of canonical arguments for a PDT."""

    def __init__(self, theory: PDT, targets: tuple[Formula, ...]):
        self.theory = theory
        self.vocabulary = theory.vocabulary
        self.targets = targets
        self.arguments: dict[str, Argument] = {}
        self._keys: dict[tuple, str] = {}
        self.by_conclusion: dict[Formula, list[Argument]] = {}
        self.diagnostics = {"strict_child_cap_hits": 0, "pruned_dominated": 0}

    def __len__(self):
        return len(self.arguments)

    def __iter__(self):
        return iter(self.arguments.values())

    def __getitem__(self, arg_id: str) -> Argument:
        return self.arguments[arg_id]

    def _add(self, arg: Argument) -> bool:
        key = (arg.top_rule, arg.dr, arg.conclusion)
        if key in self._keys:
            return False
        self._keys[key] = arg.id
        self.arguments[arg.id] = arg
        self.by_conclusion.setdefault(arg.conclusion, []).append(arg)
        return True

    def _dominated(self, conclusion: Formula, dr: frozenset[str]) -> bool:
        return any(a.dr <= dr for a in self.by_conclusion.get(conclusion, ()))

    def find(self, conclusion: Formula, dr: Iterable[str] | None = None,
             top_rule: str | None = "*") -> list[Argument]:
        """Stored arguments with the given conclusion, optionally filtered by DR and top rule."""
        out = self.by_conclusion.get(conclusion, [])
        if dr is not None:
            dr = frozenset(dr)
            out = [a for a in out if a.dr == dr]
        if top_rule != "*":
            out = [a for a in out if a.top_rule == top_rule]
        return list(out)

    def strict_arguments(self) -> list[Argument]:
        return [a for a in self if not a.dr]

    def conclusions(self, ids: Iterable[str]) -> set[Formula]:
        return {self.arguments[i].conclusion for i in ids}


def build_store(t: PDT, extra_targets: Iterable[Formula] = (), max_arguments: int = MAX_ARGUMENTS,
                max_children: int = MAX_STRICT_CHILDREN) -> ArgumentStore:
    """Close the facts under defeasible rules and minimal strict steps, up to the target set."""
    vocab = t.vocabulary
    targets = dict.fromkeys(t.targets())
    for f in extra_targets:
        vocab.check(f)
        targets[f] = None
    store = ArgumentStore(t, tuple(targets))
    target_models = {f: vocab.models(f) for f in store.targets}

    def admit(arg):
        if store._add(arg) and len(store) > max_arguments:
            raise CapacityError(f"argument store exceeds max_arguments={max_arguments}",
                                "max_arguments", max_arguments)

    for f in t.facts:
        admit(_make(AXIOM, f, None, (), vocab))
    for phi, m in target_models.items():
        if m == vocab.full and not store.by_conclusion.get(phi):
            admit(_make(STRICT, phi, None, (), vocab))

    tried_strict: set[tuple] = set()
    minimal_cache: dict[tuple, list[tuple[Formula, ...]]] = {}
    while True:
        before = len(store)
        # defeasible steps; never pruned
        for d in t.defaults:
            if d.antecedent == TOP:
                admit(_make(DEFEASIBLE, d.consequent, d.id, (), vocab))
                continue
            for child in list(store.by_conclusion.get(d.antecedent, ())):
                admit(_make(DEFEASIBLE, d.consequent, d.id, (child,), vocab))
        # strict steps over axiom and defeasible children
        base: dict[Formula, list[Argument]] = {}
        for a in store:
            if a.kind != STRICT and a.closure_models:
                base.setdefault(a.conclusion, []).append(a)
        concs = tuple(sorted(base, key=str))
        for phi, m_phi in target_models.items():
            key = (phi, concs)
            if key not in minimal_cache:
                minimal_cache[key] = _minimal_supports(phi, m_phi, concs, vocab, max_children, store)
            for support in minimal_cache[key]:
                for children in product(*(base[c] for c in support)):
                    sig = (phi, tuple(sorted(c.id for c in children)))
                    if sig in tried_strict:
                        continue
                    tried_strict.add(sig)
                    joint = vocab.full
                    for c in children:
                        joint &= c.closure_models
                    if not joint:
                        continue
                    dr = frozenset().union(*(c.dr for c in children))
                    if store._dominated(phi, dr):
                        store.diagnostics["pruned_dominated"] += 1
                        continue
                    admit(_make(STRICT, phi, None, children, vocab))
        if len(store) == before:
            return store


def _minimal_supports(phi, m_phi, concs, vocab, max_children, store) -> list[tuple[Formula, ...]]:
    """Inclusion-minimal sets of available conclusions entailing ``phi``, smallest first."""
    if m_phi == vocab.full:
        return []
    masks = {c: vocab.models(c) for c in concs}
    found: list[frozenset] = []
    out = []
    for k in range(1, min(max_children, len(concs)) + 1):
        for combo in combinations(concs, k):
            if k == 1 and combo[0] == phi:
                found.append(frozenset(combo))
                continue
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            m = vocab.full
            for c in combo:
                m &= masks[c]
            if m & ~m_phi == 0:
                found.append(s)
                out.append(combo)
    if len(concs) > max_children:
        m = vocab.full
        for c in concs:
            m &= masks[c]
        if m & ~m_phi == 0 and not found:
            store.diagnostics["strict_child_cap_hits"] += 1
    return out


def args_restricted(store: ArgumentStore, r: Iterable[str]) -> frozenset[str]:
    r = frozenset(r)
    return frozenset(a.id for a in store if a.dr <= r)


def attacks(a: Argument, b: Argument) -> bool:
    """Rebuttal of some defeasible step of ``b`` on its consequent."""
    return any(a.conclusion == contrary(sub.conclusion) for _, sub in b.defeasible_subs)


def _defeated_sub(a: Argument, b: Argument, sp: PriorityRelation) -> Argument | None:
    for _, sub in b.defeasible_subs:
        if a.conclusion == contrary(sub.conclusion) and not deli_less(a.dr, sub.dr, sp):
            return sub
    return None


def defeats(a: Argument, b: Argument, sp: PriorityRelation) -> bool:
    return _defeated_sub(a, b, sp) is not None


@dataclass(frozen=True)
class DefeatGraph:
    vertices: tuple[str, ...]
    attacks: frozenset[tuple[str, str]]
    defeats: frozenset[tuple[str, str]]
    # (attacker, target) -> id of the sub-argument the defeat lands on
    defeat_sites: dict = field(compare=False, repr=False)

    def defeaters(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.defeats:
            out[b].add(a)
        return out


def build_defeat_graph(store: ArgumentStore, sp: PriorityRelation) -> DefeatGraph:
    by_contrary: dict[Formula, list[Argument]] = {}
    for a in store:
        by_contrary.setdefault(a.conclusion, []).append(a)
    att, dfe, sites = set(), set(), {}
    for b in store:
        for _, sub in b.defeasible_subs:
            for a in by_contrary.get(contrary(sub.conclusion), ()):
                att.add((a.id, b.id))
                if (a.id, b.id) not in sites and not deli_less(a.dr, sub.dr, sp):
                    dfe.add((a.id, b.id))
                    sites[(a.id, b.id)] = sub.id
    return DefeatGraph(tuple(sorted(store.arguments)), frozenset(att), frozenset(dfe), sites)


def has_attack_pair(store: ArgumentStore, ids: Iterable[str]) -> bool:
    args = [store[i] for i in ids]
    concs = {a.conclusion for a in args}
    return any(contrary(sub.conclusion) in concs for a in args for _, sub in a.defeasible_subs)


def generate_stable_extension(store: ArgumentStore, sp_total: PriorityRelation) -> frozenset[str]:
    """Keep rules from most to least preferred while the arguments they admit stay attack-free."""
    kept: frozenset[str] = frozenset()
    for r in reversed(sp_total.as_chain()):
        trial = kept | {r}
        if not has_attack_pair(store, args_restricted(store, trial)):
            kept = trial
    return kept
