"""The structure-preference order and the disjoint elitist set comparison.

A rule sequence lists rule ids least preferred first. Rule tables map an id
to a :class:`~pdlarg.theory.Default`; a rule is applicable to a set of
already chosen rules when the facts and the chosen consequents entail its
antecedent.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError
from .logic import TOP, Formula, Vocabulary
from .theory import Default, PriorityRelation, max_elements

__all__ = [
    "sp_total", "sp_structure1", "sp_structure2", "sp_partial", "stranded_rules",
    "deli_less", "arg_strictly_preferred", "compact_order", "parse_compact_order",
]

RuleTable = Mapping[str, Default]


class _Applicability:
    def __init__(self, rules: RuleTable, facts: Iterable[Formula], vocabulary: Vocabulary | None,
                 store=None):
        self.store = store
        if store is not None:
            self.witnesses = {i: [a.dr for a in store.find(d.antecedent)] for i, d in rules.items()
                              if d.antecedent != TOP}
            self.free = {i for i, d in rules.items() if d.antecedent == TOP}
            return
        facts = tuple(facts)
        if vocabulary is None:
            forms = list(facts)
            for d in rules.values():
                forms += [d.antecedent, d.consequent]
            vocabulary = Vocabulary.of(forms)
        self.vocab = vocabulary
        self.base = vocabulary.models_of_set(facts)
        self.ante = {i: vocabulary.models(d.antecedent) for i, d in rules.items()}
        self.cons = {i: vocabulary.models(d.consequent) for i, d in rules.items()}

    def applicable(self, chosen: Iterable[str]) -> set[str]:
        if self.store is not None:
            chosen = frozenset(chosen)
            return self.free | {i for i, drs in self.witnesses.items() if any(dr <= chosen for dr in drs)}
        m = self.base
        for c in chosen:
            m &= self.cons[c]
        return {i for i, a in self.ante.items() if m & ~a == 0}


def stranded_rules(rules: RuleTable, facts: Iterable[Formula] = (),
                   vocabulary: Vocabulary | None = None, store=None) -> frozenset[str]:
    """Rules whose antecedent never follows, however many other rules are chosen."""
    app = _Applicability(rules, facts, vocabulary, store)
    reached: set[str] = set()
    while True:
        grow = app.applicable(reached) - reached
        if not grow:
            return frozenset(rules) - reached
        reached |= grow


def sp_total(rules: RuleTable, d_order: PriorityRelation, facts: Iterable[Formula] = (),
             vocabulary: Vocabulary | None = None, store=None) -> PriorityRelation:
    """Reorder a total rule priority by the order in which rules become applicable.

    Rules that never become applicable sit below every placed rule, keeping
    their relative priority.
    """
    app = _Applicability(rules, facts, vocabulary, store)
    ranked = list(reversed(d_order.as_chain()))
    picked: list[str] = []
    while len(picked) < len(ranked):
        ready = app.applicable(picked)
        nxt = next((r for r in ranked if r in ready and r not in picked), None)
        if nxt is None:
            break
        picked.append(nxt)
    stranded = [r for r in ranked if r not in picked]
    return PriorityRelation.chain(list(reversed(picked + stranded)))


def sp_structure1(rules: RuleTable, d_order: PriorityRelation, facts: Iterable[Formula] = (),
                  vocabulary: Vocabulary | None = None, store=None) -> set[tuple[str, ...]]:
    """All least-first sequences of greatest applicable choices.

    Level ``i`` holds sequences of length ``i``; the search returns the first
    level containing a sequence with nothing left to choose.
    """
    app = _Applicability(rules, facts, vocabulary, store)
    level: set[tuple[str, ...]] = {()}
    for _ in range(len(rules) + 1):
        nxt: set[tuple[str, ...]] = set()
        for lam in sorted(level):
            chosen = set(lam)
            options = max_elements(d_order, app.applicable(chosen) - chosen)
            if not options:
                return level
            for t in sorted(options):
                nxt.add((t,) + lam)
        level = nxt
    return level


def _chain_pairs(seq: Sequence[str]) -> set[tuple[str, str]]:
    return {(seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq))}


def sp_structure2(seqs: Iterable[Sequence[str]]) -> PriorityRelation:
    """Intersect the total orders read off each sequence."""
    seqs = [tuple(s) for s in seqs]
    if not seqs:
        raise InputError("no sequences to intersect")
    ids = set(seqs[0])
    for s in seqs:
        if set(s) != ids or len(s) != len(ids):
            raise InputError(f"sequences range over different ids: {list(seqs[0])} vs {list(s)}")
    pairs = _chain_pairs(seqs[0])
    for s in seqs[1:]:
        pairs &= _chain_pairs(s)
    return PriorityRelation(sorted(ids), pairs)


def sp_partial(rules: RuleTable, d_order: PriorityRelation, facts: Iterable[Formula] = (),
               vocabulary: Vocabulary | None = None, store=None) -> PriorityRelation:
    """The structure preference of a possibly partial rule priority.

    Stranded rules are placed below the rest and ordered among themselves as
    ``d_order`` orders them, which is what intersecting every completion of
    each sequence by a linearisation of the stranded block yields.
    """
    seqs = sp_structure1(rules, d_order, facts, vocabulary, store)
    core = sp_structure2(seqs)
    placed = set(core.carrier)
    stranded = [r for r in rules if r not in placed]
    pairs = set(core.pairs)
    pairs |= {(a, b) for a, b in d_order.pairs if a in stranded and b in stranded}
    pairs |= {(s, p) for s in stranded for p in placed}
    return PriorityRelation(list(rules), pairs)


def deli_less(g1: Iterable[str], g2: Iterable[str], order: PriorityRelation) -> bool:
    """Disjoint elitist comparison: some exclusive member of ``g1`` sits below every exclusive member of ``g2``."""
    g1, g2 = set(g1), set(g2)
    only2 = g2 - g1
    return any(all((x, y) in order.pairs for y in only2) for x in g1 - g2)


def arg_strictly_preferred(a, b, sp: PriorityRelation) -> bool:
    """``a`` is strictly less preferred than ``b``."""
    return deli_less(a.dr, b.dr, sp)


# ------------------------------------------------------------ compact notation

def _default_label(ident: str) -> str:
    m = re.search(r"(\d+)\Z", ident)
    return m.group(1) if m else ident


def compact_order(p: PriorityRelation, label: Callable[[str], str] = _default_label) -> str:
    """Digit-string notation: ``321`` is the chain r3<r2<r1, ``(12,32)`` a pair set, ``∅`` empty."""
    if not p.pairs:
        return "∅"
    if len(p.pairs) == 1 or p.is_total():
        chain = p.restrict({x for pair in p.pairs for x in pair}).as_chain()
        return "".join(label(x) for x in chain)
    return "(" + ",".join(label(a) + label(b) for a, b in sorted(p.pairs)) + ")"


def parse_compact_order(text: str, carrier: Sequence[str], prefix: str = "r") -> PriorityRelation:
    """Inverse of :func:`compact_order` for single-digit labels."""
    text = text.strip()
    if text in ("∅", ""):
        return PriorityRelation(carrier)
    if text.startswith("("):
        parts = text.strip("()").split(",")
        return PriorityRelation(carrier, [(prefix + s[0], prefix + s[1]) for s in parts])
    return PriorityRelation(carrier, _chain_pairs([prefix + c for c in text]))
