"""Seeded random theories and orders for fuzzing."""

from __future__ import annotations

import random

from .logic import TOP, And, Atom, Formula, Iff, Implies, Not, Or, Vocabulary, contrary, is_consistent
from .theory import PDT, Default, PriorityRelation

__all__ = ["random_formula", "random_pdt", "random_order", "random_af_edges", "lpdt_corpus",
           "pdt_corpus"]


def random_formula(rng: random.Random, atoms: list[str], depth: int = 2) -> Formula:
    """Literal-heavy random formula of bounded depth."""
    if depth <= 0 or rng.random() < 0.55:
        lit = Atom(rng.choice(atoms))
        return Not(lit) if rng.random() < 0.45 else lit
    op = rng.choice((Not, And, Or, Implies, Iff, And, Or))
    if op is Not:
        return Not(random_formula(rng, atoms, depth - 1))
    return op(random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1))


def random_order(rng: random.Random, ids: list[str], density: float = 0.4,
                 total: bool = False) -> PriorityRelation:
    """A random strict partial order: a shuffled ranking thinned to ``density``."""
    perm = list(ids)
    rng.shuffle(perm)
    if total:
        return PriorityRelation.chain(perm)
    pairs = [(perm[i], perm[j]) for i in range(len(perm)) for j in range(i + 1, len(perm))
             if rng.random() < density]
    return PriorityRelation(ids, pairs)


def random_pdt(rng: random.Random, n_defaults: int, n_atoms: int, total: bool = False,
               density: float = 0.4, max_facts: int = 2, depth: int = 2) -> PDT:
    atoms = [f"p{i}" for i in range(n_atoms)]
    vocab = Vocabulary(atoms)
    while True:
        facts = [random_formula(rng, atoms, depth) for _ in range(rng.randint(0, max_facts))]
        if is_consistent(facts, vocab):
            break
    defaults = []
    for i in range(1, n_defaults + 1):
        roll = rng.random()
        if roll < 0.4:
            ante = TOP
        elif roll < 0.7 and defaults:
            # chain onto an earlier consequent so antecedents actually fire
            ante = rng.choice(defaults).consequent
        else:
            ante = random_formula(rng, atoms, depth - 1)
        if defaults and rng.random() < 0.3:
            # rebut an earlier default outright
            cons = contrary(rng.choice(defaults).consequent)
        else:
            cons = random_formula(rng, atoms, depth - 1 if rng.random() < 0.7 else depth)
        defaults.append(Default(f"d{i}", ante, cons))
    ids = [d.id for d in defaults]
    return PDT(tuple(facts), tuple(defaults), random_order(rng, ids, density, total), vocab)


def random_af_edges(rng: random.Random, n: int, p: float) -> tuple[list[str], list[tuple[str, str]]]:
    vs = [f"v{i}" for i in range(n)]
    return vs, [(a, b) for a in vs for b in vs if rng.random() < p]


def lpdt_corpus(count: int, seed: int = 0, max_defaults: int = 6, max_atoms: int = 6) -> list[PDT]:
    """Seeded theories with total priorities."""
    out = []
    for i in range(count):
        rng = random.Random(f"lpdt-{seed}-{i}")
        out.append(random_pdt(rng, rng.randint(0, max_defaults), rng.randint(1, max_atoms), total=True))
    return out


def pdt_corpus(count: int, seed: int = 0, max_defaults: int = 5, max_atoms: int = 5) -> list[PDT]:
    """Seeded theories with sparse partial priorities, where several extensions are common."""
    out = []
    for i in range(count):
        rng = random.Random(f"pdt-{seed}-{i}")
        out.append(random_pdt(rng, rng.randint(min(2, max_defaults), max_defaults),
                              rng.randint(1, max_atoms), density=rng.choice((0.0, 0.15, 0.3, 0.5))))
    return out
