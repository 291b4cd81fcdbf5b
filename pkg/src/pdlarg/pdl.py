"""Extensions of prioritised default theories, computed directly.

An extension is carried as a finite generator set (the facts plus the
consequents applied so far) together with the order in which defaults fired;
membership in the deductively closed set is a call to the entailment oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .logic import Formula, Not, Vocabulary
from .theory import PDT, Default, PriorityRelation, linearisations, MAX_LINEARISATIONS

__all__ = [
    "Extension", "is_active", "is_semi_active", "compute_extension",
    "generating_defaults", "semi_active_defaults", "nbd", "all_extensions",
    "sceptical_inference",
]


@dataclass(frozen=True)
class Extension:
    generators: tuple[Formula, ...]
    trace: tuple[str, ...]
    vocabulary: Vocabulary

    @property
    def models(self) -> int:
        return self.vocabulary.models_of_set(self.generators)

    def entails(self, phi: Formula) -> bool:
        return self.models & ~self.vocabulary.models(phi) == 0

    def is_consistent(self) -> bool:
        return self.models != 0

    def equivalent(self, other: "Extension | Iterable[Formula]") -> bool:
        """Same deductive closure as another extension or a formula collection."""
        if isinstance(other, Extension):
            return self.models == other.models
        return self.models == self.vocabulary.models_of_set(other)

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        return f"Th({{{gens}}}) via [{', '.join(self.trace)}]"


def _status(d: Default, models: int, vocab: Vocabulary) -> tuple[bool, bool, bool]:
    """(antecedent entailed, consequent entailed, negated consequent entailed)."""
    cons = vocab.models(d.consequent)
    return (models & ~vocab.models(d.antecedent) == 0,
            models & ~cons == 0,
            models & cons == 0)


def is_active(d: Default, e: Extension) -> bool:
    ante, cons, neg = _status(d, e.models, e.vocabulary)
    return ante and not cons and not neg


def is_semi_active(d: Default, e: Extension) -> bool:
    ante, cons, neg = _status(d, e.models, e.vocabulary)
    return ante and cons and not neg


def compute_extension(t: PDT, lin: PriorityRelation) -> Extension:
    """Fire the ``lin``-greatest active default until none is active."""
    vocab = t.vocabulary
    ranked = [t.default(i) for i in reversed(lin.as_chain())]
    generators = list(t.facts)
    trace: list[str] = []
    models = vocab.models_of_set(generators)
    while True:
        for d in ranked:
            ante, cons, neg = _status(d, models, vocab)
            if ante and not cons and not neg:
                generators.append(d.consequent)
                trace.append(d.id)
                models &= vocab.models(d.consequent)
                break
        else:
            return Extension(tuple(generators), tuple(trace), vocab)


def generating_defaults(e: Extension) -> frozenset[str]:
    return frozenset(e.trace)


def semi_active_defaults(t: PDT, e: Extension) -> frozenset[str]:
    return frozenset(d.id for d in t.defaults if is_semi_active(d, e))


def nbd(t: PDT, e: Extension) -> frozenset[str]:
    """Defaults whose antecedent holds in ``e`` and whose consequent is not refuted."""
    return frozenset(d.id for d in t.defaults
                     if e.entails(d.antecedent) and not e.entails(Not(d.consequent)))


def all_extensions(t: PDT, max_linearisations: int = MAX_LINEARISATIONS) -> list[Extension]:
    """One extension per logical-equivalence class, in linearisation order."""
    seen: set[int] = set()
    out = []
    for lin in linearisations(t.priority, max_count=max_linearisations):
        e = compute_extension(t, lin)
        if e.models not in seen:
            seen.add(e.models)
            out.append(e)
    return out


def sceptical_inference(t: PDT, phi: Formula, max_linearisations: int = MAX_LINEARISATIONS) -> bool:
    return all(e.entails(phi) for e in all_extensions(t, max_linearisations))
