"""Normal defaults, prioritised default theories and strict partial orders."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, OrderConflictError
from .logic import TOP, Formula, Vocabulary, contrary, is_consistent

__all__ = [
    "Default", "PriorityRelation", "PDT", "Violation", "validate_pdt",
    "linearisations", "partial_linearisation", "max_elements",
    "all_strict_partial_orders", "transitive_closure",
    "MAX_LINEARISATION_ELEMENTS", "MAX_LINEARISATIONS", "MAX_ENUMERATED_ORDER",
]

MAX_LINEARISATION_ELEMENTS = 9
MAX_LINEARISATIONS = 100_000
MAX_ENUMERATED_ORDER = 5


@dataclass(frozen=True)
class Default:
    """A closed normal default ``antecedent : consequent / consequent``."""

    id: str
    antecedent: Formula
    consequent: Formula

    @property
    def prerequisite_free(self) -> bool:
        return self.antecedent == TOP

    def __str__(self):
        return f"{self.id}: {self.antecedent} => {self.consequent}"


def transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closed = set()
    for start in succ:
        stack = list(succ[start])
        seen: set[str] = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(succ.get(x, ()))
        closed.update((start, y) for y in seen)
    return frozenset(closed)


class PriorityRelation:
    """A relation ``x < y`` (``y`` preferred) over an ordered carrier, kept transitively closed.

    Construction never fails, so malformed input can be reported by
    :func:`validate_pdt`; ``cycle_witness`` and ``dangling`` expose the faults.
    """

    __slots__ = ("carrier", "pairs", "generators", "_hash")

    def __init__(self, carrier: Iterable[str], pairs: Iterable[tuple[str, str]] = ()):
        self.carrier: tuple[str, ...] = tuple(dict.fromkeys(carrier))
        self.generators = frozenset((a, b) for a, b in pairs)
        self.pairs = transitive_closure(self.generators)
        self._hash = None

    @classmethod
    def chain(cls, ids: Sequence[str]) -> "PriorityRelation":
        """Total order from a least-first sequence."""
        return cls(ids, [(ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))])

    def __eq__(self, other):
        return (isinstance(other, PriorityRelation)
                and set(self.carrier) == set(other.carrier) and self.pairs == other.pairs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.carrier), self.pairs))
        return self._hash

    def __repr__(self):
        if self.is_total():
            return f"PriorityRelation.chain({list(self.as_chain())!r})"
        return f"PriorityRelation({list(self.carrier)!r}, {sorted(self.pairs)!r})"

    def __contains__(self, pair):
        return pair in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def less(self, x: str, y: str) -> bool:
        return (x, y) in self.pairs

    def cycle_witness(self) -> tuple[str, ...]:
        """A cycle ``x0 < x1 < ... < x0`` in the generating pairs, or ``()``."""
        if not any(a == b for a, b in self.pairs):
            return ()
        succ: dict[str, list[str]] = {}
        for a, b in sorted(self.generators):
            succ.setdefault(a, []).append(b)
        start = min(a for a, b in self.pairs if a == b)
        # BFS for the shortest path back to start
        parent = {start: None}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for y in succ.get(x, ()):
                    if y == start:
                        path = [x]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        return tuple(reversed(path)) + (start,)
                    if y not in parent:
                        parent[y] = x
                        nxt.append(y)
            frontier = nxt
        return (start, start)

    def dangling(self) -> frozenset[str]:
        carrier = set(self.carrier)
        return frozenset(x for pair in self.generators for x in pair if x not in carrier)

    def is_strict_partial_order(self) -> bool:
        return not self.cycle_witness() and not self.dangling()

    def is_total(self) -> bool:
        if not self.is_strict_partial_order():
            return False
        return all((a, b) in self.pairs or (b, a) in self.pairs
                   for a, b in combinations(self.carrier, 2))

    def as_chain(self) -> tuple[str, ...]:
        """Least-first listing of a total order."""
        if not self.is_total():
            raise OrderConflictError("relation is not a strict total order")
        below = {x: 0 for x in self.carrier}
        for a, b in self.pairs:
            below[b] += 1
        return tuple(sorted(self.carrier, key=below.__getitem__))

    def restrict(self, u: Iterable[str]) -> "PriorityRelation":
        u = set(u)
        return PriorityRelation([x for x in self.carrier if x in u],
                                [(a, b) for a, b in self.pairs if a in u and b in u])

    def extends(self, other: "PriorityRelation") -> bool:
        return other.pairs <= self.pairs

    def intersection(self, other: "PriorityRelation") -> "PriorityRelation":
        return PriorityRelation(self.carrier, self.pairs & other.pairs)

    def relabel(self, mapping: dict[str, str]) -> "PriorityRelation":
        return PriorityRelation([mapping[x] for x in self.carrier],
                                [(mapping[a], mapping[b]) for a, b in self.pairs])


def _require_order(p: PriorityRelation) -> None:
    witness = p.cycle_witness()
    if witness:
        raise OrderConflictError(f"priority has a cycle: {' < '.join(witness)}", witness)
    if p.dangling():
        raise OrderConflictError(f"priority mentions unknown ids {sorted(p.dangling())}")


def _topological_sorts(carrier: Sequence[str], pairs) -> Iterator[tuple[str, ...]]:
    below: dict[str, set[str]] = {x: set() for x in carrier}
    for a, b in pairs:
        below[b].add(a)
    placed: list[str] = []
    remaining = set(carrier)

    def rec():
        if not remaining:
            yield tuple(placed)
            return
        for x in sorted(remaining):
            if below[x] & remaining:
                continue
            remaining.remove(x)
            placed.append(x)
            yield from rec()
            placed.pop()
            remaining.add(x)

    yield from rec()


def linearisations(p: PriorityRelation, max_elements: int = MAX_LINEARISATION_ELEMENTS,
                   max_count: int = MAX_LINEARISATIONS) -> list[PriorityRelation]:
    """All strict total orders on the carrier that contain ``p``.

    Enumeration is deterministic: the least element is fixed first and ties
    between available elements go to the smaller id.
    """
    _require_order(p)
    if len(p.carrier) > max_elements:
        raise CapacityError(
            f"linearisation cap exceeded: {len(p.carrier)} elements > max_elements={max_elements}",
            "max_elements", max_elements)
    out = []
    for seq in _topological_sorts(p.carrier, p.pairs):
        if len(out) >= max_count:
            raise CapacityError(
                f"linearisation cap exceeded: more than max_linearisations={max_count}",
                "max_linearisations", max_count)
        out.append(PriorityRelation.chain(seq))
    return out


def partial_linearisation(p: PriorityRelation, u: Iterable[str],
                          u_lin: "PriorityRelation | Sequence[str]") -> PriorityRelation:
    """``TrCl(u_lin ∪ p)``; ``u_lin`` is a total order on ``u`` or a least-first sequence."""
    u = set(u)
    if not isinstance(u_lin, PriorityRelation):
        u_lin = PriorityRelation.chain(list(u_lin))
    if set(u_lin.carrier) != u:
        raise OrderConflictError("u_lin must be a total order on exactly u")
    if u and not u_lin.is_total():
        raise OrderConflictError("u_lin is not total on u")
    merged = PriorityRelation(p.carrier, p.pairs | u_lin.pairs)
    witness = merged.cycle_witness()
    if witness:
        raise OrderConflictError(f"linearisation conflicts with order: {' < '.join(witness)}", witness)
    return merged


def max_elements(p: PriorityRelation, s: Iterable[str]) -> frozenset[str]:
    s = set(s)
    return frozenset(x for x in s if not any((x, y) in p.pairs for y in s))


def all_strict_partial_orders(carrier: Sequence[str]) -> list[PriorityRelation]:
    """Every strict partial order on a small carrier (19 on three elements, 4231 on five)."""
    if len(carrier) > MAX_ENUMERATED_ORDER:
        raise CapacityError(f"partial order enumeration limited to {MAX_ENUMERATED_ORDER} elements",
                            "carrier", MAX_ENUMERATED_ORDER)
    orders: list[frozenset] = [frozenset()]
    for k, x in enumerate(carrier):
        placed = list(carrier[:k])
        grown = []
        for pairs in orders:
            subsets = [frozenset(c) for n in range(k + 1) for c in combinations(placed, n)]
            downs = [s for s in subsets if all(a in s for a, b in pairs if b in s)]
            ups = [s for s in subsets if all(b in s for a, b in pairs if a in s)]
            for down in downs:
                for up in ups:
                    # everything below x must already sit below everything above it
                    if not down & up and all((d, u) in pairs for d in down for u in up):
                        grown.append(pairs | {(d, x) for d in down} | {(x, u) for u in up})
        orders = grown
    return [PriorityRelation(carrier, pairs) for pairs in orders]


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()

    def __str__(self):
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class PDT:
    """A finite prioritised default theory ``<D, W, <>`` with ``x < y`` meaning ``y`` is preferred."""

    facts: tuple[Formula, ...]
    defaults: tuple[Default, ...]
    priority: PriorityRelation = None
    vocabulary: Vocabulary = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "facts", tuple(self.facts))
        object.__setattr__(self, "defaults", tuple(self.defaults))
        if self.priority is None:
            object.__setattr__(self, "priority", PriorityRelation(self.ids))
        if self.vocabulary is None:
            forms = list(self.facts)
            for d in self.defaults:
                forms += [d.antecedent, d.consequent]
            object.__setattr__(self, "vocabulary", Vocabulary.of(forms))

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.defaults)

    def default(self, ident: str) -> Default:
        for d in self.defaults:
            if d.id == ident:
                return d
        raise KeyError(ident)

    @property
    def rule_table(self) -> dict[str, Default]:
        return {d.id: d for d in self.defaults}

    def with_priority(self, priority: PriorityRelation) -> "PDT":
        return PDT(self.facts, self.defaults, priority, self.vocabulary)

    def is_linearised(self) -> bool:
        return self.priority.is_total()

    def targets(self) -> tuple[Formula, ...]:
        """Antecedents, consequents and their contraries, and the facts; a finite window on Th."""
        seen: dict[Formula, None] = {}
        for d in self.defaults:
            if d.antecedent != TOP:
                seen[d.antecedent] = None
            seen[d.consequent] = None
            seen[contrary(d.consequent)] = None
        for f in self.facts:
            seen[f] = None
        return tuple(seen)


def validate_pdt(t: PDT) -> list[Violation]:
    """Every invariant breach of ``t``; empty when ``t`` is a well-formed PDT."""
    out: list[Violation] = []
    ids = t.ids
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        out.append(Violation("duplicate-id", f"default ids repeated: {dupes}", tuple(dupes)))
    forms = list(t.facts) + [f for d in t.defaults for f in (d.antecedent, d.consequent)]
    undeclared = sorted(set().union(*(f.atoms() for f in forms)) - set(t.vocabulary.names)) if forms else []
    if undeclared:
        out.append(Violation("undeclared-atom", f"atoms not in vocabulary: {undeclared}", tuple(undeclared)))
    p = t.priority
    reflexive = sorted(a for a, b in p.generators if a == b)
    if reflexive:
        out.append(Violation("reflexive-priority", f"reflexive priority on {reflexive}", tuple(reflexive)))
    witness = PriorityRelation(p.carrier, [(a, b) for a, b in p.generators if a != b]).cycle_witness()
    if witness:
        out.append(Violation("cycle", "priority is cyclic: " + " < ".join(witness), witness))
    dangling = sorted(p.dangling() | (set(p.carrier) - set(ids)))
    if dangling:
        out.append(Violation("dangling-id", f"priority mentions unknown ids {dangling}", tuple(dangling)))
    missing = sorted(set(ids) - set(p.carrier))
    if missing:
        out.append(Violation("carrier-mismatch", f"defaults missing from priority carrier: {missing}",
                             tuple(missing)))
    if not undeclared and not is_consistent(t.facts, t.vocabulary):
        out.append(Violation("inconsistent-facts", "facts are jointly unsatisfiable",
                             tuple(str(f) for f in t.facts)))
    return out
