"""Abstract argumentation semantics over finite directed graphs.

Complete and stable extensions are enumerated by a three-valued labelling
search with forced-label propagation; every leaf is re-checked against the
definition, so propagation only prunes. A plain subset sweep is kept as an
independent oracle for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import CapacityError, InputError

__all__ = [
    "AbstractAF", "characteristic", "grounded", "complete_extensions",
    "stable_extensions", "preferred_extensions", "is_conflict_free",
    "is_complete", "is_stable", "brute_force_extensions", "MAX_SEARCH_NODES",
    "BRUTE_FORCE_LIMIT",
]

MAX_SEARCH_NODES = 2_000_000
BRUTE_FORCE_LIMIT = 15

IN, OUT, UNDEC = 1, 2, 3


@dataclass(frozen=True)
class AbstractAF:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]]):
        vertices = tuple(dict.fromkeys(vertices))
        edges = frozenset((a, b) for a, b in edges)
        known = set(vertices)
        bad = sorted({x for e in edges for x in e} - known)
        if bad:
            raise InputError(f"edges reference unknown vertices {bad}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        attackers: dict[str, set[str]] = {v: set() for v in vertices}
        targets: dict[str, set[str]] = {v: set() for v in vertices}
        for a, b in edges:
            attackers[b].add(a)
            targets[a].add(b)
        object.__setattr__(self, "attackers", {v: frozenset(s) for v, s in attackers.items()})
        object.__setattr__(self, "targets", {v: frozenset(s) for v, s in targets.items()})

    @classmethod
    def from_defeat_graph(cls, graph) -> "AbstractAF":
        return cls(graph.vertices, graph.defeats)


def characteristic(af: AbstractAF, s: Iterable[str]) -> frozenset[str]:
    """Vertices every defeater of which is defeated by ``s``."""
    s = set(s)
    hit = set()
    for a in s:
        hit |= af.targets[a]
    return frozenset(v for v in af.vertices if af.attackers[v] <= hit)


def grounded(af: AbstractAF) -> frozenset[str]:
    s: frozenset[str] = frozenset()
    while True:
        nxt = characteristic(af, s)
        if nxt == s:
            return s
        s = nxt


def is_conflict_free(af: AbstractAF, s: Iterable[str]) -> bool:
    s = set(s)
    return not any(af.targets[a] & s for a in s)


def is_complete(af: AbstractAF, s: Iterable[str]) -> bool:
    s = frozenset(s)
    return is_conflict_free(af, s) and characteristic(af, s) == s


def is_stable(af: AbstractAF, s: Iterable[str]) -> bool:
    s = frozenset(s)
    if not is_conflict_free(af, s):
        return False
    hit = set()
    for a in s:
        hit |= af.targets[a]
    return hit >= set(af.vertices) - s


def _labellings(af: AbstractAF, allow_undec: bool, max_nodes: int) -> list[frozenset[str]]:
    order = list(af.vertices)
    nodes = [0]
    results: set[frozenset[str]] = set()

    def propagate(lab: dict[str, int]) -> bool:
        changed = True
        while changed:
            changed = False
            for v in order:
                atk = af.attackers[v]
                cur = lab.get(v)
                if cur is None:
                    if any(lab.get(a) == IN for a in atk):
                        lab[v] = OUT
                        changed = True
                    elif all(lab.get(a) == OUT for a in atk):
                        lab[v] = IN
                        changed = True
                    continue
                if cur == IN:
                    for a in atk:
                        if lab.get(a) is None:
                            lab[a] = OUT
                            changed = True
                        elif lab[a] != OUT:
                            return False
                    continue
                open_ = [a for a in atk if lab.get(a) is None]
                if cur == OUT:
                    if any(lab.get(a) == IN for a in atk):
                        continue
                    if not open_:
                        return False
                    if len(open_) == 1:
                        lab[open_[0]] = IN
                        changed = True
                else:  # UNDEC
                    if any(lab.get(a) == IN for a in atk):
                        return False
                    if all(lab.get(a) == OUT for a in atk):
                        return False
                    if len(open_) == 1 and all(lab.get(a) == OUT for a in atk if a != open_[0]):
                        lab[open_[0]] = UNDEC
                        changed = True
        return True

    def search(lab: dict[str, int]) -> None:
        nodes[0] += 1
        if nodes[0] > max_nodes:
            raise CapacityError(f"labelling search exceeds max_nodes={max_nodes}", "max_nodes", max_nodes)
        if not propagate(lab):
            return
        free = [v for v in order if v not in lab]
        if not free:
            ins = frozenset(v for v, l in lab.items() if l == IN)
            if (is_stable(af, ins) if not allow_undec else is_complete(af, ins)):
                results.add(ins)
            return
        v = free[0]
        for choice in ((IN, OUT, UNDEC) if allow_undec else (IN, OUT)):
            search({**lab, v: choice})

    search({})
    return sorted(results, key=lambda s: (len(s), sorted(s)))


def complete_extensions(af: AbstractAF, max_nodes: int = MAX_SEARCH_NODES) -> list[frozenset[str]]:
    return _labellings(af, True, max_nodes)


def stable_extensions(af: AbstractAF, max_nodes: int = MAX_SEARCH_NODES) -> list[frozenset[str]]:
    return _labellings(af, False, max_nodes)


def preferred_extensions(af: AbstractAF, max_nodes: int = MAX_SEARCH_NODES) -> list[frozenset[str]]:
    complete = complete_extensions(af, max_nodes)
    return [s for s in complete if not any(s < t for t in complete)]


def brute_force_extensions(af: AbstractAF, semantics: str) -> list[frozenset[str]]:
    """Reference enumeration over every vertex subset."""
    n = len(af.vertices)
    if n > BRUTE_FORCE_LIMIT:
        raise CapacityError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices",
                            "brute_force", BRUTE_FORCE_LIMIT)
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(af.vertices, k)]
    complete = [s for s in subsets if is_complete(af, s)]
    if semantics == "complete":
        out = complete
    elif semantics == "grounded":
        out = [s for s in complete if all(s <= t for t in complete)]
    elif semantics == "preferred":
        out = [s for s in complete if not any(s < t for t in complete)]
    elif semantics == "stable":
        out = [s for s in subsets if is_stable(af, s)]
    else:
        raise InputError(f"unknown semantics {semantics!r}")
    return sorted(out, key=lambda s: (len(s), sorted(s)))
