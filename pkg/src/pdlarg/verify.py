"""Differential checks between the default-logic and argumentation routes.

Each check returns a :class:`VerificationReport`; a failing report carries
enough to replay the case (the theory in file syntax, plus whatever orders and
extensions were involved).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from .arguments import (ArgumentStore, args_restricted, build_defeat_graph, build_store,
                        generate_stable_extension)
from .dung import (AbstractAF, complete_extensions, grounded, preferred_extensions,
                   stable_extensions)
from .errors import PdlargError
from .logic import restricted_closure
from .pdl import all_extensions, compute_extension
from .sp import sp_partial, sp_total
from .theory import PDT, MAX_LINEARISATIONS, PriorityRelation, partial_linearisation

__all__ = [
    "VerificationReport", "ReconstructionError", "Analysis", "analyse",
    "check_representation_total", "check_greedy_generator", "check_trivialisation", "check_representation_partial",
    "check_rationality", "reconstruct_linearisation", "check_reconstruction",
    "rules_all_used",
]


@dataclass
class VerificationReport:
    tag: str
    passed: bool
    witness: dict[str, Any] = field(default_factory=dict)
    detail: str = ""
    seconds: float = 0.0

    def __bool__(self):
        return self.passed

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.tag}{extra}"


class ReconstructionError(PdlargError):
    def __init__(self, report: VerificationReport):
        super().__init__(report.line())
        self.report = report


@dataclass
class Analysis:
    """The argumentation side of a theory under one rule order."""

    theory: PDT
    sp: PriorityRelation
    store: ArgumentStore
    af: AbstractAF
    graph: Any

    def conclusions(self, ext) -> list:
        return sorted(self.store.conclusions(ext), key=str)

    def models(self, ext) -> int:
        return self.theory.vocabulary.models_of_set(self.store.conclusions(ext))


def analyse(t: PDT, sp: PriorityRelation | None = None, store: ArgumentStore | None = None,
            max_arguments: int | None = None) -> Analysis:
    if store is None:
        store = build_store(t) if max_arguments is None else build_store(t, max_arguments=max_arguments)
    if sp is None:
        if t.priority.is_total():
            sp = sp_total(t.rule_table, t.priority, store=store)
        else:
            sp = sp_partial(t.rule_table, t.priority, store=store)
    graph = build_defeat_graph(store, sp)
    return Analysis(t, sp, store, AbstractAF.from_defeat_graph(graph), graph)


def _witness(t: PDT, **extra) -> dict[str, Any]:
    from .io import serialise_pdt
    return {"theory": serialise_pdt(t), **extra}


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


@_timed
def check_representation_total(t: PDT, lin: PriorityRelation | None = None,
                               analysis: Analysis | None = None) -> VerificationReport:
    """The defeat graph has exactly one stable extension and it concludes the default-logic extension.

    Agreement of the greedy generator with that extension is a separate
    check, :func:`check_greedy_generator`; it can fail on its own.
    """
    lin = lin or t.priority
    t = t.with_priority(lin)
    ext = compute_extension(t, lin)
    a = analysis or analyse(t)
    stable = stable_extensions(a.af)
    problems = []
    concl: frozenset = frozenset()
    if len(stable) != 1:
        problems.append(f"{len(stable)} stable extensions")
    else:
        concl = frozenset(a.store.conclusions(stable[0]))
        if concl != restricted_closure(ext.generators, a.store.targets, t.vocabulary):
            problems.append("conclusions differ on targets")
        if a.models(stable[0]) != ext.models:
            problems.append("conclusions not equivalent to the extension")
    witness = {} if not problems else _witness(
        t, linearisation=list(lin.as_chain()), sp=list(a.sp.as_chain()),
        extension=[str(g) for g in ext.generators],
        conclusions=[str(c) for c in sorted(concl, key=str)])
    return VerificationReport("representation-total", not problems, witness, "; ".join(problems))


@_timed
def check_greedy_generator(t: PDT, lin: PriorityRelation | None = None,
                           analysis: Analysis | None = None) -> VerificationReport:
    """The greedy generator returns the unique stable extension."""
    lin = lin or t.priority
    t = t.with_priority(lin)
    a = analysis or analyse(t)
    kept = generate_stable_extension(a.store, a.sp)
    produced = args_restricted(a.store, kept)
    stable = stable_extensions(a.af)
    ok = stable == [produced]
    witness = {} if ok else _witness(t, linearisation=list(lin.as_chain()), sp=list(a.sp.as_chain()),
                                     kept_rules=sorted(kept), stable_extensions=len(stable))
    return VerificationReport("greedy-generator", ok, witness,
                              "" if ok else "generator output is not the stable extension")


@_timed
def check_trivialisation(t: PDT, lin: PriorityRelation | None = None,
                         analysis: Analysis | None = None) -> VerificationReport:
    """One complete extension, which is also grounded, preferred and stable."""
    lin = lin or t.priority
    t = t.with_priority(lin)
    a = analysis or analyse(t)
    comp = complete_extensions(a.af)
    g = grounded(a.af)
    pref = preferred_extensions(a.af)
    stab = stable_extensions(a.af)
    ok = comp == [g] and pref == [g] and stab == [g]
    witness = {} if ok else _witness(t, linearisation=list(lin.as_chain()),
                                     complete=len(comp), preferred=len(pref), stable=len(stab))
    return VerificationReport("trivialisation", ok, witness,
                              "" if ok else f"complete={len(comp)} preferred={len(pref)} stable={len(stab)}")


@_timed
def check_representation_partial(t: PDT, analysis: Analysis | None = None,
                                 max_linearisations: int = MAX_LINEARISATIONS) -> VerificationReport:
    """Stable-extension conclusion classes coincide with the extension classes."""
    a = analysis or analyse(t)
    pdl = {e.models for e in all_extensions(t, max_linearisations)}
    arg = {a.models(s) for s in stable_extensions(a.af)}
    ok = pdl == arg
    witness = {} if ok else _witness(t, pdl_classes=len(pdl), argument_classes=len(arg),
                                     only_pdl=len(pdl - arg), only_arguments=len(arg - pdl))
    return VerificationReport("representation-partial", ok, witness,
                              f"{len(pdl)} extension(s)" if ok else
                              f"{len(pdl - arg)} extension(s) unmatched, {len(arg - pdl)} spurious")


@_timed
def check_rationality(t: PDT, analysis: Analysis | None = None) -> VerificationReport:
    """Subargument closure, closure under strict consequence on targets, and consistency."""
    a = analysis or analyse(t)
    exts = stable_extensions(a.af)
    if t.priority.is_total():
        exts = exts + [e for e in complete_extensions(a.af) if e not in exts]
    problems = []
    for ext in exts:
        for i in ext:
            if not set(a.store[i].subarguments()) <= ext:
                problems.append("not closed under subarguments")
                break
        concl = a.store.conclusions(ext)
        if not restricted_closure(concl, a.store.targets, t.vocabulary) <= concl:
            problems.append("not closed under strict consequence")
        if not t.vocabulary.models_of_set(concl):
            problems.append("inconsistent conclusions")
    ok = not problems
    return VerificationReport("rationality", ok, {} if ok else _witness(t, problems=problems),
                              f"{len(exts)} extension(s)" if ok else "; ".join(sorted(set(problems))))


def rules_all_used(store: ArgumentStore) -> bool:
    """Every defeasible rule occurs in some stored argument."""
    used = set().union(*(a.dr for a in store)) if len(store) else set()
    return used >= set(store.theory.ids)


def _bottom_up(p: PriorityRelation, ids) -> list[str]:
    """Least-first topological order of ``ids`` under ``p``, smaller id first on ties."""
    return next(_topological(p, ids))


def _topological(p: PriorityRelation, ids):
    """Every least-first topological order of ``ids`` under ``p``, smallest ids tried first."""
    remaining = set(ids)
    out: list[str] = []

    def rec():
        if not remaining:
            yield list(out)
            return
        for x in sorted(remaining):
            if any((y, x) in p.pairs for y in remaining):
                continue
            remaining.remove(x)
            out.append(x)
            yield from rec()
            out.pop()
            remaining.add(x)

    yield from rec()


def _constructions(t: PDT, stable_rules, sp: PriorityRelation):
    """Candidate linearisations in the order the construction's free choices are explored.

    The rejected rules are linearised first; each one, greatest first, is then
    made least among the rules not already below it. The first candidate uses
    the smallest id at every choice point.
    """
    rd = list(t.ids)
    rejected = [r for r in rd if r not in set(stable_rules)]

    def steps(order, pending):
        if not pending:
            yield PriorityRelation.chain(_bottom_up(order, rd))
            return
        s, rest_pending = pending[0], pending[1:]
        nonlower = [r for r in rd if (r, s) not in order.pairs]
        others = [r for r in nonlower if r != s]
        for lin in _topological(order, others):
            yield from steps(partial_linearisation(order, nonlower, [s] + lin), rest_pending)

    for lin in _topological(sp, rejected):
        start = partial_linearisation(sp, rejected, lin)
        yield from steps(start, list(reversed(lin)))


def reconstruct_linearisation(t: PDT, stable_rules, sp: PriorityRelation | None = None,
                              store: ArgumentStore | None = None) -> PriorityRelation:
    """A linearisation of the rule order under which the greedy generator returns ``stable_rules``.

    Rejected rules are taken from the greatest down; each is made least among
    the rules not already below it. Raises :class:`ReconstructionError` if the
    result does not regenerate ``stable_rules``.
    """
    report = check_reconstruction(t, stable_rules, sp, store)
    if not report.passed:
        raise ReconstructionError(report)
    return PriorityRelation.chain(report.witness["linearisation"])


@_timed
def check_reconstruction(t: PDT, stable_rules, sp: PriorityRelation | None = None,
                         store: ArgumentStore | None = None,
                         max_attempts: int = 10_000) -> VerificationReport:
    store = store or build_store(t)
    if sp is None:
        sp = sp_partial(t.rule_table, t.priority, store=store)
    stable_rules = frozenset(stable_rules)
    target = args_restricted(store, stable_rules)
    lin = regenerated = None
    ok = False
    tried = 0
    for tried, lin in enumerate(_constructions(t, stable_rules, sp), start=1):
        regenerated = generate_stable_extension(store, lin)
        if args_restricted(store, regenerated) == target and lin.extends(sp):
            ok = True
            break
        if tried >= max_attempts:
            break
    witness = {"linearisation": list(lin.as_chain()), "attempts": tried}
    if not ok:
        witness = _witness(t, linearisation=list(lin.as_chain()), stable_rules=sorted(stable_rules),
                           regenerated=sorted(regenerated), attempts=tried, all_rules_used=rules_all_used(store))
    rules = " ".join(sorted(stable_rules)) or "none"
    return VerificationReport("reconstruction", ok, witness,
                              f"rules {rules}" if ok else f"rules {rules}; regenerated {sorted(regenerated)}")
