"""Line-oriented theory files.

::

    # penguin
    atoms: a b
    default d1: true => a
    default d2: a => b
    default d3: true => ~b
    prio d3 < d2        # d2 is preferred to d3
    query a

``fact F`` adds ``F`` to the facts. ``prio x < y < z`` is shorthand for
consecutive pairs. Formulae use ``~ & | -> <->`` with ``true`` and ``false``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, ValidationError
from .logic import Formula, Vocabulary, parse_formula
from .theory import PDT, Default, PriorityRelation, validate_pdt

__all__ = ["PdtDocument", "parse_document", "parse_pdt", "serialise_document", "serialise_pdt",
           "hasse_pairs"]

_ID = r"[A-Za-z_][A-Za-z0-9_]*"
_DEFAULT_RE = re.compile(rf"\s*({_ID})\s*:(.*?)=>(.*)\Z")


@dataclass
class PdtDocument:
    atoms: list[str] | None = None
    facts: list[Formula] = field(default_factory=list)
    defaults: list[Default] = field(default_factory=list)
    priority: list[tuple[str, str]] = field(default_factory=list)
    queries: list[Formula] = field(default_factory=list)

    def vocabulary(self) -> Vocabulary:
        if self.atoms is not None:
            return Vocabulary(self.atoms)
        forms = list(self.facts) + list(self.queries)
        for d in self.defaults:
            forms += [d.antecedent, d.consequent]
        return Vocabulary.of(forms)

    def to_pdt(self, validate: bool = True) -> PDT:
        ids = [d.id for d in self.defaults]
        t = PDT(tuple(self.facts), tuple(self.defaults), PriorityRelation(ids, self.priority),
                self.vocabulary())
        if validate:
            violations = validate_pdt(t)
            if violations:
                raise ValidationError(violations)
        return t

    @classmethod
    def from_pdt(cls, t: PDT, queries=()) -> "PdtDocument":
        return cls(list(t.vocabulary.names), list(t.facts), list(t.defaults),
                   hasse_pairs(t.priority), list(queries))


def hasse_pairs(p: PriorityRelation) -> list[tuple[str, str]]:
    """Covering pairs of a strict partial order, in carrier order."""
    rank = {x: i for i, x in enumerate(p.carrier)}
    cover = [(a, b) for a, b in p.pairs
             if not any((a, c) in p.pairs and (c, b) in p.pairs for c in p.carrier)]
    return sorted(cover, key=lambda ab: (rank.get(ab[0], len(rank)), rank.get(ab[1], len(rank)), ab))


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_document(text: str | bytes) -> PdtDocument:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    doc = PdtDocument()
    vocab: Vocabulary | None = None
    pending: list[tuple[str, int, int]] = []  # formulae seen before the atoms line
    seen_ids: set[str] = set()

    def formula(src: str, lineno: int, col: int) -> Formula:
        f = parse_formula(src, vocab, lineno, col)
        if vocab is None:
            pending.append((src, lineno, col))
        return f

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        body = line.lstrip()
        if not body:
            continue
        indent = len(line) - len(body)
        m = re.match(r"(atoms\s*:|fact\b|default\b|prio\b|query\b)", body)
        if not m:
            raise ParseError(f"unknown statement {body.split()[0]!r}", lineno, indent + 1)
        keyword = m.group(1).rstrip(":").strip()
        rest = body[m.end():]
        col = indent + m.end() + 1
        if keyword == "atoms":
            if doc.atoms is not None:
                raise ParseError("duplicate atoms declaration", lineno, indent + 1)
            names = [n for n in re.split(r"[\s,]+", rest.strip()) if n]
            try:
                vocab = Vocabulary(names)
            except Exception as exc:
                raise ParseError(str(exc), lineno, col) from None
            doc.atoms = names
            for src, ln, c in pending:
                parse_formula(src, vocab, ln, c)
            pending.clear()
        elif keyword == "fact":
            doc.facts.append(formula(rest, lineno, col))
        elif keyword == "query":
            doc.queries.append(formula(rest, lineno, col))
        elif keyword == "default":
            dm = _DEFAULT_RE.match(rest)
            if not dm:
                raise ParseError("expected 'default <id>: <formula> => <formula>'", lineno, col)
            ident = dm.group(1)
            if ident in seen_ids:
                raise ParseError(f"duplicate default id {ident!r}", lineno, col + dm.start(1))
            seen_ids.add(ident)
            ante = formula(dm.group(2), lineno, col + dm.start(2))
            cons = formula(dm.group(3), lineno, col + dm.start(3))
            doc.defaults.append(Default(ident, ante, cons))
        else:
            parts = [s.strip() for s in rest.split("<")]
            if len(parts) < 2 or not all(re.fullmatch(_ID, s) for s in parts):
                raise ParseError("expected 'prio <id> < <id>'", lineno, col)
            for lo, hi in zip(parts, parts[1:]):
                if lo == hi:
                    raise ParseError(f"reflexive priority {lo} < {hi}", lineno, col)
                doc.priority.append((lo, hi))
    return doc


def parse_pdt(text: str | bytes, validate: bool = True) -> tuple[PDT, list[Formula]]:
    """Parse a theory file; returns the theory and its queries."""
    doc = parse_document(text)
    return doc.to_pdt(validate), list(doc.queries)


def serialise_document(doc: PdtDocument) -> str:
    lines = []
    if doc.atoms is not None:
        lines.append("atoms: " + " ".join(doc.atoms))
    lines += [f"fact {f}" for f in doc.facts]
    lines += [f"default {d.id}: {d.antecedent} => {d.consequent}" for d in doc.defaults]
    lines += [f"prio {a} < {b}" for a, b in doc.priority]
    lines += [f"query {q}" for q in doc.queries]
    return "\n".join(lines) + "\n"


def serialise_pdt(t: PDT, queries=()) -> str:
    return serialise_document(PdtDocument.from_pdt(t, queries))
