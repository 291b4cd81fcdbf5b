"""Propositional language over a finite vocabulary and a classical entailment oracle.

Formulae are immutable trees; equality is syntactic. Semantics are computed
as truth-table bitmasks: bit ``k`` of ``Vocabulary.models(f)`` is set iff the
assignment encoded by ``k`` (atom ``i`` true iff bit ``i`` of ``k``) satisfies
``f``.  Entailment over small vocabularies is then a subset test on integers.
A DPLL procedure over a Tseitin encoding serves vocabularies above the
truth-table bound and doubles as an independent route for cross-checking.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import ParseError, VocabularyError

__all__ = [
    "Formula", "Atom", "Const", "Not", "And", "Or", "Implies", "Iff",
    "TOP", "BOTTOM", "Vocabulary", "parse_formula", "contrary", "entails",
    "is_consistent", "restricted_closure", "equivalent_sets",
    "TRUTH_TABLE_BOUND", "conj", "dpll_satisfiable",
]

TRUTH_TABLE_BOUND = 16

ATOM_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")
RESERVED = frozenset({"true", "false"})

# binding strength used by the printer; larger binds tighter
_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = range(1, 7)


class Formula:
    """Base class of the formula AST."""

    __slots__ = ()
    prec = _PREC_ATOM

    def atoms(self) -> frozenset[str]:
        out: set[str] = set()
        self._collect(out)
        return frozenset(out)

    def _collect(self, out: set[str]) -> None:
        raise NotImplementedError

    def __str__(self) -> str:
        return _render(self)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str
    prec = _PREC_ATOM

    def _collect(self, out):
        out.add(self.name)

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Const(Formula):
    value: bool
    prec = _PREC_ATOM

    def _collect(self, out):
        pass

    def __repr__(self):
        return "TOP" if self.value else "BOTTOM"


TOP = Const(True)
BOTTOM = Const(False)


@dataclass(frozen=True, repr=False)
class Not(Formula):
    operand: Formula
    prec = _PREC_NOT

    def _collect(self, out):
        self.operand._collect(out)

    def __repr__(self):
        return f"Not({self.operand!r})"


@dataclass(frozen=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    def _collect(self, out):
        self.left._collect(out)
        self.right._collect(out)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(_Binary):
    prec = _PREC_AND
    symbol = "&"


class Or(_Binary):
    prec = _PREC_OR
    symbol = "|"


class Implies(_Binary):
    prec = _PREC_IMP
    symbol = "->"


class Iff(_Binary):
    prec = _PREC_IFF
    symbol = "<->"


def conj(formulas: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; ``TOP`` for the empty collection."""
    out = None
    for f in formulas:
        out = f if out is None else And(out, f)
    return TOP if out is None else out


def _render(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Not):
        inner = _render(f.operand)
        return "~" + (f"({inner})" if f.operand.prec < _PREC_NOT else inner)
    left, right = _render(f.left), _render(f.right)
    if isinstance(f, Implies):
        # right-associative
        wrap_left = f.left.prec <= f.prec
        wrap_right = f.right.prec < f.prec
    else:
        wrap_left = f.left.prec < f.prec
        wrap_right = f.right.prec <= f.prec
    if wrap_left:
        left = f"({left})"
    if wrap_right:
        right = f"({right})"
    return f"{left} {f.symbol} {right}"


def contrary(phi: Formula) -> Formula:
    """Syntactic contrary: strip one outer negation, otherwise add one."""
    if isinstance(phi, Not):
        return phi.operand
    return Not(phi)


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(<->)|(->)|([~&|()])|([a-zA-Z_][a-zA-Z0-9_]*)|(\S))")


def _tokenise(text: str, line: int, col0: int):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind_text = next(g for g in m.groups() if g is not None)
        start = m.start(m.lastindex)
        if m.group(5) is not None:
            raise ParseError(f"unexpected character {kind_text!r}", line, col0 + start)
        tokens.append((kind_text, col0 + start))
        pos = m.end()
    return tokens


class _FormulaParser:
    def __init__(self, text, vocabulary, line, col0):
        self.tokens = _tokenise(text, line, col0)
        self.i = 0
        self.vocabulary = vocabulary
        self.line = line
        self.end_col = col0 + len(text.rstrip())

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def col(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else self.end_col

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.line, self.col())

    def parse(self):
        if not self.tokens:
            self.fail("empty formula")
        f = self.iff()
        if self.peek() is not None:
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def iff(self):
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp())
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of formula")
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if tok == "true":
            self.take()
            return TOP
        if tok == "false":
            self.take()
            return BOTTOM
        if ATOM_RE.match(tok):
            col = self.col()
            self.take()
            if self.vocabulary is not None and tok not in self.vocabulary:
                raise ParseError(f"undeclared atom {tok!r}", self.line, col)
            return Atom(tok)
        self.fail(f"unexpected token {tok!r}")


def parse_formula(text: str, vocabulary: "Vocabulary | None" = None,
                  line: int = 1, column: int = 1) -> Formula:
    """Parse concrete syntax (``~ & | -> <->``, ``true``/``false``)."""
    return _FormulaParser(text, vocabulary, line, column).parse()


# ---------------------------------------------------------------- semantics

class Vocabulary:
    """Ordered finite set of atom names; owns the truth-table cache."""

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        seen = set()
        for n in names:
            if not isinstance(n, str) or not ATOM_RE.match(n) or n in RESERVED:
                raise VocabularyError(f"invalid atom name {n!r}")
            if n in seen:
                raise VocabularyError(f"duplicate atom name {n!r}")
            seen.add(n)
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._cache: dict[Formula, int] = {}
        self._atom_masks: list[int] | None = None

    @classmethod
    def of(cls, formulas: Iterable[Formula]) -> "Vocabulary":
        atoms: set[str] = set()
        for f in formulas:
            atoms |= f.atoms()
        return cls(sorted(atoms))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, Vocabulary) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Vocabulary({list(self.names)!r})"

    def check(self, formula: Formula) -> None:
        missing = formula.atoms() - self._index.keys()
        if missing:
            raise VocabularyError(f"undeclared atom(s) {sorted(missing)} in {formula}")

    @property
    def size(self) -> int:
        """Number of truth assignments."""
        return 1 << len(self.names)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def _atoms(self) -> list[int]:
        if self._atom_masks is None:
            n = len(self.names)
            if n > TRUTH_TABLE_BOUND:
                raise VocabularyError(
                    f"truth tables limited to {TRUTH_TABLE_BOUND} atoms, vocabulary has {n}")
            total = 1 << n
            masks = []
            for i in range(n):
                half = 1 << i
                period = half << 1
                block = ((1 << half) - 1) << half
                repunit = ((1 << total) - 1) // ((1 << period) - 1)
                masks.append(block * repunit)
            self._atom_masks = masks
        return self._atom_masks

    def models(self, formula: Formula) -> int:
        """Bitmask of satisfying assignments."""
        hit = self._cache.get(formula)
        if hit is not None:
            return hit
        if isinstance(formula, Atom):
            idx = self._index.get(formula.name)
            if idx is None:
                raise VocabularyError(f"undeclared atom {formula.name!r}")
            m = self._atoms()[idx]
        elif isinstance(formula, Const):
            m = self.full if formula.value else 0
        elif isinstance(formula, Not):
            m = self.full ^ self.models(formula.operand)
        else:
            a = self.models(formula.left)
            b = self.models(formula.right)
            if isinstance(formula, And):
                m = a & b
            elif isinstance(formula, Or):
                m = a | b
            elif isinstance(formula, Implies):
                m = (self.full ^ a) | b
            else:
                m = self.full ^ (a ^ b)
        self._cache[formula] = m
        return m

    def models_of_set(self, gamma: Iterable[Formula]) -> int:
        m = self.full
        for f in gamma:
            m &= self.models(f)
        return m


# ------------------------------------------------------------------ DPLL

def _tseitin(formulas: Iterable[Formula]):
    """CNF (list of int clauses) asserting every formula; returns (clauses, atom_vars)."""
    var_of: dict[object, int] = {}
    clauses: list[list[int]] = []

    def fresh(key):
        v = var_of.get(key)
        if v is None:
            v = len(var_of) + 1
            var_of[key] = v
        return v

    def enc(f: Formula) -> int:
        if isinstance(f, Atom):
            return fresh(("atom", f.name))
        key = ("node", f)
        if key in var_of:
            return var_of[key]
        if isinstance(f, Const):
            v = fresh(key)
            clauses.append([v] if f.value else [-v])
            return v
        if isinstance(f, Not):
            # reuse the operand literal, negated
            return -enc(f.operand)
        a, b = enc(f.left), enc(f.right)
        v = fresh(key)
        if isinstance(f, And):
            clauses.extend([[-v, a], [-v, b], [v, -a, -b]])
        elif isinstance(f, Or):
            clauses.extend([[-v, a, b], [v, -a], [v, -b]])
        elif isinstance(f, Implies):
            clauses.extend([[-v, -a, b], [v, a], [v, -b]])
        else:
            clauses.extend([[-v, -a, b], [-v, a, -b], [v, a, b], [v, -a, -b]])
        return v

    for f in formulas:
        clauses.append([enc(f)])
    return clauses


def dpll_satisfiable(formulas: Iterable[Formula]) -> bool:
    """Satisfiability by DPLL with unit propagation over a Tseitin encoding."""
    clauses = _tseitin(formulas)
    return _dpll([frozenset(c) for c in clauses], {})


def _dpll(clauses, assignment) -> bool:
    clauses = list(clauses)
    while True:
        unit = None
        simplified = []
        for c in clauses:
            if any(assignment.get(abs(l)) == (l > 0) for l in c):
                continue
            rest = [l for l in c if abs(l) not in assignment]
            if not rest:
                return False
            if len(rest) == 1 and unit is None:
                unit = rest[0]
            simplified.append(rest)
        clauses = simplified
        if not clauses:
            return True
        if unit is None:
            break
        assignment = {**assignment, abs(unit): unit > 0}
    # branch on the most frequent variable
    counts: dict[int, int] = {}
    for c in clauses:
        for l in c:
            counts[abs(l)] = counts.get(abs(l), 0) + 1
    var = max(sorted(counts), key=counts.__getitem__)
    for value in (True, False):
        if _dpll(clauses, {**assignment, var: value}):
            return True
    return False


# ------------------------------------------------------------ entailment API

def _vocab_for(formulas, vocabulary):
    if vocabulary is None:
        return Vocabulary.of(formulas)
    for f in formulas:
        vocabulary.check(f)
    return vocabulary


def entails(gamma: Iterable[Formula], phi: Formula,
            vocabulary: Vocabulary | None = None, method: str = "auto") -> bool:
    """Classical consequence ``gamma |= phi``.

    ``method`` is ``"truth-table"``, ``"dpll"`` or ``"auto"`` (truth tables up
    to ``TRUTH_TABLE_BOUND`` atoms, DPLL above).
    """
    gamma = list(gamma)
    vocab = _vocab_for(gamma + [phi], vocabulary)
    if method == "auto":
        method = "truth-table" if len(vocab) <= TRUTH_TABLE_BOUND else "dpll"
    if method == "truth-table":
        return vocab.models_of_set(gamma) & ~vocab.models(phi) == 0
    if method == "dpll":
        return not dpll_satisfiable(gamma + [Not(phi)])
    raise ValueError(f"unknown method {method!r}")


def is_consistent(gamma: Iterable[Formula], vocabulary: Vocabulary | None = None,
                  method: str = "auto") -> bool:
    return not entails(gamma, BOTTOM, vocabulary, method)


def restricted_closure(gamma: Iterable[Formula], targets: Iterable[Formula],
                       vocabulary: Vocabulary | None = None) -> frozenset[Formula]:
    """The members of ``targets`` entailed by ``gamma``."""
    gamma, targets = list(gamma), list(targets)
    vocab = _vocab_for(gamma + targets, vocabulary)
    if len(vocab) > TRUTH_TABLE_BOUND:
        return frozenset(t for t in targets if entails(gamma, t, vocab, "dpll"))
    m = vocab.models_of_set(gamma)
    return frozenset(t for t in targets if m & ~vocab.models(t) == 0)


def equivalent_sets(a: Iterable[Formula], b: Iterable[Formula],
                    vocabulary: Vocabulary | None = None) -> bool:
    """Mutual entailment of two formula sets."""
    a, b = list(a), list(b)
    vocab = _vocab_for(a + b, vocabulary)
    return vocab.models_of_set(a) == vocab.models_of_set(b)
