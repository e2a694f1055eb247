"""Equational term language over the epistemic signature.

Grammar, lowest to highest precedence: ``->`` (right associative), ``\\/``,
``/\\``, ``*``, then the prefix operators ``~``, ``A`` (necessity) and ``E``
(possibility); atoms are ``0``, ``1``, lowercase variable names and
parenthesised terms.  Statements are ``term = term`` or ``term <= term``,
where ``s <= t`` is evaluated as ``s -> t = 1``.

``~t`` is definitionally ``t -> 0``: the parser desugars it immediately and
the printer re-sugars, so round trips are structural identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

import numpy as np

from .core import FiniteBLAlgebra
from .epistemic import EpistemicStructure, as_unary_table
from .errors import MalformedInputError, TooManyVariablesError


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Fusion:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Impl:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Box:
    arg: "Term"


@dataclass(frozen=True)
class Dia:
    arg: "Term"


Term = Union[Var, Zero, One, Meet, Join, Fusion, Impl, Box, Dia]


def Neg(term: Term) -> Impl:
    return Impl(term, Zero())


def is_neg(term: Term) -> bool:
    return isinstance(term, Impl) and term.right == Zero()


@dataclass(frozen=True)
class Statement:
    relation: str  # "eq" or "le"
    lhs: Term
    rhs: Term


class ParseError(MalformedInputError):
    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...]):
        super().__init__(f"{line}:{column}: {message} (expected {', '.join(expected)})")
        self.line = line
        self.column = column
        self.expected = expected


# ---------------------------------------------------------------------------
# tokenizer / parser

_SYMBOLS = ("<=", "->", "\\/", "/\\", "*", "~", "(", ")", "=")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> Iterator[_Token]:
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        matched = None
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                matched = sym
                break
        if matched:
            yield _Token(matched, matched, line, col)
            i += len(matched)
            col += len(matched)
            continue
        if ch in "01":
            yield _Token("const", ch, line, col)
            i += 1
            col += 1
            continue
        if ch in "AE":
            yield _Token("modal", ch, line, col)
            i += 1
            col += 1
            continue
        if ch.islower():
            j = i
            while j < len(text) and (text[j].islower() or text[j].isdigit() or text[j] == "_"):
                j += 1
            yield _Token("var", text[i:j], line, col)
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col, ("term",))
    yield _Token("eof", "", line, col)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        tok = self.current
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.line, tok.column, expected)

    def expect(self, kind: str) -> _Token:
        if self.current.kind != kind:
            self.fail((kind,))
        return self.take()

    def term(self) -> Term:
        return self.impl()

    def impl(self) -> Term:
        left = self.join()
        if self.current.kind == "->":
            self.take()
            return Impl(left, self.impl())
        return left

    def join(self) -> Term:
        node = self.meet()
        while self.current.kind == "\\/":
            self.take()
            node = Join(node, self.meet())
        return node

    def meet(self) -> Term:
        node = self.fusion()
        while self.current.kind == "/\\":
            self.take()
            node = Meet(node, self.fusion())
        return node

    def fusion(self) -> Term:
        node = self.unary()
        while self.current.kind == "*":
            self.take()
            node = Fusion(node, self.unary())
        return node

    def unary(self) -> Term:
        tok = self.current
        if tok.kind == "~":
            self.take()
            return Neg(self.unary())
        if tok.kind == "modal":
            self.take()
            inner = self.unary()
            return Box(inner) if tok.text == "A" else Dia(inner)
        return self.atom()

    def atom(self) -> Term:
        tok = self.current
        if tok.kind == "const":
            self.take()
            return Zero() if tok.text == "0" else One()
        if tok.kind == "var":
            self.take()
            return Var(tok.text)
        if tok.kind == "(":
            self.take()
            inner = self.term()
            self.expect(")")
            return inner
        self.fail(("0", "1", "variable", "(", "~", "A", "E"))


def parse(text: str) -> Union[Statement, Term]:
    """Parse a statement (``s = t`` / ``s <= t``) or a bare term."""
    parser = _Parser(text)
    lhs = parser.term()
    tok = parser.current
    if tok.kind in ("=", "<="):
        parser.take()
        rhs = parser.term()
        parser.expect("eof")
        return Statement("eq" if tok.kind == "=" else "le", lhs, rhs)
    parser.expect("eof")
    return lhs


def parse_statement(text: str) -> Statement:
    node = parse(text)
    if not isinstance(node, Statement):
        raise MalformedInputError(f"expected an identity or inequality, got term {text!r}")
    return node


# ---------------------------------------------------------------------------
# printer (minimal parentheses; parse(print(x)) is the structural identity)

_LEVEL_IMPL = 1
_LEVEL_JOIN = 2
_LEVEL_MEET = 3
_LEVEL_FUSION = 4
_LEVEL_PREFIX = 5
_LEVEL_ATOM = 6


def _render(term: Term) -> tuple[str, int]:
    if isinstance(term, Var):
        return term.name, _LEVEL_ATOM
    if isinstance(term, Zero):
        return "0", _LEVEL_ATOM
    if isinstance(term, One):
        return "1", _LEVEL_ATOM
    if is_neg(term):
        inner = term.left
        if isinstance(inner, (Var, Zero, One)) or is_neg(inner):
            return "~" + _at(inner, _LEVEL_PREFIX), _LEVEL_PREFIX
        return "~(" + _at(inner, _LEVEL_IMPL) + ")", _LEVEL_PREFIX
    if isinstance(term, (Box, Dia)):
        sym = "A" if isinstance(term, Box) else "E"
        inner = term.arg
        text, level = _render(inner)
        if level >= _LEVEL_PREFIX:
            return f"{sym} {text}", _LEVEL_PREFIX
        return f"{sym}({text})", _LEVEL_PREFIX
    if isinstance(term, Impl):
        text = _at(term.left, _LEVEL_JOIN) + " -> " + _at(term.right, _LEVEL_IMPL)
        return text, _LEVEL_IMPL
    if isinstance(term, Join):
        return _at(term.left, _LEVEL_JOIN) + " \\/ " + _at(term.right, _LEVEL_MEET), _LEVEL_JOIN
    if isinstance(term, Meet):
        return _at(term.left, _LEVEL_MEET) + " /\\ " + _at(term.right, _LEVEL_FUSION), _LEVEL_MEET
    if isinstance(term, Fusion):
        return _at(term.left, _LEVEL_FUSION) + " * " + _at(term.right, _LEVEL_PREFIX), _LEVEL_FUSION
    raise TypeError(f"not a term: {term!r}")


def _at(term: Term, minimum: int) -> str:
    text, level = _render(term)
    if level < minimum:
        return "(" + text + ")"
    return text


def _le_side(term: Term) -> str:
    # implications flanking <= read badly bare, so they keep their parens
    text, level = _render(term)
    if level == _LEVEL_IMPL:
        return "(" + text + ")"
    return text


def print_term(node: Union[Statement, Term]) -> str:
    """Minimal-parentheses rendering of a term or statement."""
    if isinstance(node, Statement):
        if node.relation == "eq":
            return _at(node.lhs, _LEVEL_IMPL) + " = " + _at(node.rhs, _LEVEL_IMPL)
        return _le_side(node.lhs) + " <= " + _le_side(node.rhs)
    return _at(node, _LEVEL_IMPL)


# ---------------------------------------------------------------------------
# evaluation

DEFAULT_VARIABLE_BUDGET = 4


def term_variables(node: Union[Statement, Term]) -> tuple[str, ...]:
    names: set[str] = set()

    def walk(t: Term):
        if isinstance(t, Var):
            names.add(t.name)
        elif isinstance(t, (Box, Dia)):
            walk(t.arg)
        elif isinstance(t, (Meet, Join, Fusion, Impl)):
            walk(t.left)
            walk(t.right)

    if isinstance(node, Statement):
        walk(node.lhs)
        walk(node.rhs)
    else:
        walk(node)
    return tuple(sorted(names))


def eval_term(term: Term, alg: FiniteBLAlgebra, forall, exists, env: dict):
    """Evaluate a term to an element (or elementwise over valuation arrays)."""
    if isinstance(term, Var):
        return env[term.name]
    if isinstance(term, Zero):
        return alg.bot
    if isinstance(term, One):
        return alg.top
    if isinstance(term, Box):
        return forall[eval_term(term.arg, alg, forall, exists, env)]
    if isinstance(term, Dia):
        return exists[eval_term(term.arg, alg, forall, exists, env)]
    left = eval_term(term.left, alg, forall, exists, env)
    right = eval_term(term.right, alg, forall, exists, env)
    if isinstance(term, Meet):
        return alg.meet[left, right]
    if isinstance(term, Join):
        return alg.join[left, right]
    if isinstance(term, Fusion):
        return alg.mult[left, right]
    return alg.impl[left, right]


def check_statement_tables(
    stmt: Statement,
    alg: FiniteBLAlgebra,
    forall,
    exists,
    max_vars: int = DEFAULT_VARIABLE_BUDGET,
):
    """Check a statement against raw operator tables over all valuations.

    Returns ``(True, None)`` or ``(False, valuation)`` with the first
    counterexample in lexicographic order (variables sorted by name).
    """
    f = as_unary_table(alg, forall, "forall")
    e = as_unary_table(alg, exists, "exists")
    names = term_variables(stmt)
    if len(names) > max_vars:
        raise TooManyVariablesError(
            f"statement uses {len(names)} variables, budget is {max_vars}"
        )
    if names:
        grids = np.indices((alg.n,) * len(names)).reshape(len(names), -1)
        env = {name: grids[i] for i, name in enumerate(names)}
    else:
        grids = None
        env = {}
    lhs = eval_term(stmt.lhs, alg, f, e, env)
    rhs = eval_term(stmt.rhs, alg, f, e, env)
    if stmt.relation == "le":
        lhs = alg.impl[lhs, rhs]
        rhs = alg.top
    if grids is None:
        return (True, None) if bool(np.all(lhs == rhs)) else (False, {})
    same = np.broadcast_to(np.asarray(lhs == rhs), (grids.shape[1],))
    bad = np.flatnonzero(~same)
    if bad.size == 0:
        return True, None
    column = grids[:, bad[0]]
    return False, {name: int(column[i]) for i, name in enumerate(names)}


def check_statement(
    stmt: Statement, structure: EpistemicStructure, max_vars: int = DEFAULT_VARIABLE_BUDGET
):
    """Check a statement on a validated structure (term-evaluation route)."""
    return check_statement_tables(
        stmt, structure.algebra, structure.forall, structure.exists, max_vars
    )


# ---------------------------------------------------------------------------
# the named axiom library

_LIBRARY_SRC: tuple[tuple[str, str], ...] = (
    # defining epistemic axioms
    ("EA", "A 1 = 1"),
    ("EE", "E 0 = 0"),
    ("E1", "A x -> E x = 1"),
    ("E2", "A(x -> A y) = E x -> A y"),
    ("E3", "A(A x -> y) = A x -> A y"),
    ("E4", "E x -> A E x = 1"),
    ("E4a", "A(x /\\ y) = A x /\\ A y"),
    ("E4b", "E(x \\/ y) = E x \\/ E y"),
    ("E5", "E(x * E y) = E x * E y"),
    # derived laws
    ("E6", "A 0 = 0"),
    ("E7", "E 1 = 1"),
    ("E8", "A A x = A x"),
    ("E9", "E A x = A x"),
    ("E10", "E E x = E x"),
    ("E11", "A E x = E x"),
    ("E12", "E(E x \\/ E y) = E x \\/ E y"),
    ("E13", "E(E x * E y) = E x * E y"),
    ("E14", "A(E x -> y) = E x -> A y"),
    ("E15", "E(E x -> E y) = E x -> E y"),
    ("E16", "E(E x /\\ E y) = E x /\\ E y"),
    ("E17", "A ~x = ~(E x)"),
    ("E18", "A(A x -> x) = 1"),
    ("E19", "A(x -> E x) = 1"),
    # monotonicity, stated as identities over the lattice operations
    ("MA", "A(x /\\ y) <= A y"),
    ("ME", "E x <= E(x \\/ y)"),
    # monadic axioms
    ("M1", "A x -> x = 1"),
    ("M2", "A(x -> A y) = E x -> A y"),
    ("M3", "A(A x -> y) = A x -> A y"),
    ("M4", "A(E x \\/ y) = E x \\/ A y"),
    ("M5", "E(x * x) = E x * E x"),
    # pseudomonadic axioms and their derived laws (forall = ~E~ on Boolean
    # carriers; the checks substitute that table)
    ("P1", "E 0 = 0"),
    ("P2", "E(x \\/ y) = E x \\/ E y"),
    ("P3", "E(E x /\\ y) = E x /\\ E y"),
    ("P4", "~(E x) <= E ~x"),
    ("P5", "A x <= E x"),
    ("P6", "A 1 = 1"),
    ("P7", "E 1 = 1"),
    ("P8", "A 0 = 0"),
    ("P9", "E E x = E x"),
    ("P10", "A A x = A x"),
    ("P11", "A E x = E x"),
    ("P12", "E A x = A x"),
    ("P13", "E ~(E x) = ~(E x)"),
    ("P14", "A ~(A x) = ~(A x)"),
    ("P15", "A(A x \\/ y) = A x \\/ A y"),
    ("P16", "A(x /\\ y) = A x /\\ A y"),
    ("P17", "A(x -> y) <= A x -> A y"),
    ("P18", "E(E x -> x) = 1"),
    ("P19", "A(A x -> x) = 1"),
    # bi-modal KD45 axioms over Goedel carriers; the two-part schemes are
    # split into a/b entries
    ("G1", "A(x * y) = A x * A y"),
    ("G2", "A 1 = 1"),
    ("G3", "(E x -> A y) <= A(x -> y)"),
    ("G4", "E(x \\/ y) = E x \\/ E y"),
    ("G5", "E 0 = 0"),
    ("G6", "E(x -> y) <= A x -> E y"),
    ("G7", "A x <= E x"),
    ("G8a", "A x <= A A x"),
    ("G8b", "E E x <= E x"),
    ("G9a", "E x <= A E x"),
    ("G9b", "E A x <= A x"),
    # residuated-lattice laws
    ("divisibility", "x /\\ y = x * (x -> y)"),
    ("prelinearity", "(x -> y) \\/ (y -> x) = 1"),
    ("currying", "x -> (y -> z) = (x * y) -> z"),
    ("impl-meet", "x -> (y /\\ z) = (x -> y) /\\ (x -> z)"),
    ("cancellation", "x -> (x * y) = y"),
)


@lru_cache(maxsize=1)
def named_library() -> dict[str, Statement]:
    """Every named axiom scheme, parsed once; the single source of truth for
    what each axiom id stands for."""
    return {name: parse_statement(src) for name, src in _LIBRARY_SRC}
