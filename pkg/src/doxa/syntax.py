"""Formula AST, concrete grammar, parser, printer, and structural utilities.

The internal AST has exactly five constructors: Atom, Not, And, Exp, Box.
Everything else (``true``, ``false``, ``|``, ``->``, ``<->``, ``Poss``) is
surface sugar rewritten into these five while parsing.  The body of every
Exp node must be Box-free; the constructors enforce this, so no API path
can build an ill-formed formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import AgentRangeError, ParseError, StratificationError

# User-facing atoms must start with a lowercase letter; names with a
# leading underscore are reserved for internally generated atoms and are
# rejected by the parser.
ATOM_NAME_RE = re.compile(r"[a-z][A-Za-z0-9_]*")
_ANY_ATOM_RE = re.compile(r"[a-z_][A-Za-z0-9_]*")

RESERVED_WORDS = frozenset({"true", "false"})


def valid_atom_name(name: str) -> bool:
    """Names acceptable for programmatic construction (underscore allowed)."""
    return bool(_ANY_ATOM_RE.fullmatch(name)) and name not in RESERVED_WORDS


def _check_agent(index):
    if not isinstance(index, int) or isinstance(index, bool) or index < 1:
        raise AgentRangeError(f"agent index must be an integer >= 1, got {index!r}")


class Formula:
    """Base class of all formula nodes.  Instances are immutable values."""

    __match_args__ = ()

    def is_l0(self) -> bool:
        return self._l0


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not valid_atom_name(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")
        object.__setattr__(self, "_l0", True)


@dataclass(frozen=True)
class Not(Formula):
    child: Formula

    def __post_init__(self):
        object.__setattr__(self, "_l0", self.child._l0)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        object.__setattr__(self, "_l0", self.left._l0 and self.right._l0)


@dataclass(frozen=True)
class Exp(Formula):
    """Explicit belief: the body is a structural member of the agent's base."""

    agent: int
    child: Formula

    def __post_init__(self):
        _check_agent(self.agent)
        if not self.child._l0:
            raise StratificationError(
                "Exp body must not contain Box (explicit beliefs are Box-free)"
            )
        object.__setattr__(self, "_l0", True)


@dataclass(frozen=True)
class Box(Formula):
    """Implicit belief: truth at every notional alternative of the agent."""

    agent: int
    child: Formula

    def __post_init__(self):
        _check_agent(self.agent)
        object.__setattr__(self, "_l0", False)


# Derived connectives, rewritten into the five constructors.

def Or(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def Iff(left: Formula, right: Formula) -> Formula:
    return And(Implies(left, right), Implies(right, left))


def Poss(agent: int, child: Formula) -> Formula:
    """Dual of Box: ``Poss[i] f`` is exactly ``~Box[i] ~f``."""
    return Not(Box(agent, Not(child)))


# The constants are contradictions/tautologies over a fixed ordinary atom,
# so they stay inside the five-constructor AST and round-trip through the
# printer.
FALSE = And(Atom("bot"), Not(Atom("bot")))
TRUE = Not(FALSE)


def is_l0(f: Formula) -> bool:
    """True iff ``f`` contains no Box node anywhere."""
    return f._l0


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, Not):
        return (f.child,)
    if isinstance(f, And):
        return (f.left, f.right)
    if isinstance(f, (Exp, Box)):
        return (f.child,)
    raise TypeError(f"not a formula: {f!r}")


def size(f: Formula) -> int:
    """Number of AST nodes."""
    return 1 + sum(size(c) for c in children(f))


def subformulas(f: Formula) -> set[Formula]:
    """Smallest set containing ``f`` and closed under immediate subformulas."""
    seen: set[Formula] = set()
    todo = [f]
    while todo:
        g = todo.pop()
        if g in seen:
            continue
        seen.add(g)
        todo.extend(children(g))
    return seen


def atoms(x: Formula | Iterable[Formula]) -> set[str]:
    """Atom names occurring in a formula or in a collection of formulas."""
    if isinstance(x, Formula):
        x = (x,)
    out: set[str] = set()
    for f in x:
        todo = [f]
        while todo:
            g = todo.pop()
            if isinstance(g, Atom):
                out.add(g.name)
            else:
                todo.extend(children(g))
    return out


def agents(f: Formula) -> set[int]:
    """Agent indices mentioned by modal operators in ``f``."""
    out: set[int] = set()
    todo = [f]
    while todo:
        g = todo.pop()
        if isinstance(g, (Exp, Box)):
            out.add(g.agent)
        todo.extend(children(g))
    return out


def print_formula(f: Formula) -> str:
    """Canonical concrete syntax; ``parse_formula`` inverts it."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + print_formula(f.child)
    if isinstance(f, And):
        return f"({print_formula(f.left)} & {print_formula(f.right)})"
    if isinstance(f, Exp):
        return f"Exp[{f.agent}] " + print_formula(f.child)
    if isinstance(f, Box):
        return f"Box[{f.agent}] " + print_formula(f.child)
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Tokenizer and recursive-descent parser.
#
# Precedence, loosest to tightest:  <->  ->  |  &  (~ and modal operators).
# ``&``, ``|`` and ``<->`` associate to the left, ``->`` to the right.
# Modal operators bind exactly like negation.

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<nl>\n)
      | (?P<iff><->)
      | (?P<imp>->)
      | (?P<sym>[~&|()\[\]])
      | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<int>[0-9]+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind == "ws":
            col += len(tok)
        else:
            if kind in ("iff", "imp", "sym"):
                kind = tok
            tokens.append(_Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


@dataclass(frozen=True)
class Language:
    """Node builders for one concrete language sharing this grammar."""

    atom: Callable[[str], object]
    neg: Callable[[object], object]
    conj: Callable[[object, object], object]
    modals: Mapping[str, Callable[[int, object], object]]

    def disj(self, a, b):
        return self.neg(self.conj(self.neg(a), self.neg(b)))

    def implies(self, a, b):
        return self.neg(self.conj(a, self.neg(b)))

    def iff(self, a, b):
        return self.conj(self.implies(a, b), self.implies(b, a))

    def falsum(self):
        bot = self.atom("bot")
        return self.conj(bot, self.neg(bot))

    def verum(self):
        return self.neg(self.falsum())


class _Parser:
    def __init__(self, text: str, n_agents: int, lang: Language):
        if n_agents < 1:
            raise AgentRangeError(f"n_agents must be >= 1, got {n_agents}")
        self.tokens = _tokenize(text)
        self.pos = 0
        self.n_agents = n_agents
        self.lang = lang

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"found {found!r}", tok.line, tok.col, expected=(kind,))
        return self.advance()

    def parse(self):
        f = self.iff_level()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
        return f

    def iff_level(self):
        f = self.imp_level()
        while self.peek().kind == "<->":
            self.advance()
            f = self.lang.iff(f, self.imp_level())
        return f

    def imp_level(self):
        f = self.or_level()
        if self.peek().kind == "->":
            self.advance()
            return self.lang.implies(f, self.imp_level())
        return f

    def or_level(self):
        f = self.and_level()
        while self.peek().kind == "|":
            self.advance()
            f = self.lang.disj(f, self.and_level())
        return f

    def and_level(self):
        f = self.unary()
        while self.peek().kind == "&":
            self.advance()
            f = self.lang.conj(f, self.unary())
        return f

    def unary(self):
        tok = self.peek()
        if tok.kind == "~":
            self.advance()
            return self.lang.neg(self.unary())
        if tok.kind == "name" and tok.text in self.lang.modals:
            self.advance()
            self.expect("[")
            itok = self.expect("int")
            agent = int(itok.text)
            if not 1 <= agent <= self.n_agents:
                raise AgentRangeError(
                    f"agent index {agent} outside [1, {self.n_agents}]",
                    itok.line,
                    itok.col,
                )
            self.expect("]")
            child = self.unary()
            try:
                return self.lang.modals[tok.text](agent, child)
            except StratificationError as exc:
                raise StratificationError(str(exc.args[0] if exc.args else exc),
                                          tok.line, tok.col) from None
        return self.primary()

    def primary(self):
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            f = self.iff_level()
            self.expect(")")
            return f
        if tok.kind == "name":
            name = tok.text
            if name == "true":
                self.advance()
                return self.lang.verum()
            if name == "false":
                self.advance()
                return self.lang.falsum()
            if name.startswith("_"):
                raise ParseError(
                    f"names starting with '_' are reserved: {name!r}",
                    tok.line, tok.col,
                )
            if name[0].isupper():
                raise ParseError(
                    f"unknown operator {name!r}", tok.line, tok.col,
                    expected=tuple(sorted(self.lang.modals)),
                )
            if not ATOM_NAME_RE.fullmatch(name):
                raise ParseError(f"invalid atom name {name!r}", tok.line, tok.col)
            self.advance()
            return self.lang.atom(name)
        found = tok.text or "end of input"
        raise ParseError(
            f"found {found!r}", tok.line, tok.col,
            expected=("atom", "'~'", "'('") + tuple(sorted(self.lang.modals)),
        )


_LDA_LANGUAGE = Language(
    atom=Atom,
    neg=Not,
    conj=And,
    modals={"Exp": Exp, "Box": Box, "Poss": Poss},
)


def parse_formula(text: str, n_agents: int) -> Formula:
    """Parse concrete syntax into a Formula.

    Raises ParseError on malformed input, StratificationError when an Exp
    body contains Box, and AgentRangeError for indices outside
    [1, n_agents].  All three carry 1-based line/column positions.
    """
    return _Parser(text, n_agents, _LDA_LANGUAGE).parse()


def parse_with(text: str, n_agents: int, lang: Language):
    """Parse using this grammar with a different node vocabulary."""
    return _Parser(text, n_agents, lang).parse()
