"""General-awareness target language, serial structures, and the embedding.

The awareness language has three operators per agent: B (truth at every
accessible state), A (structural membership in the state's awareness
set), and X (their conjunction).  Formulas of the belief language embed
by sending Exp to X and Box to B; the model constructions below carry
truth back and forth across that translation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ConditionViolationError,
    ModelFormatError,
    NotSerialError,
    StratificationError,
    UnknownStateError,
)
from .ndm import QuasiNDM, check_conditions
from .syntax import (
    And,
    Atom,
    Box,
    Exp,
    Formula,
    Language,
    Not,
    parse_with,
    valid_atom_name,
)


class LgaFormula:
    """Base class of awareness-language formulas; fully recursive grammar."""


@dataclass(frozen=True)
class LgaAtom(LgaFormula):
    name: str

    def __post_init__(self):
        if not valid_atom_name(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class LgaNot(LgaFormula):
    child: LgaFormula


@dataclass(frozen=True)
class LgaAnd(LgaFormula):
    left: LgaFormula
    right: LgaFormula


@dataclass(frozen=True)
class ImplicitBel(LgaFormula):
    """B[i]: truth at every state the agent's relation can reach."""

    agent: int
    child: LgaFormula


@dataclass(frozen=True)
class Aware(LgaFormula):
    """A[i]: the body is a structural member of the agent's awareness set."""

    agent: int
    child: LgaFormula


@dataclass(frozen=True)
class ExplicitBel(LgaFormula):
    """X[i]: implicit belief plus awareness."""

    agent: int
    child: LgaFormula


_LGA_LANGUAGE = Language(
    atom=LgaAtom,
    neg=LgaNot,
    conj=LgaAnd,
    modals={"B": ImplicitBel, "A": Aware, "X": ExplicitBel},
)


def parse_lga(text: str, n_agents: int) -> LgaFormula:
    """Parse awareness-language concrete syntax (operators B, A, X)."""
    return parse_with(text, n_agents, _LGA_LANGUAGE)


def print_lga(f: LgaFormula) -> str:
    if isinstance(f, LgaAtom):
        return f.name
    if isinstance(f, LgaNot):
        return "~" + print_lga(f.child)
    if isinstance(f, LgaAnd):
        return f"({print_lga(f.left)} & {print_lga(f.right)})"
    if isinstance(f, ImplicitBel):
        return f"B[{f.agent}] " + print_lga(f.child)
    if isinstance(f, Aware):
        return f"A[{f.agent}] " + print_lga(f.child)
    if isinstance(f, ExplicitBel):
        return f"X[{f.agent}] " + print_lga(f.child)
    raise TypeError(f"not an awareness formula: {f!r}")


def lga_agents(f: LgaFormula) -> set[int]:
    out: set[int] = set()
    todo = [f]
    while todo:
        g = todo.pop()
        if isinstance(g, (ImplicitBel, Aware, ExplicitBel)):
            out.add(g.agent)
            todo.append(g.child)
        elif isinstance(g, LgaNot):
            todo.append(g.child)
        elif isinstance(g, LgaAnd):
            todo.extend((g.left, g.right))
    return out


def translate(f: Formula) -> LgaFormula:
    """Structure-preserving embedding: Exp becomes X, Box becomes B.

    The output has exactly as many nodes as the input, and the map is
    injective (no two belief formulas share a translation).
    """
    if isinstance(f, Atom):
        return LgaAtom(f.name)
    if isinstance(f, Not):
        return LgaNot(translate(f.child))
    if isinstance(f, And):
        return LgaAnd(translate(f.left), translate(f.right))
    if isinstance(f, Exp):
        return ExplicitBel(f.agent, translate(f.child))
    if isinstance(f, Box):
        return ImplicitBel(f.agent, translate(f.child))
    raise TypeError(f"not a formula: {f!r}")


def untranslate(g: LgaFormula) -> Formula | None:
    """Inverse of :func:`translate` on its image; None off the image.

    Awareness operators never occur in translations, and an X body must
    translate back to a Box-free formula.
    """
    if isinstance(g, LgaAtom):
        return Atom(g.name)
    if isinstance(g, LgaNot):
        c = untranslate(g.child)
        return None if c is None else Not(c)
    if isinstance(g, LgaAnd):
        left = untranslate(g.left)
        right = untranslate(g.right)
        if left is None or right is None:
            return None
        return And(left, right)
    if isinstance(g, ExplicitBel):
        c = untranslate(g.child)
        if c is None:
            return None
        try:
            return Exp(g.agent, c)
        except StratificationError:
            return None
    if isinstance(g, ImplicitBel):
        c = untranslate(g.child)
        return None if c is None else Box(g.agent, c)
    if isinstance(g, Aware):
        return None
    raise TypeError(f"not an awareness formula: {g!r}")


Key = tuple[int, str]


class AwarenessStructure:
    """States with per-agent accessibility relations and awareness sets.

    The intended class keeps every relation serial (each state reaches at
    least one state per agent); helpers that rely on it check explicitly.
    Treat instances as immutable.
    """

    def __init__(
        self,
        n_agents: int,
        states: Iterable[str],
        access: Mapping[Key, Iterable[str]] | None = None,
        awareness: Mapping[Key, Iterable[LgaFormula]] | None = None,
        valuation: Mapping[str, Iterable[str]] | None = None,
    ):
        if n_agents < 1:
            raise ModelFormatError(f"n_agents must be >= 1, got {n_agents}")
        self.n_agents = n_agents
        self.states: tuple[str, ...] = tuple(dict.fromkeys(states))
        if not self.states:
            raise ModelFormatError("a structure needs at least one state")
        sset = set(self.states)
        access = dict(access or {})
        awareness = dict(awareness or {})
        for key in list(access) + list(awareness):
            i, s = key
            if not 1 <= i <= n_agents:
                raise ModelFormatError(f"agent index {i} outside [1, {n_agents}]")
            if s not in sset:
                raise ModelFormatError(f"unknown state {s!r}")
        self.access: dict[Key, frozenset[str]] = {}
        self.awareness: dict[Key, frozenset[LgaFormula]] = {}
        for i in range(1, n_agents + 1):
            for s in self.states:
                succ = frozenset(access.get((i, s), ()))
                bad = succ - sset
                if bad:
                    raise ModelFormatError(
                        f"relation of ({i}, {s!r}) mentions unknown states {sorted(bad)}"
                    )
                self.access[(i, s)] = succ
                self.awareness[(i, s)] = frozenset(awareness.get((i, s), ()))
        self.valuation: dict[str, frozenset[str]] = {}
        for name, ss in (valuation or {}).items():
            if not valid_atom_name(name):
                raise ModelFormatError(f"invalid atom name {name!r}")
            ss = frozenset(ss)
            bad = ss - sset
            if bad:
                raise ModelFormatError(
                    f"valuation of {name!r} mentions unknown states {sorted(bad)}"
                )
            if ss:
                self.valuation[name] = ss

    def is_serial(self) -> bool:
        return all(self.access[(i, s)] for i in range(1, self.n_agents + 1)
                   for s in self.states)

    def truth_set(self, f: LgaFormula, _cache: dict | None = None) -> frozenset[str]:
        cache = _cache if _cache is not None else {}
        return self._ts(f, cache)

    def _ts(self, f: LgaFormula, cache: dict) -> frozenset[str]:
        hit = cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, LgaAtom):
            out = self.valuation.get(f.name, frozenset())
        elif isinstance(f, LgaNot):
            out = frozenset(self.states) - self._ts(f.child, cache)
        elif isinstance(f, LgaAnd):
            out = self._ts(f.left, cache) & self._ts(f.right, cache)
        elif isinstance(f, ImplicitBel):
            body = self._ts(f.child, cache)
            out = frozenset(
                s for s in self.states if self.access[(f.agent, s)] <= body
            )
        elif isinstance(f, Aware):
            out = frozenset(
                s for s in self.states if f.child in self.awareness[(f.agent, s)]
            )
        elif isinstance(f, ExplicitBel):
            out = self._ts(ImplicitBel(f.agent, f.child), cache) & self._ts(
                Aware(f.agent, f.child), cache
            )
        else:
            raise TypeError(f"not an awareness formula: {f!r}")
        cache[f] = out
        return out

    def eval(self, state: str, f: LgaFormula) -> bool:
        if state not in self.states:
            raise UnknownStateError(f"unknown state {state!r}")
        return state in self.truth_set(f)

    def to_json(self) -> dict:
        def bygroup(mapping, render):
            out: dict[str, dict[str, list]] = {}
            for (i, s), val in mapping.items():
                if val:
                    out.setdefault(str(i), {})[s] = render(val)
            return out

        return {
            "agents": self.n_agents,
            "states": list(self.states),
            "access": bygroup(self.access, sorted),
            "awareness": bygroup(
                self.awareness, lambda fs: sorted(print_lga(f) for f in fs)
            ),
            "valuation": {
                name: sorted(ss) for name, ss in sorted(self.valuation.items())
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AwarenessStructure":
        if not isinstance(obj, dict) or "states" not in obj:
            raise ModelFormatError("structure JSON needs 'agents' and 'states'")
        n = obj.get("agents")
        if not isinstance(n, int) or n < 1:
            raise ModelFormatError(f"bad agent count {n!r}")
        access: dict[Key, list[str]] = {}
        for key, per in obj.get("access", {}).items():
            for s, items in per.items():
                access[(int(key), s)] = list(items)
        awareness: dict[Key, list[LgaFormula]] = {}
        for key, per in obj.get("awareness", {}).items():
            for s, items in per.items():
                awareness[(int(key), s)] = [parse_lga(t, n) for t in items]
        return cls(n, obj["states"], access, awareness, obj.get("valuation", {}))


def eval_awareness(m: AwarenessStructure, state: str, f: LgaFormula) -> bool:
    return m.eval(state, f)


def quasi_ndm_to_awareness(m: QuasiNDM) -> AwarenessStructure:
    """View a quasi-notional model as an awareness structure.

    Relations copy the notional sets (serial because notional sets are
    non-empty), awareness sets are the translated doxastic sets, and the
    valuation carries over.  Truth of any belief formula at a world equals
    truth of its translation at the same state.
    """
    report = check_conditions(m)
    if not (report.c1_star and report.c2):
        raise ConditionViolationError(
            "conversion needs C1* and C2: " + report.summary()
        )
    awareness = {
        key: frozenset(translate(a) for a in ds)
        for key, ds in m.doxastic.items()
    }
    return AwarenessStructure(
        m.n_agents, m.worlds, m.notional, awareness, m.valuation
    )


def awareness_to_quasi_ndm(m: AwarenessStructure) -> QuasiNDM:
    """Read a quasi-notional model off a serial awareness structure.

    Notional sets copy the relations; a doxastic set keeps a candidate
    belief only when its translation is in the awareness set and holds at
    every accessible state (that filter is what gives C1*).  Candidates
    are the awareness members that lie in the translation's image of the
    Box-free fragment, since doxastic sets are Box-free; other awareness
    members cannot affect translated formulas and are ignored.
    """
    if not m.is_serial():
        for i in range(1, m.n_agents + 1):
            for s in m.states:
                if not m.access[(i, s)]:
                    raise NotSerialError(
                        f"state {s!r} has no successor for agent {i}"
                    )
    cache: dict = {}
    doxastic: dict[Key, set[Formula]] = {}
    for (i, s), aware in m.awareness.items():
        keep: set[Formula] = set()
        for g in aware:
            a = untranslate(g)
            if a is None or not a.is_l0():
                continue
            if m.access[(i, s)] <= m.truth_set(g, cache):
                keep.add(a)
        doxastic[(i, s)] = keep
    return QuasiNDM(m.n_agents, m.states, doxastic, m.access, m.valuation)
