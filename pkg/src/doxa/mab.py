"""Belief bases, contexts, and the two-stage satisfaction relation.

A BeliefBase holds one Box-free belief set per agent plus the set of
atoms that are actually true.  A MAB pairs a distinguished base with a
finite context of bases; implicit belief quantifies over the context
members that satisfy everything the agent explicitly believes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import AgentRangeError, ModelFormatError, NotConsistentError, NotL0Error
from .syntax import (
    And,
    Atom,
    Box,
    Exp,
    Formula,
    Not,
    is_l0,
    parse_formula,
    print_formula,
    valid_atom_name,
)


@dataclass(frozen=True)
class BeliefBase:
    """Per-agent finite belief sets plus the actual state (true atoms)."""

    n_agents: int
    beliefs: tuple[frozenset[Formula], ...]
    valuation: frozenset[str]

    def __post_init__(self):
        if self.n_agents < 1:
            raise AgentRangeError(f"n_agents must be >= 1, got {self.n_agents}")
        if len(self.beliefs) != self.n_agents:
            raise ModelFormatError(
                f"expected {self.n_agents} belief sets, got {len(self.beliefs)}"
            )
        for i, bs in enumerate(self.beliefs, start=1):
            for f in bs:
                if not is_l0(f):
                    raise NotL0Error(
                        f"belief of agent {i} contains Box: {print_formula(f)}"
                    )
        for name in self.valuation:
            if not valid_atom_name(name):
                raise ModelFormatError(f"invalid atom name in valuation: {name!r}")

    @classmethod
    def of(
        cls,
        n_agents: int,
        beliefs: Mapping[int, Iterable[Formula]] | None = None,
        valuation: Iterable[str] = (),
    ) -> "BeliefBase":
        """Build from a sparse agent->formulas mapping (1-based agents)."""
        beliefs = dict(beliefs or {})
        for i in beliefs:
            if not 1 <= i <= n_agents:
                raise AgentRangeError(f"agent index {i} outside [1, {n_agents}]")
        sets = tuple(
            frozenset(beliefs.get(i, ())) for i in range(1, n_agents + 1)
        )
        return cls(n_agents, sets, frozenset(valuation))

    def belief_set(self, agent: int) -> frozenset[Formula]:
        if not 1 <= agent <= self.n_agents:
            raise AgentRangeError(
                f"agent index {agent} outside [1, {self.n_agents}]"
            )
        return self.beliefs[agent - 1]

    def to_json(self) -> dict:
        return {
            "beliefs": {
                str(i): sorted(print_formula(f) for f in self.beliefs[i - 1])
                for i in range(1, self.n_agents + 1)
                if self.beliefs[i - 1]
            },
            "valuation": sorted(self.valuation),
        }

    @classmethod
    def from_json(cls, obj: dict, n_agents: int) -> "BeliefBase":
        if not isinstance(obj, dict):
            raise ModelFormatError("belief base must be a JSON object")
        raw = obj.get("beliefs", {})
        beliefs = {}
        for key, items in raw.items():
            try:
                agent = int(key)
            except ValueError:
                raise ModelFormatError(f"bad agent key {key!r}") from None
            beliefs[agent] = [parse_formula(s, n_agents) for s in items]
        return cls.of(n_agents, beliefs, obj.get("valuation", ()))


@dataclass(frozen=True)
class MAB:
    """A belief base together with a finite context of belief bases.

    The base is not required to be a context member.  Context entries are
    deduplicated structurally; their order is preserved but carries no
    meaning.
    """

    base: BeliefBase
    context: tuple[BeliefBase, ...] = field(default=())

    def __post_init__(self):
        deduped = []
        for b in self.context:
            if b.n_agents != self.base.n_agents:
                raise ModelFormatError("context member has mismatched agent count")
            if b not in deduped:
                deduped.append(b)
        object.__setattr__(self, "context", tuple(deduped))

    @property
    def n_agents(self) -> int:
        return self.base.n_agents

    def to_json(self) -> dict:
        return {
            "agents": self.n_agents,
            "base": self.base.to_json(),
            "context": [b.to_json() for b in self.context],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MAB":
        if not isinstance(obj, dict) or "base" not in obj:
            raise ModelFormatError("belief model JSON needs 'agents' and 'base'")
        n = obj.get("agents")
        if not isinstance(n, int) or n < 1:
            raise ModelFormatError(f"bad agent count {n!r}")
        base = BeliefBase.from_json(obj["base"], n)
        context = tuple(
            BeliefBase.from_json(o, n) for o in obj.get("context", ())
        )
        return cls(base, context)


def eval_base(b: BeliefBase, a: Formula) -> bool:
    """Evaluate a Box-free formula against one belief base.

    Explicit belief is structural membership: ``Exp[i] a`` holds iff ``a``
    is literally a member of agent i's belief set, with no closure of any
    kind.
    """
    if not is_l0(a):
        raise NotL0Error(f"formula contains Box: {print_formula(a)}")
    return _eval_base(b, a)


def _eval_base(b: BeliefBase, a: Formula) -> bool:
    if isinstance(a, Atom):
        return a.name in b.valuation
    if isinstance(a, Not):
        return not _eval_base(b, a.child)
    if isinstance(a, And):
        return _eval_base(b, a.left) and _eval_base(b, a.right)
    if isinstance(a, Exp):
        return a.child in b.belief_set(a.agent)
    raise NotL0Error(f"formula contains Box: {print_formula(a)}")


def is_alternative(b: BeliefBase, b2: BeliefBase, agent: int) -> bool:
    """True iff ``b2`` satisfies every formula agent ``agent`` believes at ``b``."""
    return all(eval_base(b2, a) for a in b.belief_set(agent))


def alternatives(m: MAB, agent: int) -> list[BeliefBase]:
    """Context members compatible with the base's beliefs, in context order."""
    return [b for b in m.context if is_alternative(m.base, b, agent)]


def eval_mab(m: MAB, f: Formula) -> bool:
    """Evaluate a formula at a belief model.

    Box-free parts are evaluated against the base directly; ``Box[i] f``
    holds iff ``f`` holds at every context member that is a doxastic
    alternative for agent i, with the context kept fixed through the
    recursion.
    """
    return _eval_mab(m.base, m.context, f)


def _eval_mab(base: BeliefBase, context: tuple[BeliefBase, ...], f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.name in base.valuation
    if isinstance(f, Not):
        return not _eval_mab(base, context, f.child)
    if isinstance(f, And):
        return _eval_mab(base, context, f.left) and _eval_mab(base, context, f.right)
    if isinstance(f, Exp):
        return f.child in base.belief_set(f.agent)
    if isinstance(f, Box):
        return all(
            _eval_mab(b, context, f.child)
            for b in context
            if is_alternative(base, b, f.agent)
        )
    raise TypeError(f"not a formula: {f!r}")


def is_cmab(m: MAB) -> bool:
    """Consistency: every member (and the base) has an alternative per agent."""
    bases = list(m.context) + [m.base]
    return all(
        any(is_alternative(b, b2, i) for b2 in m.context)
        for b in bases
        for i in range(1, m.n_agents + 1)
    )


def require_cmab(m: MAB) -> None:
    if not is_cmab(m):
        raise NotConsistentError(
            "belief model is not consistent: some base has no alternative"
        )
