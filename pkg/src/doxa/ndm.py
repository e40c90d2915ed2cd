"""Notional doxastic models, their conditions, and constructive transformations.

A quasi-NDM assigns each agent, at each world, a finite set of Box-free
formulas (the doxastic set) and a set of notional worlds.  Condition C1*
requires the notional set to lie inside the truth set of every doxastic
member; C2 forbids empty notional sets.  An NDM strengthens C1* to
equality (C1): the notional worlds are exactly the worlds where all the
agent's explicit beliefs hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    ConditionViolationError,
    ModelFormatError,
    SigmaNotClosedError,
    UnknownWorldError,
)
from .mab import MAB, BeliefBase, eval_base, is_alternative, require_cmab
from .syntax import (
    And,
    Atom,
    Box,
    Exp,
    Formula,
    Not,
    atoms,
    children,
    is_l0,
    parse_formula,
    print_formula,
    size,
    subformulas,
    valid_atom_name,
)

Key = tuple[int, str]


class QuasiNDM:
    """Worlds, per-(agent, world) doxastic and notional sets, and a valuation.

    The constructor normalizes its inputs (missing doxastic/notional
    entries become empty) and validates references, but does not check
    C1*/C2; use :func:`check_conditions` for that.  Treat instances as
    immutable.
    """

    def __init__(
        self,
        n_agents: int,
        worlds: Iterable[str],
        doxastic: Mapping[Key, Iterable[Formula]] | None = None,
        notional: Mapping[Key, Iterable[str]] | None = None,
        valuation: Mapping[str, Iterable[str]] | None = None,
    ):
        if n_agents < 1:
            raise ModelFormatError(f"n_agents must be >= 1, got {n_agents}")
        self.n_agents = n_agents
        self.worlds: tuple[str, ...] = tuple(dict.fromkeys(worlds))
        if not self.worlds:
            raise ModelFormatError("a model needs at least one world")
        wset = set(self.worlds)
        self.doxastic: dict[Key, frozenset[Formula]] = {}
        self.notional: dict[Key, frozenset[str]] = {}
        doxastic = dict(doxastic or {})
        notional = dict(notional or {})
        for key in list(doxastic) + list(notional):
            i, w = key
            if not 1 <= i <= n_agents:
                raise ModelFormatError(f"agent index {i} outside [1, {n_agents}]")
            if w not in wset:
                raise ModelFormatError(f"unknown world {w!r}")
        for i in range(1, n_agents + 1):
            for w in self.worlds:
                ds = frozenset(doxastic.get((i, w), ()))
                for f in ds:
                    if not is_l0(f):
                        raise ModelFormatError(
                            f"doxastic set of ({i}, {w!r}) contains Box: "
                            f"{print_formula(f)}"
                        )
                self.doxastic[(i, w)] = ds
                ns = frozenset(notional.get((i, w), ()))
                bad = ns - wset
                if bad:
                    raise ModelFormatError(
                        f"notional set of ({i}, {w!r}) mentions unknown worlds {sorted(bad)}"
                    )
                self.notional[(i, w)] = ns
        self.valuation: dict[str, frozenset[str]] = {}
        for name, ws in (valuation or {}).items():
            if not valid_atom_name(name):
                raise ModelFormatError(f"invalid atom name {name!r}")
            ws = frozenset(ws)
            bad = ws - wset
            if bad:
                raise ModelFormatError(
                    f"valuation of {name!r} mentions unknown worlds {sorted(bad)}"
                )
            if ws:
                self.valuation[name] = ws

    def truth_set(self, f: Formula, _cache: dict | None = None) -> frozenset[str]:
        """Worlds where ``f`` holds, computed bottom-up over subformulas."""
        cache = _cache if _cache is not None else {}
        return self._ts(f, cache)

    def _ts(self, f: Formula, cache: dict) -> frozenset[str]:
        hit = cache.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = self.valuation.get(f.name, frozenset())
        elif isinstance(f, Not):
            out = frozenset(self.worlds) - self._ts(f.child, cache)
        elif isinstance(f, And):
            out = self._ts(f.left, cache) & self._ts(f.right, cache)
        elif isinstance(f, Exp):
            out = frozenset(
                w for w in self.worlds if f.child in self.doxastic[(f.agent, w)]
            )
        elif isinstance(f, Box):
            body = self._ts(f.child, cache)
            out = frozenset(
                w for w in self.worlds if self.notional[(f.agent, w)] <= body
            )
        else:
            raise TypeError(f"not a formula: {f!r}")
        cache[f] = out
        return out

    def belief_cap(self, agent: int, world: str, _cache: dict | None = None) -> frozenset[str]:
        """Intersection of the truth sets of the doxastic members.

        Empty doxastic sets give the whole world set (empty intersection
        convention), which keeps C1 meaningful for agents with no beliefs.
        """
        cap = frozenset(self.worlds)
        for a in self.doxastic[(agent, world)]:
            cap &= self.truth_set(a, _cache)
        return cap

    def eval(self, world: str, f: Formula) -> bool:
        if world not in self.worlds:
            raise UnknownWorldError(f"unknown world {world!r}")
        return world in self.truth_set(f)

    def atom_names(self) -> set[str]:
        out = set(self.valuation)
        for ds in self.doxastic.values():
            out |= atoms(ds)
        return out

    def to_json(self) -> dict:
        def bygroup(mapping, render):
            out: dict[str, dict[str, list]] = {}
            for (i, w), val in mapping.items():
                if val:
                    out.setdefault(str(i), {})[w] = render(val)
            return out

        return {
            "agents": self.n_agents,
            "worlds": list(self.worlds),
            "doxastic": bygroup(
                self.doxastic, lambda fs: sorted(print_formula(f) for f in fs)
            ),
            "notional": bygroup(self.notional, sorted),
            "valuation": {
                name: sorted(ws) for name, ws in sorted(self.valuation.items())
            },
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuasiNDM":
        if not isinstance(obj, dict) or "worlds" not in obj:
            raise ModelFormatError("model JSON needs 'agents' and 'worlds'")
        n = obj.get("agents")
        if not isinstance(n, int) or n < 1:
            raise ModelFormatError(f"bad agent count {n!r}")
        worlds = obj["worlds"]
        doxastic: dict[Key, list[Formula]] = {}
        for key, perworld in obj.get("doxastic", {}).items():
            for w, items in perworld.items():
                doxastic[(int(key), w)] = [parse_formula(s, n) for s in items]
        notional: dict[Key, list[str]] = {}
        for key, perworld in obj.get("notional", {}).items():
            for w, items in perworld.items():
                notional[(int(key), w)] = list(items)
        return cls(n, worlds, doxastic, notional, obj.get("valuation", {}))


class NDM(QuasiNDM):
    """A quasi-NDM whose notional sets are exactly the belief truth sets.

    Construction validates C1 (equality) and C2 and raises
    ConditionViolationError otherwise.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        report = check_conditions(self)
        if not (report.c1_exact and report.c2):
            raise ConditionViolationError(
                "not a notional doxastic model: " + report.summary()
            )

    @classmethod
    def from_quasi(cls, m: QuasiNDM) -> "NDM":
        return cls(m.n_agents, m.worlds, m.doxastic, m.notional, m.valuation)

    @classmethod
    def from_json(cls, obj: dict) -> "NDM":
        return cls.from_quasi(QuasiNDM.from_json(obj))


def eval_ndm(m: QuasiNDM, world: str, f: Formula) -> bool:
    """Evaluate ``f`` at ``world``: Exp by membership, Box over notional sets."""
    return m.eval(world, f)


@dataclass(frozen=True)
class Violation:
    condition: str  # "C1", "C1*", or "C2"
    agent: int
    world: str
    formula: Formula | None = None
    witness: str | None = None

    def describe(self) -> str:
        parts = [f"{self.condition} at (agent {self.agent}, world {self.world!r})"]
        if self.formula is not None:
            parts.append(f"formula {print_formula(self.formula)}")
        if self.witness is not None:
            parts.append(f"witness world {self.witness!r}")
        return ", ".join(parts)


@dataclass
class ConditionReport:
    c1_star: bool
    c1_exact: bool
    c2: bool
    violations: list[Violation] = field(default_factory=list)

    def summary(self) -> str:
        if not self.violations:
            return "all conditions hold"
        return "; ".join(v.describe() for v in self.violations)


def check_conditions(m: QuasiNDM) -> ConditionReport:
    """Report whether C1* (inclusion), C1 (equality) and C2 (non-empty) hold."""
    cache: dict = {}
    violations: list[Violation] = []
    c1_star = c1_exact = c2 = True
    for i in range(1, m.n_agents + 1):
        for w in m.worlds:
            n_set = m.notional[(i, w)]
            if not n_set:
                c2 = False
                violations.append(Violation("C2", i, w))
            cap = m.belief_cap(i, w, cache)
            escaped = n_set - cap
            if escaped:
                c1_star = False
                c1_exact = False
                witness = min(escaped)
                offender = next(
                    a
                    for a in m.doxastic[(i, w)]
                    if witness not in m.truth_set(a, cache)
                )
                violations.append(Violation("C1*", i, w, offender, witness))
            else:
                missing = cap - n_set
                if missing:
                    c1_exact = False
                    violations.append(Violation("C1", i, w, None, min(missing)))
    return ConditionReport(c1_star, c1_exact, c2, violations)


@dataclass
class FiltrationResult:
    model: QuasiNDM
    class_of: dict[str, str]
    sigma: frozenset[Formula]

    def to_json(self) -> dict:
        return {
            "model": self.model.to_json(),
            "class_of": dict(sorted(self.class_of.items())),
            "sigma": [print_formula(f) for f in sorted_formulas(self.sigma)],
        }


def sorted_formulas(fs: Iterable[Formula]) -> list[Formula]:
    """Deterministic formula order: by node count, then printed form."""
    return sorted(fs, key=lambda f: (size(f), print_formula(f)))


def filtrate(m: QuasiNDM, sigma: Iterable[Formula]) -> FiltrationResult:
    """Quotient ``m`` by agreement on a subformula-closed set of formulas.

    Worlds of the result are the distinct truth profiles over ``sigma``
    (their ids are the profile bit-strings).  Doxastic sets intersect over
    each class and are cut down to ``sigma``; notional sets are the
    smallest relation containing all projections; atoms outside ``sigma``
    become false everywhere.  Truth of every ``sigma`` member is preserved
    between corresponding worlds.
    """
    sigma = frozenset(sigma)
    for f in sigma:
        for c in children(f):
            if c not in sigma:
                raise SigmaNotClosedError(
                    f"{print_formula(f)} is in sigma but its subformula "
                    f"{print_formula(c)} is not"
                )
    order = sorted_formulas(sigma)
    cache: dict = {}
    truth = {f: m.truth_set(f, cache) for f in order}
    profile = {
        w: "".join("1" if w in truth[f] else "0" for f in order) for w in m.worlds
    }
    classes: dict[str, list[str]] = {}
    for w in m.worlds:
        classes.setdefault(profile[w], []).append(w)
    new_worlds = sorted(classes)
    sigma_atoms = atoms(sigma)

    doxastic: dict[Key, frozenset[Formula]] = {}
    notional: dict[Key, set[str]] = {}
    for i in range(1, m.n_agents + 1):
        for cls_id, members in classes.items():
            ds = frozenset.intersection(
                *(m.doxastic[(i, w)] for w in members)
            ) & sigma
            doxastic[(i, cls_id)] = ds
            image = {
                profile[v] for w in members for v in m.notional[(i, w)]
            }
            notional[(i, cls_id)] = image
    valuation = {
        name: frozenset(profile[w] for w in ws)
        for name, ws in m.valuation.items()
        if name in sigma_atoms
    }
    model = QuasiNDM(m.n_agents, new_worlds, doxastic, notional, valuation)
    return FiltrationResult(model, dict(profile), sigma)


def _fresh_names(m: QuasiNDM, forbidden: set[str]) -> dict[Key, str]:
    """One globally fresh atom name per (agent, world)."""
    taken = set(forbidden) | m.atom_names()
    names: dict[Key, str] = {}
    for i in range(1, m.n_agents + 1):
        for w in m.worlds:
            base = f"_f_{i}_{w}"
            name = base
            bump = 1
            while name in taken:
                bump += 1
                name = f"{base}_{bump}"
            taken.add(name)
            names[(i, w)] = name
    return names


def quasi_to_ndm(m: QuasiNDM, phi: Formula) -> NDM:
    """Pin every notional set with a fresh atom so C1 holds exactly.

    Each (agent, world) pair gets a fresh atom (outside the model's
    vocabulary and outside ``phi``) that is true exactly on the notional
    set and is added to the doxastic set.  The existing valuation is kept
    unchanged, so the truth of any formula over the old vocabulary,
    ``phi`` included, is preserved at every world.
    """
    names = _fresh_names(m, atoms(phi))
    doxastic = {
        key: ds | {Atom(names[key])} for key, ds in m.doxastic.items()
    }
    valuation = dict(m.valuation)
    for key, name in names.items():
        if m.notional[key]:
            valuation[name] = m.notional[key]
    return NDM(m.n_agents, m.worlds, doxastic, m.notional, valuation)


def cmab_to_ndm(m: MAB) -> tuple[NDM, str]:
    """Build a notional model from a consistent belief model.

    One world per structurally distinct base among the context members
    plus the base itself; doxastic sets copy the belief sets; notional
    sets collect the context worlds satisfying them; the valuation mirrors
    base satisfaction of atoms.  When the distinguished base lies outside
    its own context the intersection condition may hold only as an
    inclusion there, in which case fresh pinning atoms restore equality.
    Truth of every formula over the model's vocabulary is preserved
    between the returned world and the input.
    """
    require_cmab(m)
    bases = list(m.context)
    if m.base not in bases:
        bases.append(m.base)
    world_of = {b: f"w{k}" for k, b in enumerate(bases)}
    context_worlds = [world_of[b] for b in m.context]
    n = m.n_agents

    doxastic: dict[Key, frozenset[Formula]] = {}
    notional: dict[Key, frozenset[str]] = {}
    for b in bases:
        w = world_of[b]
        for i in range(1, n + 1):
            doxastic[(i, w)] = b.belief_set(i)
            notional[(i, w)] = frozenset(
                world_of[c]
                for c in m.context
                if is_alternative(b, c, i)
            )
    atom_names = set()
    for b in bases:
        atom_names |= b.valuation
    valuation = {
        name: frozenset(world_of[b] for b in bases if name in b.valuation)
        for name in atom_names
    }
    quasi = QuasiNDM(n, [world_of[b] for b in bases], doxastic, notional, valuation)
    root = world_of[m.base]
    report = check_conditions(quasi)
    if report.c1_exact and report.c2:
        return NDM.from_quasi(quasi), root
    return quasi_to_ndm(quasi, Atom("bot")), root


def ndm_to_cmab(m: QuasiNDM, world: str) -> MAB:
    """Read a consistent belief model off a notional model.

    Requires C1 and C2.  Worlds that agree on both their atom set and all
    doxastic sets are collapsed first (they are indistinguishable under
    C1), then each remaining world becomes one context member whose belief
    sets are the doxastic sets and whose actual state is the world's atom
    set.  The base is the member of the given world.
    """
    if world not in m.worlds:
        raise UnknownWorldError(f"unknown world {world!r}")
    report = check_conditions(m)
    if not (report.c1_exact and report.c2):
        raise ConditionViolationError(
            "conversion needs C1 and C2: " + report.summary()
        )
    atoms_at = {
        w: frozenset(name for name, ws in m.valuation.items() if w in ws)
        for w in m.worlds
    }

    def signature(w: str):
        return (
            atoms_at[w],
            tuple(m.doxastic[(i, w)] for i in range(1, m.n_agents + 1)),
        )

    rep_of: dict[str, str] = {}
    reps: list[str] = []
    by_sig: dict = {}
    for w in m.worlds:
        sig = signature(w)
        if sig not in by_sig:
            by_sig[sig] = w
            reps.append(w)
        rep_of[w] = by_sig[sig]

    members = {
        u: BeliefBase.of(
            m.n_agents,
            {i: m.doxastic[(i, u)] for i in range(1, m.n_agents + 1)},
            atoms_at[u],
        )
        for u in reps
    }
    context = tuple(members[u] for u in reps)
    out = MAB(members[rep_of[world]], context)
    require_cmab(out)
    return out
