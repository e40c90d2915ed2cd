"""Seeded random generators for formulas and models.

Everything here is driven by an explicit ``random.Random`` so suites are
reproducible.  Formula generation draws constructors with fixed weights:
at depth 0 always an atom; otherwise atom 0.25, negation 0.20,
conjunction 0.25, explicit belief 0.15, implicit belief 0.15 (the last
weight is folded into the others when only Box-free output is wanted).
"""

from __future__ import annotations

from random import Random
from typing import Iterable, Sequence

from .awareness import AwarenessStructure, LgaFormula, translate
from .mab import MAB, BeliefBase, is_alternative, is_cmab
from .ndm import NDM, QuasiNDM, quasi_to_ndm
from .syntax import And, Atom, Box, Exp, Formula, Not

DEFAULT_ATOMS = ("p", "q", "r")


def random_formula(
    rng: Random,
    max_depth: int,
    n_agents: int,
    atom_names: Sequence[str] = DEFAULT_ATOMS,
    l0_only: bool = False,
) -> Formula:
    if max_depth <= 0:
        return Atom(rng.choice(atom_names))
    roll = rng.random()
    if roll < 0.25:
        return Atom(rng.choice(atom_names))
    if roll < 0.45:
        return Not(random_formula(rng, max_depth - 1, n_agents, atom_names, l0_only))
    if roll < 0.70:
        return And(
            random_formula(rng, max_depth - 1, n_agents, atom_names, l0_only),
            random_formula(rng, max_depth - 1, n_agents, atom_names, l0_only),
        )
    if roll < 0.85 or l0_only:
        return Exp(
            rng.randint(1, n_agents),
            random_formula(rng, max_depth - 1, n_agents, atom_names, l0_only=True),
        )
    return Box(
        rng.randint(1, n_agents),
        random_formula(rng, max_depth - 1, n_agents, atom_names, l0_only),
    )


def random_l0(rng: Random, max_depth: int, n_agents: int,
              atom_names: Sequence[str] = DEFAULT_ATOMS) -> Formula:
    return random_formula(rng, max_depth, n_agents, atom_names, l0_only=True)


def random_quasi_ndm(
    rng: Random,
    max_worlds: int,
    n_agents: int,
    atom_names: Sequence[str] = DEFAULT_ATOMS,
    belief_depth: int = 2,
    pool_size: int = 4,
) -> QuasiNDM:
    """A random model satisfying C1* and C2.

    Doxastic sets are drawn from a small shared pool; any set whose truth
    intersection comes out empty is shrunk until a notional world exists
    (dropping beliefs only grows the intersection), then the notional set
    is a random non-empty subset of the intersection.
    """
    k = rng.randint(1, max_worlds)
    worlds = [f"w{j}" for j in range(k)]
    valuation = {
        name: frozenset(w for w in worlds if rng.random() < 0.5)
        for name in atom_names
    }
    pool = [random_l0(rng, belief_depth, n_agents, atom_names)
            for _ in range(pool_size)]
    doxastic: dict[tuple[int, str], set[Formula]] = {}
    for i in range(1, n_agents + 1):
        for w in worlds:
            doxastic[(i, w)] = {
                a for a in pool if rng.random() < 0.35
            }

    def build(dox):
        return QuasiNDM(
            n_agents, worlds, dox,
            {key: worlds for key in dox},  # placeholder, C2-safe
            valuation,
        )

    # Shrink doxastic sets until every belief intersection is non-empty.
    while True:
        probe = build(doxastic)
        empty = None
        for i in range(1, n_agents + 1):
            for w in worlds:
                if not probe.belief_cap(i, w):
                    empty = (i, w)
                    break
            if empty:
                break
        if empty is None:
            break
        key = empty
        doxastic[key] = set(sorted(doxastic[key], key=str)[1:])

    probe = build(doxastic)
    notional: dict[tuple[int, str], frozenset[str]] = {}
    cache: dict = {}
    for i in range(1, n_agents + 1):
        for w in worlds:
            cap = sorted(probe.belief_cap(i, w, cache))
            picked = [v for v in cap if rng.random() < 0.6]
            if not picked:
                picked = [rng.choice(cap)]
            notional[(i, w)] = frozenset(picked)
    return QuasiNDM(n_agents, worlds, doxastic, notional, valuation)


def random_ndm(rng: Random, max_worlds: int, n_agents: int,
               atom_names: Sequence[str] = DEFAULT_ATOMS) -> NDM:
    quasi = random_quasi_ndm(rng, max_worlds, n_agents, atom_names)
    return quasi_to_ndm(quasi, Atom(atom_names[0]))


def satisfy_l0(formulas: Iterable[Formula], n_agents: int) -> BeliefBase | None:
    """Build one belief base satisfying every given Box-free formula.

    A small backtracking decomposition: atoms split into forced-true and
    forced-false, explicit beliefs into forced members and forced
    non-members per agent.  Returns None when the requirements clash.
    """

    def walk(todo, true_atoms, false_atoms, members, excluded):
        while todo:
            f, sign = todo.pop()
            if isinstance(f, Atom):
                if sign:
                    if f.name in false_atoms:
                        return None
                    true_atoms = true_atoms | {f.name}
                else:
                    if f.name in true_atoms:
                        return None
                    false_atoms = false_atoms | {f.name}
            elif isinstance(f, Not):
                todo.append((f.child, not sign))
            elif isinstance(f, And):
                if sign:
                    todo.append((f.left, True))
                    todo.append((f.right, True))
                else:
                    branch = walk(
                        todo + [(f.left, False)],
                        true_atoms, false_atoms, members, excluded,
                    )
                    if branch is not None:
                        return branch
                    todo.append((f.right, False))
            elif isinstance(f, Exp):
                i = f.agent
                if sign:
                    if f.child in excluded.get(i, frozenset()):
                        return None
                    members = {**members, i: members.get(i, frozenset()) | {f.child}}
                else:
                    if f.child in members.get(i, frozenset()):
                        return None
                    excluded = {**excluded, i: excluded.get(i, frozenset()) | {f.child}}
            else:
                return None
        return true_atoms, members

    outcome = walk([(f, True) for f in formulas], frozenset(), frozenset(), {}, {})
    if outcome is None:
        return None
    true_atoms, members = outcome
    return BeliefBase.of(n_agents, members, true_atoms)


def random_cmab(
    rng: Random,
    n_agents: int,
    atom_names: Sequence[str] = DEFAULT_ATOMS,
    max_context: int = 4,
    belief_depth: int = 2,
) -> MAB:
    """A random consistent belief model.

    Starts from random bases, then repairs: any base whose agent lacks an
    alternative gets a purpose-built witness added to the context, or has
    that agent's beliefs thinned when no witness exists.  A final
    safety net clears all belief sets, which is always consistent.
    """

    def random_base():
        beliefs = {
            i: {
                random_l0(rng, belief_depth, n_agents, atom_names)
                for _ in range(rng.randint(0, 2))
            }
            for i in range(1, n_agents + 1)
        }
        val = {a for a in atom_names if rng.random() < 0.5}
        return BeliefBase.of(n_agents, beliefs, val)

    context = [random_base() for _ in range(rng.randint(1, max_context))]
    base = rng.choice(context) if rng.random() < 0.5 else random_base()

    for _ in range(40):
        m = MAB(base, tuple(context))
        if is_cmab(m):
            return m
        repaired = False
        for b in list(m.context) + [base]:
            for i in range(1, n_agents + 1):
                if any(is_alternative(b, c, i) for c in m.context):
                    continue
                witness = satisfy_l0(b.belief_set(i), n_agents)
                if witness is not None:
                    context = list(m.context) + [witness]
                else:
                    thinned = sorted(b.belief_set(i), key=str)[1:]
                    replacement = BeliefBase.of(
                        n_agents,
                        {
                            j: (thinned if j == i else b.belief_set(j))
                            for j in range(1, n_agents + 1)
                        },
                        b.valuation,
                    )
                    context = [replacement if c == b else c for c in m.context]
                    if base == b:
                        base = replacement
                repaired = True
                break
            if repaired:
                break

    empty = BeliefBase.of(n_agents, {}, set())
    stripped = [BeliefBase.of(n_agents, {}, c.valuation) for c in context]
    m = MAB(BeliefBase.of(n_agents, {}, base.valuation), tuple(stripped) + (empty,))
    assert is_cmab(m)
    return m


def random_lga_formula(rng: Random, max_depth: int, n_agents: int,
                       atom_names: Sequence[str] = DEFAULT_ATOMS) -> LgaFormula:
    """Random awareness-language formula, for awareness sets and tests."""
    from .awareness import Aware, ImplicitBel, LgaAnd, LgaAtom, LgaNot

    if max_depth <= 0:
        return LgaAtom(rng.choice(atom_names))
    roll = rng.random()
    if roll < 0.30:
        return LgaAtom(rng.choice(atom_names))
    if roll < 0.50:
        return LgaNot(random_lga_formula(rng, max_depth - 1, n_agents, atom_names))
    if roll < 0.72:
        return LgaAnd(
            random_lga_formula(rng, max_depth - 1, n_agents, atom_names),
            random_lga_formula(rng, max_depth - 1, n_agents, atom_names),
        )
    if roll < 0.86:
        return translate(random_l0(rng, max_depth - 1, n_agents, atom_names))
    if roll < 0.94:
        return Aware(
            rng.randint(1, n_agents),
            random_lga_formula(rng, max_depth - 1, n_agents, atom_names),
        )
    return ImplicitBel(
        rng.randint(1, n_agents),
        random_lga_formula(rng, max_depth - 1, n_agents, atom_names),
    )


def random_awareness_structure(
    rng: Random,
    max_states: int,
    n_agents: int,
    atom_names: Sequence[str] = DEFAULT_ATOMS,
) -> AwarenessStructure:
    """A random serial structure; awareness sets mix translations and raw formulas."""
    k = rng.randint(1, max_states)
    states = [f"s{j}" for j in range(k)]
    access = {}
    awareness = {}
    for i in range(1, n_agents + 1):
        for s in states:
            succ = [t for t in states if rng.random() < 0.4]
            if not succ:
                succ = [rng.choice(states)]
            access[(i, s)] = succ
            awareness[(i, s)] = {
                random_lga_formula(rng, 2, n_agents, atom_names)
                for _ in range(rng.randint(0, 2))
            }
    valuation = {
        a: {s for s in states if rng.random() < 0.5} for a in atom_names
    }
    return AwarenessStructure(n_agents, states, access, awareness, valuation)
