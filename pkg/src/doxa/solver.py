"""Decision procedures: tableau, satisfiability pipeline, bounded search.

``tableau_sat`` decides satisfiability of awareness-language formulas over
serial structures with a negation-normal-form tableau: conjunctions and
disjunctions are expanded first, then each agent's box set spawns one
successor per diamond witness, or a single seriality successor when boxes
are present without diamonds.  Awareness literals behave as world-local
atoms.  SAT answers carry a structure that is re-checked by evaluation
before being returned; UNSAT answers carry a certificate tree whose every
step can be replayed.

``sat_lda`` decides the belief language by translating into the awareness
language, and converts satisfying structures back into quasi-notional,
notional, and belief-model views, each re-checked by its own evaluator.

``bounded_model_search`` is the independent brute-force route: it
enumerates all world types (valuation bits, per-agent belief subsets of
the query's Exp bodies, truth bits for its Box subformulas), eliminates
types that cannot be given consistent notional sets until a fixpoint is
reached, and extracts a small witness model from the survivors.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from random import Random
from typing import Sequence

from .awareness import (
    Aware,
    AwarenessStructure,
    ExplicitBel,
    ImplicitBel,
    LgaAnd,
    LgaAtom,
    LgaFormula,
    LgaNot,
    awareness_to_quasi_ndm,
    eval_awareness,
    lga_agents,
    print_lga,
    translate,
)
from .errors import NotL0Error, ResourceLimitError
from .mab import MAB, eval_mab
from .ndm import (
    NDM,
    QuasiNDM,
    eval_ndm,
    filtrate,
    ndm_to_cmab,
    quasi_to_ndm,
    sorted_formulas,
)
from .syntax import (
    And,
    Atom,
    Box,
    Exp,
    Formula,
    Implies,
    Not,
    Or,
    agents,
    atoms,
    is_l0,
    print_formula,
    subformulas,
)

DEFAULT_NODE_BUDGET = 10**6


# ---------------------------------------------------------------------------
# Negation normal form for the tableau.

@dataclass(frozen=True)
class _Lit:
    name: str
    neg: bool


@dataclass(frozen=True)
class _AwLit:
    agent: int
    body: LgaFormula
    neg: bool


@dataclass(frozen=True)
class _NAnd:
    left: object
    right: object


@dataclass(frozen=True)
class _NOr:
    left: object
    right: object


@dataclass(frozen=True)
class _NBox:
    agent: int
    child: object


@dataclass(frozen=True)
class _NDia:
    agent: int
    child: object


def _nnf(f: LgaFormula, neg: bool = False):
    if isinstance(f, LgaAtom):
        return _Lit(f.name, neg)
    if isinstance(f, LgaNot):
        return _nnf(f.child, not neg)
    if isinstance(f, LgaAnd):
        a = _nnf(f.left, neg)
        b = _nnf(f.right, neg)
        return _NOr(a, b) if neg else _NAnd(a, b)
    if isinstance(f, ImplicitBel):
        if neg:
            return _NDia(f.agent, _nnf(f.child, True))
        return _NBox(f.agent, _nnf(f.child, False))
    if isinstance(f, Aware):
        # The body stays as written: awareness is structural membership.
        return _AwLit(f.agent, f.child, neg)
    if isinstance(f, ExplicitBel):
        box = ImplicitBel(f.agent, f.child)
        if neg:
            return _NOr(_nnf(box, True), _AwLit(f.agent, f.child, True))
        return _NAnd(_nnf(box, False), _AwLit(f.agent, f.child, False))
    raise TypeError(f"not an awareness formula: {f!r}")


def _print_nnf(x) -> str:
    if isinstance(x, _Lit):
        return ("~" if x.neg else "") + x.name
    if isinstance(x, _AwLit):
        return ("~" if x.neg else "") + f"A[{x.agent}] " + print_lga(x.body)
    if isinstance(x, _NAnd):
        return f"({_print_nnf(x.left)} & {_print_nnf(x.right)})"
    if isinstance(x, _NOr):
        return f"({_print_nnf(x.left)} | {_print_nnf(x.right)})"
    if isinstance(x, _NBox):
        return f"B[{x.agent}] " + _print_nnf(x.child)
    if isinstance(x, _NDia):
        return f"Dia[{x.agent}] " + _print_nnf(x.child)
    raise TypeError(f"not a tableau formula: {x!r}")


def _nnf_key(x) -> str:
    return _print_nnf(x)


# ---------------------------------------------------------------------------
# Certificates.

@dataclass(frozen=True)
class CertNode:
    """One step of a closed tableau.

    ``formulas`` is the node's formula set; the rule says why the node is
    unsatisfiable: a literal clash, an expanded conjunction whose child
    closes, a disjunction both of whose children close, or one modal
    successor requirement whose child closes.
    """

    formulas: frozenset
    rule: str  # "clash" | "alpha" | "beta" | "world"
    principal: object = None
    agent: int | None = None
    witness: object = None
    detail: tuple = ()
    children: tuple = ()

    def verify(self, expected: frozenset | None = None) -> bool:
        """Re-derive this step; True iff the whole subtree replays."""
        fs = self.formulas
        if expected is not None and fs != expected:
            return False
        if self.rule == "clash":
            kind = self.detail[0] if self.detail else None
            if kind == "lit":
                name = self.detail[1]
                return _Lit(name, False) in fs and _Lit(name, True) in fs
            if kind == "aware":
                _, agent, body = self.detail
                return (
                    _AwLit(agent, body, False) in fs
                    and _AwLit(agent, body, True) in fs
                )
            return False
        if self.rule == "alpha":
            p = self.principal
            if not isinstance(p, _NAnd) or p not in fs or len(self.children) != 1:
                return False
            child_set = (fs - {p}) | {p.left, p.right}
            return self.children[0].verify(child_set)
        if self.rule == "beta":
            p = self.principal
            if not isinstance(p, _NOr) or p not in fs or len(self.children) != 2:
                return False
            left_set = (fs - {p}) | {p.left}
            right_set = (fs - {p}) | {p.right}
            return self.children[0].verify(left_set) and self.children[1].verify(
                right_set
            )
        if self.rule == "world":
            if len(self.children) != 1 or self.agent is None:
                return False
            boxes = frozenset(
                x.child for x in fs if isinstance(x, _NBox) and x.agent == self.agent
            )
            if self.witness is None:
                has_dia = any(
                    isinstance(x, _NDia) and x.agent == self.agent for x in fs
                )
                if has_dia or not boxes:
                    return False
                req = boxes
            else:
                if _NDia(self.agent, self.witness) not in fs:
                    return False
                req = boxes | {self.witness}
            return self.children[0].verify(frozenset(req))
        return False

    def to_json(self) -> dict:
        out = {
            "formulas": sorted(_print_nnf(x) for x in self.formulas),
            "rule": self.rule,
        }
        if self.principal is not None:
            out["principal"] = _print_nnf(self.principal)
        if self.agent is not None:
            out["agent"] = self.agent
        if self.rule == "world":
            out["witness"] = None if self.witness is None else _print_nnf(self.witness)
        if self.rule == "clash":
            kind = self.detail[0]
            if kind == "lit":
                out["clash"] = self.detail[1]
            else:
                out["clash"] = f"A[{self.detail[1]}] " + print_lga(self.detail[2])
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


# ---------------------------------------------------------------------------
# Tableau engine.

class _OpenNode:
    __slots__ = ("atoms", "aware", "edges")

    def __init__(self, atoms, aware, edges):
        self.atoms = atoms
        self.aware = aware  # dict agent -> frozenset[LgaFormula]
        self.edges = edges  # list[(agent, _OpenNode)]


class _TableauRun:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0

    def solve(self, fs: frozenset):
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitError(
                f"tableau node budget of {self.budget} exceeded"
            )
        clash = self._find_clash(fs)
        if clash is not None:
            return None, CertNode(fs, "clash", detail=clash)

        items = sorted(fs, key=_nnf_key)
        for x in items:
            if isinstance(x, _NAnd):
                child = (fs - {x}) | {x.left, x.right}
                state, cert = self.solve(child)
                if state is not None:
                    return state, None
                return None, CertNode(fs, "alpha", principal=x, children=(cert,))
        for x in items:
            if isinstance(x, _NOr):
                state, lcert = self.solve((fs - {x}) | {x.left})
                if state is not None:
                    return state, None
                state, rcert = self.solve((fs - {x}) | {x.right})
                if state is not None:
                    return state, None
                return None, CertNode(
                    fs, "beta", principal=x, children=(lcert, rcert)
                )

        # Saturated: only literals, awareness literals, boxes and diamonds.
        edges = []
        agents_here = sorted(
            {x.agent for x in fs if isinstance(x, (_NBox, _NDia))}
        )
        for i in agents_here:
            boxes = frozenset(
                x.child for x in fs if isinstance(x, _NBox) and x.agent == i
            )
            dias = sorted(
                (x.child for x in fs if isinstance(x, _NDia) and x.agent == i),
                key=_nnf_key,
            )
            if dias:
                for chi in dias:
                    state, cert = self.solve(frozenset(boxes | {chi}))
                    if state is None:
                        return None, CertNode(
                            fs, "world", agent=i, witness=chi, children=(cert,)
                        )
                    edges.append((i, state))
            elif boxes:
                state, cert = self.solve(frozenset(boxes))
                if state is None:
                    return None, CertNode(
                        fs, "world", agent=i, witness=None, children=(cert,)
                    )
                edges.append((i, state))

        atoms_here = frozenset(
            x.name for x in fs if isinstance(x, _Lit) and not x.neg
        )
        aware: dict[int, set[LgaFormula]] = {}
        for x in fs:
            if isinstance(x, _AwLit) and not x.neg:
                aware.setdefault(x.agent, set()).add(x.body)
        return _OpenNode(atoms_here, aware, edges), None

    @staticmethod
    def _find_clash(fs):
        pos_lits = {x.name for x in fs if isinstance(x, _Lit) and not x.neg}
        for x in fs:
            if isinstance(x, _Lit) and x.neg and x.name in pos_lits:
                return ("lit", x.name)
        pos_aw = {(x.agent, x.body) for x in fs if isinstance(x, _AwLit) and not x.neg}
        for x in fs:
            if isinstance(x, _AwLit) and x.neg and (x.agent, x.body) in pos_aw:
                return ("aware", x.agent, x.body)
        return None


def _assemble_structure(root: _OpenNode, n_agents: int) -> tuple[AwarenessStructure, str]:
    states: list[str] = []
    access: dict[tuple[int, str], set[str]] = {}
    awareness: dict[tuple[int, str], frozenset[LgaFormula]] = {}
    atoms_of: dict[str, frozenset[str]] = {}

    def visit(node: _OpenNode) -> str:
        sid = f"s{len(states)}"
        states.append(sid)
        atoms_of[sid] = node.atoms
        for i in range(1, n_agents + 1):
            access[(i, sid)] = set()
            awareness[(i, sid)] = frozenset(node.aware.get(i, ()))
        for agent, child in node.edges:
            access[(agent, sid)].add(visit(child))
        return sid

    root_id = visit(root)
    # Seriality completion: relation-terminal states get a self-loop, which
    # is harmless because such states carry no box or diamond requirements.
    for i in range(1, n_agents + 1):
        for s in states:
            if not access[(i, s)]:
                access[(i, s)].add(s)
    names = {name for ats in atoms_of.values() for name in ats}
    valuation = {
        name: {s for s in states if name in atoms_of[s]} for name in names
    }
    structure = AwarenessStructure(n_agents, states, access, awareness, valuation)
    return structure, root_id


# ---------------------------------------------------------------------------
# Results.

@dataclass
class SolverResult:
    verdict: str  # "sat" | "unsat"
    structure: AwarenessStructure | None = None
    state: str | None = None
    quasi: QuasiNDM | None = None
    ndm: NDM | None = None
    world: str | None = None
    cmab: MAB | None = None
    certificate: CertNode | None = None
    stats: dict = field(default_factory=dict)

    @property
    def is_sat(self) -> bool:
        return self.verdict == "sat"

    def to_json(self) -> dict:
        out: dict = {"schema": 1, "verdict": self.verdict, "stats": dict(self.stats)}
        if self.structure is not None:
            model: dict = {
                "awareness_structure": self.structure.to_json(),
                "state": self.state,
            }
            if self.quasi is not None:
                model["quasi_ndm"] = self.quasi.to_json()
            if self.ndm is not None:
                model["ndm"] = self.ndm.to_json()
                model["world"] = self.world
            if self.cmab is not None:
                model["cmab"] = self.cmab.to_json()
            out["model"] = model
        else:
            out["model"] = None
        out["certificate"] = (
            None if self.certificate is None else self.certificate.to_json()
        )
        return out


def tableau_sat(
    f: LgaFormula,
    n_agents: int | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SolverResult:
    """Decide satisfiability over serial awareness structures.

    SAT results carry a finite structure whose root state has been
    re-checked against ``f`` by evaluation; UNSAT results carry a
    replayable certificate.  Raises ResourceLimitError when the node
    budget runs out first.
    """
    if n_agents is None:
        n_agents = max(lga_agents(f), default=1)
    start = time.perf_counter()
    run = _TableauRun(node_budget)
    root_set = frozenset({_nnf(f)})
    node, cert = run.solve(root_set)
    millis = int((time.perf_counter() - start) * 1000)
    stats = {"nodes": run.nodes, "millis": millis}
    if node is None:
        assert cert is not None and cert.verify(root_set), "certificate replay failed"
        return SolverResult("unsat", certificate=cert, stats=stats)
    structure, root_id = _assemble_structure(node, n_agents)
    assert eval_awareness(structure, root_id, f), "extracted structure fails its formula"
    return SolverResult("sat", structure=structure, state=root_id, stats=stats)


def sat_lda(
    f: Formula,
    n_agents: int | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SolverResult:
    """Satisfiability of a belief formula, via translation plus tableau.

    On SAT the result carries the awareness structure together with its
    quasi-notional, notional, and belief-model views; each view is
    re-checked by its own evaluator before the result is returned.
    """
    if n_agents is None:
        n_agents = max(agents(f), default=1)
    result = tableau_sat(translate(f), n_agents=n_agents, node_budget=node_budget)
    if not result.is_sat:
        return result
    structure, state = result.structure, result.state
    quasi = awareness_to_quasi_ndm(structure)
    assert eval_ndm(quasi, state, f), "quasi-notional view fails its formula"
    ndm = quasi_to_ndm(quasi, f)
    assert eval_ndm(ndm, state, f), "notional view fails its formula"
    cmab = ndm_to_cmab(ndm, state)
    assert eval_mab(cmab, f), "belief-model view fails its formula"
    result.quasi = quasi
    result.ndm = ndm
    result.world = state
    result.cmab = cmab
    return result


def valid(f: Formula, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """True iff the negation is unsatisfiable."""
    return not sat_lda(Not(f), node_budget=node_budget).is_sat


# ---------------------------------------------------------------------------
# Bounded brute-force search over world types.

def _coord_mask(dim_sizes: list[int], coord: int, pred) -> int:
    """Bitmask over the whole product space selecting coordinate values.

    Index layout: coordinate 0 varies fastest.  The mask is built over one
    period and tiled.
    """
    low = 1
    for s in dim_sizes[:coord]:
        low *= s
    size_c = dim_sizes[coord]
    period = low * size_c
    block = (1 << low) - 1
    pattern = 0
    for v in range(size_c):
        if pred(v):
            pattern |= block << (v * low)
    total = 1
    for s in dim_sizes:
        total *= s
    reps = total // period
    if reps == 1:
        return pattern
    mult = ((1 << (reps * period)) - 1) // ((1 << period) - 1)
    return pattern * mult


def _lsb(x: int) -> int:
    return (x & -x).bit_length() - 1


def bounded_model_search(
    f: Formula,
    max_worlds: int,
    max_characters: int = 1 << 16,
) -> tuple[NDM, str] | None:
    """Exhaustive search for a notional model of ``f`` within a world bound.

    A world type fixes which query atoms hold, which Exp bodies of the
    query sit in each agent's doxastic set, and a truth bit for each Box
    subformula.  Types that cannot be assigned a non-empty notional set
    consistent with their truth bits are eliminated against the surviving
    set until nothing changes; a remaining type satisfying ``f`` seeds a
    witness model, which is compressed by filtration over the query's
    subformulas and pinned into an exact notional model.  The search is
    complete once ``max_worlds`` reaches 2**|subformulas(f)|; a None for a
    smaller bound only means nothing was found within it.
    """
    if max_worlds < 1:
        raise ValueError(f"max_worlds must be >= 1, got {max_worlds}")
    subs = sorted_formulas(subformulas(f))
    atom_names = sorted(atoms(f))
    n_agents = max(agents(f), default=1)
    agent_range = range(1, n_agents + 1)
    box_subs = [g for g in subs if isinstance(g, Box)]
    q_sets = {
        i: [g.child for g in subs if isinstance(g, Exp) and g.agent == i]
        for i in agent_range
    }

    dim_sizes = [1 << len(atom_names)]
    dim_sizes += [1 << len(q_sets[i]) for i in agent_range]
    dim_sizes.append(1 << len(box_subs))
    total = 1
    for s in dim_sizes:
        total *= s
    if total > max_characters:
        raise ResourceLimitError(
            f"world-type space of size {total} exceeds the cap {max_characters}"
        )
    full = (1 << total) - 1

    # Truth mask per subformula, bottom up (children precede parents).
    tmask: dict[Formula, int] = {}
    for g in subs:
        if isinstance(g, Atom):
            if g.name in atom_names:
                j = atom_names.index(g.name)
                m = _coord_mask(dim_sizes, 0, lambda v: (v >> j) & 1)
            else:
                m = 0
        elif isinstance(g, Not):
            m = full ^ tmask[g.child]
        elif isinstance(g, And):
            m = tmask[g.left] & tmask[g.right]
        elif isinstance(g, Exp):
            j = q_sets[g.agent].index(g.child)
            m = _coord_mask(dim_sizes, g.agent, lambda v: (v >> j) & 1)
        elif isinstance(g, Box):
            j = box_subs.index(g)
            m = _coord_mask(dim_sizes, n_agents + 1, lambda v: (v >> j) & 1)
        else:
            raise TypeError(f"not a formula: {g!r}")
        tmask[g] = m

    blocksize = dim_sizes[0]
    blockmask = (1 << blocksize) - 1
    n_groups = total // blocksize
    group_dims = dim_sizes[1:]

    def decode_group(g: int) -> tuple[list[int], int]:
        vals = []
        rest = g
        for s in group_dims[:-1]:
            vals.append(rest % s)
            rest //= s
        return vals, rest  # per-agent doxastic values, box value

    cap_cache: dict[tuple[int, int], int] = {}

    def cap_mask(i: int, dox_val: int) -> int:
        key = (i, dox_val)
        hit = cap_cache.get(key)
        if hit is None:
            hit = full
            for j, alpha in enumerate(q_sets[i]):
                if (dox_val >> j) & 1:
                    hit &= tmask[alpha]
            cap_cache[key] = hit
        return hit

    pos_cache: dict[tuple[int, int], int] = {}
    neg_cache: dict[tuple[int, int], tuple[Formula, ...]] = {}

    def pos_mask(i: int, box_val: int) -> int:
        key = (i, box_val)
        hit = pos_cache.get(key)
        if hit is None:
            hit = full
            for j, g in enumerate(box_subs):
                if g.agent == i and (box_val >> j) & 1:
                    hit &= tmask[g.child]
            pos_cache[key] = hit
        return hit

    def neg_bodies(i: int, box_val: int) -> tuple[Formula, ...]:
        key = (i, box_val)
        hit = neg_cache.get(key)
        if hit is None:
            hit = tuple(
                g.child
                for j, g in enumerate(box_subs)
                if g.agent == i and not (box_val >> j) & 1
            )
            neg_cache[key] = hit
        return hit

    # Greatest-fixpoint elimination.  A type survives when, for every
    # agent, some surviving type satisfies all its believed formulas and
    # all bodies its truth bits mark as box-true, and each box-false body
    # has a surviving counterexample inside that core.  The conditions do
    # not involve the atom coordinate, so whole blocks live or die.
    alive = full
    group_alive = [True] * n_groups
    changed = True
    while changed:
        changed = False
        for g in range(n_groups):
            if not group_alive[g]:
                continue
            dox_vals, box_val = decode_group(g)
            ok = True
            for i in agent_range:
                core = alive & cap_mask(i, dox_vals[i - 1]) & pos_mask(i, box_val)
                if core == 0:
                    ok = False
                    break
                for body in neg_bodies(i, box_val):
                    if core & (full ^ tmask[body]) == 0:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                group_alive[g] = False
                alive &= ~(blockmask << (g * blocksize))
                changed = True

    witness_mask = tmask[f] & alive
    if witness_mask == 0:
        return None

    # Extract a witness model: close the witness type under one canonical
    # notional pick per agent plus one counterexample per box-false body,
    # preferring types already chosen.
    chosen: list[int] = []
    chosen_mask = 0
    picks: dict[tuple[int, int], list[int]] = {}
    queue = [_lsb(witness_mask)]
    while queue:
        u = queue.pop(0)
        if (chosen_mask >> u) & 1:
            continue
        chosen.append(u)
        chosen_mask |= 1 << u
        g = u // blocksize
        dox_vals, box_val = decode_group(g)
        for i in agent_range:
            core = alive & cap_mask(i, dox_vals[i - 1]) & pos_mask(i, box_val)
            targets = []

            def pick(mask: int) -> int:
                preferred = mask & chosen_mask
                return _lsb(preferred) if preferred else _lsb(mask)

            targets.append(pick(core))
            for body in neg_bodies(i, box_val):
                targets.append(pick(core & (full ^ tmask[body])))
            seen = list(dict.fromkeys(targets))
            picks[(u, i)] = seen
            queue.extend(t for t in seen if not (chosen_mask >> t) & 1)

    name_of = {u: f"t{u}" for u in chosen}
    doxastic = {}
    notional = {}
    for u in chosen:
        g = u // blocksize
        atom_val = u % blocksize
        dox_vals, _ = decode_group(g)
        for i in agent_range:
            doxastic[(i, name_of[u])] = {
                q_sets[i][j]
                for j in range(len(q_sets[i]))
                if (dox_vals[i - 1] >> j) & 1
            }
            notional[(i, name_of[u])] = {name_of[t] for t in picks[(u, i)]}
    valuation = {
        name: {
            name_of[u] for u in chosen if (u % blocksize) >> j & 1
        }
        for j, name in enumerate(atom_names)
    }
    quasi = QuasiNDM(
        n_agents, [name_of[u] for u in chosen], doxastic, notional, valuation
    )
    witness_world = name_of[chosen[0]]
    assert eval_ndm(quasi, witness_world, f), "extracted type model fails its formula"

    filtered = filtrate(quasi, subformulas(f))
    ndm = quasi_to_ndm(filtered.model, f)
    if len(ndm.worlds) > max_worlds:
        return None
    world = filtered.class_of[witness_world]
    assert eval_ndm(ndm, world, f), "compressed model fails its formula"
    return ndm, world


# ---------------------------------------------------------------------------
# Axiom schema harness.

def axiom_instance(name: str, agent: int, phi: Formula, psi: Formula | None = None) -> Formula:
    """Instantiate one of the schemas K, D, Int."""
    if name == "K":
        if psi is None:
            raise ValueError("K needs two formulas")
        return Implies(
            And(Box(agent, phi), Box(agent, Implies(phi, psi))), Box(agent, psi)
        )
    if name == "D":
        return Not(And(Box(agent, phi), Box(agent, Not(phi))))
    if name == "Int":
        if not is_l0(phi):
            raise NotL0Error("Int instances need a Box-free body")
        return Implies(Exp(agent, phi), Box(agent, phi))
    raise ValueError(f"unknown schema {name!r}")


@dataclass
class SchemaReport:
    depth: int
    trials: int
    seed: int
    passes: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[str, Formula]] = field(default_factory=list)
    nec_checked: int = 0
    nec_failures: list[Formula] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.nec_failures

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "depth": self.depth,
            "trials": self.trials,
            "seed": self.seed,
            "passes": dict(self.passes),
            "failures": [
                {"schema": s, "instance": print_formula(g)} for s, g in self.failures
            ],
            "nec_checked": self.nec_checked,
            "nec_failures": [print_formula(g) for g in self.nec_failures],
            "ok": self.ok,
        }


def check_axiom_schemas(
    depth: int,
    trials: int,
    seed: int,
    n_agents: int = 2,
    atom_names: Sequence[str] = ("p", "q", "r"),
    nec_trials: int = 50,
) -> SchemaReport:
    """Exercise K, D and Int on random instances, plus necessitation.

    Every instance must come out valid; necessitation is checked by boxing
    members of a library of known validities and re-checking validity.
    """
    from .generators import random_formula, random_l0

    if depth < 1 or trials < 1:
        raise ValueError("depth and trials must be >= 1")
    rng = Random(seed)
    report = SchemaReport(depth, trials, seed)
    for name in ("K", "D", "Int"):
        report.passes[name] = 0
        for _ in range(trials):
            agent = rng.randint(1, n_agents)
            if name == "K":
                inst = axiom_instance(
                    name,
                    agent,
                    random_formula(rng, depth, n_agents, atom_names),
                    random_formula(rng, depth, n_agents, atom_names),
                )
            elif name == "D":
                inst = axiom_instance(
                    name, agent, random_formula(rng, depth, n_agents, atom_names)
                )
            else:
                inst = axiom_instance(
                    name, agent, random_l0(rng, depth, n_agents, atom_names)
                )
            if valid(inst):
                report.passes[name] += 1
            else:
                report.failures.append((name, inst))

    shapes = ("taut_impl", "noncontradiction", "weakening", "K", "D", "Int")
    for t in range(nec_trials):
        agent = rng.randint(1, n_agents)
        phi = random_formula(rng, depth, n_agents, atom_names)
        shape = shapes[t % len(shapes)]
        if shape == "taut_impl":
            known = Implies(phi, phi)
        elif shape == "noncontradiction":
            known = Not(And(phi, Not(phi)))
        elif shape == "weakening":
            known = Implies(
                And(phi, random_formula(rng, depth, n_agents, atom_names)), phi
            )
        elif shape == "K":
            known = axiom_instance(
                "K", agent, phi, random_formula(rng, depth, n_agents, atom_names)
            )
        elif shape == "D":
            known = axiom_instance("D", agent, phi)
        else:
            known = axiom_instance(
                "Int", agent, random_l0(rng, depth, n_agents, atom_names)
            )
        report.nec_checked += 1
        boxed = Box(rng.randint(1, n_agents), known)
        if not (valid(known) and valid(boxed)):
            report.nec_failures.append(boxed)
    return report
