"""Scenario assembly and construction of the full attack structure.

`construct_aida` explores every joint information state the attacker can
force while the supervisor stays consistent: supervisor states issue their
control decision, environment states branch over genuine observations,
deletions and insertions.  Exploration stops at detection (supervisor in
`dead`) and at goal states (estimate inside the critical set).

`construct_baida` composes the same structure with a reaction-length
counter so that bounded attackers can be pruned on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .alphabet import EditAlphabet, deleted, inserted
from .automata import (
    Automaton,
    EventDecl,
    ModelError,
    State,
    parallel,
    state_token,
)
from .game import (
    E_SIDE,
    S_SIDE,
    GameContext,
    IDA,
    InformationState,
    Node,
    es_successor,
    gamma_label,
    ida_to_automaton,
    is_gamma_label,
    parse_gamma_label,
    se_successor,
)
from .supervisor import DEAD, RTilde, SupervisorRealization, build_rtilde, validate_supervisor

MODES = ("interruptible", "unbounded", "bounded")


@dataclass
class Scenario:
    """One attack synthesis problem: models, compromised events, goal."""

    plant: Automaton
    supervisor: SupervisorRealization
    ea: EditAlphabet
    x_crit: frozenset[State]
    mode: str = "interruptible"
    n_a: int | None = None
    strength: str = "strong"
    bound_initial_insertions: bool = True
    literal_bounded_race: bool = False
    name: str = "scenario"

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ModelError(f"unknown attacker mode {self.mode!r}")
        if self.strength not in ("strong", "weak"):
            raise ModelError(f"unknown goal strength {self.strength!r}")
        if self.mode == "bounded":
            if self.n_a is None or self.n_a < 1:
                raise ModelError("bounded mode needs a positive reaction bound n_a")
        unknown = self.x_crit - set(self.plant.states)
        if unknown:
            raise ModelError(
                f"critical states not in plant: {sorted(map(state_token, unknown))}"
            )
        if self.x_crit >= set(self.plant.states):
            raise ModelError("critical set must be a proper subset of plant states")

    @cached_property
    def rtilde(self) -> RTilde:
        return build_rtilde(self.plant, self.supervisor)

    @cached_property
    def ctx(self) -> GameContext:
        return GameContext(self.plant, self.rtilde, self.ea)


def make_scenario(
    plant: Automaton,
    supervisor: Automaton,
    attack_events: frozenset[str],
    x_crit: frozenset[State],
    **kw,
) -> Scenario:
    sup = validate_supervisor(plant, supervisor)
    ea = EditAlphabet(plant.obs_events, frozenset(attack_events))
    return Scenario(plant, sup, ea, frozenset(x_crit), **kw)


def nominal_critical_reachable(sc: Scenario) -> frozenset[State]:
    """Critical plant states reachable in the unattacked closed loop."""
    loop = parallel(sc.supervisor.automaton, sc.plant)
    return frozenset(x for _, x in loop.states if x in sc.x_crit)


def construct_aida(sc: Scenario) -> IDA:
    """Breadth-first construction of the full insertion-deletion game."""
    rt, plant, ea = sc.rtilde, sc.plant, sc.ea
    y0 = Node(S_SIDE, InformationState(frozenset({plant.initial}), rt.initial))
    s_states: list[Node] = [y0]
    e_states: list[Node] = []
    h_se: dict[Node, tuple[frozenset[str], Node]] = {}
    h_es: dict[tuple[Node, str], Node] = {}
    seen = {y0}
    queue: list[Node] = [y0]

    def add_s(info: InformationState) -> Node:
        y = Node(S_SIDE, info)
        if y not in seen:
            seen.add(y)
            s_states.append(y)
            if info.sup != DEAD:
                queue.append(y)
        return y

    def add_e(info: InformationState) -> Node:
        z = Node(E_SIDE, info)
        if z not in seen:
            seen.add(z)
            e_states.append(z)
            if not info.plant <= sc.x_crit:
                queue.append(z)
        return z

    while queue:
        c = queue.pop(0)
        if c.side == S_SIDE:
            gamma, info = se_successor(rt, plant, c.info)
            h_se[c] = (gamma, add_e(info))
            continue
        decision = rt.gamma(c.info.sup)
        for d in plant.events:
            e = d.name
            if not d.observable or e not in decision:
                continue
            genuine = es_successor(rt, plant, ea, c.info, e)
            if genuine is not None:
                h_es[(c, e)] = add_s(genuine)
            if e in ea.sigma_a:
                gone = es_successor(rt, plant, ea, c.info, deleted(e))
                if gone is not None:
                    h_es[(c, deleted(e))] = add_s(gone)
                faked = es_successor(rt, plant, ea, c.info, inserted(e))
                if faked is not None:
                    h_es[(c, inserted(e))] = add_s(faked)

    return IDA(
        name=f"aida({sc.name})",
        ctx=sc.ctx,
        s_states=s_states,
        e_states=e_states,
        h_se=h_se,
        h_es=h_es,
        initial=y0,
    )


def aida_size_bound(sc: Scenario) -> int:
    """Worst-case node count of the full game."""
    n_x = len(sc.plant.states)
    n_q = len(sc.rtilde.automaton.states)
    if not sc.plant.unobs_events:
        return 2 * n_x * n_q
    return 2 ** (n_x + 1) * n_q


def aida_maximality_violations(ida: IDA, sc: Scenario) -> list[str]:
    """Why the structure is not the full game (empty list means it is)."""
    rt, plant, ea = sc.rtilde, sc.plant, sc.ea
    bad: list[str] = []
    y0 = Node(S_SIDE, InformationState(frozenset({plant.initial}), rt.initial))
    if ida.initial != y0:
        bad.append(f"initial state is {ida.initial.token()}, expected {y0.token()}")
        return bad

    s_set, e_set = set(ida.s_states), set(ida.e_states)
    if len(s_set) != len(ida.s_states) or len(e_set) != len(ida.e_states):
        bad.append("duplicate state entries")

    reach = {ida.initial}
    stack = [ida.initial]
    while stack:
        cur = stack.pop()
        if cur.side == S_SIDE:
            hop = ida.h_se.get(cur)
            targets = [hop[1]] if hop else []
        else:
            targets = [dst for _, dst in ida.es_adj.get(cur, ())]
        for t in targets:
            if t not in reach:
                reach.add(t)
                stack.append(t)
    for a in list(s_set | e_set):
        if a not in reach:
            bad.append(f"unreachable state {a.token()}")

    for y in ida.s_states:
        hop = ida.h_se.get(y)
        if y.info.sup == DEAD:
            if hop is not None:
                bad.append(f"detected state {y.token()} must be terminal")
            continue
        if hop is None:
            bad.append(f"missing control hop at {y.token()}")
            continue
        gamma, z = hop
        want_gamma, want_info = se_successor(rt, plant, y.info)
        if gamma != want_gamma:
            bad.append(f"wrong decision label at {y.token()}")
        if z.side != E_SIDE or z.info != want_info or z not in e_set:
            bad.append(f"wrong control hop target at {y.token()}")

    for z in ida.e_states:
        stored = dict(ida.es_adj.get(z, ()))
        if z.info.plant <= sc.x_crit:
            if stored:
                bad.append(f"goal state {z.token()} must be terminal")
            continue
        expected: dict[str, InformationState] = {}
        for d in plant.events:
            e = d.name
            if not d.observable or e not in rt.gamma(z.info.sup):
                continue
            for sym in (e, deleted(e), inserted(e)):
                info = es_successor(rt, plant, ea, z.info, sym)
                if info is not None:
                    expected[sym] = info
        if set(stored) != set(expected):
            missing = sorted(set(expected) - set(stored))
            extra = sorted(set(stored) - set(expected))
            bad.append(
                f"moves at {z.token()}: missing {missing}, unexpected {extra}"
            )
            continue
        for sym, tgt in stored.items():
            if tgt.side != S_SIDE or tgt.info != expected[sym] or tgt not in s_set:
                bad.append(f"wrong target for {sym!r} at {z.token()}")
    return bad


def verify_aida_maximality(ida: IDA, sc: Scenario) -> bool:
    return not aida_maximality_violations(ida, sc)


@dataclass(frozen=True)
class BoundCounterAutomaton:
    """Reaction-length counter used to bound attacker reactions.

    Counts symbols the supervisor-side channel attributes to the current
    reaction: a compromised genuine event or a deletion restarts the count
    at 1, an uncompromised event resets it to 0, an insertion increments,
    and insertions are disabled once the bound is hit.  With an unbounded
    initial burst allowed, a pre-observation state (-1) lets insertions
    free-run until the first observation.
    """

    automaton: Automaton
    n_a: int
    bound_initial: bool


FREE_COUNTER = -1


def build_g_bound(
    plant: Automaton, ea: EditAlphabet, n_a: int, bound_initial: bool = True
) -> BoundCounterAutomaton:
    if n_a < 1:
        raise ModelError("reaction bound must be positive")
    counters = list(range(n_a + 1))
    if not bound_initial:
        counters = [FREE_COUNTER] + counters
    decls: list[EventDecl] = []
    for d in plant.events:
        if not d.observable:
            continue
        decls.append(d)
        if d.name in ea.sigma_a:
            decls.append(EventDecl(deleted(d.name), True, True))
            decls.append(EventDecl(inserted(d.name), True, True))
    trans: dict[tuple[State, str], State] = {}
    for n in counters:
        for d in plant.events:
            e = d.name
            if not d.observable:
                continue
            if e in ea.sigma_a:
                trans[(n, e)] = 1
                trans[(n, deleted(e))] = 1
                if n == FREE_COUNTER:
                    trans[(n, inserted(e))] = FREE_COUNTER
                elif n < n_a:
                    trans[(n, inserted(e))] = n + 1
            else:
                trans[(n, e)] = 0
    return BoundCounterAutomaton(
        automaton=Automaton(
            name=f"bound{n_a}",
            states=tuple(counters),
            events=tuple(decls),
            trans=trans,
            initial=FREE_COUNTER if not bound_initial else 0,
        ),
        n_a=n_a,
        bound_initial=bound_initial,
    )


def construct_baida(sc: Scenario, aida: IDA | None = None) -> IDA:
    """Counter-augmented game: the full game composed with the bound counter."""
    if sc.n_a is None or sc.n_a < 1:
        raise ModelError("counter-augmented game needs a positive n_a")
    if aida is None:
        aida = construct_aida(sc)
    gb = build_g_bound(sc.plant, sc.ea, sc.n_a, sc.bound_initial_insertions)
    prod = parallel(ida_to_automaton(aida), gb.automaton)

    def lift(x: State) -> Node:
        node, n = x
        return Node(node.side, node.info, counter=n)

    s_states = [lift(x) for x in prod.states if x[0].side == S_SIDE]
    e_states = [lift(x) for x in prod.states if x[0].side == E_SIDE]
    h_se: dict[Node, tuple[frozenset[str], Node]] = {}
    h_es: dict[tuple[Node, str], Node] = {}
    for (src, label), dst in prod.trans.items():
        if is_gamma_label(label):
            h_se[lift(src)] = (parse_gamma_label(label), lift(dst))
        else:
            h_es[(lift(src), label)] = lift(dst)
    return IDA(
        name=f"baida({sc.name})",
        ctx=sc.ctx,
        s_states=s_states,
        e_states=e_states,
        h_se=h_se,
        h_es=h_es,
        initial=lift(prod.initial),
    )
