"""Extraction of executable attack functions from pruned games.

An attack function is encoded as an automaton F over observations and
edit symbols: its state tracks the edited history, transitions on genuine
symbols mean "let it through", on deletions "erase it", on insertions
"fabricate it".  Interruptible attackers may stop a reaction at any state;
deterministic ones follow a committed insertion map until it says stop.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .alphabet import EditAlphabet, base_event, deleted, inserted, is_deleted, is_inserted
from .automata import Automaton, EventDecl, ModelError, State, state_token
from .build import FREE_COUNTER, Scenario, construct_aida, construct_baida
from .game import E_SIDE, IDA, Node, gamma_label
from .prune import PruneResult, prune


class SynthesisError(RuntimeError):
    """Extraction failed structurally (reported, never silently patched)."""


@dataclass
class AttackFunction:
    """Executable edit strategy.

    `f` runs over the edited history; `auto_insert` (deterministic modes)
    maps each state to the insertion it commits to next, or None to end
    the reaction there.  `initial_epsilon` says whether doing nothing is
    an allowed initial burst.
    """

    f: Automaton
    mode: str
    ea: EditAlphabet
    n_a: int | None = None
    auto_insert: dict[State, str | None] = field(default_factory=dict)
    initial_epsilon: bool = True

    def __post_init__(self) -> None:
        check_shape(self)

    @property
    def deterministic(self) -> bool:
        return self.mode in ("unbounded", "bounded")

    def state_after(self, s: tuple[str, ...]) -> State | None:
        cur: State | None = self.f.initial
        for sym in s:
            if cur is None:
                return None
            cur = self.f.succ(cur, sym)
        return cur

    def chain_from(self, r: State) -> tuple[str, ...] | None:
        """Committed insertion chain of a deterministic attacker, from r.

        None signals a chain that never terminates (construction rejects it).
        """
        out: list[str] = []
        seen = {r}
        cur = r
        while True:
            sym = self.auto_insert.get(cur)
            if sym is None:
                return tuple(out)
            nxt = self.f.succ(cur, sym)
            if nxt is None or nxt in seen:
                return None
            out.append(sym)
            seen.add(nxt)
            cur = nxt


def check_shape(fa: AttackFunction) -> None:
    """Structural constraints every attack encoder must satisfy."""
    symbols = fa.ea.edit_symbols
    for d in fa.f.events:
        if d.name not in symbols:
            raise ModelError(f"attack encoder event {d.name!r} outside edit alphabet")
    if fa.deterministic:
        for r in fa.f.states:
            for e in fa.ea.sigma_a:
                if (r, e) in fa.f.trans and (r, deleted(e)) in fa.f.trans:
                    raise ModelError(
                        f"deterministic encoder offers both {e!r} and its deletion"
                    )
            sym = fa.auto_insert.get(r)
            if sym is not None:
                if not is_inserted(sym):
                    raise ModelError(f"committed symbol {sym!r} is not an insertion")
                if (r, sym) not in fa.f.trans:
                    raise ModelError(f"committed insertion {sym!r} missing at state")
        for r in fa.f.states:
            if fa.auto_insert.get(r) is not None and fa.chain_from(r) is None:
                raise ModelError("committed insertion chain never terminates")
    if fa.mode == "bounded":
        if fa.n_a is None or fa.n_a < 1:
            raise ModelError("bounded attack function needs a positive n_a")
        _check_reaction_bound(fa)


def _check_reaction_bound(fa: AttackFunction) -> None:
    """Every committed reaction must fit the declared bound.

    A reaction to an uncompromised event starts at weight 0, to a
    compromised (or deleted) one at weight 1; each insertion adds 1.
    Counter-carrying states make this exact; plain states are checked
    pessimistically the same way.
    """
    assert fa.n_a is not None
    for r in fa.f.states:
        for sym, dst in fa.f.out_edges(r):
            if is_inserted(sym):
                continue
            weight = 1 if (is_deleted(sym) or sym in fa.ea.sigma_a) else 0
            chain = fa.chain_from(dst)
            if chain is None:
                raise ModelError("committed insertion chain never terminates")
            if weight + len(chain) > fa.n_a:
                raise ModelError(
                    f"reaction to {sym!r} has length {weight + len(chain)} > {fa.n_a}"
                )
    start = fa.chain_from(fa.f.initial)
    if start is None:
        raise ModelError("initial insertion chain never terminates")
    if not _free_state(fa.f.initial) and len(start) > fa.n_a:
        raise ModelError(f"initial burst longer than the bound {fa.n_a}")


def _free_state(r: State) -> bool:
    """Counter-carrying state in the pre-observation zone (unbounded burst)."""
    if isinstance(r, Node):
        return r.counter == FREE_COUNTER
    return isinstance(r, str) and r.endswith(f"#{FREE_COUNTER}")


def feasibility(pruned: IDA, x_crit: frozenset[State], strength: str) -> Node | None:
    """First surviving E-state meeting the goal, in discovery order."""
    for z in pruned.e_states:
        if strength == "strong":
            if z.info.plant and z.info.plant <= x_crit:
                return z
        else:
            if z.info.plant & x_crit:
                return z
    return None


def shortest_path(pruned: IDA, target: Node) -> list[tuple[Node, str, Node]]:
    """Fewest-edge path from the initial S-state to the target.

    Neighbor order follows event declaration order with genuine moves
    before deletions before insertions, so ties resolve deterministically.
    """
    if target not in pruned.nodes:
        raise SynthesisError(f"target {target.token()} not in the pruned game")
    parent: dict[Node, tuple[Node, str]] = {}
    seen = {pruned.initial}
    queue: deque[Node] = deque([pruned.initial])
    while queue:
        cur = queue.popleft()
        if cur == target:
            break
        if cur.side == E_SIDE:
            moves = list(pruned.es_adj.get(cur, ()))
        else:
            hop = pruned.h_se.get(cur)
            moves = [] if hop is None else [(gamma_label(hop[0]), hop[1])]
        for sym, dst in moves:
            if dst not in seen:
                seen.add(dst)
                parent[dst] = (cur, sym)
                queue.append(dst)
    if target not in seen:
        raise SynthesisError(f"target {target.token()} unreachable in the pruned game")
    edges: list[tuple[Node, str, Node]] = []
    cur = target
    while cur != pruned.initial:
        prev, sym = parent[cur]
        edges.append((prev, sym, cur))
        cur = prev
    edges.reverse()
    return edges


def _edit_event_decls(plant: Automaton, ea: EditAlphabet) -> tuple[EventDecl, ...]:
    """Event declarations for an encoder: observables plus their edit twins."""
    decls: list[EventDecl] = []
    for d in plant.events:
        if not d.observable:
            continue
        decls.append(d)
        if d.name in ea.sigma_a:
            decls.append(EventDecl(deleted(d.name), True, True))
            decls.append(EventDecl(inserted(d.name), True, True))
    return tuple(decls)


def _contract(pruned: IDA, y: Node) -> Node:
    hop = pruned.h_se.get(y)
    if hop is None:
        raise SynthesisError(f"surviving state {y.token()} lost its control hop")
    return hop[1]


def _insertion_exit_map(
    pruned: IDA, flagged: frozenset[Node], base_order: dict[str, int]
) -> dict[Node, tuple[str, Node] | None]:
    """Shortest committed insertion move out of the flagged region.

    Multi-source reverse search from unflagged E-states over insertion
    moves; None marks flagged states with no escape.
    """
    succ: dict[Node, list[tuple[str, Node]]] = {}
    rev: dict[Node, list[Node]] = {}
    for z in pruned.e_states:
        for sym, y in pruned.es_adj.get(z, ()):
            if not is_inserted(sym):
                continue
            tgt = _contract(pruned, y)
            succ.setdefault(z, []).append((sym, tgt))
            rev.setdefault(tgt, []).append(z)
    dist: dict[Node, int] = {z: 0 for z in pruned.e_states if z not in flagged}
    queue = deque(sorted(dist, key=lambda n: n.token()))
    while queue:
        cur = queue.popleft()
        for prev in rev.get(cur, ()):
            if prev not in dist:
                dist[prev] = dist[cur] + 1
                queue.append(prev)
    out: dict[Node, tuple[str, Node] | None] = {}
    for z in pruned.e_states:
        if z not in flagged:
            continue
        best: tuple[tuple[int, int, str], str, Node] | None = None
        for sym, tgt in succ.get(z, ()):
            if tgt not in dist:
                continue
            key = (1 + dist[tgt], base_order[base_event(sym)], sym)
            if best is None or key < best[0]:
                best = (key, sym, tgt)
        out[z] = None if best is None else (best[1], best[2])
    return out


def expand_path(
    pruned: IDA,
    flagged: frozenset[Node],
    sc: Scenario,
    path: list[tuple[Node, str, Node]],
    prefer_deletion: bool = False,
) -> AttackFunction:
    """Complete a winning path into a total attack strategy.

    The path pins down the moves that reach the goal; breadth-first
    completion then decides every other reachable situation: genuine
    observations pass through unless the path chose otherwise, deletions
    cover observations whose genuine move did not survive pruning, and
    (deterministic modes) flagged states commit to inserting their way
    out before the plant can move again.
    """
    mode = sc.mode
    if pruned.initial not in pruned.nodes:
        raise SynthesisError("empty pruned game")
    z0 = _contract(pruned, pruned.initial)
    base_order = {d.name: i for i, d in enumerate(sc.plant.events)}

    trans: dict[tuple[Node, str], Node] = {}
    auto: dict[Node, str | None] = {}
    committed: dict[Node, tuple[str, Node]] = {}
    for src, sym, dst in path:
        if src.side != E_SIDE:
            continue
        tgt = _contract(pruned, dst)
        trans[(src, sym)] = tgt
        if is_inserted(sym):
            committed.setdefault(src, (sym, tgt))

    exits: dict[Node, tuple[str, Node] | None] = {}
    if mode in ("unbounded", "bounded"):
        exits = _insertion_exit_map(pruned, flagged, base_order)

    states: list[Node] = []
    queue: deque[Node] = deque([z0])
    enqueued = {z0}
    while queue:
        q = queue.popleft()
        states.append(q)

        def visit(node: Node) -> None:
            if node not in enqueued:
                enqueued.add(node)
                queue.append(node)

        if mode in ("unbounded", "bounded"):
            if q in committed:
                auto[q] = committed[q][0]
            elif q in flagged:
                exit_move = exits.get(q)
                if exit_move is None:
                    raise SynthesisError(
                        f"flagged state {q.token()} has no insertion escape"
                    )
                sym, tgt = exit_move
                trans[(q, sym)] = tgt
                auto[q] = sym
            else:
                auto[q] = None
        for sym, y in pruned.es_adj.get(q, ()):
            if (q, sym) in trans:
                visit(trans[(q, sym)])
                continue
            if is_inserted(sym):
                continue
            base = base_event(sym)
            if is_deleted(sym):
                genuine_alive = (q, base) in pruned.h_es
                wanted = prefer_deletion or not genuine_alive
                if not wanted or (q, base) in trans:
                    continue
            else:
                if (q, deleted(base)) in trans:
                    continue
                if prefer_deletion and (q, deleted(base)) in pruned.h_es:
                    continue
            trans[(q, sym)] = _contract(pruned, y)
            visit(trans[(q, sym)])

    used = set(enqueued)
    decls = _edit_event_decls(sc.plant, sc.ea)
    f = Automaton(
        name=f"attack({sc.name})",
        states=tuple(states),
        events=tuple(decls),
        trans={k: v for k, v in trans.items() if k[0] in used and v in used},
        initial=z0,
    )
    if mode == "interruptible":
        return AttackFunction(f, mode, sc.ea, initial_epsilon=True)
    auto = {r: auto.get(r) for r in states}
    return AttackFunction(
        f,
        mode,
        sc.ea,
        n_a=sc.n_a,
        auto_insert=auto,
        initial_epsilon=(auto.get(z0) is None),
    )


def reactions(
    fa: AttackFunction, r: State, e: str, max_len: int | None = None
) -> frozenset[tuple[str, ...]]:
    """Reaction strings offered at encoder state r for observation e.

    Interruptible attackers yield every prefix of every insertion
    continuation (simple paths unless max_len forces longer enumeration);
    deterministic attackers yield the single committed string.
    """
    starts: list[tuple[str, ...]] = []
    if (r, e) in fa.f.trans:
        starts.append((e,))
    if e in fa.ea.sigma_a and (r, deleted(e)) in fa.f.trans:
        starts.append((deleted(e),))
    out: set[tuple[str, ...]] = set()
    for first in starts:
        landing = fa.f.succ(r, first[0])
        assert landing is not None
        if fa.deterministic:
            chain = fa.chain_from(landing)
            if chain is None:
                raise ModelError("committed insertion chain never terminates")
            out.add(first + chain)
        else:
            out.update(first + tail for tail in _insertion_prefixes(fa, landing, max_len))
    return frozenset(out)


def initial_reactions(
    fa: AttackFunction, max_len: int | None = None
) -> frozenset[tuple[str, ...]]:
    """The initial burst set: what the attacker may do before anything happens."""
    r = fa.f.initial
    if fa.deterministic:
        chain = fa.chain_from(r)
        if chain is None:
            raise ModelError("committed insertion chain never terminates")
        return frozenset({chain})
    tails = _insertion_prefixes(fa, r, max_len)
    if not fa.initial_epsilon:
        tails = {t for t in tails if t}
    return frozenset(tails)


def _insertion_prefixes(
    fa: AttackFunction, r: State, max_len: int | None
) -> set[tuple[str, ...]]:
    """All insertion strings playable from r, every prefix included.

    Without a length cap, chains follow simple paths only, which is exact
    for acyclic encoders and a finite generating set otherwise.
    """
    out: set[tuple[str, ...]] = {()}
    stack: list[tuple[State, tuple[str, ...], frozenset[State]]] = [
        (r, (), frozenset({r}))
    ]
    while stack:
        cur, prefix, seen = stack.pop()
        if max_len is not None and len(prefix) >= max_len:
            continue
        for sym, dst in fa.f.out_edges(cur):
            if not is_inserted(sym):
                continue
            if max_len is None and dst in seen:
                continue
            nxt = prefix + (sym,)
            out.add(nxt)
            stack.append((dst, nxt, seen | {dst}))
    return out


def evaluate(
    fa: AttackFunction,
    s: tuple[str, ...],
    e: str,
    max_len: int | None = None,
) -> frozenset[tuple[str, ...]] | None:
    """The reaction set offered after edited history s on observation e.

    None means the history itself is outside the encoder (partiality).
    The empty observation asks for the initial burst and needs s empty.
    """
    if e == "":
        if s:
            return frozenset()
        return initial_reactions(fa, max_len)
    if e not in fa.ea.sigma_o:
        raise ValueError(f"{e!r} is not an observable event")
    r = fa.state_after(s)
    if r is None:
        return None
    return reactions(fa, r, e, max_len)


@dataclass
class SynthesisResult:
    scenario: Scenario
    pruned: PruneResult
    target: Node | None
    path: list[tuple[Node, str, Node]]
    attack: AttackFunction | None

    @property
    def feasible(self) -> bool:
        return self.attack is not None


def synthesize(sc: Scenario, prefer_deletion: bool = False) -> SynthesisResult:
    """Full pipeline: build the game, prune for the mode, extract a strategy."""
    aida = construct_aida(sc)
    pruned = prune(aida, sc)
    target = feasibility(pruned.ida, sc.x_crit, sc.strength)
    if target is None:
        return SynthesisResult(sc, pruned, None, [], None)
    path = shortest_path(pruned.ida, target)
    fa = expand_path(pruned.ida, pruned.flagged, sc, path, prefer_deletion)
    return SynthesisResult(sc, pruned, target, path, fa)


def relay_attack_function(sc) -> AttackFunction:
    """The do-nothing attacker: every observation is forwarded unchanged."""
    decls = _edit_event_decls(sc.plant, sc.ea)
    q0 = "relay"
    f = Automaton(
        name="relay",
        states=(q0,),
        events=decls,
        trans={(q0, e.name): q0 for e in decls if e.name in sc.ea.sigma_o},
        initial=q0,
    )
    det = sc.mode in ("unbounded", "bounded")
    return AttackFunction(
        f,
        sc.mode,
        sc.ea,
        n_a=sc.n_a,
        auto_insert={q0: None} if det else {},
        initial_epsilon=True,
    )


def decision_table(fa: AttackFunction, max_len: int | None = 8) -> str:
    """Human-readable dump of the strategy, one line per state and event."""
    lines = [f"mode: {fa.mode}"]
    if fa.n_a is not None:
        lines.append(f"reaction bound: {fa.n_a}")
    burst = sorted(initial_reactions(fa, max_len))
    lines.append("initial burst: " + _fmt_strings(burst))
    for r in fa.f.states:
        tok = r.token() if isinstance(r, Node) else state_token(r)
        for e in sorted(fa.ea.sigma_o):
            rs = reactions(fa, r, e, max_len)
            if not rs:
                continue
            lines.append(f"{tok} / {e}: " + _fmt_strings(sorted(rs)))
        if fa.deterministic and fa.auto_insert.get(r):
            lines.append(f"{tok} continues with {fa.auto_insert[r]}")
    return "\n".join(lines) + "\n"


def _fmt_strings(strings) -> str:
    parts = []
    for s in strings:
        parts.append("eps" if not s else " ".join(s))
    return "{" + ", ".join(parts) + "}"
