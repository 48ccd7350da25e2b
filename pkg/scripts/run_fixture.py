"""Walk the bundled demo scenario through the whole pipeline, verbosely.

Prints the supervisor completion, the attack arena before and after
pruning, the synthesized attack strategy, and the independent
closed-loop verdict.  Point --config at any other scenario file to get
the same walkthrough for it.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from sdattack import (
    ClosedLoopConfig,
    aida_size_bound,
    check_problem1,
    construct_aida,
    decision_table,
    prune,
    synthesize,
)
from sdattack.automata import state_token
from sdattack.modelio import format_attack, read_scenario

DEMO_CONFIG = Path(__file__).resolve().parent.parent / "scenarios" / "demo" / "attack.cfg"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(DEMO_CONFIG), help="scenario file")
    ap.add_argument("--horizon", type=int, default=10, help="verification horizon")
    ap.add_argument("--prefer-deletion", action="store_true", help="bias strategy extraction toward deletions")
    args = ap.parse_args()

    sc = read_scenario(args.config)
    goal = ", ".join(sorted(state_token(x) for x in sc.x_crit))
    print(f"scenario {sc.name}")
    print(f"  mode {sc.mode}, strength {sc.strength}, critical states {{{goal}}}")
    print(f"  plant: {len(sc.plant.states)} states, {len(sc.plant.events)} events")
    print(f"  compromised events: {', '.join(sorted(sc.ea.sigma_a)) or '(none)'}")
    print()

    rt = sc.rtilde
    aut = rt.automaton
    print(f"supervisor completion ({len(aut.states)} states):")
    for q in aut.states:
        hops = " ".join(
            f"{e.name}->{state_token(aut.trans[(q, e.name)])}"
            for e in aut.events
            if (q, e.name) in aut.trans
        )
        enabled = ",".join(sorted(rt.gamma(q)))
        print(f"  {state_token(q):<6} enables {{{enabled}}}  {hops}")
    print()

    aida = construct_aida(sc)
    print(f"attack arena: {len(aida.s_states)} S-states, {len(aida.e_states)} E-states, "
          f"{len(aida.h_se) + len(aida.h_es)} edges (size bound {aida_size_bound(sc)})")
    pruned = prune(aida, sc)
    print(f"pruned for {sc.mode}: {len(pruned.ida.nodes)} states survive "
          f"({pruned.rounds} rounds, {len(pruned.flagged)} flagged)")
    print()

    result = synthesize(sc, prefer_deletion=args.prefer_deletion)
    if not result.feasible:
        print(f"no {sc.strength} attack exists for this scenario")
        return 1
    assert result.target is not None and result.attack is not None
    print(f"goal state {result.target.token()}, path length {len(result.path)}")
    print()
    print("decision table:")
    for line in decision_table(result.attack).splitlines():
        print(f"  {line}")
    print()
    print("attack automaton:")
    for line in format_attack(result.attack).splitlines():
        print(f"  {line}")
    print()

    cfg = ClosedLoopConfig(sc.plant, rt, result.attack, args.horizon, sc.x_crit)
    verdict = check_problem1(cfg, sc.strength)
    print(f"independent check (horizon {verdict.horizon}):")
    print(f"  admissible {'yes' if verdict.admissible else 'no'}, "
          f"stealthy {'yes' if verdict.stealthy else 'no'}, "
          f"weak hit {'yes' if verdict.weak_hit else 'no'}, "
          f"strong hit {'yes' if verdict.strong_hit else 'no'}")
    if verdict.strong_witness is not None:
        print(f"  strong witness: {' '.join(verdict.strong_witness)}")
    elif verdict.weak_witness is not None:
        print(f"  weak witness: {' '.join(verdict.weak_witness)}")
    for obs, reason in verdict.counterexamples:
        print(f"  counterexample: {' '.join(obs) if obs else 'eps'} ({reason})")
    print(f"  verdict: {'ok' if verdict.ok(sc.strength) else 'fail'}")
    return 0 if verdict.ok(sc.strength) else 3


if __name__ == "__main__":
    raise SystemExit(main())
