"""Sweep random scenarios and report arena sizes and attack feasibility.

For each seeded instance the sweep builds the attack arena, compares its
size against the theoretical bound, prunes for all three attacker
classes, and records which classes admit an attack.  Synthesized attacks
are replayed against the independent closed-loop checker; any
disagreement is printed loudly.

The interruptible region is also compared against the unbounded one.
Plain containment can fail: the unbounded pruning trims states that are
safe but can no longer reach any critical E-state (idling there wins for
an interruptible attacker, so its pruning keeps them).  The sweep counts
how often plain containment holds and checks the sharper claim that
every extra interruptible state is such a progress-less state.
"""

from __future__ import annotations

import argparse
from dataclasses import replace
from random import Random

from sdattack import (
    ClosedLoopConfig,
    check_problem1,
    construct_aida,
    construct_baida,
    prune_bounded,
    prune_interruptible,
    prune_unbounded,
    synthesize,
)
from sdattack.build import aida_size_bound
from sdattack.game import IDA, Node, is_subsystem
from sdattack.randgen import random_scenario

MODES = ("interruptible", "unbounded", "bounded")


def can_reach_goal(ida: IDA, x_crit: frozenset) -> set[Node]:
    """States with a path to some E-state whose estimate touches x_crit."""
    rev: dict[Node, set[Node]] = {}
    for y, (_, z) in ida.h_se.items():
        rev.setdefault(z, set()).add(y)
    for (z, _), y in ida.h_es.items():
        rev.setdefault(y, set()).add(z)
    frontier = [z for z in ida.e_states if z.info.plant & x_crit]
    reach = set(frontier)
    while frontier:
        nxt = frontier.pop()
        for prev in rev.get(nxt, ()):
            if prev not in reach:
                reach.add(prev)
                frontier.append(prev)
    return reach


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0, help="first instance seed")
    ap.add_argument("--count", type=int, default=50, help="number of instances")
    ap.add_argument("--max-states", type=int, default=5, help="plant size cap")
    ap.add_argument("--max-events", type=int, default=4, help="alphabet size cap")
    ap.add_argument("--n-a", type=int, default=1, help="reaction bound for the bounded class")
    ap.add_argument("--horizon", type=int, default=10, help="replay horizon")
    ap.add_argument("--no-verify", action="store_true", help="skip the closed-loop replay")
    args = ap.parse_args()

    feasible = dict.fromkeys(MODES, 0)
    verified = dict.fromkeys(MODES, 0)
    mismatches: list[str] = []
    contained = 0
    max_ratio = 0.0
    max_nodes = 0

    for seed in range(args.seed, args.seed + args.count):
        sc = random_scenario(
            Random(seed),
            max_states=args.max_states,
            max_events=args.max_events,
            name=f"rand{seed}",
        )
        aida = construct_aida(sc)
        bound = aida_size_bound(sc)
        max_nodes = max(max_nodes, len(aida.nodes))
        max_ratio = max(max_ratio, len(aida.nodes) / bound)
        if len(aida.nodes) > bound:
            mismatches.append(f"{sc.name}: arena {len(aida.nodes)} exceeds bound {bound}")

        isda = prune_interruptible(aida, sc).ida
        usda = prune_unbounded(aida, sc).ida
        if is_subsystem(isda, usda):
            contained += 1
        else:
            stuck = set(isda.nodes) - set(usda.nodes)
            if stuck & can_reach_goal(isda, sc.x_crit):
                mismatches.append(f"{sc.name}: progress-capable state only in the interruptible region")
        bounded_sc = replace(sc, mode="bounded", n_a=args.n_a)
        prune_bounded(construct_baida(bounded_sc, aida), bounded_sc)

        for mode in MODES:
            var = replace(sc, mode=mode, n_a=args.n_a if mode == "bounded" else None)
            result = synthesize(var)
            if not result.feasible:
                continue
            feasible[mode] += 1
            if args.no_verify:
                continue
            assert result.attack is not None
            cfg = ClosedLoopConfig(var.plant, var.rtilde, result.attack, args.horizon, var.x_crit)
            if check_problem1(cfg, var.strength).ok(var.strength):
                verified[mode] += 1
            else:
                mismatches.append(f"{var.name}/{mode}: synthesized attack failed replay")

    print(f"instances: {args.count} (seeds {args.seed}..{args.seed + args.count - 1})")
    print(f"largest arena: {max_nodes} nodes, worst size/bound ratio {max_ratio:.3f}")
    print(f"interruptible region inside unbounded region: {contained}/{args.count} "
          "(extra states are progress-less unless a MISMATCH line says otherwise)")
    for mode in MODES:
        line = f"{mode:<14} feasible {feasible[mode]}/{args.count}"
        if not args.no_verify:
            line += f", replay ok {verified[mode]}/{feasible[mode]}"
        print(line)
    for m in mismatches:
        print(f"MISMATCH {m}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
