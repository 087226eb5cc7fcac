#!/usr/bin/env python3
"""Per-seed corpus report: answer counts by commit mode vs the reference prover.

Usage: python3 scripts/corpus_report.py [--seeds N] [--depth D] [--first K]
Prints one row per seed (first K shown in full, rest summarized) and totals.
"""
import argparse
import sys

from mutexlog.engine import Config, collect_answers
from mutexlog.oracle import canonical_bindings, enumerate_answers, random_instance


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--first", type=int, default=20, help="rows to print in full")
    args = ap.parse_args()

    print(f"{'seed':>5} {'oracle':>7} {'off':>4} {'call':>5} {'global':>7}  notes")
    decisive = prunes = agree = 0
    for seed in range(args.seeds):
        inst = random_instance(seed)
        counts = {}
        sets = {}
        for mode in ("off", "call", "global"):
            answers, cut = collect_answers(inst.clauses, inst.goal, Config(mode, args.depth))
            sets[mode] = {canonical_bindings(a.bindings) for a in answers}
            counts[mode] = (len(sets[mode]), cut)
        verdict = enumerate_answers(inst.clauses, inst.goal, args.depth)

        notes = []
        if not verdict.truncated and not counts["off"][1]:
            decisive += 1
            if sets["off"] == set(verdict.answers):
                agree += 1
            else:
                notes.append("MISMATCH")
        if sets["call"] < sets["off"]:
            prunes += 1
            notes.append("prunes")
        if seed < args.first:
            print(
                f"{seed:>5} {len(verdict.answers):>7} {counts['off'][0]:>4}"
                f" {counts['call'][0]:>5} {counts['global'][0]:>7}  {' '.join(notes)}"
            )

    print("...")
    print(f"decisive {decisive}/{args.seeds}, agreeing {agree}, strict prunes {prunes}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
