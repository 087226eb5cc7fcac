#!/usr/bin/env python3
"""Commitment-scope walkthrough on the sorting fixtures.

Solves `mod(sort) => (qsort([2,1],L1), hsort([2,1],L2))` under each commit
mode and shows which sorting module the choice clause actually entered.
Under `call` each goal re-decides the choice, so hsort falls through to the
heapsort side; under `global` the first decision binds the whole proof and
the hsort goal fails inside quicksort.
"""
import io
import sys
from pathlib import Path

from mutexlog.engine import Config, collect_answers
from mutexlog.modules import load_path, registry_with_paths
from mutexlog.parser import parse_goal, print_formula

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main() -> int:
    reg = registry_with_paths([FIXTURES])
    for name in ("sort.mw", "quicksort.mw", "heapsort.mw"):
        reg, _ = load_path(reg, FIXTURES / name)

    goal = parse_goal("mod(sort) => (qsort([2,1],L1), hsort([2,1],L2))")
    for mode in ("call", "global", "off"):
        trace = io.StringIO()
        cfg = Config(commit_mode=mode, trace=True, trace_out=trace)
        answers, _ = collect_answers([], goal, cfg, reg, limit=1)
        entered = sorted(
            {line.split()[2] for line in trace.getvalue().splitlines()
             if line.startswith("RULE6") and "mod(" in line}
        )
        if answers:
            shown = ", ".join(f"{k}={print_formula(v)}" for k, v in answers[0].bindings.items())
            verdict = f"answer {shown}"
        else:
            verdict = "fails"
        print(f"mode={mode:<6} choice sides entered: {', '.join(entered) or '(none)'} -> {verdict}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
