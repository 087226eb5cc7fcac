"""Command-line front end.

Batch mode solves one query against the loaded files and prints each answer
as `Var = term` lines (blank line between answers); REPL mode reads goals
interactively.  `--oracle-check` cross-validates the engine against the
bounded-depth reference prover on a seeded random corpus.

Exit codes: 0 at least one answer, 1 no answer, 2 error, 3 no answer but
the depth limit cut some branch (so failure is not established).
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .engine import Answer, Config, DepthExhausted, collect_answers, solve
from .errors import MutexlogError
from .modules import (
    ModuleRegistry,
    find_module_file,
    paths_from_env,
    register_module,
    registry_with_paths,
)
from .oracle import canonical_bindings, enumerate_answers, random_instance, renumber_fresh
from .parser import parse_goal, parse_program, print_formula


@dataclass
class CliOptions:
    files: "list[str]" = field(default_factory=list)
    query: str | None = None
    commit_mode: str = "call"
    depth: int | None = None
    occurs_check: bool = True
    oracle_check: bool = False
    trace: bool = False
    max_answers: int | None = None
    corpus_size: int = 200
    seed: int = 0
    module_path: "list[str]" = field(default_factory=list)


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mutexlog",
        description="Logic programming with choice-committed clause pairs and file modules.",
    )
    ap.add_argument("--file", "-f", dest="files", action="append", default=[], metavar="PATH",
                    help="load a .mw file (repeatable); a mod(name) header registers a module, "
                         "a headerless file extends the base program")
    ap.add_argument("--query", "-q", metavar="GOAL", help="goal to solve; omit for a REPL")
    ap.add_argument("--mode", dest="commit_mode", choices=["call", "global", "off"],
                    default="call", help="choice commitment mode (default: call)")
    ap.add_argument("--depth", type=int, metavar="N", help="proof depth limit (default: unbounded)")
    ap.add_argument("--occurs-check", choices=["on", "off"], default="on")
    ap.add_argument("--trace", action="store_true", help="log rule applications to stderr")
    ap.add_argument("--max-answers", type=int, metavar="N", help="stop after N answers")
    ap.add_argument("--oracle-check", action="store_true",
                    help="compare the engine against the reference prover on a random corpus")
    ap.add_argument("--corpus-size", type=int, default=200, metavar="N")
    ap.add_argument("--seed", type=int, default=0, metavar="K", help="first corpus seed")
    ap.add_argument("--module-path", action="append", default=[], metavar="DIR",
                    help="directory to search for .mw files (repeatable; MUTEXLOG_PATH adds more)")
    return ap


def options_from_args(ns: argparse.Namespace) -> CliOptions:
    return CliOptions(
        files=list(ns.files),
        query=ns.query,
        commit_mode=ns.commit_mode,
        depth=ns.depth,
        occurs_check=(ns.occurs_check == "on"),
        oracle_check=ns.oracle_check,
        trace=ns.trace,
        max_answers=ns.max_answers,
        corpus_size=ns.corpus_size,
        seed=ns.seed,
        module_path=list(ns.module_path),
    )


def _load_file(reg: ModuleRegistry, base: list, pathstr: str) -> "tuple[ModuleRegistry, str]":
    """Load one file into the registry or the base program; returns a note."""
    target = find_module_file(reg, pathstr)
    mf = parse_program(target.read_text())
    if mf.name is None:
        base.extend(mf.clauses)
        return reg, f"loaded {len(mf.clauses)} clauses"
    reg = register_module(reg, mf)
    return reg, f"loaded module {mf.name}"


def load_sources(opts: CliOptions, environ=None) -> "tuple[ModuleRegistry, list]":
    paths = [Path(p) for p in opts.module_path] + list(paths_from_env(environ))
    reg = registry_with_paths(paths)
    base: list = []
    for f in opts.files:
        reg, _ = _load_file(reg, base, f)
    return reg, base


def format_answer(ans: Answer) -> str:
    if not ans.bindings:
        return "true"
    seen: dict = {}
    return "\n".join(
        f"{name} = {print_formula(renumber_fresh(t, seen))}" for name, t in ans.bindings.items()
    )


def _config(opts: CliOptions, err) -> Config:
    return Config(
        commit_mode=opts.commit_mode,
        depth_limit=opts.depth,
        occurs_check=opts.occurs_check,
        trace=opts.trace,
        trace_out=err,
    )


def run_batch(opts: CliOptions, reg: ModuleRegistry, base: list, out, err) -> int:
    goal = parse_goal(opts.query or "")
    cfg = _config(opts, err)
    count = 0
    exhausted = False
    for item in solve(base, goal, cfg, reg):
        if isinstance(item, DepthExhausted):
            exhausted = True
            continue
        if count:
            out.write("\n")
        out.write(format_answer(item) + "\n")
        count += 1
        if opts.max_answers is not None and count >= opts.max_answers:
            break
    if count:
        return 0
    if exhausted:
        err.write("unknown (depth limit reached)\n")
        return 3
    return 1


def run_repl(opts: CliOptions, reg: ModuleRegistry, base: list, stdin, out, err) -> int:
    opts = CliOptions(**vars(opts))  # private copy: :mode and :load mutate it
    while True:
        out.write("?- ")
        out.flush()
        line = stdin.readline()
        if not line:
            out.write("\n")
            return 0
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            parts = line.split(None, 1)
            cmd = parts[0]
            arg = parts[1].strip() if len(parts) > 1 else ""
            if cmd in (":quit", ":q"):
                return 0
            if cmd == ":mode":
                if arg in ("call", "global", "off"):
                    opts.commit_mode = arg
                else:
                    err.write("error: :mode takes call, global, or off\n")
                continue
            if cmd == ":load":
                try:
                    reg, note = _load_file(reg, base, arg)
                    out.write(note + "\n")
                except (MutexlogError, OSError) as e:
                    err.write(f"error: {e}\n")
                continue
            err.write(f"error: unknown command {cmd}\n")
            continue
        try:
            goal = parse_goal(line)
        except MutexlogError as e:
            err.write(f"error: {e}\n")
            continue
        try:
            _repl_answers(opts, reg, base, goal, stdin, out, err)
        except MutexlogError as e:
            err.write(f"error: {e}\n")


def _repl_answers(opts, reg, base, goal, stdin, out, err) -> None:
    it = solve(base, goal, _config(opts, err), reg)
    printed = False
    while True:
        item = next(it, None)
        if item is None or isinstance(item, DepthExhausted):
            if printed:
                out.write("no more answers\n")
            elif isinstance(item, DepthExhausted):
                out.write("unknown (depth limit reached)\n")
            else:
                out.write("no\n")
            return
        out.write(format_answer(item) + "\n")
        out.flush()
        printed = True
        nxt = stdin.readline()
        if not nxt or not nxt.strip().startswith(";"):
            return


def run_oracle_check(opts: CliOptions, out, err) -> int:
    depth = opts.depth
    assert depth is not None
    total = opts.corpus_size
    decisive = 0
    mismatches = 0
    subset_violations = 0
    strict_prunes = 0

    for i in range(total):
        inst = random_instance(opts.seed + i)
        engine_sets = {}
        engine_cut = {}
        for mode in ("off", "call", "global"):
            answers, cut = collect_answers(inst.clauses, inst.goal, Config(mode, depth))
            engine_sets[mode] = {canonical_bindings(a.bindings) for a in answers}
            engine_cut[mode] = cut

        verdict = enumerate_answers(inst.clauses, inst.goal, depth)
        bad = []

        if not verdict.truncated and not engine_cut["off"]:
            decisive += 1
            if engine_sets["off"] != set(verdict.answers):
                bad.append(("engine(off) vs prover", engine_sets["off"], set(verdict.answers)))
            literal = enumerate_answers(inst.clauses, inst.goal, depth, rule2_order="body")
            if not literal.truncated and set(literal.answers) != set(verdict.answers):
                bad.append(("prover body-first vs head-first", set(literal.answers), set(verdict.answers)))

        if not engine_cut["off"] and not engine_sets["call"] <= engine_sets["off"]:
            subset_violations += 1
            bad.append(("call ⊆ off", engine_sets["call"], engine_sets["off"]))
        if not engine_cut["call"] and not engine_sets["global"] <= engine_sets["call"]:
            subset_violations += 1
            bad.append(("global ⊆ call", engine_sets["global"], engine_sets["call"]))

        if not engine_cut["off"] and not engine_cut["call"] and engine_sets["call"] < engine_sets["off"]:
            strict_prunes += 1

        if bad:
            mismatches += len([b for b in bad if "⊆" not in b[0]])
            err.write(f"-- seed {opts.seed + i}: {', '.join(b[0] for b in bad)}\n")
            err.write(inst.program_text() + "\n")
            err.write(f"%% goal: {inst.goal_text()}\n")
            for label, got, want in bad:
                err.write(f"%%   {label}: got {sorted(got)!r}, reference {sorted(want)!r}\n")

    out.write(f"instances          {total}\n")
    out.write(f"decisive           {decisive}\n")
    out.write(f"mismatches         {mismatches}\n")
    out.write(f"subset violations  {subset_violations}\n")
    out.write(f"strict pruning     {strict_prunes}\n")
    return 0 if mismatches == 0 and subset_violations == 0 else 1


def main(argv=None) -> int:
    ns = build_arg_parser().parse_args(argv)
    opts = options_from_args(ns)
    try:
        if opts.oracle_check:
            if opts.depth is None:
                sys.stderr.write("error: --oracle-check requires --depth\n")
                return 2
            return run_oracle_check(opts, sys.stdout, sys.stderr)
        reg, base = load_sources(opts, os.environ)
        if opts.query is not None:
            return run_batch(opts, reg, base, sys.stdout, sys.stderr)
        return run_repl(opts, reg, base, sys.stdin, sys.stdout, sys.stderr)
    except MutexlogError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
