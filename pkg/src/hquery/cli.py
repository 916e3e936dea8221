"""Command-line entry point: ``hquery run | repl | bench``."""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import values as V
from .errors import (
    BudgetExceeded, CompileError, HQueryError, LexError, ParseError, ScriptRuntimeError,
)
from .frontend.lexer import tokenize
from .interpreter import DEFAULT_BUDGET, Interpreter
from .worlds import GridMap, GridWorld, HanoiWorld, ParticleWorld, shipped_map
from .worlds.hanoi import hierarchical_query, optimal_moves, vanilla_query

EXIT_OK, EXIT_SOURCE, EXIT_RUNTIME = 0, 1, 2
STRATEGIES = ("default", "nocycle", "unique", "memorize")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    script_path: Optional[str] = None
    world_spec: str = "none"
    show_timing: bool = False
    node_budget: int = DEFAULT_BUDGET
    state_keys: Optional[list] = None


def default_budget() -> int:
    raw = os.environ.get("HQUERY_MAX_NODES")
    if not raw:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"HQUERY_MAX_NODES must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError("HQUERY_MAX_NODES must be at least 1")
    return value


def parse_world_spec(spec: str):
    """``none | hanoi | gridworld[:<map-path>] | particles:<seed>,<n>``"""
    spec = (spec or "none").strip()
    kind, _, arg = spec.partition(":")
    if kind == "none" and not arg:
        return None
    if kind == "hanoi" and not arg:
        return HanoiWorld()
    if kind == "gridworld":
        try:
            grid = GridMap.load(arg) if arg else shipped_map()
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot load map {arg!r}: {exc}") from None
        return GridWorld(grid)
    if kind == "particles":
        try:
            seed, n = (int(x) for x in arg.split(","))
        except ValueError:
            raise ConfigError(f"particles world needs <seed>,<n>, got {arg!r}") from None
        if n < 0:
            raise ConfigError("particle count must be non-negative")
        return ParticleWorld(seed, n)
    raise ConfigError(f"unknown world spec {spec!r}")


def make_interpreter(cfg: RunConfig) -> Interpreter:
    world = parse_world_spec(cfg.world_spec)
    interp = Interpreter(max_nodes=cfg.node_budget, state_keys=cfg.state_keys)
    if world is not None:
        interp.attach(world)
    return interp


def _source_error(exc, path, stderr):
    where = path or "<input>"
    if isinstance(exc, (LexError, ParseError)):
        stderr.write(f"{where}:{exc.line}:{exc.column}: {type(exc).__name__}: {exc.message}\n")
    else:
        stderr.write(f"{where}: {type(exc).__name__}: {exc}\n")


def _runtime_error(exc, path, stderr):
    where = path or "<input>"
    if isinstance(exc, ScriptRuntimeError):
        if exc.line is not None:
            where += f":{exc.line}:{exc.column}"
        cause = exc.cause
        context = getattr(cause, "context", None)
        detail = f" ({', '.join(context)})" if context else ""
        stderr.write(f"{where}: {type(cause).__name__}: {cause}{detail}\n")
    else:
        stderr.write(f"{where}: {type(exc).__name__}: {exc}\n")


def cmd_run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        interp = make_interpreter(cfg)
    except ConfigError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_SOURCE
    try:
        with open(cfg.script_path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        stderr.write(f"error: cannot read {cfg.script_path}: {exc.strerror}\n")
        return EXIT_SOURCE
    try:
        ir = interp.compile(source)
    except (LexError, ParseError, CompileError) as exc:
        _source_error(exc, cfg.script_path, stderr)
        return EXIT_SOURCE
    started = time.perf_counter()
    try:
        result = interp.eval(ir)
    except HQueryError as exc:
        _runtime_error(exc, cfg.script_path, stderr)
        return EXIT_RUNTIME
    elapsed = time.perf_counter() - started
    stdout.write(V.serialize(result) + "\n")
    stdout.flush()
    if cfg.show_timing:
        stderr.write(f"# time: {elapsed:.3f}s\n")
    return EXIT_OK


class Repl:
    """Line-oriented session over one persistent interpreter."""

    prompt = "hq> "
    continuation = "... "

    def __init__(self, interp: Interpreter, stdin=None, stdout=None, stderr=None):
        self.interp = interp
        self.stdin = stdin or sys.stdin
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.timing = False
        self.buffer: list = []
        self.interactive = hasattr(self.stdin, "isatty") and self.stdin.isatty()

    def _show_prompt(self):
        if self.interactive:
            self.stdout.write(self.continuation if self.buffer else self.prompt)
            self.stdout.flush()

    def command(self, line: str) -> bool:
        """Handle a ``:command``; returns False when the session should end."""
        parts = line.split()
        if parts[0] in (":quit", ":q", ":exit"):
            return False
        if parts[0] == ":time" and len(parts) == 2 and parts[1] in ("on", "off"):
            self.timing = parts[1] == "on"
            self.stdout.write(f"timing {parts[1]}\n")
        else:
            self.stderr.write(f"unknown command {line.strip()!r} (try :quit or :time on|off)\n")
        return True

    def complete(self, text: str) -> bool:
        tokens = tokenize(text)
        real = [t for t in tokens if t.kind != "eof"]
        return bool(real) and real[-1].kind == "punct" and real[-1].text == ";"

    def submit(self, text: str):
        try:
            ir = self.interp.compile(text)
        except (LexError, ParseError, CompileError) as exc:
            _source_error(exc, None, self.stderr)
            return
        started = time.perf_counter()
        try:
            result = self.interp.eval(ir)
        except HQueryError as exc:
            _runtime_error(exc, None, self.stderr)
            return
        self.stdout.write(V.serialize(result) + "\n")
        if self.timing:
            self.stdout.write(f"# time: {time.perf_counter() - started:.3f}s\n")

    def run(self) -> int:
        while True:
            self._show_prompt()
            line = self.stdin.readline()
            if not line:
                if self.interactive:
                    self.stdout.write("\n")
                return EXIT_OK
            if not self.buffer and line.strip().startswith(":"):
                if not self.command(line):
                    return EXIT_OK
                continue
            if not self.buffer and not line.strip():
                continue
            self.buffer.append(line)
            text = "".join(self.buffer)
            try:
                done = self.complete(text)
            except LexError as exc:
                _source_error(exc, None, self.stderr)
                self.buffer.clear()
                continue
            if done:
                self.buffer.clear()
                self.submit(text)
            self.stdout.flush()


def cmd_repl(cfg: RunConfig, stdin=None, stdout=None, stderr=None) -> int:
    stderr = stderr or sys.stderr
    try:
        interp = make_interpreter(cfg)
    except ConfigError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_SOURCE
    return Repl(interp, stdin, stdout, stderr).run()


@dataclass
class BenchRow:
    strategy: str
    seconds: float
    expansions: int
    rows: int
    results: Optional[int]  # None when the node budget ran out
    optimal_found: bool
    first_length: Optional[int]


def run_bench(disks: int, strategies=STRATEGIES, budget: int = DEFAULT_BUDGET, vanilla=None) -> list:
    """Solve Hanoi with each strategy; vanilla runs by default only for disks <= 3."""
    if not 2 <= disks <= 6:
        raise ConfigError("disks must be between 2 and 6")
    names = list(strategies)
    if vanilla is None:
        vanilla = disks <= 3
    if vanilla and "vanilla" not in names:
        names.insert(0, "vanilla")
    best = optimal_moves(disks)
    out = []
    for name in names:
        if name == "vanilla":
            source = vanilla_query(disks)
        elif name in STRATEGIES:
            source = hierarchical_query(disks, name)
        else:
            raise ConfigError(f"unknown strategy {name!r}")
        interp = Interpreter(max_nodes=budget)
        interp.attach(HanoiWorld())
        started = time.perf_counter()
        try:
            result = interp.eval(source)
        except ScriptRuntimeError as exc:
            if not isinstance(exc.cause, BudgetExceeded):
                raise
            result = None
        elapsed = time.perf_counter() - started
        out.append(BenchRow(
            name, elapsed, interp.stats.expansions, interp.stats.rows,
            None if result is None else len(result),
            result is not None and best in result,
            len(result[0]) if result else None,
        ))
    return out


def format_bench(rows, disks) -> str:
    header = ("strategy", "time_s", "expansions", "rows", "results", "first_len", "optimal")
    lines = [header]
    for r in rows:
        lines.append((
            r.strategy,
            f"{r.seconds:.3f}",
            str(r.expansions),
            str(r.rows),
            "budget" if r.results is None else str(r.results),
            "-" if r.first_length is None else str(r.first_length),
            "yes" if r.optimal_found else "no",
        ))
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    text = [f"# hanoi, {disks} disks, optimal length {2 ** disks - 1}"]
    for line in lines:
        cells = [line[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(line[1:], widths[1:])]
        text.append("  ".join(cells))
    return "\n".join(text) + "\n"


def cmd_bench(disks: int, strategies=STRATEGIES, budget: int = DEFAULT_BUDGET, stdout=None) -> int:
    stdout = stdout or sys.stdout
    rows = run_bench(disks, strategies, budget)
    stdout.write(format_bench(rows, disks))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hquery", description="Hierarchical query interpreter")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a script file and print its result")
    run.add_argument("file")
    run.add_argument("--world", default="none", help="none | hanoi | gridworld[:MAP] | particles:SEED,N")
    run.add_argument("--time", action="store_true", help="report evaluation time on stderr")
    run.add_argument("--max-nodes", type=int, default=None, help="node budget for recursive queries")
    run.add_argument("--state-keys", default=None, help="comma-separated state-key variables")

    repl = sub.add_parser("repl", help="interactive session")
    repl.add_argument("--world", default="none")
    repl.add_argument("--max-nodes", type=int, default=None)

    bench = sub.add_parser("bench", help="compare search strategies")
    bench.add_argument("problem", choices=["hanoi"])
    bench.add_argument("--disks", type=int, default=3)
    bench.add_argument("--strategies", default=",".join(STRATEGIES))
    bench.add_argument("--max-nodes", type=int, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        budget = args.max_nodes if args.max_nodes is not None else default_budget()
        if budget < 1:
            raise ConfigError("--max-nodes must be at least 1")
        if args.command == "run":
            keys = [k.strip() for k in args.state_keys.split(",") if k.strip()] if args.state_keys else None
            cfg = RunConfig(args.file, args.world, args.time, budget, keys)
            return cmd_run(cfg)
        if args.command == "repl":
            return cmd_repl(RunConfig(None, args.world, False, budget))
        strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
        return cmd_bench(args.disks, strategies, budget)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_SOURCE


if __name__ == "__main__":
    sys.exit(main())
