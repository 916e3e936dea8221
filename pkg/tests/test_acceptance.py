"""Acceptance criteria; a PASS/FAIL line per criterion is printed in the terminal summary."""

import random
import subprocess
import sys
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings

from hquery import BudgetExceeded, Interpreter, compile, parse, pretty_print
from hquery.errors import ScriptRuntimeError
from hquery.worlds import GridWorld, HanoiWorld, shipped_map
from hquery.worlds.gridworld import navigation_query
from hquery.worlds.hanoi import hierarchical_query, vanilla_query
from hquery.values import serialize
import oracles
from strategies import scripts

SCRIPTS = Path(__file__).resolve().parents[1] / "demos" / "scripts"
OPTIMAL3 = [[0, 2], [0, 1], [2, 1], [0, 2], [1, 0], [1, 2], [0, 2]]
HANOI_FORMS = ["vanilla", "default", "nocycle", "unique", "memorize"]


def solve(form, disks=3):
    interp = Interpreter()
    interp.attach(HanoiWorld())
    source = vanilla_query(disks) if form == "vanilla" else hierarchical_query(disks, form)
    started = time.perf_counter()
    result = interp.eval(source)
    return result, interp.stats, time.perf_counter() - started


@pytest.fixture(scope="module")
def hanoi_runs():
    return {form: solve(form) for form in HANOI_FORMS}


@pytest.mark.criterion(1, "Hanoi correctness")
@pytest.mark.parametrize("form", HANOI_FORMS)
def test_hanoi_forms_contain_printed_solution(hanoi_runs, form):
    result, _, _ = hanoi_runs[form]
    assert OPTIMAL3 in result


@pytest.mark.criterion(1, "Hanoi correctness")
def test_hanoi_forms_total_runtime(hanoi_runs):
    total = sum(seconds for _, _, seconds in hanoi_runs.values())
    assert total < 30.0


@pytest.mark.criterion(2, "optimal-length formula")
@pytest.mark.parametrize("disks", [2, 3, 4])
def test_memorize_first_path_length(disks):
    result, _, _ = solve("memorize", disks)
    assert len(result[0]) == 2 ** disks - 1


@pytest.mark.criterion(3, "strategy ordering")
def test_expansion_ordering(hanoi_runs):
    exp = {form: hanoi_runs[form][1].expansions for form in ("default", "nocycle", "unique")}
    assert exp["unique"] <= exp["nocycle"] <= exp["default"]


@pytest.mark.criterion(3, "strategy ordering")
def test_vanilla_row_evaluations_dominate(hanoi_runs):
    vanilla_rows = hanoi_runs["vanilla"][1].rows
    assert vanilla_rows >= 5 * hanoi_runs["default"][1].expansions


GRAPH_QUERY = """SELECT this FROM succ(node) WHERE goal(node, this)
START WITH node = 0
CONNECT BY MEMORIZE 12 node = this
STOP WITH false;"""


def random_instance(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 200)
    succ = {}
    for u in range(n):
        k = rng.randint(0, n) if n <= 10 else rng.choice([1, 2, 2, 3])
        succ[u] = sorted(rng.sample(range(n), min(k, n)))
    p = rng.uniform(0.05, 0.5)
    goals = {(u, v) for u in succ for v in succ[u] if rng.random() < p}
    return succ, goals


@pytest.mark.criterion(4, "oracle equivalence on random graphs")
def test_random_graph_enumeration():
    mismatches = []
    for seed in range(100):
        succ, goals = random_instance(seed)
        interp = Interpreter()
        interp.add_function("succ", lambda u: succ[u], pure=True)
        interp.add_function("goal", lambda u, v: (u, v) in goals, pure=True)
        got = [tuple(p) for p in interp.eval(GRAPH_QUERY)]
        expected = oracles.simple_paths_to_goal_edges(succ, goals, 0, 12)
        lengths = [len(p) for p in got]
        if sorted(got) != sorted(expected) or lengths != sorted(lengths):
            mismatches.append(seed)
    assert mismatches == []


def census(max_len, maximum=None):
    interp = Interpreter()
    interp.attach(GridWorld(shipped_map()))
    return interp.eval(navigation_query(max_len, maximum))


@pytest.fixture(scope="module")
def grid_rows():
    return shipped_map().render().split()


@pytest.mark.criterion(5, "path-planning census")
@pytest.mark.parametrize("extra", [0, 2])
def test_census_matches_brute_force(grid_rows, extra):
    shortest = oracles.grid_shortest(grid_rows)
    max_len = shortest + extra
    paths = census(max_len)
    assert len(paths) == oracles.grid_simple_paths(grid_rows, max_len)
    assert len({serialize(p) for p in paths}) == len(paths)
    assert len(paths[0]) == shortest


@pytest.mark.criterion(5, "path-planning census")
@pytest.mark.parametrize("k", [1, 10, 20, 1000, 5000])
def test_census_maximum_prefix(grid_rows, k):
    max_len = oracles.grid_shortest(grid_rows) + 2
    full = census(max_len)
    capped = census(max_len, k)
    assert len(capped) == min(k, len(full))
    assert capped == full[:k]


@pytest.mark.criterion(6, "language conformance")
@pytest.mark.parametrize("path", sorted(SCRIPTS.glob("*.sss")), ids=lambda p: p.stem)
def test_scripts_compile(path):
    compile(path.read_text(encoding="utf-8"))


@pytest.mark.criterion(6, "language conformance")
@settings(max_examples=1000, deadline=None, derandomize=True, suppress_health_check=list(HealthCheck))
@given(scripts)
def test_round_trip_thousand_trees(script):
    assert parse(pretty_print(script)) == script


@pytest.mark.criterion(7, "query-engine oracles")
def test_select_row_counts_against_nested_loops():
    rng = random.Random(2024)
    for _ in range(200):
        k = rng.randint(1, 3)
        sources = [[rng.randint(-3, 3) for _ in range(rng.randint(0, 4))] for _ in range(k)]
        threshold = rng.randint(-4, 4)
        names = [f"s{i}" for i in range(k)]
        src = (
            f"SELECT {', '.join(n + '.this' for n in names)} "
            f"FROM {', '.join(f'{n}={serialize(s)}' for n, s in zip(names, sources))} "
            f"WHERE {' + '.join(n + '.this' for n in names)} > {threshold} AS dict;"
        )
        rows = Interpreter().eval(src)
        assert len(rows) == oracles.nested_loop_count(sources, lambda c: sum(c) > threshold)
        labels = list(compile(src).statements[0].labels)
        assert all(list(r) == labels for r in rows)


@pytest.mark.criterion(7, "query-engine oracles")
def test_group_by_counts():
    rng = random.Random(7)
    for _ in range(200):
        xs = [rng.randint(0, 5) for _ in range(rng.randint(0, 8))]
        ys = [rng.randint(0, 2) for _ in range(rng.randint(1, 3))]
        src = f"SELECT count FROM a={serialize(xs)}, b={serialize(ys)} GROUP BY a.this, b.this AS list;"
        got = Interpreter().eval(src)
        assert len(got) == len({(x, y) for x in xs for y in ys})
        assert sum(got) == len(xs) * len(ys)


CYCLIC = SCRIPTS / "cyclic_no_stop.sss"


@pytest.mark.criterion(8, "robustness")
@pytest.mark.parametrize("budget", [1000, 100_000])
def test_budget_terminates_cyclic_query(budget):
    interp = Interpreter(max_nodes=budget)
    started = time.perf_counter()
    with pytest.raises(ScriptRuntimeError) as info:
        interp.eval(CYCLIC.read_text(encoding="utf-8"))
    assert isinstance(info.value.cause, BudgetExceeded)
    assert interp.stats.expansions == budget + 1
    assert time.perf_counter() - started < 60


@pytest.mark.criterion(8, "robustness")
def test_cli_reports_budget_exhaustion():
    proc = subprocess.run(
        [sys.executable, "-m", "hquery.cli", "run", str(CYCLIC), "--max-nodes", "5000"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 2
    assert "BudgetExceeded" in proc.stderr
