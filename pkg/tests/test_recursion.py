import pytest
from hypothesis import given, settings, strategies as st

from hquery import BudgetExceeded, Interpreter, build_state_graph, compile, enumerate_paths, state_key
from hquery.errors import ScriptRuntimeError
from hquery.worlds import HanoiWorld
from hquery.worlds.hanoi import hierarchical_query, optimal_moves
import oracles

OPTIMAL3 = [[0, 2], [0, 1], [2, 1], [0, 2], [1, 0], [1, 2], [0, 2]]


def hanoi_interp(**kw):
    interp = Interpreter(**kw)
    interp.attach(HanoiWorld())
    return interp


def hanoi_select(disks, strategy, **kw):
    """Compiled hierarchical query plus an environment ready to run it."""
    interp = hanoi_interp(**kw)
    prog = compile(hierarchical_query(disks, strategy))
    return prog.statements[1], interp


def level_query(disks, keyword, stop_level, extra=""):
    start = oracles.hanoi_start(disks)
    goal = oracles.hanoi_goal(disks)
    fmt = lambda s: str([list(t) for t in s])  # noqa: E731
    return (
        f"SELECT this FROM moves WHERE {fmt(goal)} == move(this, tower) "
        f"START WITH tower = {fmt(start)}, level = 1 "
        f"CONNECT BY {keyword} {extra} tower = move(this, tower), level = level + 1 "
        f"STOP WITH level == {stop_level} OR [] == move(this, tower);"
    )


def replay_states(disks, path):
    states = [oracles.hanoi_start(disks)]
    for m in path:
        states.append(oracles.apply_move(states[-1], tuple(m)))
    return states


@pytest.mark.parametrize("bindings, exclude, key", [
    ({"tower": [[3, 2], [1], []], "level": 2}, {"level"}, '{"tower": [[3, 2], [1], []]}'),
    ({}, set(), "{}"),
])
def test_state_key_examples(bindings, exclude, key):
    assert state_key(bindings, frozenset(exclude)) == key


def test_state_key_ignores_counters():
    a = state_key({"t": [1], "level": 1}, frozenset({"level"}))
    b = state_key({"t": [1], "level": 5}, frozenset({"level"}))
    assert a == b
    assert state_key({"t": [1], "level": 1}, include=["level"]) != state_key(
        {"t": [1], "level": 2}, include=["level"])


def test_basic_query_finds_optimal_solution():
    result = hanoi_interp().eval(hierarchical_query(3, "default"))
    assert OPTIMAL3 in result


def test_basic_query_count_matches_brute_force():
    result = hanoi_interp().eval(hierarchical_query(3, "default"))
    expected = oracles.hanoi_sequences_reaching_goal(3, 7)
    assert len(result) == len(expected)
    assert sorted(map(str, result)) == sorted(map(str, expected))


def test_two_disk_nocycle_shortest_path():
    result = hanoi_interp().eval(level_query(2, "NO CYCLE", 3))
    assert min(len(p) for p in result) == 3
    assert [p for p in result if len(p) == 3] == [optimal_moves(2)]


def test_two_disk_state_graph_size():
    q, interp = hanoi_select(2, "memorize")
    g = build_state_graph(q, interp.env, max_len=10)
    states, edges = oracles.hanoi_states(2)
    assert g.node_count == len(states) == 9
    assert len(g.edges) == len(edges) == 24


def test_graph_depth_limit_stops_expansion():
    q, interp = hanoi_select(3, "memorize")
    g = build_state_graph(q, interp.env, max_len=1)
    assert g.node_count == 3  # root plus its two successors
    assert len(g.edges) == 2


def test_empty_from_gives_root_only():
    interp = Interpreter()
    q = compile("SELECT this FROM [] START WITH s = 0 CONNECT BY MEMORIZE 5 s = s STOP WITH 0;").statements[0]
    g = build_state_graph(q, interp.env)
    assert g.node_count == 1 and g.edges == [] and g.terminal_edges == []
    assert enumerate_paths(g, 5) == []


def test_two_disk_enumeration():
    q, interp = hanoi_select(2, "memorize")
    g = build_state_graph(q, interp.env, max_len=3)
    assert enumerate_paths(g, 3) == [optimal_moves(2)]
    longer = enumerate_paths(g, 7)
    assert longer[0] == optimal_moves(2)
    assert enumerate_paths(g, 7, cap=1) == [optimal_moves(2)]
    assert enumerate_paths(g, 7, cap=0) == []


@pytest.mark.parametrize("disks", [2, 3, 4])
def test_memorize_first_path_is_optimal(disks):
    result = hanoi_interp().eval(hierarchical_query(disks, "memorize"))
    assert len(result[0]) == 2 ** disks - 1
    assert result[0] == optimal_moves(disks)


@pytest.mark.parametrize("disks, max_len", [(2, 3), (2, 5), (2, 7), (3, 7), (3, 9)])
def test_memorize_matches_simple_path_oracle(disks, max_len):
    src = hierarchical_query(disks, "memorize").replace(f"MEMORIZE {2 ** disks - 1}", f"MEMORIZE {max_len}")
    result = hanoi_interp().eval(src)
    expected = oracles.hanoi_simple_goal_paths(disks, max_len)
    assert sorted(map(str, result)) == sorted(map(str, expected))
    assert len(result) == len(expected)
    lengths = [len(p) for p in result]
    assert lengths == sorted(lengths)


@pytest.mark.parametrize("disks, stop", [(2, 5), (2, 7), (3, 7)])
def test_strategy_containment(disks, stop):
    def run(keyword):
        return {str(p) for p in hanoi_interp().eval(level_query(disks, keyword, stop))}

    default, nocycle, unique = run(""), run("NO CYCLE"), run("UNIQUE")
    assert unique <= nocycle <= default
    assert unique


@pytest.mark.parametrize("keyword", ["NO CYCLE", "UNIQUE"])
def test_pruned_paths_are_simple(keyword):
    for path in hanoi_interp().eval(level_query(3, keyword, 9)):
        states = replay_states(3, path)
        assert None not in states
        inner = states[:-1]
        assert len(set(inner)) == len(inner)


@pytest.mark.parametrize("keyword, n", [("", 3), ("NO CYCLE", 1), ("UNIQUE", 2), ("MEMORIZE 7", 5)])
def test_maximum_keeps_a_prefix(keyword, n):
    if keyword.startswith("MEMORIZE"):
        full_src = hierarchical_query(3, "memorize").replace("MEMORIZE 7", "MEMORIZE 9")
        capped_src = full_src.replace("MEMORIZE 9", f"MEMORIZE 9 MAXIMUM {n}")
    else:
        full_src = level_query(3, keyword, 9)
        capped_src = level_query(3, keyword, 9, extra=f"MAXIMUM {n}")
    full = hanoi_interp().eval(full_src)
    capped = hanoi_interp().eval(capped_src)
    assert len(capped) == min(n, len(full))
    assert capped == full[:n]


@pytest.mark.parametrize("strategy", ["default", "nocycle", "unique", "memorize"])
def test_strategies_are_deterministic(strategy):
    src = hierarchical_query(3, strategy, select="this, tower")
    assert hanoi_interp().eval(src) == hanoi_interp().eval(src)


def test_unique_expands_fewer_nodes():
    counts = {}
    for s in ("default", "nocycle", "unique"):
        interp = hanoi_interp()
        interp.eval(hierarchical_query(3, s))
        counts[s] = interp.stats.expansions
    assert counts["unique"] <= counts["nocycle"] <= counts["default"]


CYCLIC = "SELECT this FROM [1, -1] WHERE false START WITH x = 0 CONNECT BY x = x * 0 + this STOP WITH false;"


@pytest.mark.parametrize("budget", [1, 10, 500])
def test_budget_stops_cyclic_search(budget):
    interp = Interpreter(max_nodes=budget)
    with pytest.raises(ScriptRuntimeError) as info:
        interp.eval(CYCLIC)
    assert isinstance(info.value.cause, BudgetExceeded)
    assert interp.stats.expansions == budget + 1


def test_nocycle_terminates_cyclic_search():
    src = CYCLIC.replace("CONNECT BY", "CONNECT BY NO CYCLE")
    assert Interpreter(max_nodes=100).eval(src) == []


def test_state_keys_option_overrides_counter_rule():
    # with the counter in the key every state is new, so NO CYCLE prunes nothing
    src = level_query(2, "NO CYCLE", 5)
    plain = hanoi_interp().eval(src)
    keyed = hanoi_interp(state_keys=["tower", "level"]).eval(src)
    default = hanoi_interp().eval(level_query(2, "", 5))
    assert len(plain) < len(keyed) == len(default)


def test_hierarchical_as_formats():
    base = hierarchical_query(2, "memorize", select="this, tower")
    interp = hanoi_interp()
    assert interp.eval(base[:-1] + " AS value;") == interp.eval(base)[0]
    dicts = interp.eval(base[:-1] + " AS dict;")
    assert dicts[0][0] == {"this": [0, 1], "tower": [[2, 1], [], []]}
    seen = {}

    def paths(table, args):
        seen["labels"] = table.labels
        return len(table.rows)

    interp.add_formatter("paths", paths)
    assert interp.eval(base[:-1] + " AS paths;") == len(interp.eval(base))
    assert seen["labels"] == ["path"]


def random_graph(rng, n, max_out):
    succ = {u: sorted(rng.sample(range(n), rng.randint(0, min(max_out, n)))) for u in range(n)}
    edges = [(u, v) for u in succ for v in succ[u]]
    goals = {e for e in edges if rng.random() < 0.3}
    return succ, goals


GRAPH_QUERY = """SELECT this FROM succ(node) WHERE goal(node, this)
START WITH node = 0
CONNECT BY MEMORIZE {L} node = this
STOP WITH false;"""


def run_graph(succ, goals, max_len):
    interp = Interpreter()
    interp.add_function("succ", lambda u: succ[u], pure=True)
    interp.add_function("goal", lambda u, v: (u, v) in goals, pure=True)
    return interp.eval(GRAPH_QUERY.format(L=max_len))


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(1, 12), st.integers(1, 3), st.integers(2, 30))
def test_graph_enumeration_matches_brute_force(rng, max_len, max_out, n):
    succ, goals = random_graph(rng, n, max_out)
    got = [tuple(p) for p in run_graph(succ, goals, max_len)]
    expected = oracles.simple_paths_to_goal_edges(succ, goals, 0, max_len)
    assert sorted(got) == sorted(expected)
    assert len(got) == len(set(got))
    assert [len(p) for p in got] == sorted(len(p) for p in got)


def test_ties_follow_discovery_order():
    succ = {0: [1, 2], 1: [3], 2: [3], 3: []}
    goals = {(1, 3), (2, 3), (0, 2)}
    assert run_graph(succ, goals, 3) == [[2], [1, 3], [2, 3]]
