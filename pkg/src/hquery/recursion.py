"""Hierarchical (START WITH / CONNECT BY / STOP WITH) query evaluation.

Search modes:

* ``dfs``       depth-first expansion, no pruning
* ``nocycle``   depth-first, a state may not repeat along the current path
* ``unique``    depth-first over a global visited table; a state is entered
                again only when reached by a strictly shorter path, so depth
                limits in STOP WITH cannot hide the shortest solutions
* ``memorize``  breadth-first materialization of the state graph followed by
                shortest-first enumeration of all simple goal paths

WHERE and STOP WITH see the bindings *before* the CONNECT BY update plus the
current FROM row; a goal is emitted before the stop test runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from . import values as V
from .errors import BudgetExceeded, EvalError
from .interpreter import EvalContext, eval_expr
from .query import ResultTable, format_result, project, row_contexts


def state_key(bindings: dict, exclude=frozenset(), include=None) -> str:
    """Canonical key of a search state.

    Counter variables (``v = v + <number>`` updates) are passed in
    ``exclude``; an explicit ``include`` list overrides the exclusion rule.

    >>> state_key({"tower": [[2], [1], []], "level": 3}, exclude={"level"})
    '{"tower": [[2], [1], []]}'
    """
    if include is not None:
        picked = {k: bindings[k] for k in include if k in bindings}
    else:
        picked = {k: v for k, v in bindings.items() if k not in exclude}
    return V.serialize(picked)


@dataclass
class StateGraph:
    nodes: dict = field(default_factory=dict)  # state key -> node id
    bindings: list = field(default_factory=list)  # node id -> bindings
    dist: list = field(default_factory=list)  # node id -> BFS distance from root
    edges: list = field(default_factory=list)  # (seq, src, dst, projection)
    terminal_edges: list = field(default_factory=list)  # (seq, src, projection)
    root: int = 0

    def add_node(self, key, bindings, dist) -> int:
        nid = len(self.bindings)
        self.nodes[key] = nid
        self.bindings.append(bindings)
        self.dist.append(dist)
        return nid

    @property
    def node_count(self) -> int:
        return len(self.bindings)


class _Search:
    """State shared by the strategies of one hierarchical evaluation."""

    def __init__(self, q, env, ctx: EvalContext):
        self.q = q
        self.h = q.hierarchy
        self.env = env
        self.outer = ctx
        self.budget = env.options.budget
        self.include = env.options.state_keys
        self.expansions = 0
        self.dict_rows = q.as_name.lower() == "dict"

        bindings = {}
        start_ctx = ctx.with_bindings(dict(ctx.bindings))
        for name, expr in self.h.start:
            value = eval_expr(expr, env, start_ctx)
            bindings[name] = value
            start_ctx.bindings[name] = value
        self.root = bindings

    def key(self, bindings) -> str:
        return state_key(bindings, self.h.counters, self.include)

    def expand(self):
        self.expansions += 1
        self.env.stats.expansions += 1
        if self.expansions > self.budget:
            raise BudgetExceeded(self.budget)

    def rows(self, bindings):
        scope = dict(self.outer.bindings)
        scope.update(bindings)
        ctx = EvalContext(named=self.outer.named, bindings=scope)
        return row_contexts(self.q.sources, self.env, ctx)

    def projection(self, row_ctx):
        values = project(self.q.items, row_ctx, self.env)
        if self.dict_rows:
            return dict(zip(self.q.labels, values))
        return values[0] if len(values) == 1 else values

    def is_goal(self, row_ctx) -> bool:
        return self.q.where is None or V.truthy(eval_expr(self.q.where, self.env, row_ctx))

    def is_stop(self, row_ctx) -> bool:
        return V.truthy(eval_expr(self.h.stop, self.env, row_ctx))

    def successor(self, bindings, row_ctx) -> dict:
        # simultaneous assignment: every right-hand side sees the old values
        new = [(name, eval_expr(expr, self.env, row_ctx)) for name, expr in self.h.updates]
        post = dict(bindings)
        post.update(new)
        return post


def _depth_first(search: _Search) -> list:
    mode = search.h.mode
    cap = search.h.maximum
    results = []
    root_key = search.key(search.root)
    on_path = {root_key}
    visited = {root_key: 0}  # state key -> shallowest depth it was entered at
    path = []
    search.expand()
    stack = [(search.root, search.rows(search.root), root_key)]
    while stack:
        bindings, rows, key = stack[-1]
        item = next(rows, None)
        if item is None:
            stack.pop()
            if stack:
                path.pop()
                on_path.discard(key)
            continue
        row_ctx = item[0]
        proj = None
        if search.is_goal(row_ctx):
            proj = search.projection(row_ctx)
            results.append(path + [proj])
            if cap is not None and len(results) >= cap:
                break
        if search.is_stop(row_ctx):
            continue
        post = search.successor(bindings, row_ctx)
        post_key = search.key(post)
        if mode == "nocycle" and post_key in on_path:
            continue
        if mode == "unique":
            depth = len(path) + 1
            if visited.get(post_key, depth + 1) <= depth:
                continue
            visited[post_key] = depth
        search.expand()
        if proj is None:
            proj = search.projection(row_ctx)
        path.append(proj)
        on_path.add(post_key)
        stack.append((post, search.rows(post), post_key))
    return results


def _build_graph(search: _Search, max_len: int) -> StateGraph:
    g = StateGraph()
    g.root = g.add_node(search.key(search.root), search.root, 0)
    queue = deque([g.root])
    seq = 0
    while queue:
        u = queue.popleft()
        if g.dist[u] >= max_len:
            continue
        search.expand()
        bindings = g.bindings[u]
        for row_ctx, _ in search.rows(bindings):
            proj = None
            if search.is_goal(row_ctx):
                proj = search.projection(row_ctx)
                g.terminal_edges.append((seq, u, proj))
                seq += 1
            if search.is_stop(row_ctx):
                continue
            post = search.successor(bindings, row_ctx)
            post_key = search.key(post)
            v = g.nodes.get(post_key)
            if v is None:
                v = g.add_node(post_key, post, g.dist[u] + 1)
                queue.append(v)
            if proj is None:
                proj = search.projection(row_ctx)
            g.edges.append((seq, u, v, proj))
            seq += 1
    return g


def build_state_graph(q, env, ctx: EvalContext = None, max_len: Optional[int] = None) -> StateGraph:
    """Materialize the deduplicated state graph of a hierarchical query.

    Nodes farther than ``max_len`` transitions from the root are recorded
    but not expanded.
    """
    search = _Search(q, env, ctx or EvalContext())
    return _build_graph(search, max_len if max_len is not None else q.hierarchy.max_len)


def goal_distances(g: StateGraph) -> list:
    """Fewest transitions (terminal edge included) from each node to a goal."""
    inf = float("inf")
    dist = [inf] * g.node_count
    preds = [[] for _ in range(g.node_count)]
    for _, u, v, _ in g.edges:
        preds[v].append(u)
    queue = deque()
    for _, u, _ in g.terminal_edges:
        if dist[u] == inf:
            dist[u] = 1
            queue.append(u)
    while queue:
        v = queue.popleft()
        for u in preds[v]:
            if dist[u] == inf:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def iter_paths(g: StateGraph, max_len: int) -> Iterator[list]:
    """Yield every simple root-to-goal path of at most ``max_len`` transitions.

    Paths come out shortest first; equal lengths are ordered by the discovery
    sequence of their edges. A backward pass labels every node with its
    distance to the nearest goal, and the forward enumeration for each target
    length only follows edges that can still finish in time.
    """
    to_goal = goal_distances(g)
    out = [[] for _ in range(g.node_count)]
    for seq, u, v, proj in g.edges:
        out[u].append((seq, v, proj))
    for seq, u, proj in g.terminal_edges:
        out[u].append((seq, None, proj))
    for lst in out:
        lst.sort(key=lambda e: e[0])

    root = g.root
    for length in range(1, max_len + 1):
        if to_goal[root] > length:
            continue
        on_path = [False] * g.node_count
        on_path[root] = True
        projections = []
        stack = [(root, iter(out[root]))]
        while stack:
            u, edges = stack[-1]
            used = len(projections)
            advanced = False
            for _, v, proj in edges:
                if v is None:
                    if used + 1 == length:
                        yield projections + [proj]
                    continue
                remaining = length - used - 1
                if remaining < 1 or on_path[v] or to_goal[v] > remaining:
                    continue
                on_path[v] = True
                projections.append(proj)
                stack.append((v, iter(out[v])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path[u] = u == root
                if projections and stack:
                    projections.pop()


def enumerate_paths(g: StateGraph, max_len: int, cap: Optional[int] = None) -> list:
    paths = []
    if cap is not None and cap <= 0:
        return paths
    for p in iter_paths(g, max_len):
        paths.append(p)
        if cap is not None and len(paths) >= cap:
            break
    return paths


def search_paths(q, env, ctx: EvalContext = None) -> list:
    """Run the hierarchical search and return the raw list of result paths."""
    search = _Search(q, env, ctx or EvalContext())
    h = q.hierarchy
    if h.mode == "memorize":
        g = _build_graph(search, h.max_len)
        return enumerate_paths(g, h.max_len, h.maximum)
    return _depth_first(search)


def eval_hierarchical(q, env, ctx: EvalContext = None):
    """Evaluate a hierarchical query; each result row is one path."""
    try:
        paths = search_paths(q, env, ctx)
    except EvalError as exc:
        if not isinstance(exc, BudgetExceeded):
            context = getattr(exc, "context", None)
            if context is None:
                exc.context = context = []
            context.append("hierarchical query")
        raise
    name = q.as_name.lower()
    if name == "value":
        return paths[0] if paths else None
    if name in ("list", "dict"):
        return paths
    table = ResultTable(["path"], [[p] for p in paths])
    args = [eval_expr(e, env, ctx or EvalContext()) for e in q.as_args]
    return format_result(table, q.as_name, args, env)
