import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from hquery import Interpreter, compile, parse
from hquery.compiler import (
    Binary, CallFn, Const, Load, MakeList, Program, Select, column_label, decompile,
)
from hquery.errors import CompileError, ScriptRuntimeError
from hquery.frontend import ast as A
from hquery.values import serialize
from oracles import eval_ast, outcome
from strategies import scripts

VARIABLES = {"a": 1, "b": 2.5, "xs": [1, 2], "s": "hi", "flag": True, "nothing": None, "d": {"k": 1}}
FUNCTIONS = {"f": lambda *args: len(args), "pair": lambda *args: list(args)}


def first(source):
    return compile(source).statements[0]


@pytest.mark.parametrize("source, value", [
    ("1+2;", 3),
    ("2 * (3 + 4);", 14),
    ("[1, 2] + [3, 4];", [4, 6]),
    ("-(3);", -3),
    ("NOT [];", True),
    ('"a" + "b";', "ab"),
    ("1 < 2 AND 2 < 1;", False),
])
def test_constant_folding(source, value):
    ir = first(source)
    assert isinstance(ir, Const) and ir.value == value


@pytest.mark.parametrize("source", ["1 / 0;", '1 + "a";', "1e308 * 10.0;"])
def test_failing_or_non_finite_constants_stay_unfolded(source):
    assert isinstance(first(source), Binary)


def test_variables_block_folding():
    ir = first("a + 1;")
    assert ir == Binary("+", Load("a"), Const(1))
    assert isinstance(first("[a, 1];"), MakeList)


def test_names_are_interned():
    import sys

    ir = first("some_long_name;")
    assert ir.name is sys.intern("some_long_name")


@pytest.mark.parametrize("select, labels", [
    ("mass, velocity", ["mass", "velocity"]),
    ("(this + cur_pos)", ["col0"]),
    ("m1.this, this, f(x), 3", ["m1", "this", "f", "col3"]),
])
def test_labels(select, labels):
    ir = first(f"SELECT {select} FROM xs;")
    assert isinstance(ir, Select)
    assert list(ir.labels) == labels


def test_column_label_on_ast():
    assert column_label(A.Call("mass", ()), 0) == "mass"
    assert column_label(A.BinOp("+", A.Literal(1), A.Var("x")), 4) == "col4"


@pytest.mark.parametrize("source", [
    "SELECT a FROM m=xs, m=xs;",
    "SELECT a FROM xs START WITH t = 1, t = 2 CONNECT BY t = t STOP WITH 1;",
    "SELECT a FROM xs START WITH t = 1 CONNECT BY t = 2, t = 3 STOP WITH 1;",
    "SELECT a FROM xs GROUP BY a START WITH t = 1 CONNECT BY t = 2 STOP WITH 1;",
    "SELECT a FROM xs ORDER BY a START WITH t = 1 CONNECT BY t = 2 STOP WITH 1;",
])
def test_compile_errors(source):
    with pytest.raises(CompileError):
        compile(source)


def test_hierarchy_lowering():
    ir = first("""SELECT this FROM moves WHERE g
        START WITH tower = t0, level = 1
        CONNECT BY NO CYCLE MAXIMUM 3 tower = move(this, tower), level = level + 1, k = k - 2.5
        STOP WITH level == 7;""")
    h = ir.hierarchy
    assert h.mode == "nocycle" and h.maximum == 3 and h.max_len is None
    assert h.counters == frozenset({"level", "k"})
    assert [n for n, _ in h.updates] == ["tower", "level", "k"]
    assert isinstance(h.updates[0][1], CallFn)


def test_memorize_mode():
    h = first("SELECT this FROM m START WITH t = 1 CONNECT BY MEMORIZE 15 t = 2 STOP WITH 0;").hierarchy
    assert (h.mode, h.max_len, h.maximum) == ("memorize", 15, None)


def test_program_positions():
    prog = compile("a = 1;\n\n  b;")
    assert isinstance(prog, Program)
    assert prog.positions[1] == (3, 3)


# random expression corpus over a fixed environment
leaves = st.one_of(
    st.one_of(
        st.integers(0, 50), st.floats(0, 1e3, allow_nan=False), st.text("ab", max_size=2),
        st.sampled_from([True, False, None]),
    ).map(A.Literal),
    st.sampled_from(sorted(VARIABLES)).map(A.Var),
)


def _grow(kids):
    seq = st.lists(kids, min_size=1, max_size=2).map(tuple)
    return st.one_of(
        st.lists(kids, max_size=3).map(lambda xs: A.ListExpr(tuple(xs))),
        st.builds(A.Call, st.sampled_from(sorted(FUNCTIONS)), st.lists(kids, max_size=2).map(tuple)),
        st.builds(A.BinOp, st.sampled_from(
            ["OR", "AND", "==", "!=", "<", "<=", ">", ">=", "+", "-", "*", "/"]), kids, kids),
        st.builds(A.UnOp, st.sampled_from(["-", "NOT"]), kids),
        st.builds(A.If, kids, seq, st.one_of(st.none(), seq)),
    )


expressions = st.recursive(leaves, _grow, max_leaves=10)


def run_compiled(node):
    interp = Interpreter()
    for name, v in VARIABLES.items():
        interp.add_variable(name, v)
    for name, fn in FUNCTIONS.items():
        interp.add_function(name, fn, pure=True)
    try:
        return True, interp.eval(compile(A.Script((node,))))
    except ScriptRuntimeError as exc:
        return False, type(exc.cause).__name__


@settings(max_examples=400, deadline=None)
@given(expressions)
def test_compiled_matches_reference_evaluator(node):
    ok, got = run_compiled(node)
    ref_ok, ref = outcome(lambda: eval_ast(node, VARIABLES, FUNCTIONS))
    assert ok == ref_ok
    if ok:
        assert serialize(got) == serialize(ref)
    else:
        assert got == ref


@settings(max_examples=200, deadline=None, suppress_health_check=list(HealthCheck))
@given(scripts)
def test_compile_is_idempotent_through_decompile(script):
    try:
        ir = compile(script)
    except CompileError:
        return
    assert compile(decompile(ir)) == ir


def test_decompile_negative_constant():
    ir = first("0 - 5;")
    assert ir == Const(-5)
    assert compile(decompile(compile("0 - 5;"))) == compile("0 - 5;")
    assert decompile(ir) == parse("-5;").statements[0]
