"""Tests for the parser-binding layer.

The toolkit talks to parsers through a tiny contract (``parse`` returning
a tree with ``error_spans()`` and ``walk()``). These tests pin the
contract for the builtin binding and the failure modes of binding lookup.
"""

import random

import pytest

from repairdx.bindings import (
    BuiltinParser,
    TreeLike,
    available_bindings,
    get_parser,
)
from repairdx.errors import (
    EnvironmentFailure,
    InputError,
    ParserUnavailableError,
    UsageError,
)


# ---------------------------------------------------------------------------
# Binding lookup
# ---------------------------------------------------------------------------


def test_builtin_is_always_available():
    assert "builtin" in available_bindings()


def test_available_bindings_is_sorted():
    names = available_bindings()
    assert names == sorted(names)


def test_get_parser_defaults_to_builtin():
    parser = get_parser()
    assert parser.name == "builtin"
    assert isinstance(parser, BuiltinParser)


def test_unknown_binding_is_a_usage_error():
    with pytest.raises(UsageError) as excinfo:
        get_parser("antlr")
    assert "antlr" in str(excinfo.value)
    # The message should tell the user what IS available.
    assert "builtin" in str(excinfo.value)


def test_unknown_binding_error_is_an_input_error():
    # Usage problems map to exit code 1 alongside other input errors.
    with pytest.raises(InputError):
        get_parser("nope")


def test_treesitter_binding_unavailable_here():
    # The optional binding's backing packages are not installed in this
    # environment; requesting it must fail as an environment problem
    # (exit code 2), not an input problem.
    try:
        import tree_sitter  # noqa: F401
        import tree_sitter_java  # noqa: F401
    except ImportError:
        pass
    else:
        pytest.skip("tree-sitter packages are installed; binding would work")
    with pytest.raises(ParserUnavailableError) as excinfo:
        get_parser("treesitter")
    assert "builtin" in str(excinfo.value)


def test_parser_unavailable_is_an_environment_failure():
    assert issubclass(ParserUnavailableError, EnvironmentFailure)
    assert not issubclass(ParserUnavailableError, InputError)


# ---------------------------------------------------------------------------
# Builtin binding satisfies the contract
# ---------------------------------------------------------------------------


def test_builtin_tree_satisfies_treelike():
    tree = get_parser("builtin").parse("class A { }")
    assert isinstance(tree, TreeLike)


def test_clean_parse_has_no_error_spans():
    tree = get_parser("builtin").parse("class A { int f ( ) { return 1 ; } }")
    assert tree.error_spans() == []


def test_broken_parse_reports_error_spans_in_bounds():
    code = "class A { int f ( ) { return ; }"  # missing closing brace
    tree = get_parser("builtin").parse(code)
    spans = tree.error_spans()
    assert spans, "a broken snippet must surface at least one error span"
    for start, end in spans:
        assert 0 <= start <= end <= len(code)


def test_error_spans_are_sorted():
    code = "class A { ### int f ( { return ; }"
    spans = get_parser("builtin").parse(code).error_spans()
    assert spans == sorted(spans)


def test_builtin_parse_is_total_on_garbage():
    rng = random.Random(67)
    alphabet = "{}();=+-#\"'\\\n\t abcdefXYZ0189$_@<>[]"
    parser = get_parser("builtin")
    for _ in range(300):
        soup = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 80)))
        tree = parser.parse(soup)  # must not raise
        for start, end in tree.error_spans():
            assert 0 <= start <= end <= len(soup)


def test_builtin_parse_is_deterministic():
    parser = get_parser("builtin")
    code = "class A { void f ( ) { if ( x ) { y ( ) ; } ### } }"
    first = parser.parse(code).error_spans()
    for _ in range(5):
        assert parser.parse(code).error_spans() == first


def test_two_parser_instances_agree():
    code = "interface I { int f ( int ) ; }"
    a = get_parser("builtin").parse(code).error_spans()
    b = get_parser("builtin").parse(code).error_spans()
    assert a == b


def test_walk_yields_nodes_with_contract_fields():
    tree = get_parser("builtin").parse("class A { int x ; }")
    nodes = list(tree.walk())
    assert nodes
    for node in nodes:
        assert hasattr(node, "kind")
        assert hasattr(node, "start")
        assert hasattr(node, "end")
        assert 0 <= node.start <= node.end
