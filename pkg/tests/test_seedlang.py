from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from youngcrystal.chains import Atom, builtin_seed, class_index
from youngcrystal.seedlang import (
    SeedFile,
    SeedSemanticError,
    SeedSyntaxError,
    ClassDecl,
    from_seedspec,
    parse,
    render,
    shipped_text,
    to_seedspec,
)
from youngcrystal.tableaux import tableau_array

FIXTURES = Path(__file__).parent / "fixtures"

# fixture -> (error type, line, column)
MALFORMED = {
    "bad_offset.seed": (SeedSemanticError, 3, 33),
    "no_classes.seed": (SeedSyntaxError, 3, 1),
    "bad_index.seed": (SeedSemanticError, 3, 10),
    "zero_modulus.seed": (SeedSemanticError, 3, 26),
    "missing_arrow.seed": (SeedSyntaxError, 3, 28),
}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_shipped_files_match_builtins(n):
    text = shipped_text(n)
    assert to_seedspec(parse(text)) == builtin_seed(n)
    assert render(parse(text)) == text
    assert render(from_seedspec(builtin_seed(n))) == text


@pytest.mark.parametrize("n", [2, 3, 4])
def test_shipped_files_classify_like_builtins(n):
    arr = tableau_array(n, 20)
    assert (class_index(to_seedspec(parse(shipped_text(n))), arr) == class_index(builtin_seed(n), arr)).all()


@pytest.mark.parametrize("name", sorted(MALFORMED))
def test_malformed_fixture_rejected(name):
    kind, line, col = MALFORMED[name]
    with pytest.raises(kind) as info:
        parse((FIXTURES / name).read_text(encoding="utf-8"))
    assert (info.value.line, info.value.col) == (line, col)
    assert f"line {line}, col {col}" in str(info.value)


def test_comments_and_spacing_ignored():
    text = """# the n = 2 seed
    seed   n=2
    initial:e2==0&&e1~1 mod 2   # odd a
    class i : e1-e2 ≡ 0 mod 2 -> offset(0,1)
    class ii: e1 - e2 ≡ 1 mod 2 -> offset (0, 1)
    """
    assert to_seedspec(parse(text)) == builtin_seed(2)


def test_syntax_errors_carry_position():
    with pytest.raises(SeedSyntaxError) as info:
        parse("seed n = 2\ninitial: e2 @ 0\n")
    assert (info.value.line, info.value.col) == (2, 13)
    with pytest.raises(SeedSyntaxError):
        parse("")
    with pytest.raises(SeedSyntaxError):
        parse("seed n = 2\ninitial: e1 !≡ 1\nclass a: e1 == 0 -> offset (0, 1)\n")
    with pytest.raises(SeedSemanticError):
        parse("seed n = 2\ninitial: e1 == 1\nclass a: e1 == 0 -> offset (0, 1)\nclass a: e1 == 1 -> offset (0, 1)\n")


atoms = st.builds(
    lambda left, right, value, modulus, negate: Atom(
        left, right if right != left else None, value, modulus, negate and modulus is not None
    ),
    st.integers(1, 4),
    st.none() | st.integers(1, 4),
    st.integers(0, 9),
    st.none() | st.integers(1, 6),
    st.booleans(),
)


@given(
    st.lists(atoms, min_size=1, max_size=3),
    st.lists(st.tuples(st.lists(atoms, min_size=1, max_size=3), st.permutations(range(4))), min_size=1, max_size=4),
)
def test_render_parse_roundtrip(initial, classes):
    f = SeedFile(4, tuple(initial), tuple(
        ClassDecl(f"c{i}", tuple(pred), tuple(off)) for i, (pred, off) in enumerate(classes)
    ))
    assert parse(render(f)) == f
