import pytest

from eblab.core import boolean_algebra, godel_chain, is_isomorphic, mv_chain, ordinal_sum
from eblab.epistemic import epistemic_structure
from eblab.errors import MalformedInputError, NotAChainError
from eblab.frames import possibilistic_frame
from eblab.textio import (
    builtin,
    format_algebra,
    format_frame,
    format_structure,
    parse_bundle,
)


def test_algebra_roundtrip():
    for alg in (mv_chain(4), godel_chain(3), boolean_algebra(2)):
        bundle = parse_bundle(format_algebra(alg))
        loaded = bundle.algebra(alg.name)
        assert loaded.table_key() == alg.table_key()
        assert loaded.bot == alg.bot and loaded.top == alg.top


def test_structure_roundtrip():
    alg = mv_chain(4)
    st = epistemic_structure(alg, [0, 0, 3, 3], [0, 0, 3, 3], "example")
    text = format_algebra(alg) + "\n" + format_structure(st)
    loaded = parse_bundle(text).structure("example")
    assert loaded.forall.tolist() == [0, 0, 3, 3]
    assert loaded.focal == 2


def test_frame_roundtrip():
    base = mv_chain(3)
    frame = possibilistic_frame(base, [2, 1], name="f1")
    text = format_algebra(base) + "\n" + format_frame(frame)
    loaded = parse_bundle(text).frame("f1")
    assert loaded.pi.tolist() == [2, 1]


def test_comments_and_blank_lines_are_ignored():
    text = format_algebra(mv_chain(2))
    noisy = "# heading\n\n" + text.replace("size 2", "size 2   # two elements")
    assert parse_bundle(noisy).algebra("mv2").n == 2


def test_multiline_unary_tables():
    text = format_algebra(mv_chain(4)) + (
        "structure s over mv4\nforall\n0 0\n3 3\nexists\n0 0 3 3\nend\n"
    )
    assert parse_bundle(text).structure("s").forall.tolist() == [0, 0, 3, 3]


@pytest.mark.parametrize(
    "mangle,message",
    [
        (lambda t: t.replace("meet", "meat", 1), "expected 'meet'"),
        (lambda t: t.replace("size 4", "size four"), "bad size"),
        (lambda t: t.replace("0 1 2 3", "0 1 2", 1), "4 entries"),
        (lambda t: t + "structure s over nope\nforall\n0\nexists\n0\nend\n", "unknown algebra"),
        (lambda t: t + "bogus\n", "unknown block"),
    ],
)
def test_parse_errors_carry_position(mangle, message):
    text = format_algebra(mv_chain(4))
    with pytest.raises(MalformedInputError) as info:
        parse_bundle(mangle(text), source="bundle.alg")
    assert message in str(info.value)
    assert "bundle.alg:" in str(info.value)


def test_duplicate_names_rejected():
    text = format_algebra(mv_chain(2)) * 2
    with pytest.raises(MalformedInputError):
        parse_bundle(text)


class TestBuiltin:
    def test_simple_kinds(self):
        assert builtin("mv:4").table_key() == mv_chain(4).table_key()
        assert builtin("godel:3").table_key() == godel_chain(3).table_key()
        assert builtin("bool:2").table_key() == boolean_algebra(2).table_key()

    def test_ordinal_sum_spec(self):
        assert (
            builtin("osum:mv2+mv3").table_key()
            == ordinal_sum([mv_chain(2), mv_chain(3)]).table_key()
        )

    def test_product_spec(self):
        prod = builtin("prod:godel2xgodel3")
        assert prod.n == 6
        assert prod.classifiers["idempotent"]

    def test_product_of_squares_matches_boolean(self):
        assert is_isomorphic(builtin("prod:mv2xmv2"), boolean_algebra(2)) is not None

    def test_bad_specs(self):
        for spec in ("mv4", "mv:x", "triangle:3", "osum:", "prod:mv2", "osum:bool2+mv2"):
            with pytest.raises((MalformedInputError, NotAChainError)):
                builtin(spec)
