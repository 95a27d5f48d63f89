"""Tests for the block document format."""

import pytest

from app import catalog
from app.actions.strict import StrictAction
from app.cli.serialization import parse, parse_all, safe_token, serialize, split_blocks
from app.errors import DocumentValidationError, ParseError
from app.groupoids.groupoid_bridge import FiniteGroupoid, groupoids_isomorphic, nerve
from app.groupoids.two_group import CrossedModule, classifying_2group
from app.simplicial.core import constant_map, point, standard_complex, structurally_equal

CANONICAL_VALUES = {
    **catalog.FIXTURES,
    "BG(XM0)": lambda: classifying_2group(catalog.xm0(), 4),
    "BG(XM2)": lambda: classifying_2group(catalog.xm2(), 3),
}


class TestParsing:
    def test_groupoid_fixture(self, fixture_dir, pair2):
        X = parse((fixture_dir / "nerve_pair2.kf").read_text())
        assert isinstance(X, FiniteGroupoid)
        assert groupoids_isomorphic(X, pair2)

    def test_crossed_module_fixture(self, fixture_dir):
        XM = parse((fixture_dir / "xm0.kf").read_text())
        assert isinstance(XM, CrossedModule)
        assert XM.H.name == "C2"
        assert XM.kernel() == [0, 1]

    def test_forward_references(self, fixture_dir):
        doc = parse_all((fixture_dir / "swap_action.kf").read_text())
        A = doc.get("action")
        assert isinstance(A, StrictAction)
        assert A.phi_objects == ((0, 1), (1, 0))
        assert [b.kind for b in doc.blocks] == ["action", "group", "groupoid"]

    def test_missing_colon(self, fixture_dir):
        with pytest.raises(ParseError) as raised:
            parse((fixture_dir / "malformed.kf").read_text())
        assert raised.value.line == 2

    def test_empty_key(self, fixture_dir):
        with pytest.raises(ParseError) as raised:
            parse((fixture_dir / "empty_key.kf").read_text())
        assert (raised.value.line, raised.value.column) == (2, 3)

    def test_unknown_kind(self):
        with pytest.raises(ParseError) as raised:
            split_blocks("[monoid M]\nelements: e\n")
        assert raised.value.column == 2

    def test_unknown_reference(self):
        text = "[action A]\ngroupoid: X\ngroup: G\n"
        with pytest.raises(ParseError):
            parse(text)

    def test_map_on_a_single_vertex(self):
        text = "[sset S] N=0\ncells 0: a\n[map f] from=S to=S\nlevel 0: a→a\n"
        assert parse(text).levels == ((0,),)

    def test_duplicate_block(self):
        with pytest.raises(ParseError):
            parse("[group G]\nelements: e\nmul: e e → e\n[group G]\nelements: e\nmul: e e → e\n")

    def test_missing_arrow_target(self):
        with pytest.raises(ParseError) as raised:
            parse("[group G]\nelements: e\nmul: e e →\n")
        assert raised.value.line == 3

    def test_invalid_group_is_a_validation_error(self):
        text = "[group G]\nelements: a b\nmul: a a → a, a b → a, b a → a, b b → a\n"
        with pytest.raises(DocumentValidationError) as raised:
            parse(text)
        assert raised.value.block == "G"

    def test_sset_needs_its_level(self):
        with pytest.raises(ParseError):
            parse("[sset S]\ncells 0: a\n")

    def test_declared_sizes_must_match(self):
        with pytest.raises(ParseError):
            parse("[sset S] N=0\nlevels = 2\ncells 0: a\n")


class TestSerialization:
    def test_safe_tokens(self):
        assert safe_token(("a b", "c")) == "a_b|c"
        assert safe_token("x→y") == "x_y"
        assert safe_token("") == "_"

    def test_sset_round_trip(self):
        X = standard_complex("horn", 2, 1)
        again = parse(serialize(X))
        assert structurally_equal(X, again)

    def test_nerve_round_trip(self, c2):
        X = nerve(c2, 2)
        again = parse(serialize(X))
        assert again.sizes == X.sizes
        assert again.faces == X.faces

    def test_action_brings_its_references(self, swap_action):
        text = serialize(swap_action)
        kinds = [block.kind for block in split_blocks(text)]
        assert kinds == ["group", "groupoid", "action"]
        assert parse(text).phi_objects == swap_action.phi_objects

    def test_crossed_module_action(self):
        A = catalog.xm0_on_c2()
        again = parse(serialize(A))
        assert again.theta == A.theta

    def test_map_brings_source_and_target(self, nerve_pair2):
        f = constant_map(nerve_pair2, point(3), 0)
        doc = parse_all(serialize(f))
        g = doc.get("map")
        assert g.levels == f.levels
        assert len(doc.of_kind("sset")) == 2

    @pytest.mark.parametrize("build", CANONICAL_VALUES.values(), ids=list(CANONICAL_VALUES))
    def test_output_is_canonical(self, build):
        value = build()
        runs = {serialize(value) for _ in range(3)}
        assert len(runs) == 1
        text = runs.pop()
        assert serialize(parse(text)) == text

    def test_name_clash_is_renamed(self):
        a = standard_complex("simplex", 1)
        b = standard_complex("boundary", 2).model_copy(update={"name": a.name})
        names = [block.name for block in split_blocks(serialize(a, b))]
        assert names == [a.name, a.name + "'"]
