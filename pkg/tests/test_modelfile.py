from fractions import Fraction

import pytest

from omnirate import (BitPoolSource, EntropyTable, ModelFormatError,
                      format_bitpool, format_table, parse_model,
                      run_parametric, validate)

BITPOOL_DOC = """\
# comments and blank lines are fine
type=bitpool

user 2: a b c f i j
user 1: a b c d f g i j   # trailing comments too
user 3: e f h i
user 4: b c e j
user 5: b c d h i
"""

TABLE_DOC = """\
type = table
H 1 = 1
H 2 = 2
H 1,2 = 5/2
H 3 = 1.5
H 1,3 = 2
H 2,3 = 3
H 1, 2, 3 = 7/2
"""


class TestParseBitpool:
    def test_round_numbers(self, five_user):
        model = parse_model(BITPOOL_DOC)
        assert isinstance(model, BitPoolSource)
        assert model.size == 5
        for subset in ([1], [1, 2], [3, 4, 5], [1, 2, 3, 4, 5]):
            assert model.entropy(subset) == five_user.entropy(subset)

    def test_missing_user_id(self):
        doc = "type=bitpool\nuser 1: a\nuser 3: b\n"
        with pytest.raises(ModelFormatError, match="missing"):
            parse_model(doc)

    def test_duplicate_user(self):
        doc = "type=bitpool\nuser 1: a\nuser 1: b\nuser 2: c\n"
        with pytest.raises(ModelFormatError, match="line 3"):
            parse_model(doc)

    def test_empty_bit_list(self):
        doc = "type=bitpool\nuser 1: a\nuser 2:\n"
        with pytest.raises(ModelFormatError, match="line 3"):
            parse_model(doc)

    def test_garbage_line(self):
        doc = "type=bitpool\nuser 1: a\nwat 2: b\n"
        with pytest.raises(ModelFormatError, match="line 3"):
            parse_model(doc)


class TestParseTable:
    def test_values_exact(self):
        model = parse_model(TABLE_DOC)
        assert isinstance(model, EntropyTable)
        assert model.entropy([1, 2]) == Fraction(5, 2)
        assert model.entropy([3]) == Fraction(3, 2)  # decimal parsed exactly
        assert model.entropy([1, 2, 3]) == Fraction(7, 2)
        assert validate(model) == []

    def test_incomplete_table(self):
        doc = "type=table\nH 1 = 1\nH 2 = 1\n"
        with pytest.raises(ModelFormatError, match="needs all"):
            parse_model(doc)

    def test_bad_value(self):
        doc = "type=table\nH 1 = one\nH 2 = 1\nH 1,2 = 2\n"
        with pytest.raises(ModelFormatError, match="line 2"):
            parse_model(doc)

    def test_duplicate_subset(self):
        doc = "type=table\nH 1 = 1\nH 1 = 2\nH 2 = 1\nH 1,2 = 2\n"
        with pytest.raises(ModelFormatError, match="duplicate"):
            parse_model(doc)


class TestDirective:
    def test_unknown_type(self):
        with pytest.raises(ModelFormatError, match="unknown model type"):
            parse_model("type=magic\n")

    def test_missing_directive(self):
        with pytest.raises(ModelFormatError):
            parse_model("user 1: a\n")

    def test_empty_file(self):
        with pytest.raises(ModelFormatError, match="empty"):
            parse_model("# nothing here\n")


class TestRoundTrips:
    def test_bitpool_dump_reparses(self, five_user):
        model = parse_model(format_bitpool(five_user))
        assert model.bits_per_user == five_user.bits_per_user

    def test_table_dump_solves_identically(self, five_user):
        # A table generated from a bit-pool source re-solves to the exact
        # same principal sequence, sum-rate and rate vector.
        table = parse_model(format_table(five_user))
        assert isinstance(table, EntropyTable)
        assert validate(table) == []
        _, psp_a = run_parametric(five_user)
        _, psp_b = run_parametric(table)
        assert psp_a == psp_b

    def test_fixture_file_matches_builtin(self, five_user, five_user_path):
        with open(five_user_path, encoding="utf-8") as fh:
            model = parse_model(fh.read())
        assert model.bits_per_user == five_user.bits_per_user
