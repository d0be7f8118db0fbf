import pytest

from gridcurve.words import Word, WordError, format_turn, parse_word


def test_parse_simple():
    w = parse_word("F+F-F")
    assert w.tokens == ("F", 1, "F", -1, "F")
    assert w.nletters() == 3
    assert w.net_turn() == 0


def test_parse_runs_and_bang():
    w = parse_word("A++++B!A", 8)
    assert w.tokens == ("A", 4, "B", 4, "A")
    with pytest.raises(WordError):
        parse_word("A!A")  # '!' needs n
    with pytest.raises(WordError):
        parse_word("A+++A", 4)  # run exceeds n/2


def test_parse_tile_form():
    w = parse_word("[A++]^6", 12)
    assert w.nletters() == 6
    assert w.turns() == [2] * 6  # five interior turns plus the trailing one
    assert w.tokens[-1] == 2


def test_adjacent_turns_rejected():
    with pytest.raises(WordError):
        parse_word("F+-F")


def test_merge_on_construction():
    w = Word(("A", 1, -2, 1, "A"))
    assert w.tokens == ("A", 0, "A")


def test_reversed_complement():
    w = parse_word("L+R")
    assert w.reversed_complement({"L": "R", "R": "L"}).tokens == ("L", -1, "R")


def test_round_trip_strings():
    for text, n in [("F+F-F", 3), ("A+A!A+A", 4), ("B++++B---A", 12)]:
        assert parse_word(text, n).to_string(n) == text


def test_format_turn():
    assert format_turn(0) == "0"
    assert format_turn(3, 6) == "!"
    assert format_turn(3, 6, double=False) == "+++"
    assert format_turn(-2) == "--"
    with pytest.raises(WordError):
        format_turn(5, 6)


def test_pairs():
    w = parse_word("A+B--C", 6)
    assert w.pairs() == [("A", 1, "B"), ("B", -2, "C")]
