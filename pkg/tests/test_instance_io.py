import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipils import parse_instance, serialize_instance
from ipils.generate import random_instance
from ipils.instance_io import InstanceParseError

T1_TEXT = "4 2\n6\n2 3 4\n3 5 2\n4 1 5\n5 4 3\n"


def test_parse_t1(t1):
    inst = parse_instance(T1_TEXT, name="t1")
    assert inst.n == t1.n
    assert inst.capacity == t1.capacity
    assert inst.costs == t1.costs
    assert inst.profits == t1.profits


def test_parse_comments_and_blanks():
    text = "# header comment\n\n4 2\n6\n2 3 4\n3 5 2\n# mid comment\n4 1 5\n5 4 3\n"
    inst = parse_instance(text)
    assert inst.n == 4


def test_parse_empty_instance():
    inst = parse_instance("0 2\n5\n")
    assert inst.n == 0
    from ipils import enumerate_front

    assert enumerate_front(inst).points == ((0, 0),)


def test_parse_missing_column():
    with pytest.raises(InstanceParseError) as exc:
        parse_instance("4 2\n6\n2 3\n3 5 2\n4 1 5\n5 4 3\n")
    assert "line 3" in str(exc.value)


def test_parse_empty_file():
    with pytest.raises(InstanceParseError) as exc:
        parse_instance("")
    assert "line 1" in str(exc.value)


def test_parse_negative_coefficient():
    with pytest.raises(InstanceParseError):
        parse_instance("1 2\n5\n-2 3 4\n")


def test_parse_trailing_data():
    with pytest.raises(InstanceParseError):
        parse_instance(T1_TEXT + "9 9 9\n")


@settings(deadline=None, max_examples=30)
@given(st.integers(1, 20), st.integers(2, 4), st.integers(0, 10_000))
def test_round_trip(n, k, seed):
    inst = random_instance(f"rt-{seed}", n, k, seed)
    text = serialize_instance(inst)
    back = parse_instance(text, name=inst.name)
    assert back == inst
    assert serialize_instance(back) == text
