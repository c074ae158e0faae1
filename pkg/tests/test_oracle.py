import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ipils import (
    KnapsackInstance,
    dp_front,
    enumerate_front,
    evaluate,
    read_front,
    write_front,
)
from ipils.generate import random_instance
from ipils.oracle import DpResourceError


def test_enumerate_t1(t1):
    front = enumerate_front(t1)
    assert front.points == ((8, 6), (4, 9))
    assert front.method == "enumeration"


def test_dp_t1(t1):
    front = dp_front(t1)
    assert front.points == ((8, 6), (4, 9))
    assert front.method == "dp"


def test_zero_capacity():
    with pytest.warns(UserWarning):
        inst = KnapsackInstance("zc", 2, 2, 0, (1, 2), ((3, 4), (5, 6)))
    assert enumerate_front(inst).points == ((0, 0),)
    assert dp_front(inst).points == ((0, 0),)


def test_single_item():
    inst = KnapsackInstance("one", 1, 2, 5, (5,), ((7,), (3,)))
    assert enumerate_front(inst).points == ((7, 3),)


def test_equal_profit_rows():
    inst = KnapsackInstance(
        "eq", 4, 2, 6, (2, 3, 4, 5), ((3, 5, 1, 4), (3, 5, 1, 4))
    )
    front = dp_front(inst)
    assert len(front.points) == 1
    assert front.points[0][0] == front.points[0][1]


def test_enumerate_guard():
    inst = random_instance("big", 26, 2, 0)
    with pytest.raises(ValueError):
        enumerate_front(inst)


def test_dp_k3_rejected():
    inst = random_instance("k3", 6, 3, 0)
    with pytest.raises(ValueError):
        dp_front(inst)


def test_dp_resource_guard():
    inst = random_instance("g", 10, 2, 3)
    with pytest.raises(DpResourceError):
        dp_front(inst, state_cap=10)


def test_witnesses_evaluate_to_points(t1):
    for front in (enumerate_front(t1), dp_front(t1)):
        for z, w in zip(front.points, front.witnesses):
            s = evaluate(t1, w.selection)
            assert s.objectives == z
            assert s.total_cost <= t1.capacity


def test_witness_lexicographically_smallest():
    # two items with identical cost/profits: the witness must be the
    # lexicographically smallest bitstring ("01" < "10")
    inst = KnapsackInstance("tie", 2, 2, 2, (2, 2), ((5, 5), (3, 3)))
    for front in (enumerate_front(inst), dp_front(inst)):
        assert front.points == ((5, 3),)
        assert front.witnesses[0].selection == (0, 1)


def test_front_sorted_lex_descending():
    inst = random_instance("s", 14, 2, 7)
    front = dp_front(inst)
    assert list(front.points) == sorted(front.points, reverse=True)


@settings(deadline=None, max_examples=30)
@given(st.integers(4, 12), st.integers(0, 10_000))
def test_dp_equals_enumeration(n, seed):
    inst = random_instance(f"x-{seed}", n, 2, seed)
    assert dp_front(inst).point_set() == enumerate_front(inst).point_set()


def test_front_file_round_trip(t1, tmp_path):
    front = dp_front(t1)
    path = tmp_path / "t1.front"
    write_front(front, str(path))
    text = path.read_text()
    assert text.splitlines() == ["8 6 1100", "4 9 1010"]
    back = read_front(t1, str(path))
    assert back.points == front.points
    assert [w.selection for w in back.witnesses] == [
        w.selection for w in front.witnesses
    ]


def test_read_front_rejects_bad_witness(t1, tmp_path):
    path = tmp_path / "bad.front"
    path.write_text("8 6 1110\n")  # bitstring does not evaluate to (8,6)
    with pytest.raises(ValueError):
        read_front(t1, str(path))


def test_read_front_rejects_dominated_rows(t1, tmp_path):
    path = tmp_path / "dom.front"
    path.write_text("8 6 1100\n3 4 1000\n")
    with pytest.raises(ValueError):
        read_front(t1, str(path))
