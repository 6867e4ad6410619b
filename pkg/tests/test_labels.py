import pytest

from zgkn.angular import exact_k, n_from_winding
from zgkn.errors import InvalidIndex, InvalidLabel
from zgkn.labels import (
    SpectroLabel,
    enumerate_labels,
    format_label,
    label_to_winding,
    parse_label,
    winding_to_label,
)
from zgkn.model import StateIndex


@pytest.mark.parametrize("index, term, two_mj", [
    (StateIndex(0, 0, 1), "1s1/2", 1),
    (StateIndex(0, 0, -1), "1s1/2", -1),
    (StateIndex(-1, 1, 1), "2p1/2", 1),
    (StateIndex(0, 1, 1), "2s1/2", 1),
    (StateIndex(1, 0, 1), "2p3/2", 1),
    (StateIndex(0, 0, 3), "2p3/2", 3),
    (StateIndex(2, 0, 1), "3d5/2", 1),
    (StateIndex(-2, 1, -1), "3d3/2", -1),
])
def test_winding_to_label(index, term, two_mj):
    label = winding_to_label(index)
    assert label.term == term
    assert label.two_mj == two_mj


def test_label_properties():
    label = SpectroLabel(n=2, l=1, two_j=1, two_mj=-1)
    assert label.letter == "p"
    assert label.k == 1
    assert label.mj == "-1/2"
    assert SpectroLabel(2, 1, 3, 3).k == -2
    assert label.as_dict() == {"term": "2p1/2", "mj": "-1/2", "n": 2, "l": 1, "two_j": 1, "two_mj": -1}


def test_round_trip_through_windings():
    for label in enumerate_labels(6):
        index = label_to_winding(label)
        assert index.admissible
        assert winding_to_label(index) == label


def test_labels_agree_with_angular_eigenvalue():
    for label in enumerate_labels(5):
        index = label_to_winding(label)
        assert exact_k(n_from_winding(index.n_theta), index.kappa) == label.k


def test_format_and_parse():
    label = SpectroLabel(2, 1, 1, -1)
    assert format_label(label) == "2p1/2 (mj=-1/2)"
    assert format_label(label, show_mj=False) == "2p1/2"
    assert parse_label("2p1/2 (mj=-1/2)") == label
    assert parse_label(" 2p1/2 ", two_mj=-1) == label
    assert parse_label("3d5/2(mj=+5/2)") == SpectroLabel(3, 2, 5, 5)


@pytest.mark.parametrize("text", ["2x1/2 (mj=1/2)", "2p (mj=1/2)", "p1/2", "2p1/2 mj=1/2"])
def test_parse_rejects_garbage(text):
    with pytest.raises(InvalidLabel):
        parse_label(text)


def test_parse_needs_mj():
    with pytest.raises(InvalidLabel):
        parse_label("1s1/2")


@pytest.mark.parametrize("nmax, count", [(0, 0), (1, 2), (2, 10), (3, 28)])
def test_enumerate_counts(nmax, count):
    assert len(enumerate_labels(nmax)) == count


@pytest.mark.parametrize("n, l, two_j, two_mj", [
    (0, 0, 1, 1),
    (1, 1, 1, 1),
    (2, 1, 5, 1),
    (2, 1, 2, 1),
    (2, 0, 1, 3),
    (2, 0, 1, 0),
])
def test_invalid_labels(n, l, two_j, two_mj):
    with pytest.raises(InvalidLabel):
        SpectroLabel(n, l, two_j, two_mj)


@pytest.mark.parametrize("index", [StateIndex(0, -1, 1), StateIndex(-1, 0, 1), StateIndex(-2, 0, 1)])
def test_indices_without_hydrogen_counterpart(index):
    with pytest.raises(InvalidIndex):
        winding_to_label(index)


def test_label_to_winding_type_check():
    with pytest.raises(InvalidLabel):
        label_to_winding("1s1/2")
