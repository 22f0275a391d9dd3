import pytest

from iaslsign.errors import EmptyLabel, GraphFormatError
from iaslsign.formats import parse_graph, parse_labeling, parse_signed_graph
from iaslsign.signing import NEGATIVE, POSITIVE


def test_graph_round_trip():
    g = parse_graph("# path\n1 2\n\n0 1\n")
    assert g.edges == ((0, 1), (1, 2))
    assert parse_graph(g.to_text()) == g


@pytest.mark.parametrize("text, where", [
    ("0 1\n1 1\n", "line 2"),
    ("0 1\n1 0\n", "line 2"),
    ("0 x\n", "line 1"),
    ("0 1 2\n", "line 1"),
    ("", "no edges"),
])
def test_graph_errors(text, where):
    with pytest.raises(GraphFormatError, match=where):
        parse_graph(text)


def test_signed_graph():
    s = parse_signed_graph("0 1 -\n1 2 +\n")
    assert s.signs == (NEGATIVE, POSITIVE)
    assert parse_signed_graph(s.to_text()) == s
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_signed_graph("0 1 *\n")


def test_labeling():
    f = parse_labeling('{"0":[0,2],"1":[1]}', 2)
    assert f.to_dict() == {"0": [0, 2], "1": [1]}
    with pytest.raises(GraphFormatError):
        parse_labeling("[1,2]")
    with pytest.raises(GraphFormatError):
        parse_labeling("{not json")
    with pytest.raises(GraphFormatError):
        parse_labeling('{"0": 3}')
    with pytest.raises(EmptyLabel):
        parse_labeling('{"0": [], "1": [1]}')
