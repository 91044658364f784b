import pytest

from almost_steiner.core import Design
from almost_steiner.errors import MalformedDesignError, ParameterError
from almost_steiner.fileformat import HEADER, format_design, parse_design, read_design, write_design


def test_roundtrip(tmp_path):
    d = Design(7, 3, [(1, 2, 4), (0, 1, 3), (0, 5, 6)], 2)
    path = tmp_path / "d.txt"
    write_design(d, path)
    raw = path.read_bytes()
    assert raw.startswith(HEADER.encode() + b"\n7 3 2\n")
    assert b"\r" not in raw
    # colex: (0,1,3) < (1,2,4) < (0,5,6)
    assert raw.decode().splitlines()[2:] == ["0 1 3", "1 2 4", "0 5 6"]
    assert read_design(path) == d


def test_empty_design_roundtrip():
    d = Design(5, 3, (), 2)
    assert parse_design(format_design(d)) == d


def test_comments_are_skipped():
    text = f"{HEADER}\n# made by hand\n5 3 2\n0 1 2\n# trailing note\n2 3 4\n"
    assert parse_design(text).edges == ((0, 1, 2), (2, 3, 4))


def test_format_needs_t():
    with pytest.raises(ParameterError):
        format_design(Design(5, 3, ()))


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 0),
        ("# something else\n5 3 2\n", 1),
        (f"{HEADER}\n", 2),
        (f"{HEADER}\n5 3\n", 2),
        (f"{HEADER}\n5 3 3\n", 2),
        (f"{HEADER}\n5 3 2\n0 1\n", 3),
        (f"{HEADER}\n5 3 2\n0 1 2\n0 1 x\n", 4),
        (f"{HEADER}\n5 3 2\n0 2 1\n", 3),
        (f"{HEADER}\n5 3 2\n0 1 5\n", 3),
        (f"{HEADER}\n5 3 2\n0 1 2\n0 1 2\n", 4),
    ],
)
def test_malformed_inputs_report_line(text, line):
    with pytest.raises(MalformedDesignError) as info:
        parse_design(text)
    assert info.value.line == line


def test_truncated_file(tmp_path):
    d = Design(7, 3, [(0, 1, 2), (3, 4, 5)], 2)
    text = format_design(d)
    path = tmp_path / "cut.txt"
    path.write_text(text[:-3])
    with pytest.raises(MalformedDesignError):
        read_design(path)
