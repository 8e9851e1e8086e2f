"""Smoke test for the Python bindings.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

from pathlib import Path

import hocolim_py as h

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def test_circle():
    s = h.SSet.circle(4)
    assert s.homology(2) == ["Z", "Z", "0"]
    assert s.nondegenerate_counts()[:2] == [1, 1]


def test_span_hocolim():
    ws = h.load(CORPUS / "span.toml")
    assert "S0span" in ws.diagrams()
    assert ws.hocolim("S0span").homology(2) == ["Z", "Z", "0"]


def test_classifying_space():
    doc = """
[[category]]
id = "C"
builtin = "cyclic 2"

[[sset]]
id = "p"
builtin = "point"

[[diagram]]
id = "pt"
category = "C"
values = { "*" = "p" }
maps = { g1 = "terminal" }
"""
    ws = h.loads(doc, cap=4)
    assert ws.hocolim("pt").homology(3) == ["Z", "Z/2", "0", "Z/2"]


def test_verify():
    ws = h.load(CORPUS / "span.toml", cap=3)
    lines = ws.verify("loc=bar")
    assert lines and all(passed for _, _, passed, _ in lines)
    assert "loc=bar" in h.claims()


def test_errors():
    try:
        h.loads("[[category]\n")
    except ValueError as e:
        assert "line" in str(e)
    else:
        raise AssertionError("parse error not raised")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print("ok", name)
