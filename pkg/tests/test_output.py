from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from algrat.loci import LocusSet
from algrat.output import (CSV_HEADER, SvgCanvas, fmt, loci_svg, point_row, rows_to_csv, to_json,
                           write_text)


def test_fmt_folds_negative_zero():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333333333"


def test_point_row_and_csv():
    row = point_row("sigma", complex(2, -0.0), 1, 1e-9)
    assert row == ("sigma", "2", "0", "1", "1e-09", "")
    text = rows_to_csv([row])
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert text.endswith("\n") and "\r" not in text


def test_json_is_sorted_and_handles_complex():
    text = to_json({"b": 1 + 2j, "a": [np.float64(0.5), float("inf")], "c": np.bool_(True)})
    assert json.loads(text) == {"a": [0.5, "inf"], "b": [1.0, 2.0], "c": True}
    assert text.index('"a"') < text.index('"b"')


def test_write_text_refuses_overwrite(tmp_path):
    p = tmp_path / "sub" / "x.txt"
    write_text(p, "one")
    with pytest.raises(FileExistsError):
        write_text(p, "two")
    write_text(p, "two", force=True)
    assert p.read_text() == "two"


def test_svg_is_well_formed():
    seg = np.array([-1 + 0j, 0.5 + 0.5j])
    loci = LocusSet([seg], [], [-1 + 0j], [0.25 + 0j], [], [])
    svg = loci_svg(loci, (-2, 2, -1, 1), title="t")
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert root.attrib["viewBox"].split()[2:] == ["600", "300"]
    assert loci_svg(loci, (-2, 2, -1, 1), title="t") == svg


def test_canvas_flips_y():
    c = SvgCanvas((0, 2, 0, 1), width=200)
    assert c._xy(0 + 1j) == pytest.approx((0, 0))
    assert c._xy(2 + 0j) == pytest.approx((200, 100))
    assert not c.visible(3 + 0j)
