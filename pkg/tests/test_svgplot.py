from pathlib import Path

from ranklasso.svgplot import line_chart, text_paths

GOLDEN = Path(__file__).parent / "data" / "golden_chart.svg"


def test_empty_chart_has_axes_only():
    svg = line_chart("no data", "x", "y", [])
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")
    assert "<circle" not in svg
    assert svg.count("<rect") == 2  # background + frame


def test_two_point_series_single_polyline():
    svg = line_chart("t", "x", "y", [("a", [0.0, 1.0], [1.0, 3.0])])
    data_lines = [ln for ln in svg.splitlines()
                  if ln.startswith("<polyline") and "stroke=\"#1f77b4\"" in ln]
    # one data polyline plus the legend swatch is a <line>, not a polyline
    assert len(data_lines) == 1
    assert data_lines[0].count(",") == 2  # two vertices
    assert svg.count("<circle") == 2


def test_series_sorted_and_deterministic():
    series = [("zeta", [0, 1], [1, 2]), ("alpha", [0, 1], [2, 1])]
    a = line_chart("t", "x", "y", series)
    b = line_chart("t", "x", "y", list(reversed(series)))
    assert a == b


def test_text_paths_cover_needed_characters():
    out = text_paths("NMP FDR 0.123 (n=400) rL/arL_th-+%", 0, 0, 10)
    assert "<polyline" in out


def test_unknown_glyph_falls_back():
    assert text_paths("@", 0, 0, 10)  # renders the fallback stroke


def test_golden_chart_bytes():
    # frozen output of a fixed small chart; regenerating must be byte-equal
    svg = line_chart("golden", "p", "NMP", [
        ("rL", [100.0, 400.0, 900.0], [3.0, 2.0, 1.5]),
        ("cv", [100.0, 400.0, 900.0], [4.0, 6.0, 9.0]),
    ])
    assert svg == GOLDEN.read_text()
