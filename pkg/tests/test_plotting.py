import hashlib
import re

from adamsline import modules as m
from adamsline import plotting
from adamsline.lines import VanishingLine
from adamsline.resolution import ext_chart, minimal_resolution

GOLDEN_STYLE = {
    "cell": 0.32,
    "margin": 0.9,
    "dot_radius": 0.09,
    "dot_gap": 0.22,
    "dot_color": "#000000",
    "h0_color": "#1f4e9c",
    "line_color": "#c0392b",
    "violation_color": "#e67e22",
    "font_size": 8,
    "line_width": 1.0,
}


def _chart():
    return ext_chart(minimal_resolution(m.stunted_projective(2, 14), 6, 14))


def test_style_constants_golden():
    assert plotting.STYLE == GOLDEN_STYLE


def test_svg_size_follows_constants(tmp_path):
    chart = _chart()
    out = tmp_path / "c.svg"
    plotting.save_chart(chart, out)
    text = out.read_text(encoding="utf-8")
    w_in = GOLDEN_STYLE["cell"] * (chart.t_max + 1) + 2 * GOLDEN_STYLE["margin"]
    h_in = GOLDEN_STYLE["cell"] * (chart.s_max + 1) + 2 * GOLDEN_STYLE["margin"]
    w = float(re.search(r'width="([\d.]+)pt"', text).group(1))
    h = float(re.search(r'height="([\d.]+)pt"', text).group(1))
    assert abs(w - 72 * w_in) < 0.01 and abs(h - 72 * h_in) < 0.01
    assert "<dc:date>" not in text
    assert GOLDEN_STYLE["h0_color"] in text


def test_svg_byte_identical(tmp_path):
    chart = _chart()
    digests = []
    for k in range(2):
        out = tmp_path / f"c{k}.svg"
        plotting.save_chart(chart, out, line=VanishingLine.from_intercept(2, -1), exceptions=[2])
        digests.append(hashlib.sha256(out.read_bytes()).hexdigest())
    assert digests[0] == digests[1]


def test_splitrange_figure(tmp_path):
    out = tmp_path / "s.svg"
    plotting.save_splitrange(out, [0, 1, 2], [-4, 0, 2], [-5, -3, 0], [-1, 0, None], "x")
    first = out.read_bytes()
    plotting.save_splitrange(out, [0, 1, 2], [-4, 0, 2], [-5, -3, 0], [-1, 0, None], "x")
    assert out.read_bytes() == first and b"<svg" in first
