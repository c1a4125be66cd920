import runpy
import subprocess
import sys
import xml.dom.minidom
from pathlib import Path

import pytest

from pipedream.cli import main
from pipedream.perm import Permutation
from pipedream.rcgraph import bottom, enumerate_all, validate
from pipedream.schubert import nu_macdonald_oracle
from pipedream.render import _strand_colors, render, to_ascii, to_svg, to_tikz

FIG1_ASCII = "+++..\n++...\n.+...\n.....\n....."


def test_fig1_ascii():
    D = validate({(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 2)}, "43152")
    assert to_ascii(D) == FIG1_ASCII


def test_svg_and_tikz_shape():
    D = bottom("1432")
    doc = xml.dom.minidom.parseString(to_svg(D, show_strands=True))
    assert len(doc.getElementsByTagName("line")) == 2 * len(D)
    assert to_tikz(D).count("$+$") == 3
    with pytest.raises(ValueError):
        render(D, "png")


@pytest.mark.parametrize("w", ["1432", "43152", "156342", "14532"])
def test_strand_colours_cover_every_tile(w):
    for D in enumerate_all(w):
        n = D.n
        # two halves per tile, except the unused lower half of each antidiagonal elbow
        tiles = sum(2 for i in range(1, n + 1) for j in range(1, n + 2 - i))
        assert len(_strand_colors(D)) == tiles - n


def test_cli_nu_and_render(capsys):
    assert main(["nu", "1432"]) == 0
    assert capsys.readouterr().out.strip() == "5"
    assert main(["nu", "--oracle", "156342"]) == 0
    assert main(["render", "43152", "--bottom"]) == 0
    assert main(["render", "1432", "--index", "9"]) == 2


def test_cli_table_max(capsys):
    assert main(["table-max", "6"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "n,max_c,argmax"
    assert "6,37,126543 216543" in out


def test_cli_enumerate_count(capsys):
    assert main(["enumerate", "1432"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("count: 5")


def test_cli_exit_codes(monkeypatch, capsys):
    assert main(["info", "12x"]) == 2
    assert main(["verify", "--n", "4", "--suite", "connectivity"]) == 0
    monkeypatch.setenv("PIPEDREAM_BUDGET", "3")
    assert main(["enumerate", "1432"]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "4", "--suite", "bogus"])
    assert exc.value.code == 2


def test_cli_verify_failure(monkeypatch):
    from pipedream import verify
    monkeypatch.setitem(verify.PREDICATES, "thm_4_1", lambda w: {"x": 1})
    assert main(["verify", "--n", "3", "--suite", "connectivity"]) == 1


def test_entry_point():
    out = subprocess.run([sys.executable, "-m", "pipedream.cli", "nu", "14532"],
                         capture_output=True, text=True, check=True)
    assert int(out.stdout) == nu_macdonald_oracle("14532") == 9


DEMOS = Path(__file__).parent.parent / "demos"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("*.py")))
def test_demo_runs(script, capsys):
    runpy.run_path(str(DEMOS / script), run_name="__main__")
    assert capsys.readouterr().out
