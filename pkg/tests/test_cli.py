import csv
import io
import json
import subprocess
import sys
from itertools import combinations

import numpy as np
import pytest

from qgraphstats import __version__, catalog
from qgraphstats.cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from qgraphstats.graph import format_edge_list


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.edges"):
        path = tmp_path / name
        path.write_text(format_edge_list(g))
        return str(path)

    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    rows = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(rows))))


@pytest.mark.parametrize(
    "g, ab, two_body, discrete",
    [
        (catalog.lasso(), 1, 1, []),
        (catalog.complete_bipartite(3, 3), 4, 0, [2]),
        (catalog.star(6), 0, 10, []),
    ],
)
def test_classify(capsys, graph_file, g, ab, two_body, discrete):
    code, out, _ = run(capsys, "classify", "--input", graph_file(g))
    assert code == EXIT_OK
    rep = json.loads(out)
    assert (rep["ab"], rep["two_body"], rep["discrete_divisors"]) == (ab, two_body, discrete)
    assert rep["version"] == __version__
    assert rep["edges"] == [list(e) for e in g.edges]
    for key in ("f", "f2", "g2", "rank"):
        assert isinstance(rep[key], int)
    assert len(rep["anchored_cycles"]) == ab
    assert len(rep["discrete_witnesses"]) == len(discrete)
    assert len(rep["free_phase_cycles"]) == ab + two_body


def test_classify_writes_output_file(capsys, graph_file, tmp_path):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "classify", "-i", graph_file(catalog.complete(5)), "-o", str(out))
    assert code == EXIT_OK and stdout == ""
    assert json.loads(out.read_text())["discrete_divisors"] == [2]


def test_spectrum_l5_fermi(capsys, graph_file):
    path = graph_file(catalog.linear(5))
    code, out, _ = run(capsys, "spectrum", "-i", path, "--sigma", "-1")
    assert code == EXIT_OK
    assert out.startswith(f"# qgraphstats {__version__}\n# sigma=-1\n")
    got = [float(r["eigenvalue"]) for r in read_csv(out)]
    e = 4 * np.sin(np.pi * np.arange(5) / 10) ** 2
    assert np.allclose(got, sorted(e[a] + e[b] for a, b in combinations(range(5), 2)), atol=1e-9)
    _, bose, _ = run(capsys, "spectrum", "-i", path, "--sigma", "1")
    assert np.allclose(got, [float(r["eigenvalue"]) for r in read_csv(bose)], atol=1e-9)


def test_spectrum_c3_anyon_equals_fermi(capsys, graph_file):
    path = graph_file(catalog.circular(3))
    _, anyon, _ = run(capsys, "spectrum", "-i", path, "--alpha", str(np.pi))
    _, fermi, _ = run(capsys, "spectrum", "-i", path, "--sigma", "-1")
    a = [float(r["eigenvalue"]) for r in read_csv(anyon)]
    f = [float(r["eigenvalue"]) for r in read_csv(fermi)]
    assert np.allclose(a, f, atol=1e-9)
    assert "# alpha=[3.14159" in anyon


def test_spectrum_dimension_mismatch(capsys, graph_file):
    code, _, err = run(capsys, "spectrum", "-i", graph_file(catalog.circular(3)), "--alpha", "1", "--alpha", "2")
    assert code == EXIT_DOMAIN and "DimensionMismatch" in err


def test_spectrum_discrete_selection(capsys, graph_file):
    path = graph_file(catalog.complete(5))
    argv = ["spectrum", "-i", path] + ["--alpha", "0"] * 6
    code, out, _ = run(capsys, *argv, "--discrete", "1")
    assert code == EXIT_OK and "# discrete=[1]" in out
    code, _, err = run(capsys, *argv, "--discrete", "2")
    assert code == EXIT_DOMAIN


def test_sweep_c3(capsys, graph_file):
    code, out, _ = run(capsys, "sweep", "-i", graph_file(catalog.circular(3)), "--steps", "64")
    assert code == EXIT_OK
    rows = read_csv(out)
    assert len(rows) == 64 and len(rows[0]) == 2 + 3
    first = [float(rows[0][f"E{i}"]) for i in range(3)]
    last = [float(rows[-1][f"E{i}"]) for i in range(3)]
    assert np.allclose(first, last, atol=1e-9)


def test_sweep_needs_free_phase(capsys, graph_file):
    code, _, err = run(capsys, "sweep", "-i", graph_file(catalog.linear(4)))
    assert code == EXIT_DOMAIN and "no free phases" in err


def test_landau(capsys):
    code, out, _ = run(capsys, "landau", "--N", "40", "--r", "10", "--s", "25", "--t", "5", "--p", "1")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["localized_indices"]
    assert len(rep["eigenvalues"]) == len(rep["ipr"]) == 780
    code, out, _ = run(capsys, "landau", "--N", "40", "--r", "10", "--s", "25", "--t", "5", "--p", "0")
    assert json.loads(out)["localized_indices"] == []


def test_landau_window_error(capsys):
    code, _, err = run(capsys, "landau", "--N", "10", "--r", "8", "--t", "5")
    assert code == EXIT_DOMAIN and "WindowOutOfRange" in err


def test_verify_corpus(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "3", "--samples", "50")
    assert code == EXIT_OK
    assert "[FAIL]" not in out
    assert out.rstrip().endswith("checks passed")


def test_verify_single_file(capsys, graph_file):
    code, out, _ = run(capsys, "verify", "-i", graph_file(catalog.bowtie()), "--samples", "0")
    assert code == EXIT_OK and "homology oracle" in out


def test_verify_corrupt_hook_fails(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "0", "--corrupt-hook")
    assert code == EXIT_VERIFY
    assert "[FAIL] corrupted R" in out and "InconsistentDiscretePhases" in out


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["classify"], ["spectrum", "-i", "x", "--sigma", "2"], ["landau", "--N", "many"]],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_parse_error_has_line_number(capsys, tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("1 2\n2 three\n")
    code, _, err = run(capsys, "classify", "-i", str(path))
    assert code == EXIT_DOMAIN and "bad.edges:2" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "-i", str(tmp_path / "nope.edges"))
    assert code == EXIT_DOMAIN


def test_domain_error_from_pipeline(capsys, tmp_path):
    path = tmp_path / "edge.edges"
    path.write_text("1 2\n")
    code, _, err = run(capsys, "classify", "-i", str(path))
    assert code == EXIT_DOMAIN and "TooFewVertices" in err


@pytest.mark.parametrize("argv", [["classify"], ["spectrum", "--alpha", "0.3"], ["sweep", "--steps", "5"]])
def test_outputs_are_byte_identical(capsys, graph_file, argv):
    path = graph_file(catalog.star(3))
    _, first, _ = run(capsys, argv[0], "-i", path, *argv[1:])
    _, second, _ = run(capsys, argv[0], "-i", path, *argv[1:])
    assert first == second


def test_module_entry_point(tmp_path):
    path = tmp_path / "k5.edges"
    path.write_text(format_edge_list(catalog.complete(5)))
    proc = subprocess.run(
        [sys.executable, "-m", "qgraphstats", "classify", "-i", str(path)], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ab"] == 6
