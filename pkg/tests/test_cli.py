import json
import subprocess
import sys

import pytest

from edgering.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_process(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "edgering.cli", *argv], capture_output=True, text=True, env=env)


class TestCommands:
    def test_analyze_windmill_three(self, capsys):
        code, out, _ = run(capsys, "analyze", "--family", "gn", "--n", "3")
        report = json.loads(out)
        assert code == 0
        assert report["h"] == [1, 2, 3, 1]
        assert report["gorenstein"] is False and report["almost_gorenstein"] is True
        assert report["sources_agree"] and report["hvector"]["sources"]["closed-form"] == [1, 2, 3, 1]
        assert report["generator_count"] == 3 and report["facet_count"] == 7

    def test_groebner_windmill_two(self, capsys):
        code, out, _ = run(capsys, "groebner", "--family", "gn", "--n", "2")
        report = json.loads(out)
        assert code == 0 and report["groebner_basis"] == ["x1*y1*z2 - z1*x2*y2"]
        assert report["initial_ideal"] == ["x1*y1*z2"] and report["is_groebner_basis"]

    def test_hvector(self, capsys):
        code, out, _ = run(capsys, "hvector", "--family", "gn", "--n", "4", "--check-degrees", "3")
        report = json.loads(out)
        assert code == 0 and report["h"] == [1, 3, 6, 4, 1] and report["dim"] == 9
        assert len(report["hilbert_checks"]) == 4 and all(c["agree"] for c in report["hilbert_checks"])

    def test_complex_suppressed(self, capsys):
        code, out, _ = run(capsys, "complex", "--family", "gn", "--n", "2", "--suppress-cone-points")
        report = json.loads(out)
        assert sorted(report["cone_points"]) == ["x2", "y2", "z1"]
        assert report["facets"] == [["x1", "y1"], ["x1", "z2"], ["y1", "z2"]]
        assert report["lex_shelling"]["r_values"] == [0, 1, 2]

    def test_canonical(self, capsys):
        code, out, _ = run(capsys, "canonical", "--family", "gn", "--n", "4", "--max-degree", "10")
        report = json.loads(out)
        assert code == 0 and report["generator_degrees"] == [5, 6, 7] and report["certified"]

    def test_verdicts(self, capsys):
        code, out, _ = run(capsys, "verdicts", "--family", "gn", "--n", "2")
        assert json.loads(out) == {"gorenstein": True, "almost_gorenstein": True, "cm_type": 1,
                                   "e_tilde": 0, "provisional": False}

    def test_families(self, capsys):
        code, out, _ = run(capsys, "families")
        assert [f["id"] for f in json.loads(out)["families"]] == ["Gn", "CompleteBipartite", "Complete"]

    def test_json_input(self, capsys, tmp_path):
        path = tmp_path / "k4.json"
        path.write_text(json.dumps({"num_vertices": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}))
        code, out, _ = run(capsys, "hvector", "--input", str(path))
        assert code == 0 and json.loads(out)["h"] == [1, 2, 1]

    def test_custom_order(self, capsys):
        code, out, _ = run(capsys, "groebner", "--family", "kmn", "--m", "2", "--n", "2",
                           "--order", "a2b2,a2b1,a1b2,a1b1")
        assert code == 0 and json.loads(out)["initial_ideal"] == ["a1b1*a2b2"]

    @pytest.mark.parametrize("fmt", ["csv", "pretty"])
    def test_other_formats(self, capsys, fmt):
        code, out, _ = run(capsys, "verdicts", "--family", "gn", "--n", "3", "--format", fmt)
        assert code == 0 and "almost_gorenstein" in out and "true" in out
        if fmt == "csv":
            assert out.splitlines()[0] == "key,value"

    def test_timings_go_to_stderr(self, capsys):
        code, out, err = run(capsys, "hvector", "--family", "gn", "--n", "2", "--timings")
        assert "total:" in err and "total" not in out


class TestErrors:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "analyze", "--input", "missing.json")
        assert code == 3 and "missing.json" in err

    def test_bipartite_canonical(self, capsys):
        code, _, err = run(capsys, "canonical", "--family", "kmn", "--m", "2", "--n", "2")
        assert code == 3 and "bipartite" in err

    def test_disconnected_input(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"num_vertices": 4, "edges": [[0, 1], [2, 3]]}))
        code, _, err = run(capsys, "analyze", "--input", str(path))
        assert code == 3 and "disconnected" in err

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text("[1, 2")
        assert run(capsys, "analyze", "--input", str(path))[0] == 3

    def test_no_graph(self, capsys):
        assert run(capsys, "hvector")[0] == 3

    def test_bad_order(self, capsys):
        assert run(capsys, "groebner", "--family", "gn", "--n", "2", "--order", "x1,y1")[0] == 3

    def test_incomplete_walk_bound_is_invariant_violation(self, capsys):
        code, _, err = run(capsys, "hvector", "--family", "gn", "--n", "2", "--max-walk-len", "4")
        assert code == 2 and "dimension" in err

    def test_resource_guard(self, capsys):
        code, _, err = run(capsys, "canonical", "--family", "km", "--m", "6", "--max-degree", "200")
        assert code == 4 and "limit" in err


class TestDeterminism:
    def test_byte_identical_runs(self):
        args = ("analyze", "--family", "gn", "--n", "3")
        first, second = run_process(*args), run_process(*args)
        assert first.returncode == 0 and first.stdout == second.stdout

    def test_thread_count_irrelevant(self):
        args = ("analyze", "--family", "gn", "--n", "4")
        assert run_process(*args, "--threads", "1").stdout == run_process(*args, "--threads", "3").stdout

    def test_thread_env_default(self):
        import os

        env = dict(os.environ, EDGERING_THREADS="2")
        res = run_process("verdicts", "--family", "gn", "--n", "3", env=env)
        assert res.returncode == 0 and json.loads(res.stdout)["cm_type"] == 2
