import io
import json
import subprocess
import sys

import pytest

from satjac.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestExitCodes:
    def test_success(self):
        code, out, _ = call("analyze", "--n", "2", "--poly", "x0^3 + x1^3 + x2^3")
        assert code == 0
        assert out == "smooth hypersurface; analysis trivial\n"

    def test_parse_error(self):
        code, _, err = call("analyze", "--n", "2", "--poly", "x0^3 + 2x1")
        assert code == 2 and "position" in err

    def test_parse_error_json(self):
        code, out, _ = call("analyze", "--n", "2", "--poly", "x0^3 + 2x1", "--json")
        assert code == 2
        data = json.loads(out)
        assert data["error"]["exit_code"] == 2 and data["error"]["position"] == 8
        assert data["spec_version"] == "1.0"

    def test_bad_flags(self):
        assert call("analyze", "--n", "2")[0] == 2
        assert call("frobnicate")[0] == 2
        assert call("classify", "--n", "2", "--d", "6", "--k", "4")[0] == 2

    def test_budget(self):
        code, out, _ = call("analyze", "--n", "2", "--poly", "x0^4 + x1^4 + x2^4 + x0*x1*x2^2",
                            "--max-spairs", "1", "--json")
        assert code == 3
        assert json.loads(out)["error"]["type"] == "BudgetExceeded"

    def test_hypothesis_violation(self):
        code, _, err = call("analyze", "--n", "2", "--poly", "x0^2*x1")
        assert code == 4 and err.startswith("error:")
        code, out, _ = call("analyze", "--n", "2", "--poly", "x0^3 + x1", "--json")
        assert code == 4
        assert json.loads(out)["error"]["type"] == "NonHomogeneousError"

    def test_genericity_exhausted(self, monkeypatch):
        import satjac.constructions as cons
        from satjac.errors import GenericityError

        def fail(*args, **kwargs):
            raise GenericityError("no generic draw")

        monkeypatch.setattr(cons, "construct_verified", fail)
        assert call("construct", "composite", "--verify")[0] == 3


class TestCommands:
    def test_classify(self):
        code, out, _ = call("classify", "--n", "2", "--d", "6", "--k", "6")
        assert code == 0 and out == "exceptional case 1\n"
        code, out, _ = call("classify", "--n", "3", "--d", "8", "--k", "1", "--json")
        assert json.loads(out)["inequality_holds"] is True

    def test_alpha(self):
        assert call("alpha", "--n", "2", "--d", "6", "--k", "6")[1] == "7/6\n"

    def test_sweep(self):
        code, out, _ = call("sweep", "--n-max", "12", "--d-max", "48", "--json", "--failing-only")
        assert code == 0
        fs = {tuple(t) for t in json.loads(out)["failing_set"]}
        assert len(fs) == 12 and (2, 6, 6) in fs and (4, 4, 1) in fs

    def test_hilbert(self):
        code, out, _ = call("hilbert", "--n", "2", "--gens", "x0^3 + x1^3", "x0*x1*x2 + x2^3",
                            "--saturate", "--max-degree", "6", "--json")
        data = json.loads(out)
        assert code == 0 and data["xi"] == 9
        assert [r["h"] for r in data["hilbert"]] == [1, 3, 6, 8, 9, 9, 9]

    def test_analyze_file(self, tmp_path):
        path = tmp_path / "nodal.txt"
        path.write_text("x0^3 + x1^3 + x0*x1*x2\n", encoding="utf-8")
        code, out, _ = call("analyze", "--n", "2", "--file", str(path), "--json")
        assert code == 0 and json.loads(out)["xi"] == 1
        assert call("analyze", "--n", "2", "--file", str(tmp_path / "missing"))[0] == 2

    def test_construct(self):
        code, out, _ = call("construct", "composite", "--m", "1", "--json", "--verify")
        data = json.loads(out)
        assert code == 0
        assert data["verification"]["status"] == "confirmed"
        assert data["report"]["predicted_tjurina_total"] == 12

    def test_construct_text(self):
        code, out, _ = call("construct", "cusps", "--m", "2", "--a1", "2")
        assert code == 0 and "predicted_singular_count: 20" in out

    def test_render_torus(self):
        code, out, _ = call("construct", "composite", "--json")
        poly = json.loads(out)["polynomial"]
        code, out, _ = call("analyze", "--n", "2", "--poly", poly, "--assert-irreducible")
        assert code == 0
        assert "verdict: T-smooth" in out and "exceptional-triple case 1" in out


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("construct", "composite", "--json"),
        ("construct", "rfold", "--m", "2", "--json"),
        ("sweep", "--n-max", "6", "--d-max", "12", "--json"),
    ])
    def test_repeat(self, argv):
        assert call(*argv)[1] == call(*argv)[1]

    def test_console_script(self):
        argv = [sys.executable, "-m", "satjac.cli", "classify", "--n", "4", "--d", "4", "--k", "1"]
        res = subprocess.run(argv, capture_output=True, text=True, check=False)
        assert res.returncode == 0 and res.stdout == "exceptional case 6\n"
