import json
from pathlib import Path


from spinref.cli import main, parse_refinement_report, refinement_report

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_golden_table_n2(self, capsys):
        code, out, _ = run(capsys, "classify", "--n", "2")
        assert code == 0
        golden = (DATA / "classify_n2_table.txt").read_text()
        assert out == golden

    def test_json(self, capsys):
        code, out, _ = run(capsys, "classify", "--n", "2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["total"] == 24
        by_label = {row["parabolic"]: row for row in payload["strata"]}
        assert by_label["B"]["size"] == 8 and by_label["B"]["dim"] == 3
        assert by_label["1,2,1"]["size"] == 0
        assert by_label["2,2"]["members"][0] == "1243"

    def test_csv_columns(self, capsys):
        code, out, _ = run(capsys, "classify", "--n", "2", "--format", "csv")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "parabolic,xp,dim,size,members"
        assert len(lines) == 5

    def test_bound_exceeded(self, capsys):
        code, _, err = run(capsys, "classify", "--n", "6")
        assert code == 2
        assert "bound" in err

    def test_bound_override(self, capsys):
        code, out, _ = run(capsys, "classify", "--n", "3", "--bound", "3",
                           "--format", "json")
        assert code == 0
        assert json.loads(out)["total"] == 720

    def test_rank_validated(self, capsys):
        code, _, err = run(capsys, "classify", "--n", "0")
        assert code == 1 and ">= 1" in err


class TestInfo:
    def test_216345(self, capsys):
        code, out, _ = run(capsys, "info", "--sigma", "216345")
        assert code == 0
        payload = json.loads(out)
        assert payload["optimal"] == "1,4,1"
        assert payload["spin_set"] == [1]

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "info", "--sigma", "1234")
        payload = json.loads(out)
        assert payload["optimal"] == "B" and payload["tau"] == []

    def test_2134(self, capsys):
        code, out, _ = run(capsys, "info", "--sigma", "2134")
        payload = json.loads(out)
        assert payload == {
            "sigma": "2134", "n": 2, "spin_set": [2], "gamma": [2, 1],
            "optimal": "2,2", "optimal_xp": [2], "dim": 2,
            "b_spin_target": "1234", "tau": [[1, 2]],
            "alpha_u": payload["alpha_u"],
        }
        assert payload["alpha_u"]["1"]["str"] == "p^{-3/2} * θ_2"

    def test_round_trip(self, capsys):
        code, out, _ = run(capsys, "info", "--sigma", "2134")
        payload = json.loads(out)
        rebuilt = refinement_report(parse_refinement_report(payload))
        assert rebuilt == payload

    def test_malformed(self, capsys):
        code, _, err = run(capsys, "info", "--sigma", "21x4")
        assert code == 3 and "position 3" in err
        code, _, err = run(capsys, "info", "--sigma", "21435")
        assert code == 3

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "info", "--sigma", "2134", "--format", "table")
        assert code == 0 and "optimal        2,2" in out


class TestSlopes:
    def test_gl4_first_triple(self, capsys):
        code, out, _ = run(capsys, "slopes", "--sigma", "1234",
                           "--lambda", "12,1,-1,-12", "--slopes", "1=11,2=0,3=11")
        assert code == 0
        assert "verdict: non-critical slope" in out

    def test_gl4_second_triple(self, capsys):
        code, out, _ = run(capsys, "slopes", "--sigma", "2134",
                           "--lambda", "12,1,-1,-12", "--slopes", "1=11,2=0,3=1")
        assert code == 0
        assert "verdict: non-critical slope" in out

    def test_equality_fails_naming_index(self, capsys):
        code, out, _ = run(capsys, "slopes", "--sigma", "1234",
                           "--lambda", "12,1,-1,-12", "--slopes", "1=12,2=0,3=11")
        assert code == 0
        assert "U_p,1: slope 12 < bound 12  VIOLATED" in out
        assert "critical" in out

    def test_missing_data(self, capsys):
        code, _, err = run(capsys, "slopes", "--sigma", "1234",
                           "--lambda", "12,1,-1,-12", "--slopes", "1=11")
        assert code == 4 and "U_{p,2}" in err

    def test_solve_flag(self, capsys):
        code, out, _ = run(capsys, "slopes", "--sigma", "1234",
                           "--lambda", "12,1,-1,-12", "--slopes", "1=11,2=0,3=11",
                           "--solve", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["solve"]["status"] == "unique"
        assert payload["solve"]["t"] == ["1/2", "-23/2", "23/2", "-1/2"]

    def test_non_dominant_weight_rejected(self, capsys):
        code, _, err = run(capsys, "slopes", "--sigma", "1234",
                           "--lambda", "0,1,-1,0", "--slopes", "1=0,2=0,3=0")
        assert code == 1 and "dominant" in err


class TestMTau:
    def test_borel_n2(self, capsys):
        code, out, _ = run(capsys, "mtau", "--parabolic", "1,1,1,1")
        assert code == 0
        assert "[12]  1" in out
        assert "prenormalization factor: 1" in out

    def test_q_json(self, capsys):
        code, out, _ = run(capsys, "mtau", "--parabolic", "2,2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["expansion"] == {"12": "1"}
        assert "θ_3" in payload["prenormalization"]

    def test_outside_q_rejected(self, capsys):
        code, _, err = run(capsys, "mtau", "--parabolic", "1,4,1")
        assert code == 5 and "(n,n)" in err

    def test_rank_cross_check(self, capsys):
        code, _, err = run(capsys, "mtau", "--parabolic", "2,2", "--n", "3")
        assert code == 1 and "disagrees" in err


class TestZeta:
    def test_22(self, capsys):
        code, out, _ = run(capsys, "zeta", "--parabolic", "2,2")
        assert code == 0 and "no forced vanishing" in out

    def test_121(self, capsys):
        code, out, _ = run(capsys, "zeta", "--parabolic", "1,2,1")
        assert code == 0 and "verdict: forced vanishing" in out

    def test_non_spin(self, capsys):
        code, _, err = run(capsys, "zeta", "--parabolic", "1,3,2")
        assert code == 5 and "not symmetric" in err

    def test_json(self, capsys):
        code, out, _ = run(capsys, "zeta", "--parabolic", "1,2,1",
                           "--beta", "2", "--format", "json")
        payload = json.loads(out)
        assert payload["forced_vanishing"] is True
        assert payload["antidiagonal_exponents"] == [-2, 2]

    def test_beta_validated(self, capsys):
        code, _, err = run(capsys, "zeta", "--parabolic", "2,2", "--beta", "0")
        assert code == 1 and "positive" in err
