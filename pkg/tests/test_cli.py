"""End-to-end checks of the command-line surface and its exit codes."""

import json

import pytest

from liekit.cli import dispatch, main


def run(capsys, *argv):
    code, _ = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


# ---------------------------------------------------------------------------
# happy paths

def test_der_heisenberg_dim_six(capsys):
    code, report, _ = run_json(capsys, "der", "heisenberg:3")
    assert code == 0
    assert report["values"]["dim"] == 6
    assert report["values"]["dim_inner"] == 2
    assert report["values"]["dim_outer"] == 4


def test_nilradical_r2_dim_one_with_basis(capsys):
    code, report, _ = run_json(capsys, "nilradical", "r2")
    assert code == 0
    assert report["values"]["dim"] == 1
    assert report["values"]["basis"] == [["0", "1"]]


def test_info_lists_series_and_flags(capsys):
    code, report, _ = run_json(capsys, "info", "filiform:4")
    assert code == 0
    values = report["values"]
    assert values["dim"] == 4
    assert values["nilpotent"] is True
    assert values["lower_central"] == [4, 2, 1, 0]
    assert values["dim_center"] == 1


def test_cartan_reports_a_basis(capsys):
    code, report, _ = run_json(capsys, "cartan", "sl2")
    assert code == 0
    assert report["values"]["dim"] == 1
    assert len(report["values"]["basis"]) == 1


def test_torus_of_favre7_is_zero(capsys):
    code, report, _ = run_json(capsys, "torus", "favre7")
    assert code == 0
    assert report["values"]["dim"] == 0
    assert report["values"]["matrices"] == []


def test_split_reports_added_dimension(capsys):
    code, report, _ = run_json(capsys, "split", "r2")
    assert code == 0
    assert report["values"]["dim_M"] == 2
    assert report["values"]["already_split"] is True


def test_fingerprint_of_catalog_name(capsys):
    code, report, _ = run_json(capsys, "fingerprint", "heisenberg:3")
    assert code == 0
    assert report["values"]["dim_der"] == 6
    assert report["values"]["lower_central"] == [3, 1, 0]


def test_extend_standard_heisenberg(capsys):
    code, report, _ = run_json(capsys, "extend", "--standard", "heisenberg:3")
    assert code == 0
    assert report["values"]["dim_total"] == 5
    assert report["values"]["torus_dim"] == 2
    assert report["certificates"]["rank_bound_ok"] is True


def test_verify_rank_bound_on_solvable_extension(capsys):
    code, report, _ = run_json(capsys, "verify", "rank-bound",
                               "so2_torus_extension")
    assert code == 0
    assert report["certificates"]["rank_ok"] is True
    assert report["certificates"]["codim_ok"] is True


def test_verify_rank_bound_lifts_nilpotent_sources(capsys):
    # on h3 alone the quotient by the nilradical is zero, so the command
    # must check the standard extension, where the bound is sharp
    code, report, _ = run_json(capsys, "verify", "rank-bound", "heisenberg:3")
    assert code == 0
    assert report["values"]["checked_on"] == "standard_extension"
    assert report["values"]["toric_rank"] == 2
    assert report["values"]["gen_bound"] == 2


def test_verify_rank_bound_fails_on_semisimple(capsys):
    # the bound is a theorem about solvable algebras; sl2 has a zero
    # nilradical and positive toric rank, so the certificate must go red
    code, report, _ = run_json(capsys, "verify", "rank-bound", "sl2")
    assert code == 1
    assert report["certificates"]["rank_ok"] is False
    assert report["values"]["toric_rank"] == 1
    assert report["values"]["gen_bound"] == 0


def test_verify_togo_equality(capsys):
    code, report, _ = run_json(capsys, "verify", "togo",
                               "heisenberg:3", "abelian:2")
    assert code == 0
    assert report["values"]["dim_der_sum"] == report["values"]["predicted"]
    assert report["certificates"]["equal"] is True


def test_demo_snobl_certificates(capsys):
    code, report, _ = run_json(capsys, "demo", "snobl")
    assert code == 0
    values = report["values"]
    assert values["dim"] == [9, 9]
    assert values["dim_M"] == [9, 10]
    assert values["dim_Der"] == [13, 12]
    assert values["non_isomorphic"] is True
    assert all(report["certificates"].values())


# ---------------------------------------------------------------------------
# source resolution

def test_file_source_reports_digest(capsys, tmp_path):
    from liekit import catalog
    path = tmp_path / "h3.json"
    catalog.store(catalog.get("heisenberg", 3), path)
    code, report, _ = run_json(capsys, "der", str(path))
    assert code == 0
    assert report["input"]["file"] == str(path)
    assert len(report["input"]["sha256"]) == 64
    assert report["values"]["dim"] == 6


def test_catalog_name_wins_over_paths(capsys):
    code, report, _ = run_json(capsys, "info", "abelian:3")
    assert code == 0
    assert report["input"] == {"name": "abelian:3"}


# ---------------------------------------------------------------------------
# extend --by derivation files

def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_extend_by_accepts_semisimple_action(capsys, tmp_path):
    src = write_json(tmp_path, "scale.json",
                     {"matrices": [[["1", "0"], ["0", "1"]]],
                      "labels": ["t"]})
    code, report, _ = run_json(capsys, "extend", "--by", src, "abelian:2")
    assert code == 0
    assert report["values"]["dim_total"] == 3
    assert report["certificates"]["nilradical_preserved"] is True


def test_extend_by_rejects_nilradical_inflation(capsys, tmp_path):
    src = write_json(tmp_path, "nilp.json",
                     {"matrices": [[["0", "1"], ["0", "0"]]]})
    code, report, _ = run_json(capsys, "extend", "--by", src, "abelian:2")
    assert code == 1
    assert report["certificates"]["nilradical_preserved"] is False
    assert report["values"]["computed_nilradical_dim"] == 3
    assert report["values"]["expected_nilradical_dim"] == 2


def test_extend_by_bad_matrix_shape_is_input_error(capsys, tmp_path):
    src = write_json(tmp_path, "bad.json", {"matrices": [[["1", "0"]]]})
    code, out, err = run(capsys, "extend", "--by", src, "abelian:2")
    assert code == 2
    assert "2x2" in err


def test_extend_by_malformed_json_is_input_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    code, out, err = run(capsys, "extend", "--by", str(path), "abelian:2")
    assert code == 2
    assert "line" in err


# ---------------------------------------------------------------------------
# error exits

def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2


def test_unknown_flag_is_usage_error(capsys):
    assert main(["der", "sl2", "--frodo"]) == 2


def test_unknown_name_is_input_error(capsys):
    code, out, err = run(capsys, "der", "nosuchalgebra")
    assert code == 2
    assert "nosuchalgebra" in err


def test_missing_parameter_is_input_error(capsys):
    code, out, err = run(capsys, "der", "abelian")
    assert code == 2
    assert "parameter" in err


def test_non_integer_parameter_is_input_error(capsys):
    code, out, err = run(capsys, "der", "abelian:two")
    assert code == 2
    assert "integer" in err


def test_togo_rejects_non_nilpotent_input(capsys):
    code, out, err = run(capsys, "verify", "togo", "r2", "abelian:2")
    assert code == 2
    assert "nilpotent" in err


# ---------------------------------------------------------------------------
# output handling and determinism

def test_output_flag_writes_file_and_silences_stdout(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, err = run(capsys, "split", "r2", "--format", "json",
                         "--output", str(target))
    assert code == 0
    assert out == ""
    report = json.loads(target.read_text(encoding="utf-8"))
    assert report["values"]["dim_M"] == 2


def test_same_seed_gives_byte_identical_json(capsys):
    _, first, _ = run(capsys, "fingerprint", "heisenberg:5",
                      "--seed", "17", "--format", "json")
    _, second, _ = run(capsys, "fingerprint", "heisenberg:5",
                       "--seed", "17", "--format", "json")
    assert first == second


def test_seed_changes_are_reported_but_values_agree(capsys):
    _, first, _ = run_json(capsys, "fingerprint", "heisenberg:5", "--seed", "1")
    _, second, _ = run_json(capsys, "fingerprint", "heisenberg:5", "--seed", "2")
    assert first["seed"] == 1 and second["seed"] == 2
    assert first["values"] == second["values"]


def test_timing_goes_to_stderr_not_stdout(capsys):
    code, out, err = run(capsys, "der", "abelian:2")
    assert "elapsed" in err
    assert "elapsed" not in out


def test_text_and_json_carry_the_same_values(capsys):
    _, text_out, _ = run(capsys, "der", "heisenberg:3")
    _, report, _ = run_json(capsys, "der", "heisenberg:3")
    assert "values.dim: 6" in text_out
    assert report["values"]["dim"] == 6
