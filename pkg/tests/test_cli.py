"""End-to-end command-line runs: exit codes, JSON reports, determinism.

Every test drives the installed module through a subprocess, exactly as a
user would.  Exit codes: 0 = all checks pass, 2 = a check failed,
3 = resource limit, 4 = parse/usage/I-O error.
"""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "coxloops.cli"]

A2 = "coxeter v1\nrank 2\nedge 1 2 3\n"
TRIANGLE_COX = "coxeter v1\nrank 3\nedge 1 2 3\nedge 1 3 3\nedge 2 3 3\n"
TRIANGLE_GRAPH = "graph v1\nvertices 3\nedge 1 2\nedge 1 3\nedge 2 3\n"
H4 = "coxeter v1\nrank 4\nedge 1 2 5\nedge 2 3 3\nedge 3 4 3\n"
KLEIN_TABLE = "table v1 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n"
LOOP5_TABLE = (
    "table v1 5\n0 1 2 3 4\n1 0 3 4 2\n2 3 4 0 1\n3 4 1 2 0\n4 2 0 1 3\n"
)
DISCONNECTED_GRAPH = "graph v1\nvertices 6\nedge 1 2\nedge 1 3\nedge 2 3\nedge 4 5\n"


def run(args, stdin=""):
    return subprocess.run(
        CLI + list(args), input=stdin, capture_output=True, text=True, timeout=120
    )


def run_json(args, stdin=""):
    proc = run(list(args) + ["--json"], stdin)
    report = json.loads(proc.stdout) if proc.stdout else None
    return proc, report


def test_parse_coxeter_stdin():
    proc = run(["parse", "-"], A2)
    assert proc.returncode == 0
    assert "order: 6" in proc.stdout
    assert proc.stdout.rstrip().endswith("OK")


def test_parse_graph_and_table():
    assert run(["parse", "-"], TRIANGLE_GRAPH).returncode == 0
    assert run(["parse", "-"], KLEIN_TABLE).returncode == 0


def test_parse_errors_exit_4():
    bad_header = run(["parse", "-"], "nonsense v9\n")
    assert bad_header.returncode == 4
    assert "error:" in bad_header.stderr
    # m = 2 must be expressed by omitting the edge line
    bad_label = run(["parse", "-"], "coxeter v1\nrank 2\nedge 1 2 2\n")
    assert bad_label.returncode == 4
    assert "line 3" in bad_label.stderr
    # edge before the rank line
    assert run(["parse", "-"], "coxeter v1\nedge 1 2 3\nrank 2\n").returncode == 4
    # ragged table row
    assert run(["parse", "-"], "table v1 2\n0 1\n1\n").returncode == 4


def test_usage_errors_exit_4():
    assert run(["bogus", "-"], "").returncode == 4
    assert run(["group", "/nonexistent/path"], "").returncode == 4
    assert run(["group", "-", "--cap", "0"], A2).returncode == 4
    # --help stays conventional
    assert run(["--help"]).returncode == 0


def test_group_a2_json():
    proc, r = run_json(["group", "-"], A2)
    assert proc.returncode == 0
    assert r["schema"] == 1
    assert r["kind"] == "coxeter"
    assert r["group_order"] == 6
    assert r["abelian"] is False
    assert r["element_orders"] == {"1": 1, "2": 3, "3": 2}
    assert {c["name"] for c in r["checks"]} == {
        "finite_type",
        "order_matches_classification",
    }
    assert all(c["status"] == "pass" for c in r["checks"])
    assert r["ok"] is True


def test_group_nonassociative_table_fails():
    proc, r = run_json(["group", "-"], LOOP5_TABLE)
    assert proc.returncode == 2
    assoc = next(c for c in r["checks"] if c["name"] == "associativity")
    assert assoc["status"] == "fail"
    assert assoc["witness"] == {"instance": [1, 1, 2], "values": [2, 4]}
    assert r["ok"] is False
    # human rendering names the failure and the witness
    human = run(["group", "-"], LOOP5_TABLE)
    assert human.returncode == 2
    assert "[FAIL] associativity" in human.stdout
    assert human.stdout.rstrip().endswith("FAILED (1 checks)")


def test_group_h4_cap_paths():
    # H4 has order 14400: the default cap 10000 stops coset enumeration
    proc = run(["group", "-"], H4)
    assert proc.returncode == 3
    assert "resource limit" in proc.stderr
    # with a higher cap the order is counted and cross-checked, while the
    # dense table (14400^2 entries) stays behind the work budget
    proc2, r = run_json(["group", "-", "--cap", "20000"], H4)
    assert proc2.returncode == 0
    assert r["group_order"] == 14400
    assert r["table"] is None
    by_name = {c["name"]: c for c in r["checks"]}
    assert by_name["order_matches_classification"]["status"] == "pass"
    assert by_name["element_statistics"]["status"] == "skip"


def test_loop_a2_runs_the_full_identity_suite():
    proc, r = run_json(["loop", "-"], A2)
    assert proc.returncode == 0
    assert r["group_order"] == 6 and r["loop_order"] == 12
    assert r["associative"] is False
    assert r["assoc_witness"] == [1, 2, 6]
    names = [c["name"] for c in r["checks"]]
    assert names == [
        "finite_type",
        "involution_squares",
        "u_conjugation_right",
        "u_conjugation_left",
        "c1",
        "c2",
        "c3",
        "gen_u_swap",
        "gen_left_absorb",
        "gen_right_absorb",
        "gen_pair_collapse",
        "gen_right_commute",
        "left_peeling",
        "m1",
        "m2",
        "m3",
    ]
    assert all(c["status"] == "pass" for c in r["checks"])


def test_loop_on_plain_table_skips_doubling_rules():
    proc, r = run_json(["loop", "-"], KLEIN_TABLE)
    assert proc.returncode == 0
    by_name = {c["name"]: c for c in r["checks"]}
    assert by_name["c1"]["status"] == "skip"
    assert by_name["m1"]["status"] == "pass"
    assert r["associative"] is True


def test_aut_klein_table_doubles_to_psl():
    proc, r = run_json(["aut", "-"], KLEIN_TABLE)
    assert proc.returncode == 0
    assert r["aut_order"] == 6  # GL(2,2) on the group itself
    assert r["doubled"]["aut_order"] == 168  # GL(3,2) on M(V4, 2)
    assert r["doubled"]["trichotomy"]["case"] == 1
    by_name = {c["name"]: c for c in r["checks"]}
    assert by_name["aut_order_is_general_linear"]["status"] == "pass"


def test_cohomology_triangle_json():
    proc, r = run_json(["cohomology", "-"], TRIANGLE_GRAPH)
    assert proc.returncode == 0
    assert r["dims"] == {"z1": 3, "b1": 2, "h1": 1}
    assert r["connected"] is True
    assert all(c["status"] == "pass" for c in r["checks"])


def test_cohomology_rejects_tables_and_strict_rejects_disconnected():
    assert run(["cohomology", "-"], KLEIN_TABLE).returncode == 4
    ok = run(["cohomology", "-"], DISCONNECTED_GRAPH)
    assert ok.returncode == 0
    strict = run(["cohomology", "-", "--strict"], DISCONNECTED_GRAPH)
    assert strict.returncode == 4


def test_amalgams_triangle_two_classes():
    proc, r = run_json(["amalgams", "-"], TRIANGLE_COX)
    assert proc.returncode == 0
    assert r["cycle_rank"] == 1
    assert r["num_amalgams"] == 2
    assert r["class_count"] == 2
    assert r["classes"] == [[[]], [[1]]]
    assert r["completion"] is None  # affine triangle: no global group
    by_name = {c["name"]: c for c in r["checks"]}
    assert by_name["class_count_is_2_pow_cycle_rank"]["status"] == "pass"
    assert by_name["cycle_rank_matches_h1"]["status"] == "pass"
    assert by_name["completion_embeds_amalgam"]["status"] == "skip"


def test_amalgams_input_validation():
    assert run(["amalgams", "-"], TRIANGLE_GRAPH).returncode == 4
    disconnected = "coxeter v1\nrank 4\nedge 1 2 3\nedge 3 4 3\n"
    assert run(["amalgams", "-"], disconnected).returncode == 4
    infinite = "coxeter v1\nrank 2\nedge 1 2 inf\n"
    assert run(["amalgams", "-"], infinite).returncode == 4


def test_verify_graph_runs_cohomology_only():
    proc, r = run_json(["verify", "-"], TRIANGLE_GRAPH)
    assert proc.returncode == 0
    names = {c["name"] for c in r["checks"]}
    assert "coboundary_composition_zero" in names
    assert "standard_amalgam_valid" not in names


def test_verify_a2_full_pipeline():
    proc, r = run_json(["verify", "-"], A2)
    assert proc.returncode == 0
    names = [c["name"] for c in r["checks"]]
    for expected in (
        "coboundary_composition_zero",
        "coefficient_groups_match_stabilizers",
        "standard_amalgam_valid",
        "completion_embeds_amalgam",
        "order_matches_classification",
        "c1",
        "m1",
        "aut_of_doubled_dihedral",
    ):
        assert expected in names
    assert all(c["status"] == "pass" for c in r["checks"])
    assert r["amalgams"]["completion"] == {"loop_order": 12}
    assert r["cohomology"]["dims"] == {"z1": 0, "b1": 0, "h1": 0}


def test_verify_nonspherical_triangle_skips_global_checks():
    proc, r = run_json(["verify", "-"], TRIANGLE_COX)
    assert proc.returncode == 0
    by_name = {c["name"]: c for c in r["checks"]}
    assert by_name["group_enumeration"]["status"] == "skip"
    assert "not spherical" in by_name["group_enumeration"]["note"]
    assert by_name["class_count_is_2_pow_cycle_rank"]["status"] == "pass"
    assert r["ok"] is True


def test_verify_table_runs_theorem_block_at_desk_scale():
    proc, r = run_json(["verify", "-"], KLEIN_TABLE)
    assert proc.returncode == 0
    names = {c["name"] for c in r["checks"]}
    assert "aut_order_is_general_linear" in names
    assert r["ok"] is True


def test_json_reports_are_byte_identical_across_runs():
    for args, text in (
        (["group", "-"], A2),
        (["verify", "-"], TRIANGLE_COX),
        (["amalgams", "-"], TRIANGLE_COX),
        (["cohomology", "-"], TRIANGLE_GRAPH),
    ):
        first = run(list(args) + ["--json"], text)
        second = run(list(args) + ["--json"], text)
        assert first.returncode == second.returncode
        assert first.stdout == second.stdout
        assert first.stdout  # non-empty


def test_file_input_matches_stdin(tmp_path):
    p = tmp_path / "a2.cox"
    p.write_text(A2, encoding="utf-8")
    from_file, r_file = run_json(["group", str(p)])
    from_stdin, r_stdin = run_json(["group", "-"], A2)
    assert from_file.returncode == from_stdin.returncode == 0
    # identical up to the echoed input path
    assert r_file["input"] == str(p) and r_stdin["input"] == "-"
    assert r_file["input_sha256"] == r_stdin["input_sha256"]
    for k in ("group_order", "element_orders", "checks", "ok"):
        assert r_file[k] == r_stdin[k]
