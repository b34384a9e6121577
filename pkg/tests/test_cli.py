"""Test code for the command line front end."""

import csv
import json

import pytest

from src.holderspectra.cli import (
    EXIT_BAD_INPUT,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    build_parser,
    main,
)
from src.holderspectra.report import read_artifact

ROUGH_SPEC = json.dumps({"kind": "rough_coupling", "alpha": 0.5})
TWO_LINES_SPEC = json.dumps(
    {"kind": "crossing_lines", "params": {"slopes": [1, -1], "offsets": [0, 0]}}
)
THREE_LINES_SPEC = json.dumps(
    {"kind": "crossing_lines", "params": {"slopes": [1, 0, -1], "mixer_seed": 3}}
)
SHIFT_SPEC = json.dumps({"kind": "shift", "params": {"base": [1, 2, 3]}})


def _run(capsys, *argv):
    """Run the CLI and return its exit code and printed summary."""
    code = main(list(argv))
    output = capsys.readouterr().out
    return code, json.loads(output) if output else None


def test_parser_requires_a_command():
    """Test the parser refuses a missing subcommand."""
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_gen(capsys, tmp_path):
    """Test gen echoes the resolved family."""
    code, summary = _run(capsys, "gen", "--spec", ROUGH_SPEC, "--out", str(tmp_path))
    assert code == EXIT_OK
    assert summary["kind"] == "rough_coupling"
    assert summary["N"] == 2
    assert summary["alpha"] == 0.5
    assert read_artifact(tmp_path / "gen_summary.json")["passed"]


def test_gen_from_file(capsys, tmp_path):
    """Test the family may be given as a JSON file."""
    path = tmp_path / "family.json"
    path.write_text(SHIFT_SPEC, encoding="utf-8")
    code, summary = _run(capsys, "gen", "--spec", str(path))
    assert code == EXIT_OK
    assert summary["N"] == 3


def test_gen_unknown_kind(capsys, tmp_path):
    """Test an unknown family kind is bad input."""
    code, _ = _run(capsys, "gen", "--spec", '{"kind": "nope"}', "--out", str(tmp_path))
    assert code == EXIT_BAD_INPUT
    summary = read_artifact(tmp_path / "gen_summary.json")
    assert not summary["passed"]
    assert "kind" in summary["error"]


@pytest.mark.parametrize("params", [[1], "ab", 5])
def test_gen_params_must_be_an_object(capsys, tmp_path, params):
    """Test non-object params are bad input naming the field."""
    spec = json.dumps({"kind": "rough_coupling", "params": params})
    code, _ = _run(capsys, "gen", "--spec", spec, "--out", str(tmp_path))
    assert code == EXIT_BAD_INPUT
    assert "params" in read_artifact(tmp_path / "gen_summary.json")["error"]


def test_track_non_finite_family(capsys, tmp_path):
    """Test a NaN entry coerced from JSON is bad input."""
    spec = json.dumps({"kind": "shift", "params": {"base": ["nan", 2, 3]}})
    code, _ = _run(
        capsys, "track", "--spec", spec, "--grid", "0:1:5", "--out", str(tmp_path)
    )
    assert code == EXIT_BAD_INPUT
    assert not read_artifact(tmp_path / "track_summary.json")["passed"]


def test_gen_seed_override(capsys):
    """Test --seed replaces the seed of a random family."""
    spec = json.dumps({"kind": "random_holder", "alpha": 0.5, "params": {"N": 2}})
    code, summary = _run(capsys, "gen", "--spec", spec, "--seed", "5")
    assert code == EXIT_OK
    assert summary["seed"] == 5


def test_track_two_lines(capsys, tmp_path):
    """Test ordered branches and one selection are written per node."""
    code, summary = _run(
        capsys,
        "track",
        "--spec",
        TWO_LINES_SPEC,
        "--grid",
        "-1:1:101",
        "--start-index",
        "1",
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_OK
    assert summary["nodes"] == 101
    assert summary["switches"] == [1]

    with (tmp_path / "branches.csv").open(encoding="utf-8") as file:
        rows = list(csv.DictReader(file))
    assert len(rows) == 3 * 101
    assert [row["t"] for row in rows if row["switched"] == "true"] == ["0.0"]
    assert len(read_artifact(tmp_path / "crossings.json")["crossings"]) == 1


def test_track_three_lines(capsys, tmp_path):
    """Test the three crossings of the mixed lines."""
    code, summary = _run(
        capsys,
        "track",
        "--spec",
        THREE_LINES_SPEC,
        "--grid",
        "-1:1:81",
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_OK
    assert summary["crossings"] == 3
    events = read_artifact(tmp_path / "crossings.json")["crossings"]
    pairs = [event["pair"] for event in events]
    assert pairs == [[1, 2], [2, 3], [1, 2]]


def test_track_refine(capsys):
    """Test --refine adds the bracket midpoints."""
    code, summary = _run(
        capsys, "track", "--spec", TWO_LINES_SPEC, "--grid", "-1:1:101", "--refine"
    )
    assert code == EXIT_OK
    assert summary["nodes"] == 103


def test_track_is_deterministic(capsys, tmp_path):
    """Test two runs write identical artifacts."""
    for name in ("first", "second"):
        _run(
            capsys,
            "track",
            "--spec",
            THREE_LINES_SPEC,
            "--grid",
            "-1:1:41",
            "--start-index",
            "2",
            "--out",
            str(tmp_path / name),
        )
    for artifact in ("branches.csv", "crossings.json"):
        assert (tmp_path / "first" / artifact).read_bytes() == (
            tmp_path / "second" / artifact
        ).read_bytes()


@pytest.mark.parametrize(
    ("argv", "artifacts"),
    [
        (
            ["certify", "--spec", ROUGH_SPEC, "--grid", "-1:1:65", "--alpha", "0.5"],
            ("certificate.json", "certify_summary.json"),
        ),
        (
            ["project", "--spec", SHIFT_SPEC, "--grid", "0:1:17"],
            ("projector_report.json", "project_summary.json"),
        ),
    ],
)
def test_certify_and_project_are_deterministic(capsys, tmp_path, argv, artifacts):
    """Test two runs of a pipeline write byte-identical artifacts."""
    for name in ("first", "second"):
        _run(capsys, *argv, "--out", str(tmp_path / name))
    for artifact in artifacts:
        assert (tmp_path / "first" / artifact).read_bytes() == (
            tmp_path / "second" / artifact
        ).read_bytes()


@pytest.mark.parametrize("grid", ["1:-1:11", "-1:1:1", "a,b", "0,0.5,0.2"])
def test_track_bad_grid(capsys, tmp_path, grid):
    """Test malformed grids are bad input."""
    code, _ = _run(
        capsys,
        "track",
        "--spec",
        TWO_LINES_SPEC,
        "--grid",
        grid,
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_BAD_INPUT
    assert not read_artifact(tmp_path / "track_summary.json")["passed"]


def test_track_out_of_domain(capsys):
    """Test grids leaving the family domain are bad input."""
    code, _ = _run(capsys, "track", "--spec", TWO_LINES_SPEC, "--grid", "0:2:5")
    assert code == EXIT_BAD_INPUT


def test_certify_rough(capsys, tmp_path):
    """Test the rough coupling is certified at its own exponent."""
    code, summary = _run(
        capsys,
        "certify",
        "--spec",
        ROUGH_SPEC,
        "--grid",
        "-1:1:257",
        "--alpha",
        "0.5",
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_OK
    assert summary["constant"] == pytest.approx(1.0)
    assert summary["transfer"]["holds"]
    assert "gronwall" not in summary

    certificate = read_artifact(tmp_path / "certificate.json")
    assert certificate["constant"] == pytest.approx(1.0)
    assert certificate["note"]


def test_certify_claimed_bound_fails(capsys, tmp_path):
    """Test a rough branch fails a Lipschitz claim."""
    code, summary = _run(
        capsys,
        "certify",
        "--spec",
        ROUGH_SPEC,
        "--grid",
        "-1:1:1025",
        "--alpha",
        "1",
        "--claimed-bound",
        "10",
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_CHECK_FAILED
    assert summary["constant"] > 10.0
    assert not summary["passed"]
    assert summary["gronwall"]["holds"] is False
    assert not read_artifact(tmp_path / "certify_summary.json")["passed"]


def test_certify_selection_with_gronwall(capsys):
    """Test a Lipschitz selection reports its growth model."""
    code, summary = _run(
        capsys,
        "certify",
        "--spec",
        TWO_LINES_SPEC,
        "--grid",
        "-1:1:101",
        "--start-index",
        "1",
        "--claimed-bound",
        "1.5",
    )
    assert code == EXIT_OK
    assert summary["constant"] == pytest.approx(1.0)
    assert summary["transfer"]["N"] == 2
    assert summary["gronwall"]["holds"]


def test_certify_bad_alpha(capsys):
    """Test exponents outside (0, 1] are bad input."""
    code, _ = _run(
        capsys, "certify", "--spec", ROUGH_SPEC, "--grid", "-1:1:11", "--alpha", "2"
    )
    assert code == EXIT_BAD_INPUT


def test_project_reports_the_exit(capsys, tmp_path):
    """Test the first node where the eigenvalue leaves the contour."""
    code, summary = _run(
        capsys,
        "project",
        "--spec",
        SHIFT_SPEC,
        "--grid",
        "0:1:33",
        "--center",
        "1",
        "--radius",
        "0.45",
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_CHECK_FAILED
    assert summary["failures"][0] == 0.46875
    assert not summary["rank_constant"]
    assert read_artifact(tmp_path / "projector_report.json")["contour"] == {
        "center": 1.0,
        "radius": 0.45,
        "nodes": 64,
    }


def test_project_default_contour(capsys):
    """Test the default contour around mu_1 at the first node."""
    code, summary = _run(capsys, "project", "--spec", SHIFT_SPEC, "--grid", "0:0.4:9")
    assert code == EXIT_OK
    assert summary["failures"] == []
    assert summary["rank_constant"]
    assert summary["max_block_error"] <= 1e-8
    assert summary["nodes"][-1]["block_eigenvalues"] == pytest.approx([1.4])


def test_report(capsys, tmp_path):
    """Test the report aggregates the command summaries."""
    _run(capsys, "gen", "--spec", ROUGH_SPEC, "--out", str(tmp_path))
    code, summary = _run(capsys, "report", "--out", str(tmp_path))
    assert code == EXIT_OK
    assert summary["commands"] == {"gen": True}

    _run(
        capsys,
        "certify",
        "--spec",
        ROUGH_SPEC,
        "--grid",
        "-1:1:65",
        "--claimed-bound",
        "1",
        "--out",
        str(tmp_path),
    )
    code, summary = _run(capsys, "report", "--out", str(tmp_path))
    assert code == EXIT_CHECK_FAILED
    assert summary["commands"] == {"gen": True, "certify": False}


def test_report_incompatible_artifact(capsys, tmp_path):
    """Test an artifact of another major version is bad input."""
    (tmp_path / "old.json").write_text(
        json.dumps({"format_version": "0.1"}), encoding="utf-8"
    )
    code, _ = _run(capsys, "report", "--out", str(tmp_path))
    assert code == EXIT_BAD_INPUT


def test_report_requires_out(capsys):
    """Test report without an output directory."""
    code, _ = _run(capsys, "report")
    assert code == EXIT_BAD_INPUT
