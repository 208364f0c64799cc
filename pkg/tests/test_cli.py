import json

import pytest

from fermirep import liealg, schwinger
from fermirep.cli import matfile
from fermirep.cli.main import (
    EXIT_CHECK_FAILED,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    build_variant,
    main,
    representation_report,
)

LAMBDA_H4 = "(adag(1)*a(3) + adag(3)*a(1)) * (1 - 2*N(2))"


def test_build_un_nonstandard(tmp_path):
    out = tmp_path / "nssfr3"
    assert main(["build", "un-nonstandard", "--n", "3", "--out", str(out)]) == EXIT_OK
    manifest = matfile.read_manifest(out / "manifest.json")
    assert manifest["variant"] == "nssfr"
    assert len(manifest["generators"]) == 8
    for item in manifest["generators"]:
        op, meta = matfile.read_operator(out / item["file"])
        assert op.dim == 8
        assert meta["label"] == item["label"]


def test_build_ucnm_four_two(tmp_path):
    out = tmp_path / "ucnm42"
    assert main(
        ["build", "ucnm", "--n", "4", "--m", "2", "--out", str(out)]
    ) == EXIT_OK
    manifest = matfile.read_manifest(out / "manifest.json")
    assert len(manifest["generators"]) == 35
    op, _ = matfile.read_operator(out / "generator_001.json")
    assert op.dim == 16


def test_build_rejects_bad_sector(tmp_path):
    out = tmp_path / "bad"
    assert main(
        ["build", "ucnm", "--n", "4", "--m", "0", "--out", str(out)]
    ) == EXIT_USAGE
    assert main(["build", "ucnm", "--n", "4", "--out", str(out)]) == EXIT_USAGE


def test_build_unknown_group():
    assert main(["build", "nonsense", "--n", "3", "--out", "x"]) == EXIT_USAGE


def test_build_io_error(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("just a file")
    rc = main(
        ["build", "un-standard", "--n", "2", "--out", str(blocker / "sub")]
    )
    assert rc == EXIT_IO


def test_build_mixed(tmp_path):
    out = tmp_path / "mixed"
    assert main(
        ["build", "mixed", "--n", "3", "--m", "1", "--out", str(out)]
    ) == EXIT_OK
    manifest = matfile.read_manifest(out / "manifest.json")
    assert manifest["xi"] == [1, 1]


def test_verify_suite_exit_codes(tmp_path):
    report = tmp_path / "report.txt"
    rc = main(
        ["verify", "--n-max", "4", "--report", str(report), "--format", "text"]
    )
    assert rc == EXIT_OK
    assert "overall: PASS" in report.read_text()
    assert main(["verify", "--n-max", "0"]) == EXIT_USAGE
    assert main(["verify"]) == EXIT_USAGE


def test_verify_capacity(monkeypatch):
    from fermirep import fock

    monkeypatch.setenv(fock.CAP_ENV_VAR, "2")
    assert main(["verify", "--n-max", "3"]) == EXIT_USAGE


def test_verify_from_files_matches_memory(tmp_path):
    out = tmp_path / "nssfr3"
    assert main(["build", "un-nonstandard", "--n", "3", "--out", str(out)]) == EXIT_OK
    report_path = tmp_path / "report.json"
    rc = main(
        [
            "verify",
            "--from",
            str(out),
            "--report",
            str(report_path),
            "--format",
            "json",
        ]
    )
    assert rc == EXIT_OK
    payload = json.loads(report_path.read_text())
    assert payload["overall"] is True

    rep, gens, _family = build_variant("un-nonstandard", 3, None, None)
    mem = representation_report(rep, gens, 1e-10)
    file_sig = tuple(
        (c["name"], c["passed"], c["residual"]) for c in payload["checks"]
    )
    assert file_sig == mem.signature()


def test_verify_from_corrupted_file(tmp_path):
    out = tmp_path / "std3"
    assert main(["build", "un-standard", "--n", "3", "--out", str(out)]) == EXIT_OK
    target = out / "generator_001.json"
    payload = json.loads(target.read_text())
    payload["entries"][0]["re"] += 0.5
    target.write_text(json.dumps(payload))
    assert main(["verify", "--from", str(out)]) == EXIT_CHECK_FAILED


def test_table_selective():
    assert main(["table", "selective", "--n", "4", "--m", "2"]) == EXIT_OK
    assert main(["table", "selective", "--n", "4"]) == EXIT_USAGE


def test_table_selective_output(capsys):
    main(["table", "selective", "--n", "4", "--m", "2"])
    assert capsys.readouterr().out.strip() == "-x^2 + 4x - 3"
    main(["table", "selective", "--n", "3", "--m", "1"])
    assert capsys.readouterr().out.strip() == "-x + 2"


def test_table_structure_output(capsys):
    assert main(["table", "structure", "--n", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "f[1,2,3] = 1" in out


def test_eval_prints_matrix(capsys):
    assert main(["eval", "adag(1)*a(2) + adag(2)*a(1)", "--n", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert len(out.strip().splitlines()) == 4


def test_eval_writes_file(tmp_path):
    target = tmp_path / "op.json"
    assert main(["eval", "N(1)", "--n", "2", "--out", str(target)]) == EXIT_OK
    op, meta = matfile.read_operator(target)
    assert meta["expression"] == "N(1)"
    assert op.entries() == {(1, 1): 1 + 0j, (3, 3): 1 + 0j}


def test_eval_check_against_built_generator(tmp_path):
    out = tmp_path / "nssfr3"
    assert main(["build", "un-nonstandard", "--n", "3", "--out", str(out)]) == EXIT_OK
    gen4 = out / "generator_004.json"
    assert main(["eval", LAMBDA_H4, "--n", "3", "--check", str(gen4)]) == EXIT_OK
    # a different generator must not match
    gen5 = out / "generator_005.json"
    assert main(
        ["eval", LAMBDA_H4, "--n", "3", "--check", str(gen5)]
    ) == EXIT_CHECK_FAILED


def test_eval_usage_errors():
    assert main(["eval", "a(5)", "--n", "3"]) == EXIT_USAGE
    assert main(["eval", "adag(1)) + a(2)", "--n", "3"]) == EXIT_USAGE


def test_round_trip_operator_payload():
    rep = schwinger.standard_rep(liealg.gell_mann(), 3)
    payload = matfile.operator_to_payload(rep[1], {"label": "lambda_2"})
    op, meta = matfile.payload_to_operator(payload)
    assert op == rep[1]
    assert meta["label"] == "lambda_2"
    rows = [(e["row"], e["col"]) for e in payload["entries"]]
    assert rows == sorted(rows)


def test_payload_validation():
    with pytest.raises(ValueError):
        matfile.payload_to_operator({"dim": 3, "modes": 1, "entries": []})
    with pytest.raises(ValueError):
        matfile.payload_to_operator(
            {
                "dim": 2,
                "modes": 1,
                "entries": [
                    {"row": 0, "col": 1, "re": 1.0, "im": 0.0},
                    {"row": 0, "col": 1, "re": 2.0, "im": 0.0},
                ],
            }
        )
    with pytest.raises(ValueError):
        matfile.payload_to_operator(
            {"dim": 2, "modes": 1, "entries": [{"row": 0, "col": 5, "re": 1.0, "im": 0.0}]}
        )
