"""Subcomandos de la CLI, códigos de salida y registro de ejecuciones."""

import json

import pytest

import main

# (peso, pd Δ, pd L) del bloque singular {s3} de A3
SINGULAR_S3_PD = [
    ("$(2100)$", "0", "6"), ("$(1200)$", "1", "5"), ("$(2010)$", "1", "6"),
    ("$(1020)$", "2", "5"), ("$(0210)$", "2", "6"), ("$(2001)$", "1", "5"),
    ("$(1002)$", "2", "4"), ("$(0120)$", "3", "5"), ("$(0201)$", "2", "5"),
    ("$(0102)$", "3", "4"), ("$(0021)$", "2", "4"), ("$(0012)$", "3", "3"),
]


@pytest.fixture
def cli(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("KLO_RUN_LOG", str(tmp_path / "runs"))
    monkeypatch.setenv("KLO_CACHE_DIR", str(tmp_path / "cache"))

    def invoke(*argv):
        status = main.run(list(argv))
        return status, capsys.readouterr().out
    return invoke


def test_group_summary(cli):
    status, out = cli("group", "--type", "A", "--rank", "1")
    assert status == 0
    data = json.loads(out)
    assert data["order"] == 2
    assert data["w0_word"] == "s1"


def test_group_queries(cli):
    status, out = cli("group", "--type", "A", "--rank", "3", "--element", "s1s2",
                      "--leq", "s1", "s2s1")
    assert status == 0
    data = json.loads(out)
    assert data["element"]["length"] == 2
    assert data["bruhat_leq"]["holds"] is True


def test_block_latex(cli):
    status, out = cli("block", "--type", "A", "--rank", "3", "--singular", "3",
                      "--format", "latex")
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == r"\begin{tabular}{c|c|c||c|c|c}"
    assert lines[2] == r"\hline"
    assert lines[-1] == r"\end{tabular}"
    body = lines[3:-1]
    assert len(body) == 6
    cells = []
    for line in body:
        assert line.endswith(r" \\")
        parts = line[:-3].split(" & ")
        assert len(parts) == 6
        cells += [tuple(parts[:3]), tuple(parts[3:])]
    assert sorted(cells) == sorted(SINGULAR_S3_PD)


def test_block_json(cli):
    status, out = cli("block", "--type", "A", "--rank", "3", "--singular", "1,3")
    assert status == 0
    data = json.loads(out)
    assert data["global_dimension"]["value"] == 4
    assert len(data["elements"]) == 6


def test_quiver_dot_and_segments(cli):
    status, out = cli("quiver", "--type", "A", "--rank", "3", "--singular", "3", "--format", "dot")
    assert status == 0
    assert out.count(" -- ") == 21
    status, out = cli("quiver", "--type", "A", "--rank", "3", "--singular", "3", "--segments")
    data = json.loads(out)
    assert data["saturated_segments"]
    assert data["guichardet"]["saturated_segments"] == len(data["saturated_segments"])


def test_monotone(cli):
    status, out = cli("monotone", "--type", "A", "--rank", "3", "--singular", "3")
    assert status == 0
    data = json.loads(out)
    assert data["classification"] == "almost"
    assert data["witness"]["gap"] == 1
    assert data["implications"]["violations"] == []


def test_verify_and_tables(cli):
    status, out = cli("verify", "--type", "A", "--rank", "2", "--singular", "1")
    assert status == 0
    assert json.loads(out)["summary"]["violations"] == 0
    status, out = cli("kl", "--type", "A", "--rank", "3", "--format", "csv")
    assert status == 0
    assert out.startswith("x,y,P,mu\n")
    assert "1 + q" in out
    for command in ("cells", "survey"):
        status, out = cli(command, "--type", "A", "--rank", "2", "--format", "csv")
        assert status == 0
        assert out.count("\n") > 1
    status, out = cli("klv", "--type", "A", "--rank", "3", "--singular", "3", "--format", "table")
    assert status == 0
    assert "0012" in out


def test_structured_errors(cli):
    status, out = cli("block", "--type", "A", "--rank", "3", "--singular", "1,2,3",
                      "--parabolic", "1")
    assert status == 1
    assert json.loads(out)["error"] == "ZeroBlock"

    status, out = cli("group", "--type", "A", "--rank", "8")
    assert status == 1
    assert json.loads(out)["error"] == "RankTooLarge"

    status, out = cli("quiver", "--type", "A", "--rank", "3", "--singular", "1", "--parabolic", "3")
    assert status == 1
    assert json.loads(out)["error"] == "UnsupportedBlock"


def test_usage_errors(cli):
    assert cli("group", "--type", "E", "--rank", "6")[0] == 2
    assert cli("group", "--type", "A")[0] == 2
    assert cli("block", "--type", "A", "--rank", "3", "--singular", "x")[0] == 2
    assert cli("block", "--type", "A", "--rank", "3", "--singular", "7")[0] == 2
    assert cli("group", "--type", "A", "--rank", "2", "--element", "zz")[0] == 2
    assert cli("quiver", "--type", "A", "--rank", "2", "--format", "dot", "--singular", "1")[0] == 0
    assert cli("block", "--type", "A", "--rank", "2", "--format", "dot")[0] == 2


def test_run_log_and_cache(cli, tmp_path):
    cli("group", "--type", "A", "--rank", "1")
    cli("kl", "--type", "A", "--rank", "2")
    cli("group", "--type", "E", "--rank", "6")
    lines = (tmp_path / "runs" / "runs.jsonl").read_text(encoding="utf-8").splitlines()
    assert [json.loads(line)["command"] for line in lines] == ["group", "kl"]
    assert (tmp_path / "cache" / "A2.klcache").exists()


def test_jobs_flag_scope():
    parser = main.build_parser()
    args = parser.parse_args(["kl", "--type", "A", "--rank", "2", "--jobs", "3"])
    assert args.jobs == 3
    commands = next(a for a in parser._actions if a.dest == "command")
    kl_parser = commands.choices["kl"]
    jobs = next(a for a in kl_parser._actions if a.dest == "jobs")
    assert "tabla KL" in jobs.help
    assert "secuenciales" in jobs.help
