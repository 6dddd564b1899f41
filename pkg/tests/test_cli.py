import json
import subprocess
import sys

import pytest

from bgraph import cli


def run(capsys, *argv):
    code = cli.main(["--threads", "1", *argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_s3(capsys):
    code, out, _ = run(capsys, "analyze", "--group", "S:3")
    d = json.loads(out)
    assert code == 0
    assert d["schema"] == 1 and d["edges"] == 36 and d["order"] == 6
    assert d["stars"] == [1, 3, 3, 3, 8, 18]
    assert d["params"]["diameter"] == "inf" and d["params"]["girth"] == 0
    assert d["probabilities"]["phi2"] == "1/2"
    assert sum(s["degree"] for s in d["subgroups"]) == 36


def test_analyze_trivial(capsys):
    _, out, _ = run(capsys, "analyze", "--group", "Z:1")
    d = json.loads(out)
    assert d["stars"] == [1] and d["params"]["diameter"] == 1


def test_analyze_with_gen_graph(capsys):
    _, out, _ = run(capsys, "analyze", "--group", "D:12", "--with-gen-graph")
    d = json.loads(out)
    assert len(d["subgroups"]) == 16 and len(d["gen_graph"]) == 16
    for s, g in zip(d["subgroups"], d["gen_graph"]):
        assert s["degree"] == 2 * g["edge_count"] + g["diagonal_generators"]


def test_analyze_reports_discrepancies(capsys):
    _, out, _ = run(capsys, "analyze", "--group", "X(A:4,Z:2)")
    d = json.loads(out)
    assert d["two_generated_discrepancies"] and "domatic_number" not in d["params"]


def test_deterministic_and_thread_independent(capsys):
    outs = []
    for threads in ("1", "1", "4"):
        cli.main(["--threads", threads, "analyze", "--group", "S:5"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] == outs[2]


def test_flags_after_subcommand(capsys, tmp_path):
    out = tmp_path / "r.json"
    code = cli.main(["analyze", "--group", "Q:8", "--out", str(out), "--threads", "1"])
    assert code == 0 and json.loads(out.read_text())["edges"] == 64


@pytest.mark.parametrize(
    "argv,code",
    [
        (["analyze", "--group", "Q:7"], 2),
        (["analyze", "--group", "oops"], 2),
        (["--cap", "50", "analyze", "--group", "A:5"], 3),
        (["verify", "--family", "Z2p2", "--primes", "2..2"], 2),
        (["verify", "--family", "Q4p2", "--primes", "3..3"], 4),
        (["dot", "--group", "S:5"], 5),
        (["--cap", "90", "verify", "--family", "D2p2", "--primes", "7..7"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert cli.main(["--threads", "1", *argv]) == code
    assert capsys.readouterr().err.startswith("bgraph:") or code == 4


def test_verify_lines(capsys):
    code, out, _ = run(capsys, "verify", "--family", "Zp", "--primes", "2..13")
    certs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert [c["prime"] for c in certs] == [2, 3, 5, 7, 11, 13]
    assert all(c["verdict"] == "pass" and c["computed"] == [1, c["prime"] ** 2 - 1] for c in certs)


def test_verify_records_matching_reading(capsys):
    code, out, _ = run(capsys, "verify", "--family", "Q4p2", "--primes", "2..3")
    certs = [json.loads(line) for line in out.splitlines()]
    assert code == 4
    assert certs[0]["verdict"] == "pass"
    assert certs[1]["verdict"] == "fail" and certs[1]["matched_readings"] == ["corrected"]


def test_table1_csv(capsys):
    code, out, err = run(capsys, "table1")
    lines = out.splitlines()
    assert lines[0] == "group,|G|,LC,LA,LN,LS,edges,pr_cyc,pr,pr_nil,pr_sol,phi2"
    assert lines[7] == "S4,24,17,21,24,30,576,1/6,5/24,1/3,1/1,3/8"
    assert lines[4] == "D10,10,7,7,7,8,100,2/5,2/5,2/5,1/1,3/5"
    # the one reference cell that brute force contradicts
    assert code == 4 and "D12 phi2" in err


def test_dot_trivial(capsys):
    _, out, _ = run(capsys, "dot", "--group", "Z:1")
    assert out.count("--") == 1 and out.count("[label=") == 2


@pytest.mark.parametrize("spec,counts", [("S:3", [1, 3, 3, 3, 8, 18]), ("D:8", [1, 3, 3, 3, 3, 3, 6, 6, 12, 24])])
def test_dot_collapsed(capsys, spec, counts):
    _, out, _ = run(capsys, "dot", "--group", spec, "--mode", "collapsed")
    leaves = sorted(int(part.split("leaves=")[1].split("]")[0]) for part in out.splitlines() if "leaves=" in part)
    assert leaves == counts and "--" not in out


def test_dot_full_labels(capsys):
    _, out, _ = run(capsys, "dot", "--group", "S:3", "--mode", "full")
    assert out.count(" -- ") == 36
    assert '"H5|6"' in out and '"((1),(1))"' in out


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "bgraph.cli", "--threads", "1", "analyze", "--group", "Z:2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["stars"] == [1, 3]
