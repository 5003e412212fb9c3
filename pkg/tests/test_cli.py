import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from trilie import cli, formats

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run([str(a) for a in argv], out=out, err=err)
    doc = json.loads(out.getvalue()) if out.getvalue().strip() else None
    return code, doc, err.getvalue()


def test_check_fi_passes_on_dim3():
    code, doc, err = run("check", "fi", FIX / "dim3.alg")
    assert code == 0
    assert doc["outcome"] == "pass"
    assert "PASS" in err


def test_check_fi_fails_on_broken_fixture():
    code, doc, _ = run("check", "fi", FIX / "broken.alg")
    assert code == 1
    assert doc["outcome"] == "fail"
    v = doc["violations"][0]
    assert set(v) >= {"tuple", "lhs", "rhs"}
    # every violation sits on one multiset of basis indices
    assert len({tuple(sorted(x["tuple"].strip("()").split(","))) for x in doc["violations"]}) == 1


def test_missing_file_exit_2():
    code, doc, err = run("trbo", "check", "missing.file")
    assert code == 2
    assert doc["outcome"] == "error"
    assert "missing.file" in err


def test_malformed_file_exit_2_with_location(tmp_path):
    p = tmp_path / "bad.alg"
    p.write_text(json.dumps({"type": "3lie", "dim": 3, "brackets": {"1,2,3": ["x", 0, 0]}}))
    code, doc, err = run("check", "fi", p)
    assert code == 2
    assert "$.brackets['1,2,3'][0]" in doc["error"]


def test_usage_errors_exit_2():
    assert run("check", "nosuch", FIX / "dim3.alg")[0] == 2
    assert run("check", "derivation", FIX / "dim3.alg")[0] == 2


@pytest.mark.parametrize("argv", [
    ("check", "rep", FIX / "dim3_adjoint.rep"),
    ("check", "cocycle", FIX / "dim3_adjoint.rep", FIX / "dim3_minus_bracket.coc"),
    ("check", "derivation", FIX / "dim3.alg", FIX / "dim3_derivation.mat"),
    ("check", "nijenhuis", FIX / "dim3.alg", FIX / "dim3_nijenhuis.mat"),
    ("check", "reynolds", FIX / "dim3.alg", FIX / "dim3_reynolds.mat"),
    ("check", "ns", FIX / "dim3_ns.ns"),
    ("trbo", "check", FIX / "dim3_inverse.trbo"),
    ("trbo", "check", FIX / "dim3_reynolds.trbo"),
    ("trbo", "induce", FIX / "dim3_inverse.trbo"),
    ("trbo", "cohomology", FIX / "dim3_inverse.trbo", "--nmax", "2"),
    ("trbo", "gauge", FIX / "dim3_inverse.trbo", FIX / "dim3_gauge.mat"),
    ("trbo", "deform", "check", FIX / "heis4.deform"),
    ("trbo", "deform", "equiv", FIX / "heis4.deform"),
    ("cohomology", FIX / "dim3_adjoint.rep", "--nmax", "2"),
    ("family", "laurent", "reynolds", "--range", "-3..4"),
    ("family", "omega", "reynolds", "--range", "-1..1"),
    ("property", "dd", "--seed", "4", "--trials", "2"),
])
def test_passing_commands(argv):
    code, doc, _ = run(*argv)
    assert code == 0, doc
    assert doc["outcome"] == "pass"


def test_reynolds_check_fails_for_identity(tmp_path):
    p = tmp_path / "id.mat"
    p.write_text(json.dumps({"matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    assert run("check", "reynolds", FIX / "dim3.alg", p)[0] == 1


def test_cohomology_table():
    _, doc, _ = run("cohomology", FIX / "dim3_adjoint.rep", "--nmax", "2")
    assert [(r["degree"], r["z"], r["b"], r["h"]) for r in doc["table"]] == [(1, 6, 0, 6), (2, 6, 3, 3)]


@pytest.mark.parametrize("what,kind", [
    ("deform-n", "3lie"), ("reynolds-bracket", "3lie"), ("ns-from-nijenhuis", "ns"),
    ("ns-from-reynolds", "ns"), ("trbo-from-reynolds", "trbo"),
])
def test_construct_and_emit(tmp_path, what, kind):
    mat = FIX / ("dim3_nijenhuis.mat" if "nijenhuis" in what or what == "deform-n"
                 else "dim3_reynolds.mat")
    out = tmp_path / "out.json"
    code, doc, _ = run("construct", what, FIX / "dim3.alg", mat, "--emit", out)
    assert code == 0
    assert doc["result"]["type"] == kind
    assert json.loads(out.read_text()) == doc["result"]


def test_semidirect_and_ns_from_trbo(tmp_path):
    code, doc, _ = run("construct", "semidirect", FIX / "dim3_adjoint.rep",
                       FIX / "dim3_minus_bracket.coc")
    assert code == 0 and doc["result"]["dim"] == 6
    assert doc["fundamental_identity"]["outcome"] == "pass"
    out = tmp_path / "ns.json"
    assert run("construct", "ns-from-trbo", FIX / "dim3_inverse.trbo", "--emit", out)[0] == 0
    assert run("check", "ns", out)[0] == 0


def test_window_emit_feeds_check_fi(tmp_path):
    out = tmp_path / "w.alg"
    code, doc, _ = run("family", "laurent", "window", "--lo", "1", "--hi", "7", "--emit", out)
    assert code == 0 and doc["quotient"]
    assert run("check", "fi", out)[0] == 0
    code, doc, _ = run("family", "omega", "window", "--m", "0..2", "--a", "0..1")
    assert code == 0


def test_property_seed_is_deterministic():
    a = run("property", "nijenhuis", "--seed", "9", "--trials", "3")[1]
    b = run("property", "nijenhuis", "--seed", "9", "--trials", "3")[1]
    assert a["stats"]["tuples_checked"] == b["stats"]["tuples_checked"]


def test_bad_range_exit_2():
    assert run("family", "laurent", "reynolds", "--range", "1-5")[0] == 2


def test_ranges_with_zero_are_filtered():
    # ranges containing 0 are filtered to defined triples
    assert run("family", "laurent", "reynolds", "--range", "-1..2")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trilie", "check", "fi", str(FIX / "dim3.alg")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outcome"] == "pass"


def test_emitted_fixture_round_trips(tmp_path):
    out = tmp_path / "a.alg"
    run("construct", "deform-n", FIX / "dim3.alg", FIX / "dim3_nijenhuis.mat", "--emit", out)
    A = formats.load(out, "3lie")
    assert formats.algebra_to(A) == json.loads(out.read_text())
