import json
import random
from pathlib import Path

import pytest
from hypothesis import given

from strategies import seeds
from trilie import formats
from trilie.exactlin import Matrix
from trilie.fixtures import dim3, rand_matrix, rand_two_cochain, rand_vector
from trilie.formats import FormatError
from trilie.nsnr import ns_from_nijenhuis
from trilie.repcoh import adjoint
from trilie.threelie import ThreeLieAlgebra
from trilie.trbo import trbo_from_inverse, verify_trbo

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def reparse(obj, kind):
    doc = json.loads(formats.dumps(obj))
    loader = {"3lie": formats.algebra_from, "rep": formats.representation_from,
              "cochain": formats.cochain_from, "ns": formats.ns_from,
              "matrix": formats.matrix_from}[kind]
    return loader(doc)


@given(seeds)
def test_algebra_round_trip(seed):
    rng = random.Random(seed)
    structure = {(0, 1, 2): rand_vector(rng, 4), (1, 2, 3): rand_vector(rng, 4)}
    A = ThreeLieAlgebra(4, structure, name="random")
    assert reparse(A, "3lie") == A


@given(seeds)
def test_cochain_and_matrix_round_trip(seed):
    rng = random.Random(seed)
    phi = rand_two_cochain(rng, 4, 2)
    assert reparse(phi, "cochain") == phi
    M = rand_matrix(rng, 3, 2)
    assert reparse(M, "matrix") == M


def test_representation_round_trip():
    rep = adjoint(dim3())
    back = reparse(rep, "rep")
    assert back == rep


@given(seeds)
def test_ns_round_trip(seed):
    ns = ns_from_nijenhuis(dim3(), rand_matrix(random.Random(seed), 3, 3))
    assert reparse(ns, "ns") == ns


def test_trbo_round_trip(tmp_path):
    T = verify_trbo(trbo_from_inverse(adjoint(dim3()), Matrix.from_rows([[1, 2, 0], [0, 1, 0], [3, 0, 1]])))
    path = tmp_path / "op.trbo"
    formats.write(T, path)
    A, rep, phi, M = formats.load(path, "trbo")
    assert (A, rep, phi, M) == (T.context.algebra, T.context.rep, T.context.phi, T.T)


def test_fixture_files_load():
    assert formats.load(FIXTURES / "dim3.alg", "3lie") == dim3()
    assert formats.load(FIXTURES / "dim3_adjoint.rep", "rep") == adjoint(dim3())
    parts, S1, S2, X = formats.load_deformation(FIXTURES / "heis4.deform")
    assert S2 is not None and X is not None


def _write(tmp_path, doc, name="bad.alg"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


@pytest.mark.parametrize("doc,where", [
    ({"type": "3lie", "dim": 3, "brackets": {"1,2,3": [1, "0.5", 0]}}, "$.brackets['1,2,3'][1]"),
    ({"type": "3lie", "dim": 3, "brackets": {"2,1,3": [1, 0, 0]}}, "$.brackets['2,1,3']"),
    ({"type": "3lie", "dim": 3, "brackets": {"1,2,4": [1, 0, 0]}}, "$.brackets['1,2,4']"),
    ({"type": "3lie", "dim": 3, "brackets": {"1,2,3": [1, 0]}}, "$.brackets['1,2,3']"),
    ({"type": "3lie", "brackets": {}}, "$"),
    ({"type": "rep", "dim": 3}, "$"),
    ({"type": "3lie", "dim": 3, "brackets": {"1,2,3": [True, 0, 0]}}, "$.brackets['1,2,3'][0]"),
])
def test_errors_carry_location(tmp_path, doc, where):
    p = _write(tmp_path, doc)
    with pytest.raises(FormatError) as exc:
        formats.load(p, "3lie")
    assert str(p) in str(exc.value)
    if doc.get("type") == "3lie":
        assert exc.value.path == where


def test_invalid_json_reports_line(tmp_path):
    p = _write(tmp_path, '{"type": "3lie",\n "dim": 3,,}')
    with pytest.raises(FormatError, match="line 2"):
        formats.load(p, "3lie")


def test_missing_file():
    with pytest.raises(FormatError, match="cannot read"):
        formats.load("does/not/exist.alg", "3lie")


def test_rationals():
    ctx = formats._Ctx("x")
    assert formats.parse_rational("-3/6", ctx, "$") == formats.parse_rational("-1/2", ctx, "$")
    for bad in ("1e3", "1.5", "a/b", "1/0", None):
        with pytest.raises(FormatError):
            formats.parse_rational(bad, ctx, "$")
