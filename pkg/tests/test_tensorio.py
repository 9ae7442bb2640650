"""File formats: round trips, validation, provenance checksums."""

import json

import numpy as np
import pytest

from ptensor import ParseError, Tensor, identity_tensor
from ptensor.classes import cauchy_tensor, parse_hypergraph
from ptensor.tensorio import (
    dumps_canonical,
    format_float,
    parse_tensor,
    parse_vector,
    read_tensor,
    tensor_to_json_dict,
    write_tensor,
    write_vector,
    read_vector,
)


def test_format_float_round_trips():
    for v in (1.0, -0.5, 1 / 3, 1e-300, 2.2250738585072014e-308, 0.1, 3.141592653589793):
        assert float(format_float(v)) == v


def test_dumps_canonical_deterministic():
    obj = {"b": [1.0, 0.5, None], "a": {"x": True, "y": "s"}}
    assert dumps_canonical(obj) == dumps_canonical(obj)
    assert dumps_canonical(obj) == '{"b":[1,0.5,null],"a":{"x":true,"y":"s"}}'


def test_dense_round_trip_bit_exact(tmp_path, rng):
    data = rng.uniform(-1, 1, size=(3, 3, 3))
    data[0, 0, 0] = 1e-17
    data[1, 1, 1] = 1 / 3
    A = Tensor(data)
    path = tmp_path / "t.json"
    write_tensor(A, path)
    B = read_tensor(path)
    assert np.array_equal(A.data, B.data)
    assert B.symmetric == A.symmetric


def test_coo_round_trip_symmetric(tmp_path, ref_tensor):
    path = tmp_path / "ref.json"
    write_tensor(ref_tensor, path, layout="coo")
    obj = json.loads(path.read_text())
    assert obj["layout"] == "coo"
    # representatives only: every listed index tuple is nondecreasing
    for item in obj["entries"]:
        idx = item[:-1]
        assert idx == sorted(idx)
    B = read_tensor(path)
    assert np.array_equal(B.data, ref_tensor.data)
    assert B.symmetric


def test_coo_omitted_entries_are_zero():
    A = parse_tensor(
        {"order": 3, "dim": 2, "layout": "coo", "symmetric": False,
         "entries": [[0, 1, 1, 2.5]]}
    )
    assert A.data[0, 1, 1] == 2.5
    assert A.data.sum() == 2.5


def test_coo_symmetric_replicates_orbit():
    A = parse_tensor(
        {"order": 3, "dim": 3, "layout": "coo", "symmetric": True,
         "entries": [[0, 1, 2, 0.5]]}
    )
    for perm in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        assert A.data[perm] == 0.5


def test_coo_duplicate_orbit_must_agree():
    base = {"order": 2, "dim": 2, "layout": "coo", "symmetric": True}
    ok = parse_tensor({**base, "entries": [[0, 1, 1.0], [1, 0, 1.0]]})
    assert ok.data[0, 1] == 1.0
    with pytest.raises(ParseError):
        parse_tensor({**base, "entries": [[0, 1, 1.0], [1, 0, 1.0 + 1e-6]]})


def test_coo_duplicate_nonsymmetric_must_agree():
    base = {"order": 2, "dim": 2, "layout": "coo", "symmetric": False}
    with pytest.raises(ParseError):
        parse_tensor({**base, "entries": [[0, 1, 1.0], [0, 1, 2.0]]})


def test_symmetric_flag_validated():
    data = np.zeros((2, 2))
    data[0, 1] = 1.0
    with pytest.raises(ParseError):
        parse_tensor({"order": 2, "dim": 2, "layout": "dense", "symmetric": True,
                      "entries": data.reshape(-1).tolist()})


@pytest.mark.parametrize(
    "obj",
    [
        {"order": 3, "dim": 2, "layout": "dense", "symmetric": False, "entries": [0.0] * 7},
        {"order": 3, "dim": 2, "layout": "bad", "symmetric": False, "entries": []},
        {"order": 1, "dim": 2, "layout": "dense", "symmetric": False, "entries": [0.0, 0.0]},
        {"order": 2, "dim": 2, "layout": "coo", "symmetric": False, "entries": [[0, 5, 1.0]]},
        {"order": 2, "dim": 2, "layout": "coo", "symmetric": False, "entries": [[0, 1.5, 1.0]]},
        {"order": 2, "dim": 2, "layout": "dense", "symmetric": False, "entries": [0.0, "x", 0.0, 0.0]},
        {"order": 2, "dim": 2, "symmetric": False, "entries": [0.0] * 4},
    ],
)
def test_malformed_tensor_objects(obj):
    with pytest.raises(ParseError):
        parse_tensor(obj)


def test_vector_round_trip(tmp_path):
    x = np.array([0.1, -2.0, 1 / 7])
    path = tmp_path / "v.json"
    write_vector(x, path)
    assert np.array_equal(read_vector(path), x)
    with pytest.raises(ParseError):
        parse_vector({"dim": 2, "entries": [1.0]})


def test_provenance_checksum_trusted(tmp_path):
    C = cauchy_tensor(np.array([1.0, 2.0, 3.0]), 3)
    assert C.provenance_trusted and C.claim("scp") is True
    path = tmp_path / "c.json"
    write_tensor(C, path)
    back = read_tensor(path)
    assert back.provenance_trusted
    assert back.claim("scp") is True


def test_provenance_corruption_breaks_trust(tmp_path):
    C = cauchy_tensor(np.array([1.0, 2.0, 3.0]), 3)
    path = tmp_path / "c.json"
    write_tensor(C, path)
    obj = json.loads(path.read_text())
    obj["entries"][0] = 0.999 * obj["entries"][0]  # hand edit an entry
    # keep the symmetric flag honest for the edited file
    obj["symmetric"] = False
    path.write_text(json.dumps(obj))
    back = read_tensor(path)
    assert back.provenance is not None
    assert not back.provenance_trusted
    assert back.claim("scp") is None


def test_unreadable_file(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        read_tensor(path)
    with pytest.raises(ParseError):
        read_tensor(tmp_path / "missing.json")


def test_hypergraph_parsing():
    G = parse_hypergraph({"n": 4, "m": 3, "edges": [[0, 1, 2], [0, 1, 3]]})
    assert G.n_vertices == 4 and G.arity == 3 and len(G.edges) == 2
    with pytest.raises(ParseError):
        parse_hypergraph({"n": 3, "m": 3, "edges": [[0, 1]]})
    with pytest.raises(ParseError):
        parse_hypergraph({"n": 3, "edges": []})


def test_identity_round_trip_via_dict(ref_tensor):
    obj = tensor_to_json_dict(identity_tensor(4, 3))
    A = parse_tensor(json.loads(dumps_canonical(obj)))
    assert np.array_equal(A.data, identity_tensor(4, 3).data)
    obj2 = tensor_to_json_dict(ref_tensor, layout="coo")
    B = parse_tensor(json.loads(dumps_canonical(obj2)))
    assert np.array_equal(B.data, ref_tensor.data)
