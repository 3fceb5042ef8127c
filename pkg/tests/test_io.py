import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigmapf.exceptions import ParseError
from sigmapf.fixtures import STRONG_BITS, WEAK_BITS, graph_example, GRAPH_EXAMPLE_BITS
from sigmapf.io import digest, load_tensor, tensor_from_bits, tensor_from_coo, tensor_to_bits, tensor_to_coo
from sigmapf.tensor import DenseTensor


def test_bits_list_the_first_index_fastest():
    T = tensor_from_bits("1" + "0" * 26)
    assert T.array[0, 0, 0] == 1
    T = tensor_from_bits("01" + "0" * 25)
    assert T.array[1, 0, 0] == 1
    T = tensor_from_bits("0" * 3 + "1" + "0" * 23)
    assert T.array[0, 1, 0] == 1


def test_graph_example_string():
    assert tensor_from_bits(GRAPH_EXAMPLE_BITS) == graph_example()


@pytest.mark.parametrize("bits", list(WEAK_BITS.values()) + list(STRONG_BITS.values()))
def test_fixture_strings_round_trip(bits):
    assert tensor_to_bits(tensor_from_bits(bits)) == bits
    assert tensor_to_bits(load_tensor(bits, "binary27")) == bits


@pytest.mark.parametrize("text", ["", "0101", "012" + "0" * 24, "0" * 26])
def test_bad_bit_strings(text):
    with pytest.raises(ParseError):
        load_tensor(text, "binary27")


def test_coo_round_trip(rng):
    arr = rng.random((2, 3, 2)) * (rng.random((2, 3, 2)) < 0.5)
    T = DenseTensor(arr)
    obj = json.loads(json.dumps(tensor_to_coo(T)))
    assert tensor_from_coo(obj) == T
    assert obj["entries"][0]["idx"][0] >= 1


@pytest.mark.parametrize(
    "obj",
    [
        {"shape": [2, 2]},
        {"shape": [2], "entries": []},
        {"shape": [2, 2], "entries": [{"idx": [3, 1], "val": 1}]},
        {"shape": [2, 2], "entries": [{"idx": [1, 1], "val": 1}, {"idx": [1, 1], "val": 2}]},
        {"shape": [2, 2], "entries": [{"idx": [1, 1], "val": -1}]},
        {"shape": [2, 2], "entries": [{"idx": [1], "val": 1}]},
    ],
)
def test_bad_coo(obj):
    with pytest.raises(ParseError):
        tensor_from_coo(obj)


def test_unknown_format_and_bad_json():
    with pytest.raises(ParseError):
        load_tensor("{}", "npy")
    with pytest.raises(ParseError):
        load_tensor("{", "coo")


def test_digest_is_deterministic_and_content_sensitive():
    a = digest(graph_example())
    assert a == digest(tensor_from_bits(GRAPH_EXAMPLE_BITS))
    assert a["nnz"] == 5 and a["shape"] == [3, 3, 3]
    other = np.zeros((3, 3, 3))
    other[0, 0, 0] = 1
    assert digest(DenseTensor(other))["sha256"] != a["sha256"]


@given(st.text(alphabet="01", min_size=8, max_size=8))
def test_explicit_shape(bits):
    T = tensor_from_bits(bits, (2, 2, 2))
    assert tensor_to_bits(T) == bits
