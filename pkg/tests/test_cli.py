import io
import json

import numpy as np
import pytest

from sigmapf.cli import main, run
from sigmapf.fixtures import STRONG_BITS, WEAK_BITS, graph_example
from sigmapf.io import tensor_to_coo
from sigmapf.tensor import DenseTensor


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(path)

    return _write


def coo(arr):
    return tensor_to_coo(DenseTensor(arr))


def test_info_on_the_cube(write):
    code, rep = run(["info", write("t.json", coo(np.ones((3, 3, 3))))])
    assert code == 0 and rep["status"] == "ok"
    rows = rep["payload"]["partitions"]
    assert [r["sigma"] for r in rows] == [[[1, 2, 3]], [[1], [2, 3]], [[1], [2], [3]]]
    assert all(r["rhoA"] == pytest.approx(1.0, abs=1e-9) for r in rows)
    assert rep["input"]["nnz"] == 27


def test_info_reports_the_mode_permutation(write):
    code, rep = run(["info", write("t.json", coo(np.ones((2, 3, 2))))])
    assert code == 0
    assert rep["payload"]["permutation"] == [2, 1, 3]
    assert rep["payload"]["permuted_shape"] == [3, 2, 2]


def test_info_with_a_p_list(write):
    code, rep = run(["info", write("t.json", coo(np.ones((3, 3, 3)))), "--p", "4,4"])
    assert code == 0
    rows = rep["payload"]["partitions"]
    assert rows[0]["rhoA"] is None and rows[1]["p"] == [4.0, 4.0]


def test_empty_file_is_a_parse_error(write):
    code, rep = run(["info", write("t.json", "")])
    assert code == 2 and rep["status"] == "error"


def test_missing_file(tmp_path):
    code, _ = run(["info", str(tmp_path / "nope.json")])
    assert code == 2


@pytest.mark.parametrize("table", [WEAK_BITS, STRONG_BITS])
def test_classify_fixture_tables(write, table):
    key = "weakly_irreducible" if table is WEAK_BITS else "strongly_irreducible"
    for eps, bits in table.items():
        code, rep = run(["classify", "--format", "binary27", write("t.txt", bits)])
        assert code == 0
        assert tuple(int(r[key]) for r in rep["payload"]) == eps


def test_classify_one_partition_of_a_diagonal(write):
    arr = np.zeros((2, 2, 2))
    arr[0, 0, 0] = arr[1, 1, 1] = 1
    code, rep = run(["classify", write("t.json", coo(arr)), "--sigma", "[[1],[2],[3]]"])
    (r,) = rep["payload"]
    assert r["strictly_nonnegative"] and not r["weakly_irreducible"]


def test_solve_and_check_round_trip(write):
    path = write("t.json", coo(np.ones((3, 3, 3))))
    code, rep = run(["solve", path, "--sigma", "[[1],[2],[3]]", "--p", "3", "--history"])
    assert code == 0
    pay = rep["payload"]
    assert pay["lambda"] == pytest.approx(9.0, abs=1e-9)
    assert pay["converged"] and "cw_history" in pay
    x_path = write("x.json", pay["blocks"])
    code, rep = run(["check", path, "--sigma", "[[1],[2],[3]]", "--p", "3", "--lambda", "9", "--x-file", x_path])
    assert code == 0 and rep["payload"]["residual"] < 1e-12


def test_check_rejects_unnormalized_blocks(write):
    path = write("t.json", coo(np.ones((3, 3, 3))))
    x_path = write("x.json", [[1, 1, 1]])
    code, rep = run(["check", path, "--p", "3", "--lambda", "9", "--x-file", x_path])
    assert code == 1 and "NotNormalized" in rep["error"]


def test_solve_random_start_is_seeded(write):
    path = write("t.json", coo(np.random.default_rng(0).random((3, 3))))
    a = run(["solve", path, "--start", "random", "--seed", "5", "--p", "2"])[1]
    b = run(["solve", path, "--start", "random", "--seed", "5", "--p", "2"])[1]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_precondition_error_exit_code(write):
    arr = np.ones((3, 3))
    arr[0] = 0
    code, rep = run(["solve", write("t.json", coo(arr)), "--sigma", "[[1],[2]]", "--p", "2"])
    assert code == 1 and "NotStrictlyNonnegative" in rep["error"]


def test_bad_partition_is_an_input_error(write):
    code, _ = run(["solve", write("t.json", coo(np.ones((3, 3, 3)))), "--sigma", "[[1,3],[2]]"])
    assert code == 2


def test_norm_command(write):
    code, rep = run(["norm", write("t.json", coo(np.array([[0.0, 2.0], [0.0, 0.0]]))), "--p", "2"])
    assert code == 0 and rep["payload"]["lambda"] == pytest.approx(1.0, abs=1e-10)
    assert rep["payload"]["symmetrized"]


def test_stdin_and_deterministic_output(monkeypatch, capsys):
    text = json.dumps(tensor_to_coo(graph_example()))
    outs = []
    for _ in range(2):
        monkeypatch.setattr("sys.stdin", io.StringIO(text))
        assert main(["classify", "-"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["payload"][0]["weakly_irreducible"]
