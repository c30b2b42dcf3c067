"""Tests for the plain-text matrix and transceiver files."""

import numpy as np
import pytest

from blockdfe.errors import FileAccessError, MatrixFormatError
from blockdfe.sim.matrix_io import (
    format_matrix,
    parse_matrix,
    read_matrix,
    read_transceiver,
    write_matrix,
    write_transceiver,
)
from blockdfe.transceiver import DesignSpec, design_mmse_bdfd


def test_format_layout():
    text = format_matrix(np.array([[1.0, 0.5j], [-2.0, 1e-300 + 3j]]))
    assert text.splitlines() == [
        "cmatrix 2 2",
        "1.0:0.0 0.0:0.5",
        "-2.0:0.0 1e-300:3.0",
    ]


def test_values_survive_exactly(rng, tmp_path):
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    path = tmp_path / "a.txt"
    write_matrix(str(path), a)
    assert np.array_equal(read_matrix(str(path)), a)


def test_parse_accepts_free_whitespace():
    m = parse_matrix("cmatrix 1 2\n  1:2\t\t3:-4  \n")
    np.testing.assert_array_equal(m, [[1 + 2j, 3 - 4j]])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "matrix 1 1 1:0",
        "cmatrix 1",
        "cmatrix a 1 1:0",
        "cmatrix 0 1",
        "cmatrix 1 2 1:0",
        "cmatrix 1 1 1.0",
        "cmatrix 1 1 nan:0",
        "cmatrix 1 1 1:0 2:0",
    ],
)
def test_parse_errors(text):
    with pytest.raises(MatrixFormatError):
        parse_matrix(text)


def test_read_missing_file(tmp_path):
    with pytest.raises(FileAccessError):
        read_matrix(str(tmp_path / "absent.txt"))


def test_transceiver_file(diag_channel, tmp_path):
    t = design_mmse_bdfd(diag_channel, DesignSpec(M=2, p0=2.0))
    path = tmp_path / "t.txt"
    write_transceiver(str(path), t)
    back = read_transceiver(str(path))
    assert back.kind is t.kind
    assert back.q_active == t.q_active
    for name in ("F", "W", "B", "predicted_Ree"):
        assert np.array_equal(getattr(back, name), getattr(t, name))


def test_incomplete_transceiver_file(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("meta kind ZF_BDFD\nname F\ncmatrix 1 1 1:0\n")
    with pytest.raises(MatrixFormatError):
        read_transceiver(str(path))
