import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyconv.coeffio import (
    MAGIC,
    CoefficientFileError,
    format_binary,
    format_text,
    read_coefficients,
    write_coefficients,
)
from polyconv.conversions import Basis, CoefficientVector
from polyconv.errors import InvalidParameter

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=50, deadline=None)
@given(values=st.lists(finite, min_size=1, max_size=40))
def test_text_round_trip_is_exact(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("io") / "c.txt"
    cv = CoefficientVector(values, Basis("jacobi", (0.5, -0.25)))
    write_coefficients(path, cv)
    back = read_coefficients(path)
    assert back.basis == cv.basis and not back.binary
    np.testing.assert_array_equal(back.values, cv.values)


@settings(max_examples=50, deadline=None)
@given(values=st.lists(finite, min_size=1, max_size=40))
def test_binary_round_trip_is_byte_identical(tmp_path_factory, values):
    path = tmp_path_factory.mktemp("io") / "c.bin"
    cv = CoefficientVector(values, Basis("legendre"))
    write_coefficients(path, cv, binary=True)
    raw = path.read_bytes()
    back = read_coefficients(path)
    assert back.binary and back.basis is None
    assert format_binary(back.values) == raw
    assert raw[:4] == MAGIC and len(raw) == 12 + 8 * len(values)


def test_text_layout():
    cv = CoefficientVector([1.0, 0.25, -0.125], Basis("jacobi", (0.5, -0.25)))
    assert format_text(cv) == "# basis=jacobi params=0.5,-0.25 n=3\n1\n0.25\n-0.125\n"


def test_headerless_text_needs_basis(tmp_path):
    path = tmp_path / "plain.txt"
    path.write_text("1\n2\n")
    cf = read_coefficients(path)
    with pytest.raises(InvalidParameter):
        cf.vector()
    assert cf.vector(Basis("chebyshev")).basis == Basis("chebyshev")


def test_header_basis_mismatch(tmp_path):
    path = tmp_path / "c.txt"
    write_coefficients(path, CoefficientVector([1.0], Basis("legendre")))
    with pytest.raises(InvalidParameter):
        read_coefficients(path).vector(Basis("chebyshev"))


@pytest.mark.parametrize(
    "content",
    [
        b"",
        b"1\nabc\n",
        b"# basis=legendre n=3\n1\n2\n",
        b"# basis=hermite n=1\n1\n",
        b"# nonsense\n1\n",
        b"nan\n",
        MAGIC + b"\x05",
        MAGIC + (2).to_bytes(8, "little") + b"\x00" * 8,
        b"\xff\xfe",
    ],
)
def test_malformed_files(tmp_path, content):
    path = tmp_path / "bad"
    path.write_bytes(content)
    with pytest.raises(CoefficientFileError):
        read_coefficients(path)
