"""Coefficient files.

Text format::

    # basis=jacobi params=0.5,-0.25 n=3
    1
    0.25
    -0.125

one value per line with 17 significant digits.  Binary format: the magic
bytes ``PXF1``, a little-endian uint64 count, then that many little-endian
float64 values.  Binary files carry no basis.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .conversions import Basis, CoefficientVector
from .errors import InvalidParameter, PolyconvError

__all__ = [
    "MAGIC",
    "CoefficientFileError",
    "CoefficientFile",
    "read_coefficients",
    "write_coefficients",
    "format_text",
    "format_binary",
]

MAGIC = b"PXF1"
_COUNT = struct.Struct("<Q")


class CoefficientFileError(PolyconvError, ValueError):
    """A coefficient file could not be parsed."""


class CoefficientFile:
    """Parsed values with the basis from the header, if any."""

    def __init__(self, values: np.ndarray, basis: Optional[Basis], binary: bool):
        self.values = values
        self.basis = basis
        self.binary = binary

    def vector(self, basis: Optional[Basis] = None) -> CoefficientVector:
        """Attach a basis, checking it against the header if there is one."""
        if basis is None:
            if self.basis is None:
                raise InvalidParameter("no basis given and the file has no header")
            basis = self.basis
        elif self.basis is not None and self.basis != basis:
            raise InvalidParameter(f"file is in basis {self.basis}, requested {basis}")
        return CoefficientVector(self.values, basis)


def _parse_binary(data: bytes) -> np.ndarray:
    if len(data) < len(MAGIC) + _COUNT.size:
        raise CoefficientFileError("truncated binary header")
    (count,) = _COUNT.unpack_from(data, len(MAGIC))
    body = data[len(MAGIC) + _COUNT.size :]
    if len(body) != 8 * count:
        raise CoefficientFileError(f"binary file declares {count} values but holds {len(body) / 8:g}")
    return np.frombuffer(body, dtype="<f8").astype(float)


def _parse_header(line: str) -> tuple[Basis, int]:
    fields = {}
    for item in line.lstrip("#").split():
        key, sep, value = item.partition("=")
        if not sep:
            raise CoefficientFileError(f"malformed header field {item!r}")
        fields[key] = value
    try:
        family, params, n = fields["basis"], fields.get("params", ""), int(fields["n"])
    except (KeyError, ValueError):
        raise CoefficientFileError(f"header needs basis= and n= fields: {line!r}") from None
    try:
        basis = Basis.parse(f"{family}:{params}" if params else family)
    except InvalidParameter as err:
        raise CoefficientFileError(str(err)) from None
    return basis, n


def _parse_text(text: str) -> tuple[np.ndarray, Optional[Basis]]:
    basis, declared = None, None
    values = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if lineno == 1 or (basis is None and not values):
                basis, declared = _parse_header(line)
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise CoefficientFileError(f"line {lineno}: not a number: {line!r}") from None
    if declared is not None and declared != len(values):
        raise CoefficientFileError(f"header declares n={declared} but the file holds {len(values)} values")
    if not values:
        raise CoefficientFileError("no coefficients in file")
    arr = np.array(values)
    if not np.all(np.isfinite(arr)):
        raise CoefficientFileError("coefficients must be finite")
    return arr, basis


def read_coefficients(path: Union[str, Path]) -> CoefficientFile:
    """Read either format; binary is recognized by its magic bytes."""
    data = Path(path).read_bytes()
    if data.startswith(MAGIC):
        values = _parse_binary(data)
        if values.size == 0:
            raise CoefficientFileError("no coefficients in file")
        return CoefficientFile(values, None, True)
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError:
        raise CoefficientFileError("file is neither PXF1 binary nor ASCII text") from None
    values, basis = _parse_text(text)
    return CoefficientFile(values, basis, False)


def format_text(cv: CoefficientVector) -> str:
    params = ",".join(repr(p) for p in cv.basis.params)
    lines = [f"# basis={cv.basis.tag} params={params} n={cv.values.size}"]
    lines += ["%.17g" % x for x in cv.values]
    return "\n".join(lines) + "\n"


def format_binary(values) -> bytes:
    values = np.asarray(values, dtype="<f8")
    return MAGIC + _COUNT.pack(values.size) + values.tobytes()


def write_coefficients(path: Union[str, Path], cv: CoefficientVector, binary: bool = False) -> None:
    if binary:
        Path(path).write_bytes(format_binary(cv.values))
    else:
        Path(path).write_text(format_text(cv))
