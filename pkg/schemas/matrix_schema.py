"""
Matrix literal format shared by configs and reports.

A matrix is a JSON array of rows; each entry is a real number x (x + 0i) or a
two-element array [re, im].
"""
from typing import List, Union

import numpy as np
from pydantic import BeforeValidator, PlainSerializer
from typing_extensions import Annotated

from models.errors import InvalidMatrixError
from models.matrices import as_complex_matrix

Entry = Union[float, List[float]]


def _parse_entry(entry) -> complex:
    if isinstance(entry, bool):
        raise InvalidMatrixError(f"Matrix entries must be numbers, got {entry!r}")
    if isinstance(entry, (int, float)):
        return complex(float(entry), 0.0)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        return complex(float(entry[0]), float(entry[1]))
    raise InvalidMatrixError(f"Matrix entries must be a number or [re, im], got {entry!r}")


def parse_matrix_literal(value) -> np.ndarray:
    """
    Parse a matrix literal (or pass an array through)

    Raises:
        InvalidMatrixError: If the rows are ragged, empty or hold malformed entries
    """
    if isinstance(value, np.ndarray):
        return as_complex_matrix(value)
    if not isinstance(value, (list, tuple)) or not value:
        raise InvalidMatrixError("A matrix literal must be a non-empty array of rows")
    rows = [row if isinstance(row, (list, tuple)) else [row] for row in value]
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise InvalidMatrixError(f"Matrix rows have different lengths {sorted(widths)}")
    return as_complex_matrix([[_parse_entry(entry) for entry in row] for row in rows])


def format_matrix_literal(matrix) -> List[List[Entry]]:
    """Matrix literal with real entries written as plain numbers"""
    array = np.asarray(matrix, dtype=np.complex128)
    return [
        [float(entry.real) if entry.imag == 0 else [float(entry.real), float(entry.imag)] for entry in row]
        for row in array
    ]


MatrixLiteral = Annotated[
    np.ndarray,
    BeforeValidator(parse_matrix_literal),
    PlainSerializer(format_matrix_literal, return_type=list),
]
