"""
Matrix files.

The native format is a JSON document::

    {"name": "A", "rows": 2, "cols": 2,
     "data": [[[1.0, 0.0], [0.0, -1.0]], [[0.5, 0.0], [2.0, 0.0]]]}

with every entry an explicit ``[re, im]`` pair. Floats are written with
``repr`` so a write followed by a read returns bit-identical values. A plain
text form, one row per line with whitespace separated ``a+bi`` tokens, is
accepted on input only.
"""
import json
import os
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from winverse.utils.errors import MatrixFileError

_IMAG_UNIT = re.compile(r'(^|[+-])i$')
FIXTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), 'assets', 'fixtures')


@dataclass(frozen=True, eq=False)
class MatrixFile:
    """
    In-memory form of a matrix file.

    Attributes:
        rows (int): Number of rows.
        cols (int): Number of columns.
        data (np.ndarray): complex128 array of shape (rows, cols).
        name (str, optional): Free label.
    """
    rows: int
    cols: int
    data: np.ndarray
    name: Optional[str] = None

    def __post_init__(self):
        if self.data.shape != (self.rows, self.cols):
            raise MatrixFileError(
                f"Matrix data has shape {self.data.shape}, header says {(self.rows, self.cols)}.")
        if not np.all(np.isfinite(self.data)):
            raise MatrixFileError("Matrix entries must be finite.")

    @classmethod
    def from_array(cls, M, name=None):
        M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
        return cls(rows=M.shape[0], cols=M.shape[1], data=M, name=name)

    @classmethod
    def from_dict(cls, doc):
        try:
            rows, cols = int(doc['rows']), int(doc['cols'])
            entries = [[complex(float(re_), float(im)) for re_, im in row] for row in doc['data']]
        except (KeyError, TypeError, ValueError) as e:
            raise MatrixFileError(f"Malformed matrix document: {e}")
        if len(entries) != rows or any(len(row) != cols for row in entries):
            raise MatrixFileError(f"Matrix data does not match rows={rows}, cols={cols}.")
        data = np.array(entries, dtype=np.complex128).reshape(rows, cols)
        return cls(rows=rows, cols=cols, data=data, name=doc.get('name'))

    def to_dict(self):
        doc = {'rows': self.rows, 'cols': self.cols,
               'data': [[[float(z.real), float(z.imag)] for z in row] for row in self.data]}
        if self.name is not None:
            doc = {'name': self.name, **doc}
        return doc


def _parse_token(token):
    text = token.replace('I', 'i')
    text = _IMAG_UNIT.sub(lambda mt: mt.group(1) + '1i', text)
    text = text.replace('i', 'j')
    try:
        return complex(text)
    except ValueError:
        raise MatrixFileError(f"Cannot parse matrix entry {token!r}.")


def parse_text(text):
    """Parse the plain text form into a complex array."""
    rows = [[_parse_token(tok) for tok in line.split()] for line in text.splitlines() if line.strip()]
    if not rows:
        raise MatrixFileError("Matrix text is empty.")
    if any(len(row) != len(rows[0]) for row in rows):
        raise MatrixFileError("All rows of a matrix must have the same number of entries.")
    return MatrixFile.from_array(np.array(rows, dtype=np.complex128)).data


def read_matrix(path):
    """
    Read a matrix from a JSON or plain text file.

    Args:
        path (str): File path; ``.json`` files are read as JSON documents,
            anything else as plain text.

    Returns:
        np.ndarray: complex128 matrix.

    Raises:
        MatrixFileError: If the file is missing or malformed.
    """
    if not os.path.isfile(path):
        raise MatrixFileError(f"Matrix file not found: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as file:
            content = file.read()
    except (OSError, UnicodeDecodeError) as e:
        raise MatrixFileError(f"Cannot read {path}: {e}")
    if path.lower().endswith('.json'):
        try:
            doc = json.loads(content)
        except json.JSONDecodeError as e:
            raise MatrixFileError(f"Invalid JSON in {path}: {e}")
        if not isinstance(doc, dict):
            raise MatrixFileError(f"{path} must hold a JSON object.")
        return MatrixFile.from_dict(doc).data
    return parse_text(content)


def read_vector(path):
    """Read a single row or column matrix and flatten it."""
    M = read_matrix(path)
    if min(M.shape) != 1:
        raise MatrixFileError(f"{path} must hold a vector, got shape {M.shape}.")
    return M.reshape(-1)


def write_matrix(path, M, name=None):
    """Write ``M`` as a JSON matrix document."""
    with open(path, 'w', encoding='utf-8') as file:
        json.dump(MatrixFile.from_array(M, name).to_dict(), file, indent=1)
        file.write('\n')


def fixture_names():
    """Names of the bundled example matrices."""
    return sorted(os.path.splitext(f)[0] for f in os.listdir(FIXTURES_DIR) if f.endswith('.json'))


def load_fixture(name):
    """Read a bundled example matrix by name, e.g. ``'fix1_A'``."""
    return read_matrix(os.path.join(FIXTURES_DIR, f"{name}.json"))
