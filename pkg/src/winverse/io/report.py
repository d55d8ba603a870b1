"""
Rendering of command results and resolution of the command line configuration.
"""
import json
import os
from dataclasses import dataclass

import numpy as np
import pandas as pd

from winverse.core.matcore import Tolerance
from winverse.io.config_parser import ConfigParser
from winverse.io.matrix_file import MatrixFile

OUTPUT_FORMATS = ('json', 'table')
ENV_EQ_ATOL = 'WINVERSE_EQ_ATOL'


@dataclass(frozen=True)
class CliConfig:
    """
    Settings of one command line run.

    Attributes:
        rank_rtol (float): Relative singular value cutoff.
        eq_atol (float): Equality threshold.
        output_format (str): 'json' or 'table'.
        precision (int): Significant digits of table output, 1..17.
        workers (int): Worker count of the sweep command.
    """
    rank_rtol: float = 1e-11
    eq_atol: float = 1e-9
    output_format: str = 'table'
    precision: int = 6
    workers: int = 4

    def __post_init__(self):
        if not (self.rank_rtol > 0 and self.eq_atol > 0):
            raise ValueError("Tolerances must be positive.")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Output format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}.")
        if not 1 <= int(self.precision) <= 17:
            raise ValueError(f"Precision must be in [1, 17], got {self.precision}.")
        if int(self.workers) < 1:
            raise ValueError("Workers must be a positive integer.")

    @property
    def tol(self):
        return Tolerance(rank_rtol=self.rank_rtol, eq_atol=self.eq_atol)

    @classmethod
    def resolve(cls, config_path=None, tol_eq=None, tol_rank=None, output_format=None,
                precision=None, workers=None, environ=None):
        """
        Merge packaged defaults, a user config file, the environment and flags,
        later sources winning.

        Raises:
            ValueError: If a resulting value is invalid.
        """
        config = ConfigParser(config_path)
        environ = os.environ if environ is None else environ
        if environ.get(ENV_EQ_ATOL):
            try:
                config.update({'eq_atol': float(environ[ENV_EQ_ATOL])})
            except ValueError:
                raise ValueError(f"{ENV_EQ_ATOL} must be a number, got {environ[ENV_EQ_ATOL]!r}.")
        config.update({
            'eq_atol': tol_eq, 'rank_rtol': tol_rank, 'output_format': output_format,
            'precision': precision, 'workers': workers,
        })
        return cls(
            rank_rtol=float(config['rank_rtol']), eq_atol=float(config['eq_atol']),
            output_format=str(config['output_format']), precision=int(config['precision']),
            workers=int(config['workers']),
        )


def format_entry(z, precision):
    """``a``, ``bi`` or ``a+bi`` with the given number of significant digits."""
    re_, im = float(z.real), float(z.imag)
    if im == 0:
        return f"{re_:.{precision}g}"
    if re_ == 0:
        return f"{im:.{precision}g}i"
    return f"{re_:.{precision}g}{im:+.{precision}g}i"


def matrix_frame(M, precision):
    """DataFrame of formatted entries, 1-based row and column labels."""
    M = np.atleast_2d(M)
    frame = pd.DataFrame([[format_entry(z, precision) for z in row] for row in M])
    frame.index = range(1, M.shape[0] + 1)
    frame.columns = range(1, M.shape[1] + 1)
    return frame


def render_matrix(M, precision=6, name=None):
    """Plain text table of a matrix."""
    M = np.atleast_2d(M)
    header = f"{name} ({M.shape[0]}x{M.shape[1]})" if name else f"({M.shape[0]}x{M.shape[1]})"
    if M.size == 0:
        return f"{header}\n  (empty)"
    return f"{header}\n{matrix_frame(M, precision).to_string()}"


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return MatrixFile.from_array(value).to_dict()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def render_report(sections, fmt='table', precision=6):
    """
    Render an ordered mapping of named results.

    Matrices become tables or MatrixFile documents, mappings of label to
    residual become two column tables, anything else is printed as is.

    Args:
        sections (dict): Name -> value.
        fmt (str): 'json' or 'table'.
        precision (int): Significant digits of table output.

    Returns:
        str: The rendered text.
    """
    if fmt == 'json':
        return json.dumps(_jsonable(sections), indent=1)
    blocks = []
    for name, value in sections.items():
        if isinstance(value, np.ndarray):
            blocks.append(render_matrix(value, precision, name))
        elif isinstance(value, dict):
            frame = pd.DataFrame({'value': list(value.values())}, index=list(value.keys()))
            blocks.append(f"{name}\n{frame.to_string(float_format=lambda v: f'{v:.3e}')}")
        else:
            blocks.append(f"{name}: {value}")
    return '\n\n'.join(blocks)
