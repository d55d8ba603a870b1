from .config_parser import ConfigParser
from .matrix_file import MatrixFile, load_fixture, read_matrix, read_vector, write_matrix
from .report import CliConfig, render_matrix, render_report
