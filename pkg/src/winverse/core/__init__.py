from .matcore import *
from .decomp import *
from .geninv import *
from .wgeninv import *
from .inverses import InverseReport, compute_inverse, inverse_report
from .verify import CertificateReport, check, run_all
from .solve import EQUATIONS, SolveResult
