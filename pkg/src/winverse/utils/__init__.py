from .errors import *
from .parallel import parallel_executor
