from .__version__ import __version__
import os

INTERLACE_TOL = os.getenv('JKRONPY_INTERLACE_TOL', False) or 1e-8
PARITY_TOL = os.getenv('JKRONPY_PARITY_TOL', False) or 1e-8
EIGEN_TOL = os.getenv('JKRONPY_EIGEN_TOL', False) or 1e-13
# Tolerances come in as strings from the environment;
# anything unparsable falls back to the default value
try:
    INTERLACE_TOL = float(INTERLACE_TOL)
except ValueError:
    INTERLACE_TOL = 1e-8
try:
    PARITY_TOL = float(PARITY_TOL)
except ValueError:
    PARITY_TOL = 1e-8
try:
    EIGEN_TOL = float(EIGEN_TOL)
except ValueError:
    EIGEN_TOL = 1e-13

MAX_SWEEPS = os.getenv('JKRONPY_MAX_SWEEPS', False) or 100
try:
    MAX_SWEEPS = int(MAX_SWEEPS)
except ValueError:
    MAX_SWEEPS = 100

EIGEN_SOLVER = os.getenv('JKRONPY_EIGEN_SOLVER', False) or 'jacobi'
if EIGEN_SOLVER not in ('jacobi', 'lapack'):
    EIGEN_SOLVER = 'jacobi'

WORKERS = os.getenv('JKRONPY_WORKERS', False) or 1
try:
    WORKERS = max(1, int(WORKERS))
except ValueError:
    WORKERS = 1


def version():
    return __version__
