"""zgkn: point spectrum of the Dirac operator on the zero-gravity Kerr-Newman spacetime.

Bound states are computed by shooting for saddle connectors of the Prufer
angle equations (Theta on 0 < theta < pi, Omega on the real line) and are
indexed by the winding numbers of both connectors together with 2*kappa.
The a -> 0 limit is the Dirac-Coulomb problem, solved exactly in
`zgkn.hydrogen` and used as the oracle.

Units: hbar = c = m = 1.
"""

from .angular import AngularContext, exact_k, n_from_k, shoot_theta, solve_lambda
from .config import BracketConfig, ScanConfig, SolverConfig, Tolerances
from .errors import ZgknError
from .hydrogen import HydrogenState, sommerfeld_energy
from .labels import SpectroLabel, format_label, label_to_winding, parse_label, winding_to_label
from .model import ModelParams, StateIndex
from .radial import RadialContext, shoot_omega
from .spectrum import existence_scan, read_records, solve_bound_state, splitting_report, verify_record

__version__ = "1.0.0"
