"""Coupled (E, lambda) solver for the zGKN point spectrum.

For a trial E the angular eigenvalue lambda(E) with the requested N_theta is
found first; the radial connector miss at (E, lambda(E)) is then a scalar
function of E, decreasing through zero at the bound state with the
requested N_omega. The bracket comes from a scan log-spaced in 1 - E.
"""

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial

import numpy as np
from scipy.optimize import brentq

from .angular import AngularContext, angular_amplitude, solve_lambda
from .config import SolverConfig
from .errors import (
    CutoffTooSmall,
    DomainBoundary,
    InvalidIndex,
    MultipleRoots,
    NoRootInGap,
    NotNearTarget,
    ScanFailed,
    WindingMismatch,
    ZgknError,
)
from .labels import format_label, winding_to_label
from .model import ModelParams, StateIndex
from .odeflow import WindingConvention
from .radial import TAIL_LIMIT_FACTOR, RadialContext, energy_grid, radial_amplitude, shoot_omega

logger = logging.getLogger(__name__)

BISPINOR_PHASE = "exp(-i(E t - kappa phi))"
# root check steps E by this fraction of 1 - E, but never below 1000 energy_tol
ROOT_CHECK_STEP = 1e-4
PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True, eq=False)
class BoundState:
    params: ModelParams
    index: StateIndex
    E: float
    lam: float
    angular: object
    radial: object
    E_residual: float
    lambda_residual: float
    tail_residual: float
    label: object = None
    status: str = PASS

    @property
    def windings(self):
        return self.angular.winding, self.radial.winding

    def as_record(self, config=None):
        config = config or SolverConfig()
        return {
            "params": self.params.as_dict(),
            "index": self.index.as_dict(),
            "label": self.label.as_dict() if self.label is not None else None,
            "E": self.E,
            "lambda": self.lam,
            "status": self.status,
            "residuals": {
                "E": self.E_residual,
                "lambda": self.lambda_residual,
                "tail": self.tail_residual,
                "tail_lift": self.radial.tail_residual,
            },
            "solver": {
                "r0": self.radial.cutoff,
                "eps": self.angular.epsilon,
                "tolerances": config.as_dict()["tolerances"],
            },
        }


def _serial(config):
    return replace(config, scan=replace(config.scan, workers=1))


def _require_ring(params):
    if not params.a > 0:
        raise DomainBoundary(
            f"the coupled solver needs a > 0, got a={params.a}; "
            "at a = 0 use the Dirac-Coulomb oracle or solve_half_line_energy"
        )


def _miss_parts(params, index, E, config, lam_hint=None, check_tail=False):
    bracket = config.bracket if lam_hint is None else config.bracket.centered(lam_hint)
    angular = solve_lambda(AngularContext(params.a, E, index.two_kappa), index.n_theta, bracket, config.tolerances)
    ctx = RadialContext(params.a, params.gamma, index.two_kappa, angular.lam, E)
    shot = shoot_omega(ctx, tols=config.tolerances, check_tail=check_tail)
    miss = shot.delta_lift - WindingConvention.omega(E).target(index.n_omega)
    return miss, angular, shot


def coupled_miss(params, index, E, config=None):
    """Radial lift change minus the N_omega target at lambda = lambda(E)."""
    return _miss_parts(params, index, E, config or SolverConfig())[0]


def _scan_point(params, index, config, E):
    try:
        return coupled_miss(params, index, E, config)
    except ZgknError as e:
        logger.debug(f"miss at E={E:.15g} failed: {e}")
        return math.nan


def scan_energy(params, index, config=None):
    """Coupled miss on the configured E grid; NaN where the inner solves fail.

    Returns (E grid, misses), both ordered by increasing E.
    """
    config = config or SolverConfig()
    grid = energy_grid(config.scan)
    if config.scan.workers > 1:
        work = partial(_scan_point, params, index, _serial(config))
        with ProcessPoolExecutor(max_workers=config.scan.workers) as pool:
            misses = list(pool.map(work, grid))
    else:
        misses, hint = [], None
        for E in grid:
            try:
                miss, angular, _ = _miss_parts(params, index, E, config, lam_hint=hint)
                hint = angular.lam
            except ZgknError as e:
                logger.debug(f"miss at E={E:.15g} failed: {e}")
                miss = math.nan
            misses.append(miss)
    logger.debug(f"scanned {len(grid)} energies for {index}")
    return grid, np.array(misses)


def _sign_changes(grid, misses):
    """Brackets (E_lo, E_hi) between consecutive finite misses of opposite sign."""
    finite = [(E, m) for E, m in zip(grid, misses) if math.isfinite(m)]
    brackets = []
    for (E0, m0), (E1, m1) in zip(finite, finite[1:]):
        if m0 == 0.0:
            brackets.append((E0, E0))
        elif m0 * m1 < 0:
            brackets.append((E0, E1))
    if finite and finite[-1][1] == 0.0:
        brackets.append((finite[-1][0], finite[-1][0]))
    return brackets


@dataclass(frozen=True, eq=False)
class RootCheck:
    """Residuals of a candidate (E, lambda), recomputed from scratch.

    The miss is evaluated at E and at E -/+ step; a root of the coupled miss
    lies within step of E when the two side values straddle zero. The cutoff
    is judged in E: the lift change on doubling r0 divided by the local
    slope of the miss is the shift of E a doubled cutoff would cause.
    """

    E: float
    angular: object
    shot: object
    miss: float
    miss_below: float
    miss_above: float
    step: float
    lift_change: float

    @property
    def slope(self):
        return (self.miss_below - self.miss_above) / (2.0 * self.step)

    @property
    def bracketed(self):
        return self.miss_below >= 0.0 >= self.miss_above

    @property
    def energy_shift(self):
        slope = abs(self.slope)
        return math.inf if slope == 0.0 else self.lift_change / slope

    @property
    def n_omega(self):
        try:
            return self.shot.winding
        except NotNearTarget:
            return None

    def status(self, index, tols):
        ok = (
            self.bracketed
            and (self.angular.winding, self.n_omega) == (index.n_theta, index.n_omega)
            and self.energy_shift <= TAIL_LIMIT_FACTOR * tols.tail_tol
        )
        return PASS if ok else FAIL


def check_root(params, index, E, config=None, lam_hint=None):
    """Recompute the miss, the root bracket and the cutoff shift at E."""
    config = config or SolverConfig()
    _require_ring(params)
    tols = config.tolerances
    miss, angular, shot = _miss_parts(params, index, E, config, lam_hint=lam_hint)
    doubled = shoot_omega(shot.context, cutoff_r0=2.0 * shot.cutoff, tols=tols, check_tail=False)
    lift_change = abs(doubled.delta_lift - shot.delta_lift)
    step = min(max(ROOT_CHECK_STEP * (1.0 - E), 1000.0 * tols.energy_tol), 0.5 * (1.0 - E))
    below = _miss_parts(params, index, E - step, config, lam_hint=angular.lam)[0]
    above = _miss_parts(params, index, E + step, config, lam_hint=angular.lam)[0]
    check = RootCheck(
        E=E,
        angular=angular,
        shot=replace(shot, tail_residual=lift_change),
        miss=miss,
        miss_below=below,
        miss_above=above,
        step=step,
        lift_change=lift_change,
    )
    logger.debug(
        f"root check at E={E:.15g}: miss {below:.3e} / {miss:.3e} / {above:.3e}, "
        f"doubling r0 moves the lift by {lift_change:.3e} and E by {check.energy_shift:.3e}"
    )
    return check


def _converge(params, index, config, lo, hi):
    hint = {"lam": None}

    def miss(E):
        value, angular, _ = _miss_parts(params, index, E, config, lam_hint=hint["lam"])
        hint["lam"] = angular.lam
        return value

    E = lo if lo == hi else brentq(miss, lo, hi, xtol=config.tolerances.energy_tol)
    check = check_root(params, index, E, config, lam_hint=hint["lam"])
    angular, shot = check.angular, check.shot
    if check.n_omega is None:
        raise WindingMismatch(f"converged E={E:.15g} is not an Omega-connector")
    if (angular.winding, check.n_omega) != (index.n_theta, index.n_omega):
        raise WindingMismatch(
            f"converged state has windings ({angular.winding}, {check.n_omega}), "
            f"wanted ({index.n_theta}, {index.n_omega})"
        )
    limit = TAIL_LIMIT_FACTOR * config.tolerances.tail_tol
    if check.energy_shift > limit:
        raise CutoffTooSmall(
            f"doubling r0={shot.cutoff:.6g} moves E={E:.15g} by {check.energy_shift:.3e} "
            f"(lift change {check.lift_change:.3e}, limit {limit:.3e})"
        )
    status = check.status(index, config.tolerances)
    if status != PASS:
        logger.warning(f"{index}: no sign change of the miss within {check.step:.3e} of E={E:.15g}")
    try:
        label = winding_to_label(index)
    except InvalidIndex:
        label = None
    state = BoundState(
        params=params,
        index=index,
        E=E,
        lam=angular.lam,
        angular=angular,
        radial=shot,
        E_residual=abs(check.miss),
        lambda_residual=angular.residual,
        tail_residual=check.energy_shift,
        label=label,
        status=status,
    )
    logger.info(f"bound state {index}: E={E:.15g}, lambda={angular.lam:.15g}")
    return state


def solve_bound_state(params, index, config=None):
    """Bound state with windings (N_theta, N_omega) and 2*kappa = index.two_kappa.

    Raises NoRootInGap when the scan finds no sign change, ScanFailed when
    no scan point could be evaluated, and MultipleRoots (carrying every
    converged state) when it finds more than one.
    """
    config = config or SolverConfig()
    _require_ring(params)
    if not index.admissible:
        logger.warning(f"{index} is outside the admissible windings; no bound state is expected")
    if not params.in_window:
        logger.warning(f"a={params.a}, gamma={params.gamma} is outside the existence window; results are unguaranteed")

    grid, misses = scan_energy(params, index, config)
    failed = int(np.count_nonzero(~np.isfinite(misses)))
    if failed == len(grid):
        raise ScanFailed(f"all {failed} scan points failed for {index}; rerun with -vv for the causes")
    if failed:
        logger.warning(f"{failed} of {len(grid)} scan points failed for {index} and were skipped")
    brackets = _sign_changes(grid, misses)
    if not brackets:
        raise NoRootInGap(
            f"no sign change of the coupled miss for {index} on E in [{grid[0]:.6g}, {grid[-1]:.12g}]"
        )
    states = [_converge(params, index, config, lo, hi) for lo, hi in brackets]
    if len(states) > 1:
        energies = ", ".join(f"{s.E:.12g}" for s in states)
        raise MultipleRoots(f"{len(states)} bound states found for {index}: {energies}", states)
    return states[0]


@dataclass(frozen=True)
class RecordCheck:
    index: StateIndex
    E: float
    recorded: str
    status: str
    E_residual: float
    tail_residual: float

    @property
    def reproduced(self):
        return self.recorded == self.status


def read_records(path):
    """Solve records from a JSON result file; a single record comes back as a one-item list."""
    with open(path) as f:
        data = json.load(f)
    return data if isinstance(data, list) else [data]


def verify_record(record, config=None):
    """Re-verify a solve record (as written by `solve -o json`) with the library.

    The tolerances stored in the record are used unless `config` is given.
    """
    if config is None:
        config = SolverConfig.from_mapping(record["solver"]["tolerances"])
    params = ModelParams(**record["params"])
    index = StateIndex(**record["index"])
    E = float(record["E"])
    check = check_root(params, index, E, config, lam_hint=record["lambda"])
    result = RecordCheck(
        index=index,
        E=E,
        recorded=record.get("status"),
        status=check.status(index, config.tolerances),
        E_residual=abs(check.miss),
        tail_residual=check.energy_shift,
    )
    if not result.reproduced:
        logger.warning(f"{index} at E={E:.15g}: recorded {result.recorded}, recomputed {result.status}")
    return result


@dataclass(frozen=True)
class ExistenceCell:
    index: StateIndex
    found: bool
    predicted: bool
    E: float = None
    error: str = None

    @property
    def agrees(self):
        return self.found == self.predicted


@dataclass(frozen=True)
class ExistenceReport:
    params: ModelParams
    cells: tuple

    @property
    def matches_theorem(self):
        return all(cell.agrees for cell in self.cells)

    @property
    def mismatches(self):
        return [cell for cell in self.cells if not cell.agrees]

    def rows(self):
        return [
            {
                "n_theta": c.index.n_theta,
                "n_omega": c.index.n_omega,
                "two_kappa": c.index.two_kappa,
                "found": c.found,
                "predicted": c.predicted,
                "E": c.E,
                "error": c.error,
            }
            for c in self.cells
        ]


def _existence_cell(params, config, index):
    try:
        state = solve_bound_state(params, index, config)
        return ExistenceCell(index, True, index.admissible, E=state.E)
    except NoRootInGap:
        return ExistenceCell(index, False, index.admissible)
    except MultipleRoots as e:
        return ExistenceCell(index, True, index.admissible, E=e.states[0].E, error=str(e))
    except ZgknError as e:
        logger.warning(f"existence scan cell {index} failed: {e}")
        return ExistenceCell(index, False, index.admissible, error=str(e))


def existence_scan(params, n_theta_range, n_omega_range, config=None):
    """Found/not-found table over the given windings at 2*kappa = params.two_kappa."""
    config = config or SolverConfig()
    indices = [
        StateIndex(n_theta, n_omega, params.two_kappa)
        for n_theta in n_theta_range
        for n_omega in n_omega_range
    ]
    work = partial(_existence_cell, params, _serial(config))
    if config.scan.workers > 1 and len(indices) > 1:
        with ProcessPoolExecutor(max_workers=config.scan.workers) as pool:
            cells = list(pool.map(work, indices))
    else:
        cells = [work(index) for index in indices]
    report = ExistenceReport(params, tuple(cells))
    if not report.matches_theorem:
        logger.warning(f"{len(report.mismatches)} existence cells disagree with the admissibility rule")
    return report


@dataclass(frozen=True)
class SplittingRow:
    label1: str
    label2: str
    E1: float
    E2: float
    delta: float
    kind: str


def _splitting_kind(first, second):
    if second == first.mirrored():
        return "m_j"
    try:
        l1, l2 = winding_to_label(first), winding_to_label(second)
    except InvalidIndex:
        return "other"
    if (l1.n, l1.two_j, l1.two_mj) == (l2.n, l2.two_j, l2.two_mj) and l1.l != l2.l:
        return "lamb"
    return "other"


def splitting_report(params_base, pairs, config=None):
    """Energy differences between pairs of states degenerate at a = 0."""
    config = config or SolverConfig()
    energies = {}

    def energy(index):
        if index not in energies:
            energies[index] = solve_bound_state(params_base, index, config).E
        return energies[index]

    rows = []
    for first, second in pairs:
        E1, E2 = energy(first), energy(second)
        rows.append(
            SplittingRow(
                label1=_describe(first),
                label2=_describe(second),
                E1=E1,
                E2=E2,
                delta=E1 - E2,
                kind=_splitting_kind(first, second),
            )
        )
    return rows


def _describe(index):
    try:
        return format_label(winding_to_label(index))
    except InvalidIndex:
        return f"({index.n_theta}, {index.n_omega}, {index.two_kappa}/2)"


@dataclass(frozen=True, eq=False)
class Bispinor:
    r: np.ndarray
    theta: np.ndarray
    components: np.ndarray
    phase: str = BISPINOR_PHASE


def assemble_bispinor(state, r=None, theta=None):
    """Four components over the (r, theta) grid with the time/azimuth phase factored out.

    components[i] has shape (len(r), len(theta)).
    """
    radial = radial_amplitude(state.radial.context, state.radial, r)
    angular = angular_amplitude(state.angular.context, state.angular, theta)
    amplitude = np.outer(radial.R, angular.S)
    half_omega = 0.5 * radial.Omega[:, None]
    half_theta = 0.5 * angular.Theta[None, :]
    cos_t, sin_t = np.cos(half_theta), np.sin(half_theta)
    minus, plus = np.exp(-1j * half_omega), np.exp(1j * half_omega)
    components = np.stack([
        amplitude * cos_t * minus,
        amplitude * sin_t * plus,
        amplitude * cos_t * plus,
        amplitude * sin_t * minus,
    ])
    return Bispinor(r=radial.r, theta=angular.theta, components=components)
