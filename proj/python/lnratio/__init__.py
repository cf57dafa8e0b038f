"""Python access to the lnratio toolkit."""

import json

from . import _lnratio
from ._lnratio import (
    ConvergenceError,
    DomainError,
    boundary_limit,
    degree_ratio,
    eval,
    eval_real,
    g2,
    rho,
    run_criterion,
    sigma,
    taylor_jet,
    varrho_paper,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "boundary_limit",
    "check",
    "degree_ratio",
    "eval",
    "eval_real",
    "g2",
    "opmon",
    "rho",
    "run_criterion",
    "sigma",
    "sigma_discrepancy",
    "stieltjes",
    "taylor_jet",
    "varrho_paper",
    "verify",
]


def verify(rep, tol=None):
    """Residual report of one representation on its default points."""
    return json.loads(_lnratio.verify_json(rep, tol))


def check(kind, fn, grid="log:0.01:100:50", order=10, tol=1e-9):
    """Property report for kind in {"cm", "lcm", "bernstein"}."""
    return json.loads(_lnratio.check_json(kind, fn, grid, order, tol))


def stieltjes(fn):
    """Half-plane criterion on the default 2000-point grid."""
    return json.loads(_lnratio.stieltjes_json(fn))


def opmon(fn, dim, trials, seed):
    """Randomized Loewner-order trials; fn may be a function id or "square"."""
    return json.loads(_lnratio.opmon_json(fn, dim, trials, seed))


def sigma_discrepancy():
    """Both sigma candidates compared with the boundary-limit oracle."""
    return json.loads(_lnratio.sigma_discrepancy_json())
