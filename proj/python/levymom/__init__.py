"""Exact moments of busy-period functionals of spectrally positive Levy processes.

Exact results are returned as fractions.Fraction, or float('inf') when a
moment is infinite.
"""

from fractions import Fraction

from . import _core
from ._core import (
    ArgumentOrder,
    Config,
    Error,
    EulerRequired,
    FiniteMomentRequired,
    InvalidArgument,
    InvalidModel,
    InvalidRho,
    MissingMoment,
    NonCPPModel,
    NonpositiveDenominator,
    NumericalError,
    ParseError,
    Unsupported,
    ZeroDenominator,
    load_config,
    omega,
    parse_config,
    simulate,
    verify,
)

__version__ = _core.__version__


def _exact(text):
    if text in ("inf", "-inf"):
        return float(text)
    return Fraction(text)


def zeta_moments(config, order):
    """E zeta^k for k = 0..order."""
    return [_exact(v) for v in _core.zeta_moments(config, order)]


def joint_moment(config, specs, literal=False):
    """E prod F_i for specs like "A:x" or "D:1"."""
    return _exact(_core.joint_moment(config, list(specs), literal))


def joint_moment_real(config, specs):
    return _core.joint_moment_real(config, list(specs))


def series_moment(config, jumps, tau):
    """E N^jumps tau^tau from the joint transform series."""
    return _exact(_core.series_moment(config, jumps, tau))


def cost_moment_poly(config, ell):
    """Coefficients of x -> E A(x)^ell, lowest degree first."""
    return [_exact(c) for c in _core.cost_moment_poly(config, ell)]


def autocovariance(config, k, x1, x2):
    return _exact(_core.autocovariance(config, k, str(Fraction(x1)), str(Fraction(x2))))
