"""Dissipative quantum memory simulator.

Memory states as damped two-mode squeezed vacua: closed-form analytics, an
independent truncated-Fock oracle, chaos diagnostics on code trajectories, and
the classical doubled damped oscillator.
"""

from ._dqm import *  # noqa: F401,F403
from ._dqm import fock, osc  # noqa: F401
