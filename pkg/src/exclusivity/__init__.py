"""Exclusivity-principle checks for the CHSH Tsirelson bound.

Exclusivity graphs, their independence and Lovász numbers, quantum
realizations of the CHSH and 8-cycle noncontextuality events, and the clique
audit showing the two quantum maxima jointly saturate the exclusivity bound.
"""
from ._backend import NAME as BACKEND
from .audit import JointModel, e_principle_audit, quantum_model, s_lp, with_london_override
from .errors import ConvergenceError, InputError
from .events import Event, EventFamily, Setting, exclusive, london_events, paris_events, slp_events
from .graphs import ExclusivityGraph, complement, from_events, independence_number, is_isomorphic, max_cliques
from .quantum import london_model, paris_model, paris_s_value
from .theta import SdpSettings, ThetaResult, lovasz_theta

__version__ = "0.1.0"
