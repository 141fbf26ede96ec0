"""Turing machines as dynamical systems.

Reversible machines, their restart and halt-loop transforms, Moore's
generalized shifts, block maps on the square Cantor set, budget-relative
orbit analysis and the step budget of a decaying Navier-Stokes solution.
"""
from .cantor import BlockMap, CantorPoint, apply_block_map, binarize, decode_point, encode_point, to_block_map
from .gshift import ConfigEncoding, GeneralizedShift, apply, compile_tm
from .ns_budget import NSParams, step_budget, tau
from .orbit import classify_orbit, orbit_census, periodic_system
from .outcomes import Halted, Periodic, Unresolved
from .tm_core import Configuration, HaltedSignal, Tape, TuringMachine, is_reversible, run, step
from .tm_transform import extend_halt_loop, invert, restartify

__version__ = "0.1.0"
