"""Golden-ratio deformed supersymmetric oscillators, coherent states and entanglement."""

from . import coherent, entangle, fock, golden, qcalc, susy
from .coherent import reference_states, super_coherent
from .entangle import concurrence_gram, reduce_boson, reduce_fermion, von_neumann
from .golden import GoldenNumber, fib_divisor, fibonacci, lucas
from .qcalc import golden_exp

__version__ = "0.1.0"

__all__ = [
    "coherent", "entangle", "fock", "golden", "qcalc", "susy",
    "GoldenNumber", "fib_divisor", "fibonacci", "lucas", "golden_exp",
    "super_coherent", "reference_states",
    "concurrence_gram", "reduce_boson", "reduce_fermion", "von_neumann",
]
