"""Resource-bounded Kolmogorov complexity and algorithmic probability on a
small demand-driven prefix machine."""

from .enumeration import DyadicMass, EnumParams, ProgramTable, enumerate_programs, khat, mass
from .machine import BitString, Opcode, enc2, dec2, pair, run

__all__ = [
    "BitString", "DyadicMass", "EnumParams", "Opcode", "ProgramTable",
    "dec2", "enc2", "enumerate_programs", "khat", "mass", "pair", "run",
]
