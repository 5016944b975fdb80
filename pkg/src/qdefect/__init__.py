"""Defect codes in quantum LDPC/CSS codes: F2 algebra, exact distances,
gauge-fixed qubit removal, distance-bound verifiers and stabilizer
entanglement entropy."""

__version__ = "0.1.0"
