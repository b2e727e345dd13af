"""
Test suite for the port-Hamiltonian string simulator.
"""
