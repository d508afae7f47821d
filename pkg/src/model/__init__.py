"""
Module: Register model (ring Hamiltonian, phase schedules, states)
"""
