"""
Morse–Novikov torsion algebra: truncated Novikov series, torsion of based
complexes, zeta functions of flows, bifurcation moves and cyclic covers.
"""
