"""Bremsstrahlung from charged Bose-Einstein condensate wave packets.

Split-step Gross-Pitaevskii evolution in a periodic 1-D box, radiated energy
under point-particle, hydrodynamic, single-particle and condensate models,
and a truncated Fock-space check of the condensate two-term formula.
"""

__version__ = "0.1.0"
