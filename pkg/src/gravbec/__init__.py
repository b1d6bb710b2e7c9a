"""Laser-induced 1/r interactions in Bose-Einstein condensates.

Modules: :mod:`physical_model` (parameters and scales), :mod:`laser_field`
(beam-geometry pair potentials), :mod:`variational` (Gaussian ansatz and
phase diagram), :mod:`mean_field` (radial ground states), :mod:`losses`
(pair-production depletion) and :mod:`cli`.
"""

__version__ = "0.1.0"
