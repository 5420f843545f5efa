"""Lattice Boltzmann schemes for hyperbolic conservation laws with equilibrium boundary conditions."""
from .lattice import DistributionField, GridSpec, VelocitySet, compute_moments, stream, velocity_set
from .fluxes import FluxModel, burgers, cubic, euler2d, transport
from .equilibria import EquilibriumSpec, euler_equilibrium, initialize_field, scalar_equilibrium
from .collision import RelaxationParams, relax_bgk, relax_guarded, relax_trt
from .boundary import Composite, Dirichlet, Extrapolation, ReflectiveWall, constant, fill_ghosts
from .monotonicity import check_monotone, max_bgk_omega

__version__ = "0.1.0"
