"""Channel simulation via N-port port-based teleportation.

Closed-form Choi matrices of the simulated qubit channel for
permutation-symmetric resource states, the protocol's own Kraus operators,
a dense brute-force oracle, and an amplitude-damping simulation study with
exact and numerical diamond-norm metrics.
"""

from .analysis import (AdKnownPoints, AlternateDerivatives, AlternateXYZ,
                       DifferenceSpectrum, ad_choi, ad_known_points,
                       alternate_choi, alternate_derivatives,
                       alternate_known_point, alternate_trace_min_a,
                       alternate_xyz, depolarizing_choi, diamond_bounds,
                       diamond_numeric, difference_spectrum, p0_cross,
                       pbt_ad_choi, symmetric_sum_curvature, trace_min_location,
                       trace_norm, xi)
from .choi import (QRCoeffs, assemble_choi, check_choi, choi_from_reduced,
                   qr_coeffs, two_port_choi)
from .kraus import (KrausSet, ProtocolKraus, apply_kraus, apply_protocol,
                    choi_from_kraus, choi_to_kraus, protocol_gram,
                    protocol_kraus, sqrt_measurement_op,
                    unreduced_multiplicity)
from .oracle import DensePovm, build_povm, oracle_choi, povm_element, sigma_op
from .resources import (AdChoi, Alternate, Bell, FromFile, FullResource,
                        ReducedResource, ResourceFamily, SpinCoefficients,
                        full_from_port, g_sum, load_resource, make_family,
                        port_state, reduce_full, reduced_from_port,
                        reduced_port_state, save_resource, symmetrize,
                        to_spin_coefficients, trace_to_first_port)
from .spin import (Kind, RhoEigenvector, SpinBasis, SpinLabel,
                   build_rho_eigenvectors, build_spin_basis, clebsch_gordan,
                   degeneracy, rho_eigenvalue)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
