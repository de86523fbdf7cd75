"""Electromagnetic wavelets: closed-form matrix wavelets and reproducing
kernel, the analytic-signal extension of free Maxwell fields, and wavelet
analysis and synthesis over the Euclidean region."""

__version__ = "0.1.0"

from .core import (ConeQuadrature, FourVector, CausalVector, TubePoint, LightConeMomentum,
                   build_cone_quadrature, in_tube, lorentz_square, minkowski_dot)
from .helicity import gamma_matrix, helicity_decompose, pi_matrix, plane_wave_field
from .fourier import (ConeCoefficients, coefficients_from_potential, field_inner,
                      field_norm_sq, maxwell_residual, synthesize_field)
from .analytic import LineQuadrature, ast_fourier, ast_line, hilbert_directional, line_quadrature
from .kernel import (k_kernel, l_matrix, mother_matrix, mother_scalar, s_hessian, s_scalar,
                     scalar_kernel, scalar_wavelet, wavelet_matrix)
from .atoms import (EuclideanGrid, EuclideanSamples, WaveletSuperposition, construct_R_E_star,
                    focused_grid, lattice_grid, log_grid, project_P, reproduce_at,
                    restrict_R_E, scalar_reconstruct)
from .conformal import (Boost, boost_grid, boost_label, center_velocity,
                        label_scale_and_helicity, scale_label, translate_label)
