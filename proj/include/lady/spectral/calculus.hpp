#pragma once

#include "lady/spectral/field.hpp"

namespace lady {

/// Spectral gradient: scalar -> vector, vector -> tensor with component (i, j) = d_j f_i.
/// Nyquist modes differentiate to zero.
SpectralField gradient(const SpectralField& f);

/// Divergence of a vector field (rank 1 -> 0) or row divergence of a tensor
/// (component i = sum_j d_j T_ij).
SpectralField divergence(const SpectralField& f);

SpectralField laplacian(const SpectralField& f);

/// Fourier projector I - k k^T / |k|^2 applied mode by mode; k = 0 passes through.
void leray_project_inplace(SpectralField& f);
SpectralField leray_project(const SpectralField& f);

/// Zeroes every mode with some |k_j| above the 2/3 cutoff.
void dealias_inplace(SpectralField& f);
SpectralField dealias(const SpectralField& f);

/// Zeroes the k = 0 coefficient of every component.
void remove_mean(SpectralField& f);

/// L2 inner product over the box, (2pi)^d sum_k conj(a_k) b_k summed over
/// components and over the full spectrum.
double inner_product(const SpectralField& a, const SpectralField& b);
/// ||f||^2 by Parseval.
double l2_norm_squared(const SpectralField& f);
/// ||grad f||^2 by Parseval.
double h1_seminorm_squared(const SpectralField& f);
/// ||f||^2 of a single component.
double component_l2_norm_squared(const SpectralField& f, int c);

}  // namespace lady
