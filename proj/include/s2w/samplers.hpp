#pragma once

#include "s2w/rng.hpp"

#include <cstddef>
#include <vector>

namespace s2w {

/// n i.i.d. N(0,1) draws. Throws DomainError for n = 0.
std::vector<double> normal_sample(RngStream& stream, std::size_t n);

/// One Gamma(shape, 1) draw: Marsaglia-Tsang squeeze/rejection, with the U^{1/shape}
/// boost for shape < 1.
double gamma_sample(RngStream& stream, double shape);

/// n i.i.d. draws with density exp(-|x|^p/p) / (2 p^{1/p} Gamma(1+1/p)), built as
/// sign * (p G)^{1/p} with G ~ Gamma(1/p).
std::vector<double> pgen_sample(RngStream& stream, double p, std::size_t n);

/// One point of the uniform measure on the unit l_p^n sphere: a p-generalized normal
/// vector divided by its l_p norm.
std::vector<double> sphere_sample(RngStream& stream, std::size_t n, double p);

/// n i.i.d. draws from the symmetric density |x|^{-3} on |x| >= 1. Infinite variance,
/// E[X] = 0, in the domain of attraction of the normal law.
std::vector<double> dan_heavy_sample(RngStream& stream, std::size_t n);

}  // namespace s2w
