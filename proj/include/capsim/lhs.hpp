#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "capsim/errors.hpp"
#include "capsim/parameters.hpp"

namespace capsim {

/// Uncertain parameters and their uniform ranges.
struct ParameterSpace {
  struct Dimension {
    std::string name;  // config key of the parameter being varied
    double lower = 0;
    double upper = 0;
  };
  std::vector<Dimension> dimensions;
};

/// Degenerate dimensions (lower == upper) are legal and pin the parameter.
inline void validate(const ParameterSpace& space) {
  for (const ParameterSpace::Dimension& d : space.dimensions) {
    if (parameter_field(d.name) == nullptr) {
      throw input_error("unknown parameter '" + d.name + "' in sample space");
    }
    if (!(d.lower <= d.upper)) {
      throw input_error("sample space for '" + d.name + "' has lower > upper");
    }
  }
}

/// The four-dimensional uncertainty space of the published analysis:
/// job creation, onset growth and the underemployment ratio varied by
/// +/-10%, the price-affected share between 30% and 70%.
inline ParameterSpace default_parameter_space() {
  return {{{"lambda", 0.00189, 0.00231},
           {"omega", 0.30, 0.70},
           {"beta", 0.00135, 0.00165},
           {"r", 1.44, 1.76}}};
}

namespace detail {

/// Uniform integer in [0, bound) by rejection, so the draw depends only on
/// the standardised mt19937_64 sequence and not on any library's
/// distribution implementation.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline std::vector<std::uint32_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t j = n - 1; j > 0; --j) {
    const std::uint64_t i = bounded_uniform(rng, j + 1);
    std::swap(perm[j], perm[i]);
  }
  return perm;
}

}  // namespace detail

/// A Latin hypercube design: n draws in unit coordinates, one per stratum
/// and dimension.
struct LhsDesign {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> unit;  // n rows, one coordinate per dimension

  friend bool operator==(const LhsDesign&, const LhsDesign&) = default;
};

/// Stratified-uniform sampling: each dimension's n strata are permuted
/// independently and every sample sits at its stratum midpoint, so a fixed
/// seed reproduces the design bit for bit on any platform.
inline LhsDesign lhs_sample(const ParameterSpace& space, int n, std::uint64_t seed) {
  if (n < 1) throw input_error("draw count must be >= 1");
  validate(space);
  const std::size_t dims = space.dimensions.size();
  LhsDesign design;
  design.n = n;
  design.seed = seed;
  design.unit.assign(static_cast<std::size_t>(n), std::vector<double>(dims, 0.0));
  std::mt19937_64 rng(seed);
  for (std::size_t d = 0; d < dims; ++d) {
    const std::vector<std::uint32_t> perm =
        detail::random_permutation(static_cast<std::size_t>(n), rng);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      design.unit[i][d] = (perm[i] + 0.5) / n;
    }
  }
  return design;
}

/// Parameters for one draw: base values with the space's dimensions replaced
/// by their sampled coordinates.
inline Parameters apply_draw(const Parameters& base, const ParameterSpace& space,
                             const LhsDesign& design, int draw) {
  Parameters p = base;
  const std::vector<double>& row = design.unit[static_cast<std::size_t>(draw)];
  for (std::size_t d = 0; d < space.dimensions.size(); ++d) {
    const ParameterSpace::Dimension& dim = space.dimensions[d];
    p.*parameter_field(dim.name) = dim.lower + row[d] * (dim.upper - dim.lower);
  }
  return p;
}

}  // namespace capsim
