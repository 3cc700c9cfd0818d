#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "robustab/error.hpp"
#include "robustab/polynomial.hpp"

namespace robustab {

struct Root {
  Complex location;
  int multiplicity = 1;
};

/// Distinct roots with multiplicities, sorted by real part then imaginary part.
struct RootSet {
  std::vector<Root> roots;
  std::size_t source_degree = 0;

  std::size_t total_multiplicity() const noexcept;
  bool empty() const noexcept { return roots.empty(); }
  /// Largest real part over all roots; -inf for an empty set.
  double max_real_part() const noexcept;
  /// Root locations repeated by multiplicity.
  std::vector<Complex> expanded() const;
};

struct AberthOptions {
  int max_iter = 200;
  double step_tol = 1e-13;          ///< relative to 1 + |root|
  double cluster_radius = 1e-6;     ///< relative to 1 + |root|
};

class NonConvergence : public Error {
 public:
  NonConvergence(std::string what, std::vector<Complex> partial)
      : Error(std::move(what)), partial_(std::move(partial)) {}
  const std::vector<Complex>& partial() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// All complex roots of p by Aberth-Ehrlich simultaneous iteration.
/// Throws ZeroPolynomialError for p == 0 and NonConvergence after max_iter.
RootSet all_roots(const RealPolynomial& p, const AberthOptions& options = {});

/// Unclustered root approximations, one per unit of multiplicity.
std::vector<Complex> aberth_roots(const RealPolynomial& p, const AberthOptions& options = {});

struct RootPair {
  std::size_t index_a;
  std::size_t index_b;
  double distance;
};

/// Pairing between two root sets. Indices address RootSet::roots entries; an
/// entry of multiplicity m occupies m units, so it can appear in up to m pairs.
struct RootMatching {
  std::vector<RootPair> pairs;
  std::vector<std::size_t> escaped;  ///< entries of b left without a partner, one per unit
};

/// Greedy nearest-neighbour pairing of b's roots onto a's roots. Each a entry
/// receives at most its multiplicity in partners.
RootMatching match_roots(const RootSet& a, const RootSet& b);

struct ContinuityReport {
  int trials = 0;
  int passed = 0;
  int failed = 0;
  double worst_matched_distance = 0.0;
  /// Smallest escaped-root magnitude seen; +inf when no root escaped.
  double min_escaped_magnitude = 0.0;
  int escaped_roots = 0;
  std::string first_failure;
};

/// Randomised check of root continuity around q: perturb each stored
/// coefficient by less than delta and confirm every root of q attracts exactly
/// its multiplicity within epsilon while any additional roots lie beyond
/// 1/epsilon. Trial k draws from a generator seeded with rng_seed + k.
ContinuityReport root_continuity_check(const RealPolynomial& q, double epsilon, int trials, double delta,
                                       std::uint64_t rng_seed);

}  // namespace robustab
