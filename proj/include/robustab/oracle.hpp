#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "robustab/interval.hpp"

namespace robustab {

/// How members are drawn from an interval box.
struct SamplePlan {
  enum class Mode { Vertices, Grid, Random };

  Mode mode = Mode::Vertices;
  std::size_t per_axis = 2;   ///< Grid: points per coefficient axis
  std::size_t count = 0;      ///< Random: number of members
  std::uint64_t seed = 0;     ///< Random: generator seed

  static SamplePlan vertices() { return {}; }
  static SamplePlan grid(std::size_t k) { return {Mode::Grid, k, 0, 0}; }
  static SamplePlan random(std::size_t count, std::uint64_t seed) { return {Mode::Random, 2, count, seed}; }
};

std::string_view to_string(SamplePlan::Mode m) noexcept;

inline constexpr std::size_t kMaxVertexOrder = 20;

/// Visit every member the plan selects. Vertices and Grid collapse point
/// intervals to a single value; Random is deterministic in the seed.
/// Throws VertexBlowup when n > 20 under Vertices.
void for_each_member(const IntervalPolynomial& box, const SamplePlan& plan,
                     const std::function<void(const RealPolynomial&)>& visit);

std::vector<RealPolynomial> enumerate_members(const IntervalPolynomial& box, const SamplePlan& plan);

struct OracleWitness {
  RealPolynomial member;
  Complex root;  ///< a root with Re >= -axis_tol
};

struct OracleReport {
  enum class Verdict { StableEvidence, Unstable };

  std::size_t tested = 0;
  std::size_t unstable_count = 0;
  std::vector<OracleWitness> unstable_witnesses;  ///< first few, in enumeration order
  Verdict verdict = Verdict::StableEvidence;
};

std::string_view to_string(OracleReport::Verdict v) noexcept;

struct OracleOptions {
  double axis_tol = kDefaultAxisTol;
  std::size_t max_witnesses = 16;
  unsigned threads = 1;
};

/// Brute-force ground truth: every sampled member is tested with is_hurwitz.
/// Unstable is a genuine disproof of robust stability; StableEvidence is not a
/// proof.
OracleReport oracle_verdict(const IntervalPolynomial& box, const SamplePlan& plan, const OracleOptions& options = {});

enum class Agreement { Consistent, Contradiction };

std::string_view to_string(Agreement a) noexcept;

struct CrossValidation {
  Agreement agreement = Agreement::Consistent;
  KharitonovVerdict test;
  OracleReport oracle;
  /// The failing Kharitonov polynomial was re-checked as an in-box unstable
  /// member and folded into the oracle report.
  bool witness_certified = false;
};

using Decider = std::function<KharitonovVerdict(const IntervalPolynomial&)>;

/// Runs the four-polynomial test and the sampling oracle side by side. A
/// Contradiction means the oracle found an unstable member while the test
/// declared the box stable. `decider` replaces kharitonov_test (used for
/// fault injection).
CrossValidation cross_validate(const IntervalPolynomial& box, const SamplePlan& plan, const OracleOptions& options = {},
                               const Decider& decider = {});

/// True when p lies in the box and is_hurwitz(p) is not Stable.
bool certifies_instability(const IntervalPolynomial& box, const RealPolynomial& p, double axis_tol = kDefaultAxisTol);

}  // namespace robustab
