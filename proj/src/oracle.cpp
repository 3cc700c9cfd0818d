#include "robustab/oracle.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <thread>

#include "robustab/error.hpp"

namespace robustab {

std::string_view to_string(SamplePlan::Mode m) noexcept {
  switch (m) {
    case SamplePlan::Mode::Vertices: return "vertices";
    case SamplePlan::Mode::Grid: return "grid";
    case SamplePlan::Mode::Random: return "random";
  }
  return "?";
}

std::string_view to_string(OracleReport::Verdict v) noexcept {
  return v == OracleReport::Verdict::Unstable ? "UNSTABLE" : "STABLE_EVIDENCE";
}

std::string_view to_string(Agreement a) noexcept {
  return a == Agreement::Contradiction ? "CONTRADICTION" : "CONSISTENT";
}

namespace {

constexpr std::size_t kMaxGridMembers = 50'000'000;

/// Odometer over per-axis candidate values, axis 0 varying fastest.
void visit_product(const std::vector<std::vector<double>>& axes,
                   const std::function<void(const RealPolynomial&)>& visit) {
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> c(axes.size());
  while (true) {
    for (std::size_t i = 0; i < axes.size(); ++i) c[i] = axes[i][idx[i]];
    visit(RealPolynomial(c));
    std::size_t i = 0;
    while (i < axes.size() && ++idx[i] == axes[i].size()) {
      idx[i] = 0;
      ++i;
    }
    if (i == axes.size()) return;
  }
}

std::optional<Complex> instability_root(const RealPolynomial& p, double axis_tol) {
  if (p.is_zero()) return Complex{0.0, 0.0};
  const auto v = is_hurwitz(p, axis_tol);
  if (v.stable()) return std::nullopt;
  return v.witness_root;
}

}  // namespace

void for_each_member(const IntervalPolynomial& box, const SamplePlan& plan,
                     const std::function<void(const RealPolynomial&)>& visit) {
  const std::size_t len = box.order() + 1;
  switch (plan.mode) {
    case SamplePlan::Mode::Vertices: {
      if (box.order() > kMaxVertexOrder) {
        throw VertexBlowup("vertex enumeration needs order <= " + std::to_string(kMaxVertexOrder) + ", got " +
                           std::to_string(box.order()));
      }
      std::vector<std::vector<double>> axes(len);
      for (std::size_t i = 0; i < len; ++i) {
        axes[i] = {box.lo()[i]};
        if (box.hi()[i] != box.lo()[i]) axes[i].push_back(box.hi()[i]);
      }
      visit_product(axes, visit);
      return;
    }
    case SamplePlan::Mode::Grid: {
      if (plan.per_axis < 1) throw InvalidArgument("grid sampling needs at least one point per axis");
      std::vector<std::vector<double>> axes(len);
      double total = 1.0;
      for (std::size_t i = 0; i < len; ++i) {
        const double lo = box.lo()[i];
        const double hi = box.hi()[i];
        if (lo == hi || plan.per_axis == 1) {
          axes[i] = {plan.per_axis == 1 ? 0.5 * (lo + hi) : lo};
        } else {
          const std::size_t k = plan.per_axis;
          for (std::size_t m = 0; m < k; ++m) {
            axes[i].push_back(m + 1 == k ? hi : lo + (hi - lo) * static_cast<double>(m) / static_cast<double>(k - 1));
          }
        }
        total *= static_cast<double>(axes[i].size());
      }
      if (total > static_cast<double>(kMaxGridMembers)) {
        throw VertexBlowup("grid sampling would produce more than " + std::to_string(kMaxGridMembers) + " members");
      }
      visit_product(axes, visit);
      return;
    }
    case SamplePlan::Mode::Random: {
      std::mt19937_64 rng(plan.seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::vector<double> c(len);
      for (std::size_t s = 0; s < plan.count; ++s) {
        for (std::size_t i = 0; i < len; ++i) {
          const double lo = box.lo()[i];
          const double hi = box.hi()[i];
          c[i] = std::clamp(lo + (hi - lo) * unit(rng), lo, hi);
        }
        visit(RealPolynomial(c));
      }
      return;
    }
  }
}

std::vector<RealPolynomial> enumerate_members(const IntervalPolynomial& box, const SamplePlan& plan) {
  std::vector<RealPolynomial> out;
  for_each_member(box, plan, [&out](const RealPolynomial& p) { out.push_back(p); });
  return out;
}

OracleReport oracle_verdict(const IntervalPolynomial& box, const SamplePlan& plan, const OracleOptions& options) {
  OracleReport report;
  auto record = [&](const RealPolynomial& p, const std::optional<Complex>& root) {
    ++report.tested;
    if (!root) return;
    ++report.unstable_count;
    if (report.unstable_witnesses.size() < options.max_witnesses) report.unstable_witnesses.push_back({p, *root});
  };

  if (options.threads <= 1) {
    for_each_member(box, plan, [&](const RealPolynomial& p) { record(p, instability_root(p, options.axis_tol)); });
  } else {
    const std::vector<RealPolynomial> members = enumerate_members(box, plan);
    std::vector<std::optional<Complex>> roots(members.size());
    const std::size_t workers = std::min<std::size_t>(options.threads, std::max<std::size_t>(members.size(), 1));
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < members.size(); i += workers) roots[i] = instability_root(members[i], options.axis_tol);
        });
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) record(members[i], roots[i]);
  }
  report.verdict = report.unstable_count > 0 ? OracleReport::Verdict::Unstable : OracleReport::Verdict::StableEvidence;
  return report;
}

bool certifies_instability(const IntervalPolynomial& box, const RealPolynomial& p, double axis_tol) {
  return box.contains(p) && instability_root(p, axis_tol).has_value();
}

CrossValidation cross_validate(const IntervalPolynomial& box, const SamplePlan& plan, const OracleOptions& options,
                               const Decider& decider) {
  CrossValidation cv;
  cv.test = decider ? decider(box) : kharitonov_test(box, options.axis_tol);
  cv.oracle = oracle_verdict(box, plan, options);

  if (!cv.test.verdict.stable() && cv.test.witness_member) {
    const RealPolynomial& member = *cv.test.witness_member;
    cv.witness_certified = certifies_instability(box, member, options.axis_tol);
    if (cv.witness_certified && cv.oracle.verdict == OracleReport::Verdict::StableEvidence) {
      // The failing Kharitonov polynomial is itself a box member.
      cv.oracle.tested += 1;
      cv.oracle.unstable_count += 1;
      cv.oracle.unstable_witnesses.push_back({member, *instability_root(member, options.axis_tol)});
      cv.oracle.verdict = OracleReport::Verdict::Unstable;
    }
  }
  cv.agreement = cv.test.verdict.stable() && cv.oracle.verdict == OracleReport::Verdict::Unstable
                     ? Agreement::Contradiction
                     : Agreement::Consistent;
  return cv;
}

}  // namespace robustab
