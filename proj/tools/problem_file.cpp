#include "problem_file.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace robustab::cli {

namespace {

using nlohmann::json;

double finite_number(const json& v, const std::string& field) {
  if (!v.is_number()) throw SchemaError("field '" + field + "': expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError("field '" + field + "': number is not finite");
  return x;
}

Problem from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("document root must be a JSON object");
  if (doc.contains("input")) {
    if (!doc["input"].is_object()) throw SchemaError("field 'input': expected an object");
    return from_json(doc["input"]);
  }
  for (const auto& [key, _] : doc.items()) {
    if (key != "order" && key != "intervals" && key != "omega_max" && key != "steps" && key != "seed" &&
        key != "description") {
      throw SchemaError("unknown field '" + key + "'");
    }
  }
  if (!doc.contains("order")) throw SchemaError("missing required field 'order'");
  const json& order_v = doc["order"];
  if (!order_v.is_number_integer() || order_v.get<long long>() < 0) {
    throw SchemaError("field 'order': expected a nonnegative integer");
  }
  const auto order = static_cast<std::size_t>(order_v.get<long long>());

  if (!doc.contains("intervals")) throw SchemaError("missing required field 'intervals'");
  const json& iv = doc["intervals"];
  if (!iv.is_array()) throw SchemaError("field 'intervals': expected an array of [lo, hi] pairs");
  if (iv.size() != order + 1) {
    throw SchemaError("field 'intervals': order " + std::to_string(order) + " needs " + std::to_string(order + 1) +
                      " intervals, got " + std::to_string(iv.size()));
  }
  std::vector<double> lo;
  std::vector<double> hi;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    const std::string field = "intervals[" + std::to_string(i) + "]";
    if (!iv[i].is_array() || iv[i].size() != 2) throw SchemaError("field '" + field + "': expected [lo, hi]");
    lo.push_back(finite_number(iv[i][0], field + "[0]"));
    hi.push_back(finite_number(iv[i][1], field + "[1]"));
    if (lo.back() > hi.back()) throw SchemaError("field '" + field + "': lo exceeds hi");
  }
  if (lo.back() == 0.0 && hi.back() == 0.0) {
    throw SchemaError("field 'intervals[" + std::to_string(order) + "]': leading interval must not be [0, 0]");
  }

  Problem p{IntervalPolynomial(std::move(lo), std::move(hi)), std::nullopt, std::nullopt, std::nullopt};
  if (doc.contains("omega_max")) {
    const double w = finite_number(doc["omega_max"], "omega_max");
    if (!(w > 0.0)) throw SchemaError("field 'omega_max': must be positive");
    p.omega_max = w;
  }
  if (doc.contains("steps")) {
    const json& s = doc["steps"];
    if (!s.is_number_integer() || s.get<long long>() < 2 || s.get<long long>() > 100'000'000) {
      throw SchemaError("field 'steps': expected an integer >= 2");
    }
    p.steps = static_cast<int>(s.get<long long>());
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned()) throw SchemaError("field 'seed': expected a nonnegative integer");
    p.seed = s.get<std::uint64_t>();
  }
  return p;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "[json.exception.parse_error.101] parse error at line L, column C: ...".
    std::string msg = e.what();
    if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw SchemaError(msg);
  }
  return from_json(doc);
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

nlohmann::ordered_json problem_to_json(const Problem& problem) {
  nlohmann::ordered_json j;
  j["order"] = problem.box.order();
  auto& iv = j["intervals"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i <= problem.box.order(); ++i) iv.push_back({problem.box.lo()[i], problem.box.hi()[i]});
  if (problem.omega_max) j["omega_max"] = *problem.omega_max;
  if (problem.steps) j["steps"] = *problem.steps;
  if (problem.seed) j["seed"] = *problem.seed;
  return j;
}

std::string input_digest(const Problem& problem) {
  const std::string canonical = problem_to_json(problem).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  os << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
  return os.str();
}

}  // namespace robustab::cli
