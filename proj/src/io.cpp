// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wfa/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wfa/error.hpp"

namespace wfa::io {
namespace {

Json numbers(const Vector& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Json row_major(const Matrix& m) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  return arr;
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw_input(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw_input(std::string("field '") + what + "' must be a number");
  return j.get<double>();
}

Vector vector_field(const Json& j, const char* key, Eigen::Index expected) {
  const Json& arr = field(j, key);
  if (!arr.is_array()) throw_input(std::string("field '") + key + "' must be an array");
  if (expected >= 0 && static_cast<Eigen::Index>(arr.size()) != expected)
    throw_input(std::string("dimension mismatch: '") + key + "' has " +
                std::to_string(arr.size()) + " entries, expected " + std::to_string(expected));
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number(arr[i], key);
  return v;
}

std::optional<double> optional_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return number(v, key);
}

void reject_unknown(const Json& j, const std::set<std::string>& known) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw_input("unknown field '" + it.key() + "'");
}

Json p_value(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

double parse_p(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf")
    return std::numeric_limits<double>::infinity();
  return number(j, "p");
}

}  // namespace

Json to_json(const Wfa& wfa) {
  Json j;
  j["formatVersion"] = kFormatVersion;
  j["alphabet"] = wfa.alphabet().symbols();
  j["n"] = wfa.states();
  j["alpha0"] = numbers(wfa.initial());
  j["alphaInf"] = numbers(wfa.final());
  Json trans = Json::object();
  for (std::size_t s = 0; s < wfa.symbols(); ++s)
    trans[wfa.alphabet().symbol(s)] = row_major(wfa.transition(s));
  j["trans"] = std::move(trans);
  return j;
}

Json to_json(const SvaForm& sva) {
  Json j = to_json(sva.wfa);
  j["singularValues"] = numbers(sva.singular_values);
  return j;
}

Json to_json(const ApproxReport& r) {
  Json j;
  j["kind"] = "approx_report";
  j["nOrig"] = r.n_orig;
  j["nHat"] = r.n_hat;
  j["singularValues"] = numbers(r.singular_values);
  j["tailSum"] = r.tail_sum;
  j["rhoF"] = r.rho_f;
  j["c1p"] = r.c1p;
  j["c2p"] = r.c2p;
  j["c1"] = optional_number(r.c1);
  j["c2"] = optional_number(r.c2);
  j["cf"] = optional_number(r.cf);
  j["bound"] = optional_number(r.bound);
  j["boundAvailable"] = r.bound_available;
  j["measuredL2sq"] = r.measured_l2sq;
  j["measuredExact"] = r.measured_exact();
  j["measuredRoute"] = to_string(r.measured_route);
  j["partialDepth"] = r.partial_depth ? Json(*r.partial_depth) : Json(nullptr);
  j["tailCertificate"] = optional_number(r.tail_certificate);
  j["ratio"] = optional_number(r.ratio);
  return j;
}

Json to_json(const SandwichReport& r) {
  Json j;
  j["kind"] = "sandwich_report";
  j["p"] = p_value(r.p);
  j["lower"] = r.lower;
  j["upper"] = optional_number(r.upper);
  j["measured"] = r.measured;
  j["differenceHankelNorm"] = optional_number(r.difference_hankel_norm);
  j["lowerHolds"] = r.lower_holds ? Json(*r.lower_holds) : Json(nullptr);
  j["upperHolds"] = r.upper_holds ? Json(*r.upper_holds) : Json(nullptr);
  j["approx"] = to_json(r.approx);
  return j;
}

Json to_json(const oracle::HankelBlock& block, const Alphabet& alphabet) {
  Json j;
  Json prefixes = Json::array();
  for (const Word& w : block.prefixes) prefixes.push_back(format_word(alphabet, w));
  Json suffixes = Json::array();
  for (const Word& w : block.suffixes) suffixes.push_back(format_word(alphabet, w));
  j["prefixes"] = std::move(prefixes);
  j["suffixes"] = std::move(suffixes);
  j["values"] = row_major(block.values);
  return j;
}

Document document_from_json(const Json& j, const LoadOptions& opts) {
  if (!j.is_object()) throw_input("malformed document: expected a JSON object");
  if (opts.strict)
    reject_unknown(j, {"formatVersion", "alphabet", "n", "alpha0", "alphaInf", "trans",
                       "singularValues"});
  const Json& version = field(j, "formatVersion");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
    throw_input("unsupported formatVersion");

  const Json& alpha = field(j, "alphabet");
  if (!alpha.is_array()) throw_input("field 'alphabet' must be an array of strings");
  std::vector<std::string> symbols;
  for (const Json& s : alpha) {
    if (!s.is_string()) throw_input("alphabet symbols must be strings");
    symbols.push_back(s.get<std::string>());
  }
  Alphabet alphabet(std::move(symbols));

  const Json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 0)
    throw_input("field 'n' must be a nonnegative integer");
  const auto n = static_cast<Eigen::Index>(nj.get<long long>());

  Vector initial = vector_field(j, "alpha0", n);
  Vector final = vector_field(j, "alphaInf", n);

  const Json& trans = field(j, "trans");
  if (!trans.is_object()) throw_input("field 'trans' must be an object");
  if (trans.size() != alphabet.size())
    throw_input("field 'trans' must hold exactly one matrix per symbol");
  std::vector<Matrix> mats;
  for (std::size_t s = 0; s < alphabet.size(); ++s) {
    const std::string& sym = alphabet.symbol(s);
    auto it = trans.find(sym);
    if (it == trans.end()) throw_input("missing transition matrix for '" + sym + "'");
    const Vector flat = vector_field(trans, sym.c_str(), n * n);
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = flat(r * n + c);
    mats.push_back(std::move(m));
  }
  Wfa wfa(std::move(alphabet), std::move(initial), std::move(final), std::move(mats));

  if (!j.contains("singularValues")) return wfa;

  SvaForm sva{std::move(wfa), vector_field(j, "singularValues", n)};
  const Vector& sv = sva.singular_values;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(sv(i) > 0.0)) throw_input("failed SVA validation: singular values must be positive");
    if (i > 0 && sv(i) > sv(i - 1))
      throw_input("failed SVA validation: singular values must be nonincreasing");
  }
  if (n > 0) {
    const auto [r1, r2] = sva_residuals(sva);
    const double worst = std::max(r1.maxCoeff(), r2.maxCoeff());
    if (worst > opts.sva_tol * sv(0)) {
      std::ostringstream msg;
      msg << "failed SVA validation: residual " << worst << " exceeds " << opts.sva_tol
          << " * s_1";
      throw_input(msg.str());
    }
  }
  return sva;
}

ApproxReport approx_report_from_json(const Json& j) {
  if (!j.is_object()) throw_input("malformed report");
  ApproxReport r;
  r.n_orig = field(j, "nOrig").get<Eigen::Index>();
  r.n_hat = field(j, "nHat").get<Eigen::Index>();
  r.singular_values = vector_field(j, "singularValues", -1);
  r.tail_sum = number(field(j, "tailSum"), "tailSum");
  r.rho_f = number(field(j, "rhoF"), "rhoF");
  r.c1p = number(field(j, "c1p"), "c1p");
  r.c2p = number(field(j, "c2p"), "c2p");
  r.c1 = optional_field(j, "c1");
  r.c2 = optional_field(j, "c2");
  r.cf = optional_field(j, "cf");
  r.bound = optional_field(j, "bound");
  r.bound_available = field(j, "boundAvailable").get<bool>();
  r.measured_l2sq = number(field(j, "measuredL2sq"), "measuredL2sq");
  const std::string route = field(j, "measuredRoute").get<std::string>();
  if (route == "exact")
    r.measured_route = MeasureRoute::kExact;
  else if (route == "exact_minimized")
    r.measured_route = MeasureRoute::kExactMinimized;
  else if (route == "partial_sums")
    r.measured_route = MeasureRoute::kPartialSums;
  else
    throw_input("unknown measuredRoute '" + route + "'");
  const Json& depth = field(j, "partialDepth");
  if (!depth.is_null()) r.partial_depth = depth.get<int>();
  r.tail_certificate = optional_field(j, "tailCertificate");
  r.ratio = optional_field(j, "ratio");
  return r;
}

SandwichReport sandwich_report_from_json(const Json& j) {
  if (!j.is_object()) throw_input("malformed report");
  SandwichReport r;
  r.p = parse_p(field(j, "p"));
  r.lower = number(field(j, "lower"), "lower");
  r.upper = optional_field(j, "upper");
  r.measured = number(field(j, "measured"), "measured");
  r.difference_hankel_norm = optional_field(j, "differenceHankelNorm");
  const Json& lh = field(j, "lowerHolds");
  if (!lh.is_null()) r.lower_holds = lh.get<bool>();
  const Json& uh = field(j, "upperHolds");
  if (!uh.is_null()) r.upper_holds = uh.get<bool>();
  r.approx = approx_report_from_json(field(j, "approx"));
  return r;
}

Document load(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw_input("cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw_input("malformed document '" + path + "': " + e.what());
  }
  try {
    return document_from_json(j, opts);
  } catch (const nlohmann::json::exception& e) {
    throw_input("malformed document '" + path + "': " + e.what());
  }
}

Wfa load_wfa(const std::string& path, const LoadOptions& opts) {
  Document doc = load(path, opts);
  if (auto* w = std::get_if<Wfa>(&doc)) return std::move(*w);
  return std::get<SvaForm>(std::move(doc)).wfa;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_input("cannot write '" + path + "'");
  out << text;
  if (!out) throw_input("failed writing '" + path + "'");
}

void save(const std::string& path, const Json& j) { save_text(path, dump(j)); }

void save(const std::string& path, const Wfa& wfa) { save(path, to_json(wfa)); }
void save(const std::string& path, const SvaForm& sva) { save(path, to_json(sva)); }

}  // namespace wfa::io
