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

///
/// \file io.hpp
///
/// JSON documents for automata and reports.
///
/// Automaton document (formatVersion 1):
///
///   {
///     "formatVersion": 1,
///     "alphabet": ["a", "b"],
///     "n": 2,
///     "alpha0": [...n numbers],
///     "alphaInf": [...n numbers],
///     "trans": { "a": [...n*n numbers, row-major], "b": [...] },
///     "singularValues": [...n numbers]        // optional, marks SVA form
///   }
///
/// Numbers are written in shortest round-trip decimal form, so save/load
/// preserves every weight bit for bit.
///
#ifndef WFA_IO_HPP
#define WFA_IO_HPP

#include <string>
#include <variant>

#include "json.hpp"
#include "wfa/approx.hpp"
#include "wfa/hankel.hpp"
#include "wfa/sva.hpp"
#include "wfa/wfa.hpp"

namespace wfa::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

struct LoadOptions {
  bool strict = false;     // reject unknown fields
  double sva_tol = 1e-7;   // residual tolerance, relative to s_1
};

using Document = std::variant<Wfa, SvaForm>;

Json to_json(const Wfa& wfa);
Json to_json(const SvaForm& sva);
Json to_json(const ApproxReport& r);
Json to_json(const SandwichReport& r);
Json to_json(const oracle::HankelBlock& block, const Alphabet& alphabet);

/// Throws kInput on malformed documents, dimension mismatches, or SVA
/// documents failing the residual check.
Document document_from_json(const Json& j, const LoadOptions& opts = {});
ApproxReport approx_report_from_json(const Json& j);
SandwichReport sandwich_report_from_json(const Json& j);

Document load(const std::string& path, const LoadOptions& opts = {});
/// Loads either form and returns the automaton.
Wfa load_wfa(const std::string& path, const LoadOptions& opts = {});

std::string dump(const Json& j);
void save_text(const std::string& path, const std::string& text);
void save(const std::string& path, const Json& j);
void save(const std::string& path, const Wfa& wfa);
void save(const std::string& path, const SvaForm& sva);

}  // namespace wfa::io

#endif  // WFA_IO_HPP
