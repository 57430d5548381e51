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

#include "wfa/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wfa/approx.hpp"
#include "wfa/error.hpp"
#include "wfa/hankel.hpp"
#include "wfa/io.hpp"
#include "wfa/minimize.hpp"
#include "wfa/sva.hpp"

namespace wfa::cli {
namespace {

struct Flags {
  std::string input;
  std::string output;
  std::string other;
  std::string tokens;
  Eigen::Index nhat = 0;
  std::optional<int> depth;
  std::string p;
  std::optional<double> tol;
  std::string gram;
  bool strict = false;
};

// A spectral-condition refusal after a partial report has been written.
struct Unavailable {
  std::string message;
};

class Command {
 public:
  Command(const Flags& f, std::ostream& out) : f_(f), out_(out) {}

  NumericOptions numeric() const {
    NumericOptions n;
    if (f_.tol) n.rel_cutoff = *f_.tol;
    return n;
  }

  SvaOptions sva_options() const {
    SvaOptions s;
    s.numeric = numeric();
    if (!f_.gram.empty()) s.gram = parse_gram_method(f_.gram);
    return s;
  }

  io::LoadOptions load_options() const {
    io::LoadOptions l;
    l.strict = f_.strict;
    return l;
  }

  Wfa load_wfa(const std::string& path) const { return io::load_wfa(path, load_options()); }

  // SVA documents are used as given; plain automata go through compute_sva.
  SvaForm load_sva() const {
    io::Document doc = io::load(f_.input, load_options());
    if (auto* s = std::get_if<SvaForm>(&doc)) return std::move(*s);
    return compute_sva(std::get<Wfa>(doc), sva_options());
  }

  void emit(const std::string& text) const {
    if (f_.output.empty())
      out_ << text;
    else
      io::save_text(f_.output, text);
  }

  void emit(const io::Json& j) const { emit(io::dump(j)); }

 private:
  const Flags& f_;
  std::ostream& out_;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_p(const std::string& p) {
  if (p == "inf") return std::numeric_limits<double>::infinity();
  return p == "1" ? 1.0 : 2.0;
}

void run_eval(const Flags& f, const Command& cmd) {
  const Wfa w = cmd.load_wfa(f.input);
  cmd.emit(format_double(evaluate(w, f.tokens)) + "\n");
}

void run_minimize(const Flags& f, const Command& cmd) {
  cmd.emit(io::to_json(minimize(cmd.load_wfa(f.input), cmd.numeric())));
}

void run_sva(const Flags& f, const Command& cmd) {
  cmd.emit(io::to_json(compute_sva(cmd.load_wfa(f.input), cmd.sva_options())));
}

void run_singvals(const Flags& f, const Command& cmd) {
  const Vector s = hankel_singular_values(cmd.load_wfa(f.input), cmd.sva_options());
  io::Json j;
  j["singularValues"] = std::vector<double>(s.data(), s.data() + s.size());
  cmd.emit(j);
}

void run_truncate(const Flags& f, const Command& cmd) {
  cmd.emit(io::to_json(sva_truncate(cmd.load_sva(), f.nhat)));
}

void run_bound(const Flags& f, const Command& cmd) {
  const SvaForm s = cmd.load_sva();
  ApproxOptions opts;
  opts.numeric = cmd.numeric();
  if (f.depth) opts.partial_depth = *f.depth;
  ApproxReport approx;
  if (f.p.empty()) {
    approx = truncation_bound(s, f.nhat, opts);
    cmd.emit(io::to_json(approx));
  } else {
    const SandwichReport r = sandwich_report(s, f.nhat, parse_p(f.p), opts);
    approx = r.approx;
    cmd.emit(io::to_json(r));
  }
  if (!approx.bound_available) {
    std::ostringstream msg;
    msg << "bound unavailable: rhoF = " << format_double(approx.rho_f) << " >= 1";
    throw Unavailable{msg.str()};
  }
}

void run_dist(const Flags& f, const Command& cmd) {
  if (f.other.empty()) throw_input("dist requires --other PATH");
  const Wfa a = cmd.load_wfa(f.input);
  const Wfa b = cmd.load_wfa(f.other);
  io::Json j;
  try {
    j["l2sq"] = l2_distance_sq(a, b);
    j["route"] = "exact";
    cmd.emit(j);
    return;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSpectralCondition) throw;
  }
  const int depth = f.depth.value_or(12);
  const oracle::L2Partial partial = oracle::brute_l2_partial(a, b, depth);
  j["l2sq"] = partial.partial_sum;
  j["route"] = "partial_sums";
  j["depth"] = depth;
  j["tailCertificate"] =
      partial.tail_certificate ? io::Json(*partial.tail_certificate) : io::Json(nullptr);
  cmd.emit(j);
  if (!partial.tail_certificate)
    throw Unavailable{"distance not summable; partial sum to depth " + std::to_string(depth) +
                      " has no tail certificate"};
}

void run_hankel(const Flags& f, const Command& cmd) {
  const Wfa w = cmd.load_wfa(f.input);
  const int depth = f.depth.value_or(3);
  const oracle::HankelBlock block = oracle::hankel_block(w, depth, depth);
  io::Json j = io::to_json(block, w.alphabet());
  j["depth"] = depth;
  j["rank"] = oracle::block_rank(block, cmd.numeric().rel_cutoff);
  const Vector s = oracle::block_singular_values(block);
  j["singularValues"] = std::vector<double>(s.data(), s.data() + s.size());
  cmd.emit(j);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return kExitInput;
    case ErrorKind::kSpectralCondition:
      return kExitSpectral;
    default:
      return kExitNumerical;
  }
}

int fail(std::ostream& err, int code, const std::string& message) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "ERROR " << code << ": " << line << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted finite automata: evaluation, SVA canonical form, truncation bounds",
               "wfa-tool"};
  app.require_subcommand(1, 1);
  Flags f;

  struct Spec {
    const char* name;
    const char* help;
    void (*fn)(const Flags&, const Command&);
    bool nhat, tokens, depth, p, gram, other;
  };
  const Spec specs[] = {
      {"eval", "Evaluate f on one string", run_eval, false, true, false, false, false, false},
      {"minimize", "Minimal equivalent automaton", run_minimize, false, false, false, false,
       false, false},
      {"sva", "Singular value automaton", run_sva, false, false, false, false, true, false},
      {"singvals", "Hankel singular values", run_singvals, false, false, false, false, true,
       false},
      {"truncate", "Keep the leading nhat SVA states", run_truncate, true, false, false, false,
       true, false},
      {"bound", "Truncation error bound and measured error", run_bound, true, false, true, true,
       true, false},
      {"dist", "Squared l2 distance between two automata", run_dist, false, false, true, false,
       false, true},
      {"hankel", "Finite Hankel block up to a string length", run_hankel, false, false, true,
       false, false, false},
  };

  std::vector<std::pair<CLI::App*, const Spec*>> subs;
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--input", f.input, "Automaton document")->required();
    sub->add_option("--output", f.output, "Write result here instead of stdout");
    sub->add_option("--tol", f.tol, "Relative rank cutoff")
        ->check(CLI::Range(std::numeric_limits<double>::min(), 0.5));
    sub->add_flag("--strict", f.strict, "Reject unknown document fields");
    if (s.nhat) sub->add_option("--nhat", f.nhat, "Target state count")->required();
    if (s.tokens)
      sub->add_option("--string", f.tokens, "Space-separated symbols")->required();
    if (s.depth) sub->add_option("--depth", f.depth, "Maximum string length")
                     ->check(CLI::Range(0, 64));
    if (s.p) sub->add_option("--p", f.p, "Schatten exponent")
                 ->check(CLI::IsMember({"1", "2", "inf"}));
    if (s.gram) sub->add_option("--gram", f.gram, "Gram solver")
                    ->check(CLI::IsMember({"direct", "fixedpoint", "entrywise"}));
    if (s.other) sub->add_option("--other", f.other, "Second automaton document")->required();
    subs.emplace_back(sub, &s);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    return fail(err, kExitInput, e.what());
  }

  const Command cmd(f, out);
  try {
    for (auto& [sub, spec] : subs)
      if (sub->parsed()) spec->fn(f, cmd);
  } catch (const Unavailable& u) {
    return fail(err, kExitSpectral, u.message);
  } catch (const Error& e) {
    return fail(err, exit_code(e.kind()), std::string(to_string(e.kind())) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(err, kExitInput, std::string("malformed document: ") + e.what());
  } catch (const std::exception& e) {
    return fail(err, kExitNumerical, e.what());
  }
  return kExitOk;
}

}  // namespace wfa::cli
