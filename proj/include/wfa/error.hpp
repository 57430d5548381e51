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

#ifndef WFA_ERROR_HPP
#define WFA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wfa {

enum class ErrorKind {
  kInput,              // malformed arguments, dimension or alphabet mismatch
  kSpectralCondition,  // a series would not converge under the required radius
  kNotPsd,             // Gram matrix with a significant negative eigenvalue
  kNotMinimal,         // rank-deficient factorization
  kNonConvergence,     // iteration budget exhausted
  kSingular,           // linear system singular to tolerance
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_input(const std::string& what) {
  throw Error(ErrorKind::kInput, what);
}

}  // namespace wfa

#endif  // WFA_ERROR_HPP
