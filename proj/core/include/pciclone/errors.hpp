// Copyright 2026 The pciclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCICLONE_ERRORS_HPP
#define PCICLONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pciclone {

/// Argument outside the physical or mathematical domain of an operation
/// (bad dimensions, M < N, negative gain, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string &what) : std::invalid_argument(what) {}
};

/// An iterative search stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string &what) : std::runtime_error(what) {}
};

/// Default tolerances. Structural checks (canonicity, symplecticity) use
/// `kStructuralTol`; closed-form identities use `kIdentityTol`.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kIdentityTol = 1e-12;

}  // namespace pciclone

#endif  // PCICLONE_ERRORS_HPP
