// Copyright 2026 The thetaphase Authors
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

#ifndef THETAPHASE_COMMON_HPP
#define THETAPHASE_COMMON_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace thetaphase {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define THETAPHASE_DEFINE_ERROR(Name) \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

THETAPHASE_DEFINE_ERROR(NonconvergentTau);
THETAPHASE_DEFINE_ERROR(TruncationOverflow);
THETAPHASE_DEFINE_ERROR(InvalidArgument);
THETAPHASE_DEFINE_ERROR(DimensionMismatch);
THETAPHASE_DEFINE_ERROR(ZeroCountMismatch);
THETAPHASE_DEFINE_ERROR(NonconvergedNewton);
THETAPHASE_DEFINE_ERROR(ConstraintViolation);
THETAPHASE_DEFINE_ERROR(NonGenericFiducial);
THETAPHASE_DEFINE_ERROR(ParseError);
THETAPHASE_DEFINE_ERROR(IoError);
THETAPHASE_DEFINE_ERROR(ConfigError);

#undef THETAPHASE_DEFINE_ERROR

/// Largest entrywise modulus of a - b.
template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Canonical representative of m in {0, ..., d-1}.
inline long long mod_floor(long long m, long long d) {
  const long long r = m % d;
  return r < 0 ? r + d : r;
}

}  // namespace thetaphase

#endif  // THETAPHASE_COMMON_HPP
