// Copyright 2026 The mmw-mobility Authors
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

#ifndef MMW_QUADRATURE_HPP_
#define MMW_QUADRATURE_HPP_

#include <cmath>
#include <functional>

namespace mmw {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated |S2 - S1| / 15 over leaves
  bool converged = true;        // false if any leaf hit max_depth
};

// Adaptive Simpson bisection with Richardson correction.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(double abs_tolerance, int max_depth = 60)
      : tol_(abs_tolerance), max_depth_(max_depth) {}

  template <typename F>
  QuadratureResult Integrate(F&& f, double a, double b) const {
    QuadratureResult out;
    if (a == b) return out;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    out.value = Recurse(f, a, b, fa, fm, fb, whole, tol_, max_depth_, out);
    return out;
  }

 private:
  template <typename F>
  double Recurse(F& f, double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth,
                 QuadratureResult& acc) const {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0 || m == a || m == b) {
      if (depth <= 0 && std::abs(delta) > 15.0 * tol) acc.converged = false;
      acc.error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return Recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc) +
           Recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
  }

  double tol_;
  int max_depth_;
};

}  // namespace mmw

#endif  // MMW_QUADRATURE_HPP_
