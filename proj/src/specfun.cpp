// Copyright 2026 The optokerr Authors
//
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

#include "optokerr/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "optokerr/errors.hpp"

namespace optokerr {

double log_factorial(int n) {
  if (n < 0) {
    throw DomainError("log_factorial: negative argument");
  }
  if (n < 2) {
    return 0.0;
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double laguerre_assoc(int n, int k, double x) {
  if (n < 0) {
    throw DomainError("laguerre_assoc: negative degree");
  }
  double prev = 1.0;
  if (n == 0) {
    return prev;
  }
  double cur = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite(int n, double x) {
  if (n < 0) {
    throw DomainError("hermite: negative degree");
  }
  double prev = 1.0;
  if (n == 0) {
    return prev;
  }
  double cur = 2.0 * x;
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_function(int n, double x) {
  // Normalized recurrence ψ_{j+1} = sqrt(2/(j+1)) x ψ_j − sqrt(j/(j+1)) ψ_{j−1}
  // would avoid large H_n, but H_n stays finite for the cutoffs used here and
  // the log-space normalization keeps the prefactor representable.
  const double h = hermite(n, x);
  if (h == 0.0) {
    return 0.0;
  }
  const double log_norm = -0.5 * (0.5 * std::log(std::numbers::pi) +
                                   n * std::numbers::ln2 + log_factorial(n));
  const double mag = std::exp(std::log(std::abs(h)) - 0.5 * x * x + log_norm);
  return h < 0.0 ? -mag : mag;
}

cplx displacement_element(int n, int l, cplx x) {
  if (n < 0 || l < 0) {
    throw DomainError("displacement_element: negative Fock index");
  }
  const double r2 = std::norm(x);
  if (r2 == 0.0) {
    return n == l ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
  }
  const int lo = std::min(n, l);
  const int k = std::abs(n - l);
  const double lag = laguerre_assoc(lo, k, r2);
  if (lag == 0.0) {
    return {0.0, 0.0};
  }
  // sqrt(lo!/hi!) |x|^k e^{−|x|²/2} |L|, assembled as one exponent.
  const double log_mag = 0.5 * (log_factorial(lo) - log_factorial(lo + k)) +
                         0.5 * k * std::log(r2) - 0.5 * r2 + std::log(std::abs(lag));
  const double mag = std::exp(log_mag) * (lag < 0.0 ? -1.0 : 1.0);
  // Phase of (−x*)^k for l ≥ n and of x^k for n > l.
  const double arg = std::arg(x);
  const double phase = l >= n ? k * (std::numbers::pi - arg) : k * arg;
  return std::polar(mag, phase);
}

Eigen::MatrixXcd displacement_matrix(int dim, cplx x) {
  if (dim < 0) {
    throw DomainError("displacement_matrix: negative dimension");
  }
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
  const double r2 = std::norm(x);
  if (r2 == 0.0) {
    d.setIdentity();
    return d;
  }
  std::vector<double> lf(static_cast<std::size_t>(dim) + 1);
  for (int i = 0; i <= dim; ++i) {
    lf[i] = log_factorial(i);
  }
  const double log_r2 = std::log(r2);
  const double arg = std::arg(x);
  // Each diagonal n − l = ±k shares L^k; run its recurrence once along lo.
  for (int k = 0; k < dim; ++k) {
    const cplx up = std::polar(1.0, k * arg);                      // n > l
    const cplx down = std::polar(1.0, k * (std::numbers::pi - arg));  // l ≥ n
    double prev = 0.0;
    double cur = 1.0;
    for (int lo = 0; lo + k < dim; ++lo) {
      if (lo == 1) {
        prev = cur;
        cur = 1.0 + k - r2;
      } else if (lo > 1) {
        const int j = lo - 1;
        const double next = ((2.0 * j + 1.0 + k - r2) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
      }
      const double log_pref = 0.5 * (lf[lo] - lf[lo + k]) + 0.5 * k * log_r2 - 0.5 * r2;
      const double mag = std::exp(log_pref) * cur;
      d(lo, lo + k) = mag * down;
      if (k > 0) {
        d(lo + k, lo) = mag * up;
      }
    }
  }
  return d;
}

cplx franck_condon(int n, int m, int l, int m_prime, const SystemParams& p) {
  const double shift = xi_m(m_prime, p) - xi_m(m, p);
  return displacement_element(n, l, cplx{shift, 0.0});
}

double franck_condon_lamb_dicke(int n, int m, int l, int m_prime, const SystemParams& p) {
  const double diff = xi_m(m, p) - xi_m(m_prime, p);
  double v = n == l ? 1.0 : 0.0;
  if (n == l + 1) {
    v -= diff * std::sqrt(l + 1.0);
  }
  if (n == l - 1) {
    v += diff * std::sqrt(static_cast<double>(l));
  }
  return v;
}

}  // namespace optokerr
