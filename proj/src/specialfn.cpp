#include "pseudosusy/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pseudosusy/errors.hpp"

namespace psusy {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// sin(pi x) with the argument reduced exactly, so that values near the
// integers keep their relative accuracy.
double sin_pi(double x) {
  const double n = std::round(x);
  const double f = x - n;
  const double s = std::sin(std::numbers::pi * f);
  return (std::fmod(std::fabs(n), 2.0) == 1.0) ? -s : s;
}

double lanczos(double x) {
  x -= 1.0;
  double acc = kLanczosCoeff[0];
  for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
    acc += kLanczosCoeff[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) *
         std::exp(-t) * acc;
}

double binomial(double r, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) {
    out *= (r - i) / (i + 1);
  }
  return out;
}

Complex jacobi_binomial_sum(int n, double a, double b, Complex z) {
  const Complex lo = 0.5 * (z - 1.0);
  const Complex hi = 0.5 * (z + 1.0);
  Complex sum = 0.0;
  for (int s = 0; s <= n; ++s) {
    Complex term = binomial(n + a, n - s) * binomial(n + b, s);
    for (int k = 0; k < s; ++k) term *= lo;
    for (int k = 0; k < n - s; ++k) term *= hi;
    sum += term;
  }
  return sum;
}

}  // namespace

double gamma_real(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("gamma_real: non-finite argument");
  }
  if (x <= 0.0 && std::fabs(x - std::round(x)) <= 1e-12) {
    throw PoleError("gamma_real: pole at x = " + std::to_string(x));
  }
  if (x < 0.5) {
    return std::numbers::pi / (sin_pi(x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

double pochhammer(double a, int n) {
  if (n < 0) {
    throw ArgumentError("pochhammer: negative order");
  }
  double out = 1.0;
  for (int k = 0; k < n; ++k) {
    out *= a + k;
  }
  return out;
}

Complex jacobi_poly(int n, double a, double b, Complex z) {
  if (n < 0) {
    throw ArgumentError("jacobi_poly: negative degree");
  }
  if (n == 0) return 1.0;
  const Complex p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
  if (n == 1) return p1;

  const double ab = a + b;
  Complex prev = 1.0;
  Complex curr = p1;
  for (int k = 2; k <= n; ++k) {
    const double denom = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
    if (std::fabs(denom) < 1e-12) {
      return jacobi_binomial_sum(n, a, b, z);
    }
    const double c1 = 2.0 * k + ab - 1.0;
    const double c2 = (2.0 * k + ab) * (2.0 * k + ab - 2.0);
    const double c3 = a * a - b * b;
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + ab);
    const Complex next = (c1 * (c2 * z + c3) * curr - c4 * prev) / denom;
    prev = curr;
    curr = next;
  }
  return curr;
}

Complex laguerre_assoc(int n, double sigma, Complex z) {
  if (n < 0) {
    throw ArgumentError("laguerre_assoc: negative degree");
  }
  if (n == 0) return 1.0;
  Complex prev = 1.0;
  Complex curr = 1.0 + sigma - z;
  for (int k = 1; k < n; ++k) {
    const Complex next =
        ((2.0 * k + 1.0 + sigma - z) * curr - (k + sigma) * prev) /
        static_cast<double>(k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

Complex principal_power(Complex z, double s) {
  if (z == Complex(0.0, 0.0)) {
    if (s > 0.0) return 0.0;
    throw DomainError("principal_power: zero base with non-positive exponent");
  }
  if (z.imag() == 0.0) {
    z = Complex(z.real(), 0.0);
  }
  return std::exp(s * std::log(z));
}

}  // namespace psusy
