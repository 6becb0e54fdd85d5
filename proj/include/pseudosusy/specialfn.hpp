#pragma once

// Special functions needed by the closed-form eigenfunctions: Gamma on the
// real line, and Jacobi / associated Laguerre polynomials at complex
// argument. All functions are pure and thread-safe.

#include "pseudosusy/types.hpp"

namespace psusy {

/// Gamma function for real x, |x| <= 30 to about 14 significant digits.
/// Lanczos (g = 7, 9 terms) for x >= 0.5, reflection below.
/// Throws PoleError when x is within 1e-12 of 0, -1, -2, ...
double gamma_real(double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); equals Gamma(a+n)/Gamma(a)
/// and stays finite when a is a non-positive integer.
double pochhammer(double a, int n);

/// Jacobi polynomial P_n^{(a,b)}(z) by the forward three-term recurrence.
/// a, b may be negative non-integers. When a recurrence coefficient
/// vanishes (n + a + b hits a small non-positive integer) the explicit
/// binomial sum is used instead.
Complex jacobi_poly(int n, double a, double b, Complex z);

/// Associated Laguerre polynomial L_n^{(sigma)}(z) by forward recurrence.
Complex laguerre_assoc(int n, double sigma, Complex z);

/// z^s on the principal branch, arg z in (-pi, pi]. A negative zero
/// imaginary part is treated as +0 so that the negative real axis maps to
/// arg = +pi. Throws DomainError for z = 0 with s <= 0.
Complex principal_power(Complex z, double s);

}  // namespace psusy
