#include "pseudosusy/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "pseudosusy/errors.hpp"

namespace psusy {

namespace {

constexpr std::size_t kMaxDimension = 4096;
constexpr double kDeflateTol = 1e-14;
constexpr int kMaxSweepsPerDim = 60;
constexpr int kExceptionalEvery = 10;
constexpr int kInverseIterations = 4;
constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::fabs(z.real()) + std::fabs(z.imag()); }
double cabs(Complex z) { return std::sqrt(std::norm(z)); }

// Row-major square work matrix.
struct Work {
  std::size_t n = 0;
  std::vector<Complex> a;
  Complex& operator()(std::size_t r, std::size_t c) { return a[r * n + c]; }
  Complex operator()(std::size_t r, std::size_t c) const { return a[r * n + c]; }
};

// One Householder reflector I - tau v v^H acting on rows/cols [start, start + v.size()).
struct Reflector {
  std::size_t start = 0;
  double tau = 0.0;
  CVector v;
};

struct Reduced {
  Work h;                       // upper Hessenberg
  std::vector<Reflector> refl;  // Q = R_0 R_1 ... so that A_bal = Q H Q^H
  std::vector<double> scale;    // A_bal = D^{-1} A D with D = diag(scale)
};

// Parlett-Reinsch balancing with radix 2 (exact scalings).
std::vector<double> balance(Work& w) {
  const std::size_t n = w.n;
  std::vector<double> scale(n, 1.0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(w(j, i));
        r += abs1(w(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / 2.0;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= 2.0;
        c *= 4.0;
      }
      g = r * 2.0;
      while (c > g) {
        f /= 2.0;
        c /= 4.0;
      }
      if ((c + r) / f < 0.95 * s) {
        changed = true;
        scale[i] *= f;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) w(i, j) *= inv;
        for (std::size_t j = 0; j < n; ++j) w(j, i) *= f;
      }
    }
  }
  return scale;
}

// Householder reduction. Sub-columns are trimmed to their last nonzero
// entry, so banded inputs reduce in O(n^2 * bandwidth).
std::vector<Reflector> hessenberg(Work& w) {
  const std::size_t n = w.n;
  std::vector<Reflector> refl;
  std::vector<Complex> s(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::size_t last = k + 1;
    for (std::size_t r = n - 1; r > k + 1; --r) {
      if (w(r, k) != Complex(0.0)) {
        last = r;
        break;
      }
    }
    if (last == k + 1) continue;
    const std::size_t start = k + 1;
    const std::size_t len = last - start + 1;
    CVector v(len);
    double xnorm2 = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      v[t] = w(start + t, k);
      xnorm2 += std::norm(v[t]);
    }
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = v[0];
    const Complex phase = (x0 == Complex(0.0)) ? Complex(1.0) : x0 / cabs(x0);
    const Complex alpha = -phase * xnorm;
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const auto& x : v) vnorm2 += std::norm(x);
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;

    // Left: rows start..last, columns k..n-1.
    std::fill(s.begin() + static_cast<long>(k), s.end(), Complex(0.0));
    for (std::size_t t = 0; t < len; ++t) {
      const Complex cv = std::conj(v[t]);
      const Complex* row = &w.a[(start + t) * n];
      for (std::size_t j = k; j < n; ++j) s[j] += cv * row[j];
    }
    for (std::size_t t = 0; t < len; ++t) {
      const Complex tv = tau * v[t];
      Complex* row = &w.a[(start + t) * n];
      for (std::size_t j = k; j < n; ++j) row[j] -= tv * s[j];
    }
    // Right: all rows, columns start..last.
    for (std::size_t r = 0; r < n; ++r) {
      Complex* row = &w.a[r * n + start];
      Complex acc = 0.0;
      for (std::size_t t = 0; t < len; ++t) acc += row[t] * v[t];
      const Complex ta = tau * acc;
      for (std::size_t t = 0; t < len; ++t) row[t] -= ta * std::conj(v[t]);
    }
    w(start, k) = alpha;
    for (std::size_t r = start + 1; r <= last; ++r) w(r, k) = 0.0;
    refl.push_back({start, tau, std::move(v)});
  }
  return refl;
}

// Givens rotation [c s; -conj(s) c] mapping (x, y) to (r, 0), c real.
struct Givens {
  double c = 1.0;
  Complex s = 0.0;
};

Givens make_givens(Complex x, Complex y) {
  const double ax = cabs(x);
  const double ay = cabs(y);
  if (ay == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, 1.0};
  const double nrm = std::hypot(ax, ay);
  return {ax / nrm, (x / ax) * std::conj(y) / nrm};
}

// Rows k, k+1 for columns [c0, c1].
void rotate_rows(Work& h, const Givens& g, std::size_t k, std::size_t c0,
                 std::size_t c1) {
  Complex* r0 = &h.a[k * h.n];
  Complex* r1 = &h.a[(k + 1) * h.n];
  const Complex sc = std::conj(g.s);
  for (std::size_t j = c0; j <= c1; ++j) {
    const Complex a = r0[j];
    const Complex b = r1[j];
    r0[j] = g.c * a + g.s * b;
    r1[j] = g.c * b - sc * a;
  }
}

// Columns k, k+1 for rows [r0, r1] (right multiplication by G^H).
void rotate_cols(Work& h, const Givens& g, std::size_t k, std::size_t r0,
                 std::size_t r1) {
  const Complex sc = std::conj(g.s);
  for (std::size_t r = r0; r <= r1; ++r) {
    Complex* row = &h.a[r * h.n + k];
    const Complex a = row[0];
    const Complex b = row[1];
    row[0] = g.c * a + sc * b;
    row[1] = g.c * b - g.s * a;
  }
}

Complex wilkinson_shift(const Work& h, std::size_t hi) {
  const Complex a = h(hi - 1, hi - 1);
  const Complex b = h(hi - 1, hi);
  const Complex c = h(hi, hi - 1);
  const Complex d = h(hi, hi);
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mu1 = 0.5 * (a + d) + disc;
  const Complex mu2 = 0.5 * (a + d) - disc;
  return abs1(mu1 - d) < abs1(mu2 - d) ? mu1 : mu2;
}

// Implicit single-shift QR on the Hessenberg matrix; eigenvalues end up on
// the diagonal of the (quasi) Schur form. Only the active window is
// updated since no Schur vectors are accumulated.
std::vector<Complex> qr_eigenvalues(Work h) {
  const std::size_t n = h.n;
  std::vector<Complex> eig(n);
  if (n == 0) return eig;
  double hnorm = 0.0;
  for (const auto& x : h.a) hnorm = std::max(hnorm, abs1(x));
  const double small = std::max(hnorm, 1.0) * std::numeric_limits<double>::min();

  const long budget = static_cast<long>(kMaxSweepsPerDim) * static_cast<long>(n);
  long total = 0;
  int since_deflation = 0;
  long hi = static_cast<long>(n) - 1;
  while (hi >= 0) {
    // Locate the start of the unreduced block ending at hi.
    long lo = hi;
    while (lo > 0) {
      const auto l = static_cast<std::size_t>(lo);
      const double sub = cabs(h(l, l - 1));
      double ref = cabs(h(l - 1, l - 1)) + cabs(h(l, l));
      if (ref == 0.0) ref = hnorm;
      if (sub <= kDeflateTol * ref || sub <= small) {
        h(l, l - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[static_cast<std::size_t>(hi)] = h(static_cast<std::size_t>(hi),
                                            static_cast<std::size_t>(hi));
      --hi;
      since_deflation = 0;
      continue;
    }
    if (++total > budget) {
      throw ConvergenceError("complex QR: iteration budget exhausted");
    }
    ++since_deflation;
    const auto ulo = static_cast<std::size_t>(lo);
    const auto uhi = static_cast<std::size_t>(hi);
    Complex mu;
    if (since_deflation % kExceptionalEvery == 0) {
      mu = h(uhi, uhi) + 0.75 * abs1(h(uhi, uhi - 1));
    } else {
      mu = wilkinson_shift(h, uhi);
    }
    // First rotation from the shifted leading column, then bulge chase.
    Givens g = make_givens(h(ulo, ulo) - mu, h(ulo + 1, ulo));
    rotate_rows(h, g, ulo, ulo, uhi);
    rotate_cols(h, g, ulo, ulo, std::min(ulo + 2, uhi));
    for (std::size_t k = ulo + 1; k < uhi; ++k) {
      g = make_givens(h(k, k - 1), h(k + 1, k - 1));
      rotate_rows(h, g, k, k - 1, uhi);
      h(k + 1, k - 1) = 0.0;
      rotate_cols(h, g, k, ulo, std::min(k + 2, uhi));
    }
  }
  return eig;
}

Reduced reduce(const DenseMatrix& a, bool do_balance) {
  if (a.rows() != a.cols()) throw ArgumentError("eigen_dense: matrix not square");
  if (a.rows() > kMaxDimension) throw ArgumentError("eigen_dense: dimension above 4096");
  for (const auto& x : a.data()) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
      throw ArgumentError("eigen_dense: non-finite entry");
    }
  }
  Reduced out;
  out.h.n = a.rows();
  out.h.a = a.data();
  out.scale = do_balance ? balance(out.h) : std::vector<double>(a.rows(), 1.0);
  out.refl = hessenberg(out.h);
  return out;
}

// Solves (H - lambda I) y = b for upper Hessenberg H by Gaussian
// elimination with pivoting between adjacent rows. Tiny pivots are
// replaced by `tiny`, which is what makes the iteration converge onto the
// eigenvector instead of failing on the (near) singular system.
class HessenbergSolver {
 public:
  HessenbergSolver(const Work& h, Complex lambda, double tiny) : n_(h.n), u_(h.a) {
    for (std::size_t k = 0; k < n_; ++k) u_[k * n_ + k] -= lambda;
    mult_.assign(n_, 0.0);
    swapped_.assign(n_, false);
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      Complex* rk = &u_[k * n_];
      Complex* rn = &u_[(k + 1) * n_];
      if (abs1(rn[k]) > abs1(rk[k])) {
        for (std::size_t j = k; j < n_; ++j) std::swap(rk[j], rn[j]);
        swapped_[k] = true;
      }
      if (rk[k] == Complex(0.0) || abs1(rk[k]) < tiny) rk[k] = tiny;
      const Complex m = rn[k] / rk[k];
      mult_[k] = m;
      rn[k] = 0.0;
      if (m != Complex(0.0)) {
        for (std::size_t j = k + 1; j < n_; ++j) rn[j] -= m * rk[j];
      }
    }
    if (n_ > 0) {
      Complex& last = u_[(n_ - 1) * n_ + n_ - 1];
      if (last == Complex(0.0) || abs1(last) < tiny) last = tiny;
    }
  }

  void solve(CVector& b) const {
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      if (swapped_[k]) std::swap(b[k], b[k + 1]);
      b[k + 1] -= mult_[k] * b[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      const Complex* row = &u_[k * n_];
      Complex acc = b[k];
      for (std::size_t j = k + 1; j < n_; ++j) acc -= row[j] * b[j];
      b[k] = acc / row[k];
    }
  }

 private:
  std::size_t n_;
  std::vector<Complex> u_;
  std::vector<Complex> mult_;
  std::vector<bool> swapped_;
};

void normalize(CVector& v) {
  const double nv = norm2(v);
  if (nv > 0.0) {
    for (auto& x : v) x /= nv;
  }
}

// x <- Q y with Q = R_0 R_1 ... R_{m-1}.
void apply_q(const std::vector<Reflector>& refl, CVector& y) {
  for (std::size_t k = refl.size(); k-- > 0;) {
    const auto& r = refl[k];
    Complex acc = 0.0;
    for (std::size_t t = 0; t < r.v.size(); ++t) acc += std::conj(r.v[t]) * y[r.start + t];
    const Complex ta = r.tau * acc;
    for (std::size_t t = 0; t < r.v.size(); ++t) y[r.start + t] -= ta * r.v[t];
  }
}

double pair_residual(const DenseMatrix& a, Complex lambda, const CVector& v,
                     double anorm) {
  CVector av = a.apply(v);
  for (std::size_t k = 0; k < v.size(); ++k) av[k] -= lambda * v[k];
  return anorm > 0.0 ? norm2(av) / anorm : norm2(av);
}

// Eigenvector for one eigenvalue: inverse iteration on the balanced
// Hessenberg matrix, then back to the original basis.
CVector eigenvector(const DenseMatrix& a, const Reduced& red, Complex lambda,
                    double anorm, double hnorm, double tol) {
  const std::size_t n = red.h.n;
  const double tiny = std::max(hnorm, 1.0) * kEps;
  // A relative nudge keeps the shifted system away from exact singularity.
  const Complex shifted = lambda + Complex(tiny, 0.0);
  const HessenbergSolver solver(red.h, shifted, tiny);
  CVector y(n);
  for (std::size_t k = 0; k < n; ++k) {
    y[k] = Complex(1.0, 0.0) / std::sqrt(static_cast<double>(n)) *
           (1.0 + 0.1 * std::sin(static_cast<double>(k + 1)));
  }
  CVector x;
  for (int it = 0; it < kInverseIterations; ++it) {
    solver.solve(y);
    normalize(y);
    x = y;
    apply_q(red.refl, x);
    for (std::size_t k = 0; k < n; ++k) x[k] *= red.scale[k];
    normalize(x);
    if (it >= 1 && pair_residual(a, lambda, x, anorm) <= 0.01 * tol) break;
  }
  return x;
}

Spectrum run(const DenseMatrix& a, const std::function<bool(Complex)>* select,
             bool all_vectors, const EigenOptions& options) {
  Reduced red = reduce(a, options.balance);
  const auto values = qr_eigenvalues(red.h);
  Spectrum out;
  out.dimension = a.rows();
  out.matrix_norm = a.frobenius_norm();
  out.has_vectors = all_vectors || select != nullptr;
  double hnorm = 0.0;
  for (const auto& x : red.h.a) hnorm += std::norm(x);
  hnorm = std::sqrt(hnorm);
  out.pairs.reserve(values.size());
  for (const auto& lambda : values) {
    EigenPair p;
    p.value = lambda;
    if (all_vectors || (select != nullptr && (*select)(lambda))) {
      p.vector = eigenvector(a, red, lambda, out.matrix_norm, hnorm, options.tol_eig);
      p.residual = pair_residual(a, lambda, p.vector, out.matrix_norm);
      p.converged = p.residual <= options.tol_eig;
    }
    out.pairs.push_back(std::move(p));
  }
  sort_spectrum(out);
  return out;
}

}  // namespace

std::vector<Complex> Spectrum::values() const {
  std::vector<Complex> v;
  v.reserve(pairs.size());
  for (const auto& p : pairs) v.push_back(p.value);
  return v;
}

void sort_spectrum(Spectrum& s) {
  std::stable_sort(s.pairs.begin(), s.pairs.end(),
                   [](const EigenPair& x, const EigenPair& y) {
                     if (x.value.real() != y.value.real()) {
                       return x.value.real() < y.value.real();
                     }
                     return x.value.imag() < y.value.imag();
                   });
}

Spectrum eigen_dense(const DenseMatrix& a, bool want_vectors,
                     const EigenOptions& options) {
  return run(a, nullptr, want_vectors, options);
}

Spectrum eigen_dense(const BandMatrix& a, bool want_vectors,
                     const EigenOptions& options) {
  return eigen_dense(a.to_dense(), want_vectors, options);
}

Spectrum eigen_dense_selected(const DenseMatrix& a,
                              const std::function<bool(Complex)>& select,
                              const EigenOptions& options) {
  return run(a, &select, false, options);
}

Spectrum eigen_dense_selected(const BandMatrix& a,
                              const std::function<bool(Complex)>& select,
                              const EigenOptions& options) {
  return eigen_dense_selected(a.to_dense(), select, options);
}

namespace {

// Greedy global assignment: candidate pairs in order of increasing
// distance, each index used at most once. Ties break on indices so the
// result is deterministic.
std::vector<std::pair<std::size_t, std::size_t>> greedy_assign(
    const std::vector<Complex>& a, const std::vector<Complex>& b,
    const std::function<bool(std::size_t, std::size_t, double)>& admissible) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> cand;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = cabs(a[i] - b[j]);
      if (admissible(i, j, d)) cand.emplace_back(d, i, j);
    }
  }
  std::sort(cand.begin(), cand.end());
  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [d, i, j] : cand) {
    if (used_a[i] || used_b[j]) continue;
    used_a[i] = used_b[j] = true;
    out.emplace_back(i, j);
  }
  return out;
}

}  // namespace

Spectrum filter_physical(const Spectrum& coarse, const Spectrum& fine,
                         double tol_match, std::optional<double> threshold) {
  const auto fv = fine.values();
  const auto cv = coarse.values();
  const auto assigned = greedy_assign(
      fv, cv, [&](std::size_t i, std::size_t, double d) {
        if (threshold && !(fv[i].real() < *threshold)) return false;
        return d <= tol_match * (1.0 + cabs(fv[i]));
      });
  std::vector<bool> keep(fv.size(), false);
  for (const auto& [i, j] : assigned) keep[i] = true;
  Spectrum out;
  out.dimension = fine.dimension;
  out.matrix_norm = fine.matrix_norm;
  out.has_vectors = fine.has_vectors;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (keep[i]) out.pairs.push_back(fine.pairs[i]);
  }
  sort_spectrum(out);
  return out;
}

bool is_zero_mode(Complex value, double matrix_norm) {
  return cabs(value) <= kZeroModeRelTol * matrix_norm;
}

MatchResult match_spectra(const Spectrum& a, const Spectrum& b,
                          bool drop_zero_modes) {
  MatchResult out;
  std::vector<Complex> va;
  std::vector<Complex> vb;
  for (const auto& p : a.pairs) {
    if (drop_zero_modes && is_zero_mode(p.value, a.matrix_norm)) {
      out.zero_modes_a.push_back(p.value);
    } else {
      va.push_back(p.value);
    }
  }
  for (const auto& p : b.pairs) {
    if (drop_zero_modes && is_zero_mode(p.value, b.matrix_norm)) {
      out.zero_modes_b.push_back(p.value);
    } else {
      vb.push_back(p.value);
    }
  }
  const auto assigned =
      greedy_assign(va, vb, [](std::size_t, std::size_t, double) { return true; });
  std::vector<bool> used_a(va.size(), false);
  std::vector<bool> used_b(vb.size(), false);
  for (const auto& [i, j] : assigned) {
    used_a[i] = used_b[j] = true;
    out.matched.push_back({va[i], vb[j], cabs(va[i] - vb[j])});
  }
  std::sort(out.matched.begin(), out.matched.end(),
            [](const MatchedPair& x, const MatchedPair& y) {
              if (x.a.real() != y.a.real()) return x.a.real() < y.a.real();
              return x.a.imag() < y.a.imag();
            });
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (!used_a[i]) out.unmatched_a.push_back(va[i]);
  }
  for (std::size_t j = 0; j < vb.size(); ++j) {
    if (!used_b[j]) out.unmatched_b.push_back(vb[j]);
  }
  return out;
}

}  // namespace psusy
