#pragma once

// Complex polynomials, rational functions and finite Blaschke products.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gammainterp/errors.hpp"
#include "gammainterp/linalg.hpp"

namespace gammainterp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline cplx unit(double angle) { return std::polar(1.0, angle); }

inline double wrap_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

/// Equispaced points on the unit circle, starting at 1.
inline std::vector<cplx> circle_samples(int count, double offset = 0.0) {
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) pts.push_back(unit(offset + kTwoPi * k / count));
  return pts;
}

namespace detail {
// Entries whose magnitude is at rounding level relative to the terms that
// produced them are set to exact zero; this keeps degrees honest after
// cancelling arithmetic.
inline constexpr double kRoundoffFactor = 64.0 * std::numeric_limits<double>::epsilon();
}  // namespace detail

/// Polynomial with complex coefficients in ascending powers. The stored
/// coefficient vector never has a trailing zero; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(cplx value) { return Poly(std::vector<cplx>{value}); }
  static Poly monomial(int power, cplx coeff = 1.0) {
    std::vector<cplx> c(static_cast<std::size_t>(power) + 1, 0.0);
    c.back() = coeff;
    return Poly(std::move(c));
  }
  static Poly from_roots(std::span<const cplx> roots, cplx leading = 1.0) {
    std::vector<cplx> c{leading};
    for (cplx r : roots) {
      std::vector<cplx> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= r * c[i];
      }
      c = std::move(next);
    }
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : cplx{};
  }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }

  cplx operator()(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Sum of |c_k||z|^k, the natural scale for residuals at z.
  double magnitude_at(cplx z) const {
    double acc = 0.0;
    const double r = std::abs(z);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (cplx v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly(std::move(d));
  }

  /// lambda^n * conj(P(1/conj(lambda))), for n >= degree.
  Poly reflected(int n) const {
    std::vector<cplx> r(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= degree(); ++k) r[static_cast<std::size_t>(n - k)] = std::conj(coeff(k));
    return Poly(std::move(r));
  }

  /// Number of exactly vanishing low-order coefficients (multiplicity of 0).
  int low_order_zeros() const {
    int k = 0;
    while (k < static_cast<int>(c_.size()) && c_[static_cast<std::size_t>(k)] == cplx{}) ++k;
    return k;
  }

  /// Exact division by lambda^k; requires k <= low_order_zeros().
  Poly shifted_down(int k) const {
    if (k <= 0) return *this;
    return Poly(std::vector<cplx>(c_.begin() + std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(c_.size())), c_.end()));
  }

  Poly shifted_up(int k) const {
    if (is_zero() || k <= 0) return *this;
    std::vector<cplx> r(static_cast<std::size_t>(k), 0.0);
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(std::move(r));
  }

  /// Zero out coefficients below rel_tol * max |coeff|.
  Poly chopped(double rel_tol) const {
    const double cut = rel_tol * max_abs_coeff();
    std::vector<cplx> r = c_;
    for (cplx& v : r)
      if (std::abs(v) <= cut) v = 0.0;
    return Poly(std::move(r));
  }

  Poly conj_coeffs() const {
    std::vector<cplx> r = c_;
    for (cplx& v : r) v = std::conj(v);
    return Poly(std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, 1.0); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, -1.0); }
  friend Poly operator-(const Poly& a) { return a * cplx(-1.0); }
  friend Poly operator*(const Poly& a, cplx s) {
    std::vector<cplx> r = a.c_;
    for (cplx& v : r) v *= s;
    return Poly(std::move(r));
  }
  friend Poly operator*(cplx s, const Poly& a) { return a * s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const std::size_t n = a.c_.size() + b.c_.size() - 1;
    std::vector<cplx> r(n, 0.0);
    std::vector<double> mag(n, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        const cplx t = a.c_[i] * b.c_[j];
        r[i + j] += t;
        mag[i + j] += std::abs(t);
      }
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(r[k]) <= detail::kRoundoffFactor * mag[k]) r[k] = 0.0;
    return Poly(std::move(r));
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  static Poly combine(const Poly& a, const Poly& b, double sign) {
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    std::vector<cplx> r(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx x = k < a.c_.size() ? a.c_[k] : cplx{};
      const cplx y = k < b.c_.size() ? b.c_[k] : cplx{};
      r[k] = x + sign * y;
      if (std::abs(r[k]) <= detail::kRoundoffFactor * (std::abs(x) + std::abs(y))) r[k] = 0.0;
    }
    return Poly(std::move(r));
  }

  void trim() {
    while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
  }

  std::vector<cplx> c_;
};

/// Polynomial long division a = q*b + r with deg r < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("divmod: division by the zero polynomial");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<cplx> rem = a.coeffs();
  const int db = b.degree();
  std::vector<cplx> q(static_cast<std::size_t>(a.degree() - db) + 1, 0.0);
  for (int k = a.degree() - db; k >= 0; --k) {
    const cplx t = rem[static_cast<std::size_t>(k + db)] / b.leading();
    q[static_cast<std::size_t>(k)] = t;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= t * b.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

/// Remove one linear factor (lambda - r); recurrence direction chosen for
/// stability (top-down for |r| <= 1, bottom-up otherwise). The remainder is
/// discarded.
inline Poly deflate(const Poly& p, cplx r) {
  const int n = p.degree();
  if (n < 1) return p;
  std::vector<cplx> q(static_cast<std::size_t>(n), 0.0);
  if (std::abs(r) <= 1.0) {
    q[static_cast<std::size_t>(n - 1)] = p.coeff(n);
    for (int k = n - 1; k >= 1; --k)
      q[static_cast<std::size_t>(k - 1)] = p.coeff(k) + r * q[static_cast<std::size_t>(k)];
  } else {
    q[0] = -p.coeff(0) / r;
    for (int k = 1; k < n; ++k)
      q[static_cast<std::size_t>(k)] = (q[static_cast<std::size_t>(k - 1)] - p.coeff(k)) / r;
  }
  return Poly(std::move(q));
}

/// All roots with multiplicity. Exact zero roots are split off first; the
/// rest come from companion-matrix eigenvalues followed by two guarded
/// Newton steps.
inline std::vector<cplx> roots(const Poly& p) {
  if (p.is_zero()) throw PreconditionError("roots: zero polynomial has no finite root set");
  const int z = p.low_order_zeros();
  std::vector<cplx> out(static_cast<std::size_t>(z), cplx{});
  const Poly q = p.shifted_down(z);
  const int n = q.degree();
  if (n <= 0) return out;
  if (n == 1) {
    out.push_back(-q.coeff(0) / q.coeff(1));
    return out;
  }
  CMatrix companion = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -q.coeff(i) / q.leading();
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("roots: companion eigenvalue iteration did not converge");
  const Poly dq = q.derivative();
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx r = solver.eigenvalues()(i);
    for (int step = 0; step < 2; ++step) {
      const cplx f = q(r);
      const cplx df = dq(r);
      if (df == cplx{}) break;
      const cplx cand = r - f / df;
      if (std::abs(q(cand)) < std::abs(f)) r = cand;
      else break;
    }
    out.push_back(r);
  }
  return out;
}

/// Ratio of polynomials; the denominator is kept monic.
class RationalFn {
 public:
  RationalFn() : num_(), den_(Poly::constant(1.0)) {}
  RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
  explicit RationalFn(Poly num) : RationalFn(std::move(num), Poly::constant(1.0)) {}

  static RationalFn constant(cplx c) { return RationalFn(Poly::constant(c)); }
  static RationalFn identity() { return RationalFn(Poly::monomial(1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  /// max(deg num, deg den), with the zero function of degree 0.
  int degree() const { return std::max(std::max(num_.degree(), 0), den_.degree()); }
  bool is_zero() const { return num_.is_zero(); }

  cplx operator()(cplx z) const { return num_(z) / den_(z); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ - b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator*(cplx s, const RationalFn& a) { return RationalFn(a.num_ * s, a.den_); }
  friend RationalFn operator*(const RationalFn& a, cplx s) { return s * a; }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw PreconditionError("RationalFn: division by zero function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RationalFn operator+(const RationalFn& a, cplx c) { return a + RationalFn::constant(c); }
  friend RationalFn operator-(cplx c, const RationalFn& a) { return RationalFn::constant(c) - a; }

  /// f(g(lambda)) for rational g.
  RationalFn compose(const RationalFn& g) const {
    const int n = degree();
    auto homogenize = [&](const Poly& p) {
      Poly acc;
      Poly gn = Poly::constant(1.0);
      std::vector<Poly> num_pows{gn};
      for (int k = 1; k <= n; ++k) num_pows.push_back(num_pows.back() * g.num());
      std::vector<Poly> den_pows{gn};
      for (int k = 1; k <= n; ++k) den_pows.push_back(den_pows.back() * g.den());
      for (int k = 0; k <= p.degree(); ++k)
        acc = acc + num_pows[static_cast<std::size_t>(k)] * den_pows[static_cast<std::size_t>(n - k)] * p.coeff(k);
      return acc;
    };
    return RationalFn(homogenize(num_), homogenize(den_));
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw PreconditionError("RationalFn: zero denominator");
    const cplx lead = den_.leading();
    if (lead != cplx(1.0)) {
      num_ = num_ * (1.0 / lead);
      den_ = den_ * (1.0 / lead);
    }
  }

  Poly num_;
  Poly den_;
};

struct ReducedRational {
  RationalFn value;
  int cancellations = 0;
};

/// Coprime representation by cancelling paired numerator/denominator roots.
/// Two roots pair when they agree to pairing_tol (relative to max(1,|r|)),
/// or, for clustered multiple roots, when both polynomials nearly vanish at
/// the midpoint.
inline ReducedRational reduce_rational(const RationalFn& f, double pairing_tol = 1e-8) {
  if (f.is_zero()) return {RationalFn::constant(0.0), 0};
  Poly num = f.num();
  Poly den = f.den();
  int cancelled = 0;

  const int common_zero = std::min(num.low_order_zeros(), den.low_order_zeros());
  if (common_zero > 0) {
    num = num.shifted_down(common_zero);
    den = den.shifted_down(common_zero);
    cancelled += common_zero;
  }
  if (num.degree() < 1 || den.degree() < 1) return {RationalFn(num, den), cancelled};

  const std::vector<cplx> zn = roots(num);
  const std::vector<cplx> zd = roots(den);
  struct Candidate {
    double dist;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < zn.size(); ++i)
    for (std::size_t j = 0; j < zd.size(); ++j) {
      const double scale = std::max(1.0, std::abs(zd[j]));
      const double d = std::abs(zn[i] - zd[j]) / scale;
      if (d <= std::max(pairing_tol, 1e-5)) cands.push_back({d, i, j});
    }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return std::pair(a.i, a.j) < std::pair(b.i, b.j);
  });
  std::vector<bool> used_n(zn.size(), false), used_d(zd.size(), false);
  std::vector<cplx> common;
  for (const Candidate& c : cands) {
    if (used_n[c.i] || used_d[c.j]) continue;
    const cplx mid = 0.5 * (zn[c.i] + zd[c.j]);
    bool accept = c.dist <= pairing_tol;
    if (!accept) {
      const double rn = std::abs(num(mid)) / std::max(num.magnitude_at(mid), 1e-300);
      const double rd = std::abs(den(mid)) / std::max(den.magnitude_at(mid), 1e-300);
      accept = rn <= 1e-10 && rd <= 1e-10;
    }
    if (!accept) continue;
    used_n[c.i] = used_d[c.j] = true;
    common.push_back(mid);
  }
  for (cplx r : common) {
    num = deflate(num, r);
    den = deflate(den, r);
  }
  cancelled += static_cast<int>(common.size());
  return {RationalFn(num, den), cancelled};
}

/// Finite Blaschke product e^{i phase} * prod (lambda - a)/(1 - conj(a) lambda).
class BlaschkeProduct {
 public:
  static constexpr double kBoundaryGuard = 1e-10;

  BlaschkeProduct() = default;
  BlaschkeProduct(double phase, std::vector<cplx> zeros) : phase_(wrap_angle(phase)), zeros_(std::move(zeros)) {
    for (cplx a : zeros_)
      if (!(std::abs(a) < 1.0 - kBoundaryGuard))
        throw PreconditionError("BlaschkeProduct: zero on or outside the unit circle");
  }

  static BlaschkeProduct unimodular(cplx c) { return BlaschkeProduct(std::arg(c), {}); }
  static BlaschkeProduct factor(cplx a, double phase = 0.0) { return BlaschkeProduct(phase, {a}); }
  static BlaschkeProduct identity() { return factor(0.0); }
  /// c * lambda^k
  static BlaschkeProduct power(int k, cplx c = 1.0) {
    return BlaschkeProduct(std::arg(c), std::vector<cplx>(static_cast<std::size_t>(k), cplx{}));
  }

  double phase() const { return phase_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  cplx operator()(cplx z) const {
    cplx v = unit(phase_);
    for (cplx a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
  }

  RationalFn to_rational() const {
    std::vector<cplx> poles;
    cplx scale = unit(phase_);
    for (cplx a : zeros_) {
      if (a == cplx{}) continue;
      poles.push_back(1.0 / std::conj(a));
      scale *= -1.0 / std::conj(a);  // 1 - conj(a) z = -conj(a) (z - 1/conj(a))
    }
    return RationalFn(Poly::from_roots(zeros_, scale), Poly::from_roots(poles));
  }

  friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    std::vector<cplx> z = a.zeros_;
    z.insert(z.end(), b.zeros_.begin(), b.zeros_.end());
    return BlaschkeProduct(a.phase_ + b.phase_, std::move(z));
  }

 private:
  double phase_ = 0.0;
  std::vector<cplx> zeros_;
};

inline constexpr int kInnerSamples = 64;
inline constexpr double kUnimodularTol = 1e-8;

/// (phase, zeros) form of f when f is a finite Blaschke product.
inline std::optional<BlaschkeProduct> classify_inner(const RationalFn& f) {
  if (f.is_zero()) return std::nullopt;
  std::vector<cplx> zs = roots(f.num().chopped(1e-13));
  for (cplx a : zs)
    if (!(std::abs(a) < 1.0 - BlaschkeProduct::kBoundaryGuard)) return std::nullopt;

  const Poly den = f.den().chopped(1e-13);
  if (den.degree() > 0) {
    // Each pole must be the reflection 1/conj(a) of a zero. Zeros very near 0
    // may have lost their (huge) reflected pole to roundoff.
    std::vector<cplx> poles = roots(den);
    std::vector<bool> used(zs.size(), false);
    for (std::size_t k = 0; k < zs.size(); ++k) used[k] = std::abs(zs[k]) <= 1e-12;
    for (cplx pole : poles) {
      if (std::abs(pole) <= 1.0) return std::nullopt;
      bool matched = false;
      for (std::size_t k = 0; k < zs.size() && !matched; ++k) {
        if (used[k]) continue;
        if (std::abs(pole - 1.0 / std::conj(zs[k])) <= 1e-6 * std::max(1.0, std::abs(pole))) used[k] = matched = true;
      }
      if (!matched) return std::nullopt;
    }
    for (std::size_t k = 0; k < zs.size(); ++k)
      if (!used[k] && std::abs(zs[k]) > 1e-6) return std::nullopt;
  } else {
    // Polynomial: a monomial, whose order-k zero at 0 roundoff may split into tiny roots.
    for (cplx& a : zs) {
      if (std::abs(a) > 1e-7) return std::nullopt;
      a = 0.0;
    }
  }

  const BlaschkeProduct b(0.0, zs);
  const std::vector<cplx> pts = circle_samples(kInnerSamples, 0.1);
  const cplx c0 = f(pts[0]) / b(pts[0]);
  if (std::abs(std::abs(c0) - 1.0) > kUnimodularTol) return std::nullopt;
  for (cplx z : pts) {
    const cplx c = f(z) / b(z);
    if (std::abs(c - c0) > kUnimodularTol) return std::nullopt;
  }
  return BlaschkeProduct(std::arg(c0), zs);
}

/// Phase derivative d/dtheta arg f(e^{i theta}) of a Blaschke product.
inline double phasar_derivative(const BlaschkeProduct& f, cplx lambda) {
  double acc = 0.0;
  for (cplx a : f.zeros()) acc += (1.0 - std::norm(a)) / std::norm(1.0 - std::conj(a) * lambda);
  return acc;
}

namespace detail {
using Mobius = std::array<cplx, 4>;  // (a z + b) / (c z + d)

inline Mobius compose(const Mobius& f, const Mobius& g) {
  return {f[0] * g[0] + f[1] * g[2], f[0] * g[1] + f[1] * g[3], f[2] * g[0] + f[3] * g[2],
          f[2] * g[1] + f[3] * g[3]};
}
inline Mobius inverse(const Mobius& f) { return {f[3], -f[1], -f[2], f[0]}; }
// Sends z1 -> 0, z2 -> 1, z3 -> infinity.
inline Mobius cross_ratio_map(cplx z1, cplx z2, cplx z3) {
  return {z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
}
inline double orientation(const std::array<cplx, 3>& t) {
  return std::imag(std::conj(t[1] - t[0]) * (t[2] - t[0]));
}
inline void require_distinct(const std::array<cplx, 3>& t, const char* what) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(t[static_cast<std::size_t>(i)] - t[static_cast<std::size_t>(j)]) < 1e-12)
        throw PreconditionError(what);
}
}  // namespace detail

/// True iff both triples of circle points run in the same rotational sense.
inline bool same_cyclic_order(const std::array<cplx, 3>& a, const std::array<cplx, 3>& b) {
  detail::require_distinct(a, "same_cyclic_order: coincident points");
  detail::require_distinct(b, "same_cyclic_order: coincident points");
  return (detail::orientation(a) > 0.0) == (detail::orientation(b) > 0.0);
}

/// The disc automorphism sending src[k] to dst[k], if one exists.
inline std::optional<BlaschkeProduct> mobius_from_boundary_triple(const std::array<cplx, 3>& src,
                                                                  const std::array<cplx, 3>& dst) {
  detail::require_distinct(src, "mobius_from_boundary_triple: coincident source points");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(dst[static_cast<std::size_t>(i)] - dst[static_cast<std::size_t>(j)]) < 1e-12) return std::nullopt;
  if (!same_cyclic_order(src, dst)) return std::nullopt;
  const detail::Mobius m = detail::compose(detail::inverse(detail::cross_ratio_map(dst[0], dst[1], dst[2])),
                                           detail::cross_ratio_map(src[0], src[1], src[2]));
  if (std::abs(m[0]) < 1e-300) return std::nullopt;
  const cplx zero = -m[1] / m[0];
  if (!(std::abs(zero) < 1.0 - BlaschkeProduct::kBoundaryGuard)) return std::nullopt;
  const cplx at = src[0];
  const cplx value = (m[0] * at + m[1]) / (m[2] * at + m[3]);
  const cplx factor = (at - zero) / (1.0 - std::conj(zero) * at);
  return BlaschkeProduct(std::arg(value / factor), {zero});
}

}  // namespace gammainterp
