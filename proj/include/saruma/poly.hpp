#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "saruma/errors.hpp"

namespace saruma {

// Default relative tolerance for deflation and exact division. The factors
// produced by the recursions are exact in exact arithmetic but drift with
// degree, so the tolerance is a parameter everywhere it matters.
inline constexpr double kDeflationTol = 1e-8;

// Real polynomial c0 + c1 z + ... + cn z^n in the backshift variable with
// the constant term fixed to 1, i.e. the filter form 1 - P(z). Construction
// normalises by c0 (which must be nonzero) and drops trailing coefficients
// that are exactly zero, so the stored degree is honest. The degree-0
// polynomial [1] is the multiplicative identity.
class FilterPoly {
 public:
  FilterPoly() : coeffs_{1.0} {}

  explicit FilterPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error("FilterPoly: empty coefficient list");
    for (double c : coeffs_)
      if (!std::isfinite(c)) throw NonFinite("FilterPoly: non-finite coefficient");
    const double c0 = coeffs_.front();
    if (c0 == 0.0) throw Error("FilterPoly: constant term must be nonzero");
    if (c0 != 1.0) {
      for (double& c : coeffs_) c /= c0;
      coeffs_.front() = 1.0;
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }

  // Coefficient of z^k; zero past the stored degree.
  double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  double max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  friend bool operator==(const FilterPoly& a, const FilterPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  std::vector<double> coeffs_;
};

// All complex roots of a real-coefficient polynomial, multiplicity by
// repetition. The set is closed under conjugation up to solver noise.
struct ComplexRootSet {
  std::vector<std::complex<double>> roots;

  std::size_t size() const { return roots.size(); }
};

inline std::complex<double> eval(const FilterPoly& p, std::complex<double> z) {
  const auto& c = p.coeffs();
  std::complex<double> acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

inline double eval(const FilterPoly& p, double z) {
  const auto& c = p.coeffs();
  double acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

// Coefficient convolution; degrees add and the constant term stays 1.
inline FilterPoly mul(const FilterPoly& p, const FilterPoly& q) {
  const auto& a = p.coeffs();
  const auto& b = q.coeffs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return FilterPoly(std::move(out));
}

// Substitutes z -> z^s, interleaving zeros between the original
// coefficients. Used to lift seasonal polynomials onto the plain lag scale.
inline FilterPoly embed_season(const FilterPoly& p, std::size_t s) {
  if (s == 0) throw Error("embed_season: season must be >= 1");
  if (s == 1) return p;
  const auto& c = p.coeffs();
  std::vector<double> out(p.degree() * s + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) out[k * s] = c[k];
  return FilterPoly(std::move(out));
}

// Multiplicity of the root at +1 (at = +1) or -1 (at = -1), found by
// repeated synthetic division: keep deflating while the remainder stays
// below tol * (1 + max |coeff|) of the current polynomial. Deflation is
// preferred over derivative tests because it also yields the deflated
// factor needed downstream.
inline std::size_t unit_multiplicity(const FilterPoly& p, int at,
                                     double tol = kDeflationTol) {
  if (at != 1 && at != -1) throw Error("unit_multiplicity: 'at' must be +1 or -1");
  if (!(tol > 0.0)) throw Error("unit_multiplicity: tol must be positive");
  const double a = static_cast<double>(at);
  std::vector<double> cur = p.coeffs();
  std::size_t count = 0;
  while (cur.size() > 1) {
    double maxc = 0.0;
    for (double c : cur) maxc = std::max(maxc, std::abs(c));
    // Synthetic division by (z - a); the remainder is the value at z = a.
    std::vector<double> b(cur.size() - 1);
    b.back() = cur.back();
    for (std::size_t k = cur.size() - 2; k >= 1; --k) b[k - 1] = cur[k] + a * b[k];
    const double rem = cur[0] + a * b[0];
    if (std::abs(rem) > tol * (1.0 + maxc)) break;
    // (1 -+ z) = -a (z - a), so fold the sign into the quotient to keep the
    // constant term at 1.
    for (double& c : b) c *= -a;
    cur = std::move(b);
    ++count;
  }
  return count;
}

// Quotient q with num = den * q, verified by requiring every remainder
// coefficient to stay below tol * (1 + max |num coeff|). The quotient is
// found as the least-squares solution of the convolution system rather
// than by sequential long division, which is unstable when the divisor has
// roots well inside the unit circle.
inline FilterPoly divide_exact(const FilterPoly& num, const FilterPoly& den,
                               double tol = kDeflationTol) {
  if (!(tol > 0.0)) throw Error("divide_exact: tol must be positive");
  if (den.degree() > num.degree())
    throw NotAFactor("divide_exact: divisor degree exceeds dividend degree");
  const auto& nc = num.coeffs();
  const auto& dc = den.coeffs();
  const std::size_t nq = num.degree() - den.degree();

  Eigen::MatrixXd conv = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nc.size()),
                                               static_cast<Eigen::Index>(nq + 1));
  for (std::size_t j = 0; j <= nq; ++j)
    for (std::size_t i = 0; i < dc.size(); ++i)
      conv(static_cast<Eigen::Index>(i + j), static_cast<Eigen::Index>(j)) = dc[i];
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(nc.size()));
  for (std::size_t i = 0; i < nc.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = nc[i];

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(conv, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd q = svd.solve(rhs);
  const double worst = (rhs - conv * q).cwiseAbs().maxCoeff();
  if (worst > tol * (1.0 + num.max_abs_coeff()))
    throw NotAFactor("divide_exact: remainder " + std::to_string(worst) +
                         " exceeds tolerance",
                     worst);
  return FilterPoly(std::vector<double>(q.data(), q.data() + q.size()));
}

// All complex roots via companion-matrix eigenvalues. This is the
// verification oracle of the library; it is not on any critical path, so
// the O(n^3) eigensolve is fine.
inline ComplexRootSet roots(const FilterPoly& p) {
  const std::size_t n = p.degree();
  if (n == 0) throw Error("roots: degree must be >= 1");
  const auto& c = p.coeffs();
  const double lead = c[n];
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                    static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) =
        -c[i] / lead;
  for (std::size_t i = 1; i < n; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw RootSolveError("roots: companion eigenvalue iteration failed");
  const auto& ev = solver.eigenvalues();
  ComplexRootSet out;
  out.roots.reserve(n);
  for (Eigen::Index i = 0; i < ev.size(); ++i) out.roots.emplace_back(ev(i));
  return out;
}

}  // namespace saruma
