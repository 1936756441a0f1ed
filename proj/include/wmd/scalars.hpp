#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace wmd {

using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Monomial q^qexp * g_1^gexp[0] * ... * g_G^gexp[G-1] in the canonical
/// generators g_i = gamma(i), 1 <= i <= floor(n/2).
struct GammaMonomial {
  int qexp = 0;
  std::vector<int> gexp;

  auto operator<=>(const GammaMonomial&) const = default;
};

class NumericGammaContext;

/// Element of the coefficient ring generated by q^{+-1} and the gamma(i),
/// subject to gamma(0) = -1 and gamma(i)gamma(-i) = 1/q.  Stored as a
/// canonicalized term map; the degree n of the relations travels with the
/// value (n == 0 means "plain q-monomial constant", compatible with any n).
class GammaScalar {
 public:
  GammaScalar() = default;

  static GammaScalar zero() { return GammaScalar(); }
  static GammaScalar one() { return integer(1); }
  static GammaScalar integer(long long v);
  static GammaScalar rational(Rational v);
  static GammaScalar q_power(int e);
  /// gamma(i) for the cover degree n, reduced to canonical generators.
  static GammaScalar gamma(long long i, int n);

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const GammaScalar& o) const;
  bool operator!=(const GammaScalar& o) const { return !(*this == o); }

  GammaScalar operator+(const GammaScalar& o) const;
  GammaScalar operator-(const GammaScalar& o) const;
  GammaScalar operator-() const;
  GammaScalar operator*(const GammaScalar& o) const;
  GammaScalar& operator+=(const GammaScalar& o);

  /// Multiply by q^e.
  GammaScalar mul_q(int e) const;

  /// Inverse of a single-term scalar.  Multi-term inversion is rejected.
  GammaScalar inverse() const;

  int degree_n() const { return n_; }
  const std::map<GammaMonomial, Rational>& terms() const { return terms_; }

  std::complex<double> eval(const NumericGammaContext& ctx) const;

  std::string str() const;
  nlohmann::json to_json() const;

 private:
  void insert_term(GammaMonomial m, Rational c);
  static GammaMonomial canonicalize(GammaMonomial m, int n);
  static int merge_n(int a, int b);

  int n_ = 0;
  std::map<GammaMonomial, Rational> terms_;
};

/// Numeric realization of the gamma(i) as normalized Gauss sums over the
/// field with q elements (q prime, q = 1 mod 2n).
class NumericGammaContext {
 public:
  static NumericGammaContext build(long long q, int n);

  /// Context for a prime of degree d: |pi| = q^d with externally supplied
  /// normalized Gauss sums.
  static NumericGammaContext with_values(double qnorm, int n,
                                         std::vector<std::complex<double>> g);

  double q() const { return q_; }
  int n() const { return n_; }
  std::complex<double> gamma_value(long long i) const;

 private:
  double q_ = 0;
  int n_ = 0;
  std::vector<std::complex<double>> gamma_values_;
};

bool is_prime(long long q);
long long smallest_generator(long long q);

}  // namespace wmd
