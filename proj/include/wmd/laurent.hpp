#pragma once

#include <map>
#include <optional>
#include <vector>

#include "wmd/rootsys.hpp"
#include "wmd/scalars.hpp"

namespace wmd {

/// Sparse Laurent polynomial over the gamma/q coefficient ring, exponents
/// in the simple-root basis.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(int rank) : rank_(rank) {}

  static LaurentPoly zero(int rank) { return LaurentPoly(rank); }
  static LaurentPoly constant(int rank, GammaScalar c);
  static LaurentPoly one(int rank) {
    return constant(rank, GammaScalar::one());
  }
  static LaurentPoly monomial(Weight beta, GammaScalar c);

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Weight, GammaScalar>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  GammaScalar coeff(const Weight& beta) const;
  void add_term(const Weight& beta, const GammaScalar& c);

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(const GammaScalar& c) const;
  bool operator==(const LaurentPoly& o) const;
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  /// Monomial-wise x^beta -> q^{d(w^{-1}beta - beta)} x^{w^{-1}beta}.
  LaurentPoly substitute_weyl(const WeylElement& w, const RootSystem& rs) const;

  nlohmann::json to_json() const;
  std::string str() const;

 private:
  int rank_ = 0;
  std::map<Weight, GammaScalar> terms_;
};

/// The factor 1 - q^qexp * x^vec.
struct BinomialFactor {
  int qexp = 0;
  Weight vec;

  auto operator<=>(const BinomialFactor&) const = default;
  LaurentPoly expand(int rank) const;
};

LaurentPoly expand_product(int rank, const std::vector<BinomialFactor>& fs);

struct DivisibilityError : Error {
  DivisibilityError(std::string msg, LaurentPoly rem)
      : Error(std::move(msg)), remainder(std::move(rem)) {}
  LaurentPoly remainder;
};

/// Certified exact division of f by (1 - q^e x^v); throws DivisibilityError
/// carrying the nonzero remainder otherwise.
LaurentPoly exact_divide(const LaurentPoly& f, const BinomialFactor& b);
std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& f,
                                            const BinomialFactor& b);

/// Split f by the class of its exponents in Lambda/Lambda'.
std::map<Weight, LaurentPoly> grade_decompose(const LaurentPoly& f,
                                              const RootSystem& rs);

/// numer / prod(1 - q^e x^v) with every denominator vector in Lambda'.
/// Denominator factors are kept as an explicit multiset; nothing cancels
/// silently.
class GradedRational {
 public:
  GradedRational() = default;
  explicit GradedRational(LaurentPoly numer) : numer_(std::move(numer)) {}
  GradedRational(LaurentPoly numer, std::vector<BinomialFactor> denom);

  const LaurentPoly& numer() const { return numer_; }
  const std::vector<BinomialFactor>& denom() const { return denom_; }
  bool is_zero() const { return numer_.is_zero(); }

  /// Append a denominator factor, reorienting it to the canonical positive
  /// direction (unit monomials move into the numerator).
  void push_denominator(BinomialFactor b);

  GradedRational operator+(const GradedRational& o) const;
  GradedRational operator*(const GradedRational& o) const;
  GradedRational scaled(const GammaScalar& c) const;

  GradedRational substitute_weyl(const WeylElement& w,
                                 const RootSystem& rs) const;

  /// Cancel denominator factors that exactly divide the numerator.
  void normalize();

  /// Exact equality as rational functions, by cross-multiplication.
  bool equals(const GradedRational& o) const;

 private:
  LaurentPoly numer_;
  std::vector<BinomialFactor> denom_;  // sorted multiset
};

}  // namespace wmd
