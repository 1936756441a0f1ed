#pragma once

#include <utility>
#include <vector>

#include "wmd/cg_action.hpp"

namespace wmd {

/// j(w,x) = sgn(w) q^{d(beta)} x^beta with beta = sum of m(alpha)alpha over
/// the inversion set of w.
LaurentPoly j_cocycle(const WeylElement& w, const RootSystem& rs);

/// Factors of Delta = prod_{alpha>0} (1 - q^{m(alpha)d(alpha)} x^{m(alpha)alpha}).
std::vector<BinomialFactor> delta_factors(const RootSystem& rs);
/// Factors of D, same vectors with q-exponent m(alpha)d(alpha) - 1.
std::vector<BinomialFactor> d_factors(const RootSystem& rs);

struct AveragingResult {
  GradedRational h;
  LaurentPoly n_poly;  // N(x;ell) = h * D, certified polynomial
  std::vector<BinomialFactor> delta;
  std::vector<BinomialFactor> dpoly;
  std::vector<std::pair<WeylElement, GradedRational>> per_w_terms;
};

/// h(x;ell) = Delta^{-1} sum_w j(w,x) (1|_ell w)(x), with N extracted by a
/// certified exact division.  Throws DivisibilityError if the divisibility
/// guaranteed by the construction fails (an implementation-bug signal).
AveragingResult average_h(const ActionParams& params, long long budget = 60000);

/// Restriction of h to the x_i axis (all other variables set to 0), returned
/// as numerator over the single surviving denominator factor.
GradedRational axis_specialization(const AveragingResult& result, int i,
                                   const ActionParams& params);

/// Closed form (1 + gamma(|a_i|^2) q x_i) / (1 - q^{m-1} x_i^m) that the
/// untwisted axis restriction must equal.
GradedRational axis_closed_form(int i, const RootSystem& rs);

/// Check Delta(x) = sum_w j(w,x) exactly.
bool sum_j_equals_delta(const RootSystem& rs, long long budget = 60000);

struct CharacterOracle {
  LaurentPoly character;  // exponents in the root basis scaled by `scale`
  long long scale = 1;    // |det Cartan|
  long long dim = 0;
};

/// Classical Weyl character formula for the representation with lowest
/// weight -theta, theta = sum (l_i + 1) omega_i.  Requires n = 1.
CharacterOracle weyl_character_oracle(const TwistParams& tp,
                                      const RootSystem& rs);

/// Same oracle for an arbitrary dominant highest weight sum lam[i] omega_i.
CharacterOracle weyl_character_oracle_hw(const std::vector<int>& lam,
                                         const RootSystem& rs);

/// n = 1 degeneration of the construction.  Machine-checkable content of the
/// character identification: N is divisible by D (so h is a polynomial);
/// h(1,...,1) at q = 1 equals the dimension of the representation whose
/// Weyl-numerator shift is theta, i.e. highest weight sum l_i omega_i; and
/// the exponent support of N equals the weight support of V_theta translated
/// to lowest weight 0.  Note N(1,...,1) itself vanishes at q = 1 since
/// D(1,...,1) does.
struct DegenerationReport {
  bool h_polynomial = false;
  long long h_at_one = 0;
  long long dim_lower = 0;  // dim V_{sum l_i omega_i}
  long long dim_theta = 0;  // dim V_theta, theta = sum (l_i+1) omega_i
  bool dims_match = false;
  bool support_match = false;
  bool passed() const { return h_polynomial && dims_match && support_match; }
};
DegenerationReport n1_degeneration(const AveragingResult& result,
                                   const ActionParams& params);

/// Evaluate a polynomial with gamma-free coefficients at x = 1, q = 1.
Rational eval_at_one(const LaurentPoly& f);

/// Per-generator exact checks h|sigma_i = h (cross-multiplied).
std::vector<std::pair<int, bool>> verify_invariance(
    const AveragingResult& result, const ActionParams& params);

}  // namespace wmd
