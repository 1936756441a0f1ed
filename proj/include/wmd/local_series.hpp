#pragma once

#include <map>
#include <string>

#include "wmd/averaging.hpp"

namespace wmd {

/// Coefficient table of N(x;ell): beta -> H(pi^beta; pi^ell).
struct HTable {
  TwistParams ell;
  std::map<Weight, GammaScalar> coeffs;

  GammaScalar at(const Weight& beta) const;
  nlohmann::json to_json() const;
};

HTable h_table(const ActionParams& params, long long budget = 60000);

/// Single-variable polynomial, exponent -> coefficient.
using UniPoly = std::map<int, GammaScalar>;

/// k' = (k_1,..., -k_i + l_i + 1 - sum_{j!=i} k_j c(j,i), ..., k_r).
Weight k_prime(const Weight& k, int i, const TwistParams& tp,
               const RootSystem& rs);

/// Slice of the table along direction i: off-axis exponents frozen at k_j,
/// i-th exponent running over k_i mod m(alpha_i).
struct LocalSlice {
  int i = 0;
  Weight k;
  int m = 1;
  UniPoly poly;
};

LocalSlice local_slice(const HTable& table, const Weight& k, int i,
                       const RootSystem& rs);

/// f^{(pi;k)} = (slice(k) - [correction] * slice(k')) / (1 - q^{m-1} x^m).
/// The correction carries the Gauss factor q*gamma(|a_i|^2 (k_i - k'_i)),
/// dropped when k_i = k'_i mod m.
struct LocalF {
  int i = 0;
  Weight k;
  Weight kprime;
  int m = 1;
  UniPoly numer;  // over the fixed denominator 1 - q^{m-1} x^m
};

LocalF local_f(const HTable& table, const Weight& k, int i,
               const ActionParams& params);

struct FEReport {
  bool trivially_zero = false;  // f = 0: nothing to verify
  bool passed = false;
  int exponent = 0;  // e in f(x) = (qx)^e f(1/(q^2 x))
  std::string detail;
};

/// Functional equation f(x) = (qx)^e f(1/(q^2 x)), checked as a
/// cross-multiplied Laurent-polynomial identity.
FEReport verify_local_fe(const HTable& table, const Weight& k, int i,
                         const ActionParams& params);

}  // namespace wmd
