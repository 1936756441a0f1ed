#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wmd/laurent.hpp"

namespace wmd {

struct ActionParams {
  const RootSystem* rs = nullptr;
  TwistParams tp;
};

/// mu_{l,i}(beta) = d(sigma_i . beta - beta).
int mu(const Weight& beta, int i, const TwistParams& tp, const RootSystem& rs);

/// P_{beta,l,i}(x_i) = (qx)^{l_i+1-(mu)_m} (1-1/q) / (1-(qx)^m/q).
GradedRational p_factor(const Weight& beta, int i, const ActionParams& params);

/// Q_{beta,l,i}(x_i) = -gamma(-|a_i|^2 mu) (qx)^{l_i+1-m} (1-(qx)^m) /
///                     (1-(qx)^m/q).
GradedRational q_factor(const Weight& beta, int i, const ActionParams& params);

/// The |_l action of the generator sigma_i, extended linearly over the
/// Lambda/Lambda' grading.
GradedRational apply_sigma(const GradedRational& f, int i,
                           const ActionParams& params);

/// Left-to-right composition: apply_word(f, {i, j}) = (f|sigma_i)|sigma_j.
GradedRational apply_word(const GradedRational& f, const std::vector<int>& word,
                          const ActionParams& params);

struct RelationCheck {
  int i = 0;
  int j = 0;
  int order = 0;
  int samples = 0;
  bool passed = false;
  std::string counterexample;  // empty when passed
};

struct RelationReport {
  std::uint64_t seed = 0;
  std::vector<RelationCheck> checks;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Check (f|(sigma_i sigma_j)^{r(i,j)}) = f on seeded random Laurent
/// monomials with exponents in [-3,3]^r, for every generator pair.
RelationReport verify_relations(const ActionParams& params, int samples,
                                std::uint64_t seed);

}  // namespace wmd
