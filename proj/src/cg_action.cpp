#include "wmd/cg_action.hpp"

#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wmd {

int mu(const Weight& beta, int i, const TwistParams& tp, const RootSystem& rs) {
  return height(dot_action_simple(i, beta, tp, rs) - beta);
}

namespace {

int remainder_mod(int k, int m) {
  int r = k % m;
  return r < 0 ? r + m : r;
}

// (qx_i)^e as a rank-r monomial.
LaurentPoly qx_power(int i, int e, int rank) {
  Weight v(rank, 0);
  v[i] = e;
  return LaurentPoly::monomial(v, GammaScalar::q_power(e));
}

BinomialFactor pq_denominator(int i, int m, int rank) {
  Weight v(rank, 0);
  v[i] = m;
  return BinomialFactor{m - 1, v};  // 1 - (qx)^m / q
}

}  // namespace

GradedRational p_factor(const Weight& beta, int i, const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  int m = rs.m_simple(i);
  int l = params.tp.ell[i];
  int e = l + 1 - remainder_mod(mu(beta, i, params.tp, rs), m);
  GammaScalar one_minus_qinv =
      GammaScalar::one() - GammaScalar::q_power(-1);
  LaurentPoly num = qx_power(i, e, rs.rank()).scaled(one_minus_qinv);
  GradedRational r(std::move(num));
  r.push_denominator(pq_denominator(i, m, rs.rank()));
  return r;
}

GradedRational q_factor(const Weight& beta, int i, const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  int m = rs.m_simple(i);
  int l = params.tp.ell[i];
  int mu_val = mu(beta, i, params.tp, rs);
  GammaScalar g = GammaScalar::gamma(
      -static_cast<long long>(rs.norm2_simple(i)) * mu_val, rs.n());
  // -(gamma) (qx)^{l+1-m} (1 - (qx)^m)
  LaurentPoly num =
      (qx_power(i, l + 1 - m, rs.rank()) - qx_power(i, l + 1, rs.rank()))
          .scaled(-g);
  GradedRational r(std::move(num));
  r.push_denominator(pq_denominator(i, m, rs.rank()));
  return r;
}

GradedRational apply_sigma(const GradedRational& f, int i,
                           const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  if (f.is_zero()) return f;
  WeylElement si = WeylElement::simple(i, rs);

  // Denominators are supported on Lambda', so the grading of f is carried
  // entirely by the numerator.
  auto parts = grade_decompose(f.numer(), rs);
  GradedRational result;
  for (const auto& [cls, part] : parts) {
    const Weight& beta = part.terms().begin()->first;  // class representative
    Weight beta_dot = dot_action_simple(i, beta, params.tp, rs);
    GradedRational pq = p_factor(beta, i, params) + q_factor(beta_dot, i, params);
    GradedRational sub =
        GradedRational(part, f.denom()).substitute_weyl(si, rs);
    result = result + pq * sub;
  }
  result.normalize();
  return result;
}

GradedRational apply_word(const GradedRational& f, const std::vector<int>& word,
                          const ActionParams& params) {
  GradedRational r = f;
  for (int i : word) r = apply_sigma(r, i, params);
  return r;
}

bool RelationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json RelationReport::to_json() const {
  nlohmann::json out;
  out["seed"] = seed;
  out["relations"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json r;
    r["i"] = c.i + 1;
    r["j"] = c.j + 1;
    r["order"] = c.order;
    r["samples"] = c.samples;
    r["status"] = c.passed ? "pass" : "fail";
    if (!c.passed) r["counterexample"] = c.counterexample;
    out["relations"].push_back(std::move(r));
  }
  out["all_passed"] = all_passed();
  return out;
}

RelationReport verify_relations(const ActionParams& params, int samples,
                                std::uint64_t seed) {
  const RootSystem& rs = *params.rs;
  RelationReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> exp_dist(-3, 3);

  for (int i = 0; i < rs.rank(); ++i) {
    for (int j = i + 1; j < rs.rank(); ++j) {
      RelationCheck check;
      check.i = i;
      check.j = j;
      check.order = rs.relation_order(i, j);
      check.samples = samples;
      check.passed = true;
      std::vector<int> word;
      for (int k = 0; k < check.order; ++k) {
        word.push_back(i);
        word.push_back(j);
      }
      for (int s = 0; s < samples && check.passed; ++s) {
        Weight beta(rs.rank());
        for (int k = 0; k < rs.rank(); ++k) beta[k] = exp_dist(rng);
        GradedRational f(LaurentPoly::monomial(beta, GammaScalar::one()));
        GradedRational image = apply_word(f, word, params);
        if (!image.equals(f)) {
          check.passed = false;
          std::ostringstream os;
          os << "seed=" << seed << " sample=" << s << " monomial=x^[";
          for (std::size_t k = 0; k < beta.size(); ++k)
            os << (k ? "," : "") << beta[k];
          os << "]";
          check.counterexample = os.str();
        }
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace wmd
