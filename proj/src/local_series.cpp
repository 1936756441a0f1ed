#include "wmd/local_series.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace wmd {

namespace {

int remainder_mod(int k, int m) {
  int r = k % m;
  return r < 0 ? r + m : r;
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r = a;
  for (const auto& [e, c] : b) {
    auto it = r.find(e);
    if (it == r.end()) {
      if (!c.is_zero()) r.emplace(e, -c);
    } else {
      it->second += -c;
      if (it->second.is_zero()) r.erase(it);
    }
  }
  return r;
}

// a(x) * c * x^shift
UniPoly uni_shift_scale(const UniPoly& a, int shift, const GammaScalar& c) {
  UniPoly r;
  for (const auto& [e, v] : a) {
    GammaScalar w = v * c;
    if (!w.is_zero()) r.emplace(e + shift, w);
  }
  return r;
}

// a(1/(q^2 x)): x^e -> q^{-2e} x^{-e}.
UniPoly uni_invert(const UniPoly& a) {
  UniPoly r;
  for (const auto& [e, v] : a) r.emplace(-e, v.mul_q(-2 * e));
  return r;
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
  UniPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      GammaScalar c = ca * cb;
      if (c.is_zero()) continue;
      auto it = r.find(ea + eb);
      if (it == r.end()) {
        r.emplace(ea + eb, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

}  // namespace

GammaScalar HTable::at(const Weight& beta) const {
  auto it = coeffs.find(beta);
  return it == coeffs.end() ? GammaScalar::zero() : it->second;
}

nlohmann::json HTable::to_json() const {
  nlohmann::json out;
  out["ell"] = ell.ell;
  out["terms"] = nlohmann::json::array();
  for (const auto& [beta, c] : coeffs) {
    nlohmann::json t;
    t["exponent"] = beta;
    t["scalar"] = c.to_json();
    t["scalar_str"] = c.str();
    out["terms"].push_back(std::move(t));
  }
  return out;
}

HTable h_table(const ActionParams& params, long long budget) {
  AveragingResult avg = average_h(params, budget);
  HTable t;
  t.ell = params.tp;
  for (const auto& [beta, c] : avg.n_poly.terms()) t.coeffs.emplace(beta, c);
  return t;
}

Weight k_prime(const Weight& k, int i, const TwistParams& tp,
               const RootSystem& rs) {
  Weight kp = k;
  int v = -k[i] + tp.ell[i] + 1;
  for (int j = 0; j < rs.rank(); ++j)
    if (j != i) v -= k[j] * rs.cartan(j, i);
  kp[i] = v;
  return kp;
}

LocalSlice local_slice(const HTable& table, const Weight& k, int i,
                       const RootSystem& rs) {
  LocalSlice s;
  s.i = i;
  s.k = k;
  s.m = rs.m_simple(i);
  int res = remainder_mod(k[i], s.m);
  for (const auto& [beta, c] : table.coeffs) {
    bool match = beta[i] >= 0 && remainder_mod(beta[i], s.m) == res;
    for (int j = 0; match && j < static_cast<int>(beta.size()); ++j)
      if (j != i && beta[j] != k[j]) match = false;
    if (match) s.poly.emplace(beta[i], c);
  }
  return s;
}

LocalF local_f(const HTable& table, const Weight& k, int i,
               const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  LocalF f;
  f.i = i;
  f.k = k;
  f.kprime = k_prime(k, i, params.tp, rs);
  f.m = rs.m_simple(i);

  UniPoly main = local_slice(table, k, i, rs).poly;
  int diff = k[i] - f.kprime[i];
  if (remainder_mod(diff, f.m) == 0) {
    f.numer = main;
    return f;
  }
  // Gauss factor g(1, pi; eps^t) = q gamma(t), t = |a_i|^2 (k_i - k'_i).
  GammaScalar gauss =
      GammaScalar::gamma(static_cast<long long>(rs.norm2_simple(i)) * diff,
                         rs.n())
          .mul_q(1);
  GammaScalar factor = gauss.mul_q(remainder_mod(diff - 1, f.m));
  UniPoly other = local_slice(table, f.kprime, i, rs).poly;
  f.numer =
      uni_sub(main, uni_shift_scale(other, remainder_mod(diff, f.m), factor));
  return f;
}

FEReport verify_local_fe(const HTable& table, const Weight& k, int i,
                         const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  LocalF f = local_f(table, k, i, params);
  FEReport rep;
  int m = f.m;
  int l = params.tp.ell[i];
  int dres = remainder_mod(f.kprime[i] - k[i], m);
  // The reflection also rescales the frozen coordinates x_j by powers of
  // x_i; dividing out their common monomial shifts the exponent by
  // s = sum_{j != i} k_j c(j,i).  (With s = 0 this is the bare l+1-delta /
  // l+1-m dichotomy; note e = 2k_i mod m in all cases.)
  int s = 0;
  for (int j = 0; j < rs.rank(); ++j)
    if (j != i) s += k[j] * rs.cartan(j, i);
  rep.exponent = (dres != 0 ? l + 1 - dres : l + 1 - m) - s;

  if (f.numer.empty()) {
    rep.trivially_zero = true;
    rep.passed = true;
    return rep;
  }

  // f = A(x)/(1 - q^{m-1} x^m).  The claim f(x) = (qx)^e f(1/(q^2 x)) is
  // A(x) (1 - q^{-m-1} x^{-m}) = q^e x^e A(1/(q^2 x)) (1 - q^{m-1} x^m).
  UniPoly denom_x{{0, GammaScalar::one()},
                  {m, GammaScalar::integer(-1).mul_q(m - 1)}};
  UniPoly denom_inv{{0, GammaScalar::one()},
                    {-m, GammaScalar::integer(-1).mul_q(-m - 1)}};
  UniPoly lhs = uni_mul(f.numer, denom_inv);
  UniPoly rhs = uni_shift_scale(uni_mul(uni_invert(f.numer), denom_x),
                                rep.exponent, GammaScalar::q_power(rep.exponent));
  UniPoly residual = uni_sub(lhs, rhs);
  rep.passed = residual.empty();
  if (!rep.passed) {
    std::ostringstream os;
    os << "residual terms:";
    for (const auto& [e, c] : residual)
      os << " x^" << e << ": " << c.str() << ";";
    rep.detail = os.str();
  }
  return rep;
}

}  // namespace wmd
