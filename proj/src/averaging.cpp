#include "wmd/averaging.hpp"

#include <algorithm>
#include <set>

namespace wmd {

LaurentPoly j_cocycle(const WeylElement& w, const RootSystem& rs) {
  Weight beta(rs.rank(), 0);
  for (const Weight& alpha : inversion_set(w, rs))
    beta = beta + rs.m_of(alpha) * alpha;
  GammaScalar c = GammaScalar::integer(w.sign()).mul_q(height(beta));
  return LaurentPoly::monomial(beta, c);
}

std::vector<BinomialFactor> delta_factors(const RootSystem& rs) {
  std::vector<BinomialFactor> fs;
  for (const Weight& alpha : rs.positive_roots()) {
    int m = rs.m_of(alpha);
    fs.push_back(BinomialFactor{m * height(alpha), m * alpha});
  }
  std::sort(fs.begin(), fs.end());
  return fs;
}

std::vector<BinomialFactor> d_factors(const RootSystem& rs) {
  std::vector<BinomialFactor> fs;
  for (const Weight& alpha : rs.positive_roots()) {
    int m = rs.m_of(alpha);
    fs.push_back(BinomialFactor{m * height(alpha) - 1, m * alpha});
  }
  std::sort(fs.begin(), fs.end());
  return fs;
}

AveragingResult average_h(const ActionParams& params, long long budget) {
  const RootSystem& rs = *params.rs;
  AveragingResult out;
  out.delta = delta_factors(rs);
  out.dpoly = d_factors(rs);

  GradedRational one(LaurentPoly::one(rs.rank()));
  GradedRational sum;
  for (const WeylElement& w : weyl_enumerate(rs, budget)) {
    GradedRational term =
        GradedRational(j_cocycle(w, rs)) * apply_word(one, w.word(), params);
    term.normalize();
    out.per_w_terms.emplace_back(w, term);
    sum = sum + term;
  }

  GradedRational h(sum.numer(), sum.denom());
  for (const auto& b : out.delta) h.push_denominator(b);
  h.normalize();
  out.h = h;

  // N = h * D.  Cancel shared factors first, then certify the rest by
  // exact division.
  std::vector<BinomialFactor> dleft = out.dpoly;
  std::vector<BinomialFactor> denom_left;
  for (const auto& b : h.denom()) {
    auto it = std::find(dleft.begin(), dleft.end(), b);
    if (it != dleft.end())
      dleft.erase(it);
    else
      denom_left.push_back(b);
  }
  LaurentPoly num = h.numer() * expand_product(rs.rank(), dleft);
  for (const auto& b : denom_left) num = exact_divide(num, b);
  out.n_poly = num;
  return out;
}

GradedRational axis_specialization(const AveragingResult& result, int i,
                                   const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  for (int l : params.tp.ell)
    if (l != 0) throw Error("axis specialization requires ell = 0");
  LaurentPoly num(rs.rank());
  for (const auto& [beta, c] : result.n_poly.terms()) {
    bool on_axis = true;
    for (int j = 0; j < rs.rank(); ++j)
      if (j != i && beta[j] != 0) on_axis = false;
    if (on_axis) num.add_term(beta, c);
  }
  // The only D-factor supported on the x_i axis is the alpha_i one.
  int m = rs.m_simple(i);
  Weight v(rs.rank(), 0);
  v[i] = m;
  GradedRational r(std::move(num));
  r.push_denominator(BinomialFactor{m - 1, v});
  return r;
}

GradedRational axis_closed_form(int i, const RootSystem& rs) {
  int m = rs.m_simple(i);
  // For m = 1 the numerator and denominator cancel: m(alpha_i) = 1 forces
  // gamma(|alpha_i|^2) = gamma(0) = -1, and the restriction collapses to 1.
  // (The generic closed form assumes (1)_m = 1, which fails at m = 1.)
  if (m == 1) return GradedRational(LaurentPoly::one(rs.rank()));
  LaurentPoly num = LaurentPoly::one(rs.rank());
  Weight e(rs.rank(), 0);
  e[i] = 1;
  num.add_term(e, GammaScalar::gamma(rs.norm2_simple(i), rs.n()).mul_q(1));
  Weight v(rs.rank(), 0);
  v[i] = m;
  GradedRational r(std::move(num));
  r.push_denominator(BinomialFactor{m - 1, v});
  return r;
}

bool sum_j_equals_delta(const RootSystem& rs, long long budget) {
  LaurentPoly sum(rs.rank());
  for (const WeylElement& w : weyl_enumerate(rs, budget))
    sum = sum + j_cocycle(w, rs);
  return sum == expand_product(rs.rank(), delta_factors(rs));
}

namespace {

// Root-basis coordinates of sum dual[i] * omega_i, scaled by |det C^T| so
// they are integers.  Returns the scale and the scaled coordinates.
std::pair<long long, std::vector<long long>> scaled_weight(
    const std::vector<int>& dual, const RootSystem& rs) {
  int r = rs.rank();
  // Solve C^T c = dual over the rationals (C^T[i][j] = cartan(j,i)).
  std::vector<std::vector<Rational>> a(
      static_cast<std::size_t>(r),
      std::vector<Rational>(static_cast<std::size_t>(r) + 1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) a[i][j] = rs.cartan(j, i);
    a[i][r] = dual[i];
  }
  Rational det = 1;
  for (int col = 0; col < r; ++col) {
    int piv = col;
    while (piv < r && a[piv][col] == 0) ++piv;
    if (piv == r) throw Error("singular Cartan matrix");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int i = 0; i < r; ++i) {
      if (i == col) continue;
      Rational f = a[i][col] / a[col][col];
      for (int j = col; j <= r; ++j) a[i][j] -= f * a[col][j];
    }
  }
  long long scale = static_cast<long long>(
      boost::multiprecision::abs(boost::multiprecision::numerator(det)));
  std::vector<long long> c(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) {
    Rational v = a[i][r] / a[i][i] * scale;
    if (boost::multiprecision::denominator(v) != 1)
      throw Error("weight scaling failed");
    c[i] = static_cast<long long>(boost::multiprecision::numerator(v));
  }
  return {scale, c};
}

}  // namespace

CharacterOracle weyl_character_oracle(const TwistParams& tp,
                                      const RootSystem& rs) {
  std::vector<int> lam(tp.ell.size());
  for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = tp.ell[i] + 1;
  return weyl_character_oracle_hw(lam, rs);
}

CharacterOracle weyl_character_oracle_hw(const std::vector<int>& lam,
                                         const RootSystem& rs) {
  if (rs.n() != 1) throw Error("character oracle requires n = 1");
  int r = rs.rank();
  std::vector<int> theta_rho(r), rho(r, 1);
  for (int i = 0; i < r; ++i) theta_rho[i] = lam[i] + 1;
  auto [scale, trc] = scaled_weight(theta_rho, rs);
  auto [scale2, rhoc] = scaled_weight(rho, rs);
  (void)scale2;

  Weight tr(r), rc(r);
  for (int i = 0; i < r; ++i) {
    tr[i] = static_cast<int>(trc[i]);
    rc[i] = static_cast<int>(rhoc[i]);
  }
  // The representation has lowest weight -theta, i.e. highest weight
  // -w0(theta); -w0 fixes rho.
  WeylElement w0 = weyl_enumerate(rs).back();
  tr = -1 * w0.apply(tr);

  // Numerator sum_w sgn(w) x^{w(theta+rho)}, shifted by x^{-rho}; the Weyl
  // denominator is then prod_{alpha>0} (1 - x^{-scale*alpha}).
  LaurentPoly num(r);
  for (const WeylElement& w : weyl_enumerate(rs)) {
    Weight im = w.apply(tr) - rc;
    num.add_term(im, GammaScalar::integer(w.sign()));
  }
  for (const Weight& alpha : rs.positive_roots()) {
    Weight v = static_cast<int>(-scale) * alpha;
    num = exact_divide(num, BinomialFactor{0, v});
  }

  CharacterOracle out;
  out.scale = scale;
  out.character = num;
  Rational dim = eval_at_one(num);
  if (boost::multiprecision::denominator(dim) != 1)
    throw Error("character dimension is not integral");
  out.dim =
      static_cast<long long>(boost::multiprecision::numerator(dim));
  return out;
}

Rational eval_at_one(const LaurentPoly& f) {
  Rational total = 0;
  for (const auto& [beta, c] : f.terms()) {
    for (const auto& [m, coeff] : c.terms()) {
      for (int e : m.gexp)
        if (e != 0) throw Error("eval_at_one: gamma generator present");
      total += coeff;
    }
  }
  return total;
}

DegenerationReport n1_degeneration(const AveragingResult& result,
                                   const ActionParams& params) {
  const RootSystem& rs = *params.rs;
  if (rs.n() != 1) throw Error("n1_degeneration requires n = 1");
  int r = rs.rank();
  DegenerationReport rep;

  LaurentPoly h = result.n_poly;
  rep.h_polynomial = true;
  for (const auto& d : result.dpoly) {
    auto quo = try_exact_divide(h, d);
    if (!quo) {
      rep.h_polynomial = false;
      break;
    }
    h = *quo;
  }

  std::vector<int> lam(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) lam[static_cast<std::size_t>(i)] = params.tp.ell[i];
  CharacterOracle lower = weyl_character_oracle_hw(lam, rs);
  rep.dim_lower = lower.dim;
  CharacterOracle full = weyl_character_oracle(params.tp, rs);
  rep.dim_theta = full.dim;

  if (rep.h_polynomial) {
    Rational hv = eval_at_one(h);
    if (boost::multiprecision::denominator(hv) == 1)
      rep.h_at_one = static_cast<long long>(
          boost::multiprecision::abs(boost::multiprecision::numerator(hv)));
    rep.dims_match = rep.h_at_one == rep.dim_lower;
  }

  // Weight support of V_theta, translated to lowest weight 0, in root-basis
  // coordinates.  The lowest weight is w0(theta).
  std::vector<int> theta(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    theta[static_cast<std::size_t>(i)] = params.tp.ell[i] + 1;
  auto [scale, tc] = scaled_weight(theta, rs);
  Weight low(r);  // lowest weight -theta, scaled
  for (int i = 0; i < r; ++i)
    low[i] = static_cast<int>(-tc[static_cast<std::size_t>(i)]);

  std::set<Weight> char_support, n_support;
  bool divisible = true;
  for (const auto& [b, c] : full.character.terms()) {
    Weight d = b - low;
    for (int i = 0; i < r; ++i) {
      if (d[i] % scale != 0) divisible = false;
      d[i] = static_cast<int>(d[i] / scale);
    }
    char_support.insert(d);
  }
  for (const auto& [b, c] : result.n_poly.terms()) n_support.insert(b);
  rep.support_match = divisible && char_support == n_support;
  return rep;
}

std::vector<std::pair<int, bool>> verify_invariance(
    const AveragingResult& result, const ActionParams& params) {
  std::vector<std::pair<int, bool>> out;
  for (int i = 0; i < params.rs->rank(); ++i) {
    GradedRational image = apply_sigma(result.h, i, params);
    out.emplace_back(i, image.equals(result.h));
  }
  return out;
}

}  // namespace wmd
