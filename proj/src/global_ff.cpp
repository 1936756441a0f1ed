#include "wmd/global_ff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wmd {

namespace {

using boost::multiprecision::cpp_int;

void trim(std::vector<long long>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

long long mod_nonneg(long long k, long long n) {
  long long r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

FFPoly FFPoly::constant(long long v, long long q) {
  FFPoly f;
  v = mod_nonneg(v, q);
  if (v != 0) f.c = {v};
  return f;
}

FFPoly FFPoly::t() { return FFPoly{{0, 1}}; }

std::string FFPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = deg(); k >= 0; --k) {
    long long v = coeff(k);
    if (v == 0) continue;
    if (!first) os << "+";
    first = false;
    if (k == 0 || v != 1) os << v;
    if (k >= 1) os << "t";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

FFPoly ff_add(const FFPoly& a, const FFPoly& b, long long q) {
  FFPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t k = 0; k < r.c.size(); ++k)
    r.c[k] = mod_nonneg(a.coeff(static_cast<int>(k)) +
                            b.coeff(static_cast<int>(k)),
                        q);
  trim(r.c);
  return r;
}

FFPoly ff_sub(const FFPoly& a, const FFPoly& b, long long q) {
  FFPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t k = 0; k < r.c.size(); ++k)
    r.c[k] = mod_nonneg(a.coeff(static_cast<int>(k)) -
                            b.coeff(static_cast<int>(k)),
                        q);
  trim(r.c);
  return r;
}

FFPoly ff_mul(const FFPoly& a, const FFPoly& b, long long q) {
  if (a.is_zero() || b.is_zero()) return FFPoly{};
  FFPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % q;
  trim(r.c);
  return r;
}

std::pair<FFPoly, FFPoly> ff_divmod(const FFPoly& a, const FFPoly& b,
                                    long long q) {
  if (b.is_zero()) throw Error("ff_divmod: division by zero");
  FFPoly rem = a, quot;
  int db = b.deg();
  // inverse of the leading coefficient of b
  long long lead = b.c.back(), inv = 1;
  for (long long e = q - 2; e > 0; e >>= 1) {
    if (e & 1) inv = inv * lead % q;
    lead = lead * lead % q;
  }
  if (rem.deg() >= db) quot.c.assign(static_cast<std::size_t>(rem.deg() - db) + 1, 0);
  while (rem.deg() >= db) {
    int shift = rem.deg() - db;
    long long f = rem.c.back() * inv % q;
    quot.c[static_cast<std::size_t>(shift)] = f;
    for (int k = 0; k <= db; ++k)
      rem.c[static_cast<std::size_t>(k + shift)] = mod_nonneg(
          rem.coeff(k + shift) - f * b.coeff(k) % q, q);
    trim(rem.c);
  }
  trim(quot.c);
  return {quot, rem};
}

FFPoly ff_mod(const FFPoly& a, const FFPoly& b, long long q) {
  return ff_divmod(a, b, q).second;
}

FFPoly ff_gcd(FFPoly a, FFPoly b, long long q) {
  while (!b.is_zero()) {
    FFPoly r = ff_mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero() && a.c.back() != 1) {
    long long lead = a.c.back(), inv = 1;
    for (long long e = q - 2; e > 0; e >>= 1) {
      if (e & 1) inv = inv * lead % q;
      lead = lead * lead % q;
    }
    for (auto& v : a.c) v = v * inv % q;
  }
  return a;
}

FFPoly ff_powmod(FFPoly a, cpp_int e, const FFPoly& mod, long long q) {
  FFPoly r = FFPoly::constant(1, q);
  a = ff_mod(a, mod, q);
  while (e > 0) {
    if ((e & 1) != 0) r = ff_mod(ff_mul(r, a, q), mod, q);
    a = ff_mod(ff_mul(a, a, q), mod, q);
    e >>= 1;
  }
  return r;
}

FFPoly ff_parse(const std::string& s, long long q) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw Error("ff_parse: empty polynomial");
  FFPoly out;
  static const std::regex term_re(R"(^(\d+)?(\*?t(\^(\d+))?)?)");
  std::size_t pos = 0;
  bool any = false;
  while (pos < t.size()) {
    if (t[pos] == '+') {
      ++pos;
      continue;
    }
    std::smatch m;
    std::string rest = t.substr(pos);
    if (!std::regex_search(rest, m, term_re) || m[0].length() == 0)
      throw Error("ff_parse: bad token in '" + s + "'");
    long long coeff = m[1].matched ? std::stoll(m[1]) : 1;
    int exp = 0;
    if (m[2].matched) exp = m[4].matched ? std::stoi(m[4]) : 1;
    if (!m[1].matched && !m[2].matched)
      throw Error("ff_parse: bad token in '" + s + "'");
    FFPoly term;
    term.c.assign(static_cast<std::size_t>(exp) + 1, 0);
    term.c.back() = mod_nonneg(coeff, q);
    trim(term.c);
    out = ff_add(out, term, q);
    pos += static_cast<std::size_t>(m[0].length());
    any = true;
  }
  if (!any) throw Error("ff_parse: empty polynomial");
  return out;
}

FFContext::FFContext(long long q, int n) : q_(q), n_(n) {
  if (!is_prime(q)) throw Error("FFContext: q must be prime");
  if ((q - 1) % (2 * n) != 0) throw Error("FFContext: need q = 1 mod 2n");
  g0_ = smallest_generator(q);
  dlog_.assign(static_cast<std::size_t>(q), -1);
  long long v = 1;
  for (long long a = 0; a < q - 1; ++a) {
    dlog_[static_cast<std::size_t>(v)] = a;
    v = v * g0_ % q;
  }
}

long long FFContext::dlog(long long v) const {
  v = mod_nonneg(v, q_);
  if (v == 0) throw Error("dlog of zero");
  return dlog_[static_cast<std::size_t>(v)];
}

std::complex<double> FFContext::eps_pow(long long k) const {
  double arg = 2.0 * std::numbers::pi * static_cast<double>(mod_nonneg(k, n_)) /
               static_cast<double>(n_);
  return std::polar(1.0, arg);
}

const std::vector<FFPoly>& FFContext::irreducibles(int max_deg) {
  if (max_deg <= irreducibles_deg_) return irreducibles_;
  for (int d = irreducibles_deg_ + 1; d <= max_deg; ++d) {
    // All monic of degree d by odometer over the lower coefficients.
    std::vector<long long> coeffs(static_cast<std::size_t>(d), 0);
    while (true) {
      FFPoly f;
      f.c.assign(coeffs.begin(), coeffs.end());
      f.c.push_back(1);
      bool irred = true;
      for (const FFPoly& p : irreducibles_) {
        if (2 * p.deg() > d) break;
        if (ff_mod(f, p, q_).is_zero()) {
          irred = false;
          break;
        }
      }
      if (irred) irreducibles_.push_back(std::move(f));
      std::size_t k = 0;
      while (k < coeffs.size() && ++coeffs[k] == q_) coeffs[k++] = 0;
      if (k == coeffs.size()) break;
    }
    // keep sorted by (degree, coefficients)
    std::stable_sort(irreducibles_.begin(), irreducibles_.end(),
                     [](const FFPoly& a, const FFPoly& b) {
                       if (a.deg() != b.deg()) return a.deg() < b.deg();
                       return a.c < b.c;
                     });
    irreducibles_deg_ = d;
  }
  return irreducibles_;
}

const std::vector<std::pair<FFPoly, int>>& FFContext::factor(const FFPoly& f) {
  if (!f.monic()) throw Error("factor: argument must be monic");
  auto it = factor_cache_.find(f);
  if (it != factor_cache_.end()) return it->second;
  std::vector<std::pair<FFPoly, int>> fs;
  FFPoly rest = f;
  for (const FFPoly& p : irreducibles(std::max(f.deg(), 1))) {
    if (rest.deg() < p.deg()) break;
    int mult = 0;
    while (true) {
      auto [quo, rem] = ff_divmod(rest, p, q_);
      if (!rem.is_zero()) break;
      rest = quo;
      ++mult;
    }
    if (mult > 0) fs.emplace_back(p, mult);
  }
  if (!rest.is_one()) throw Error("factor: incomplete factorization");
  return factor_cache_.emplace(f, std::move(fs)).first->second;
}

namespace {

// Symbol index at a prime: (a/pi) = eps_pow of the returned value.
std::optional<long long> symbol_at_prime(const FFPoly& a, const FFPoly& pi,
                                         FFContext& ctx) {
  long long q = ctx.q();
  FFPoly ared = ff_mod(a, pi, q);
  if (ared.is_zero()) return std::nullopt;
  cpp_int size = 1;
  for (int k = 0; k < pi.deg(); ++k) size *= q;
  FFPoly r = ff_powmod(ared, (size - 1) / ctx.n(), pi, q);
  if (r.deg() != 0)
    throw Error("residue symbol: non-constant n-th power residue");
  long long e = ctx.dlog(r.c[0]);
  long long step = (q - 1) / ctx.n();
  if (e % step != 0) throw Error("residue symbol: value outside mu_n");
  return mod_nonneg(e / step, ctx.n());
}

}  // namespace

std::optional<long long> residue_symbol_index(const FFPoly& a, const FFPoly& b,
                                              FFContext& ctx) {
  if (!b.monic()) throw Error("residue symbol: modulus must be monic");
  long long total = 0;
  for (const auto& [pi, mult] : ctx.factor(b)) {
    auto k = symbol_at_prime(a, pi, ctx);
    if (!k) return std::nullopt;
    total += *k * mult;
  }
  return mod_nonneg(total, ctx.n());
}

std::complex<double> residue_symbol(const FFPoly& a, const FFPoly& b,
                                    FFContext& ctx, long long t) {
  auto k = residue_symbol_index(a, b, ctx);
  if (!k) return 0.0;
  return ctx.eps_pow(*k * t);
}

std::complex<double> psi_frac(const FFPoly& num, const FFPoly& den,
                              FFContext& ctx) {
  if (!den.monic()) throw Error("psi: denominator must be monic");
  // The t^{-1} Laurent coefficient of (num mod den)/den is the degree
  // deg(den)-1 coefficient of the reduced numerator.
  FFPoly u = ff_mod(num, den, ctx.q());
  long long res = u.coeff(den.deg() - 1);
  double arg = 2.0 * std::numbers::pi * static_cast<double>(res) /
               static_cast<double>(ctx.q());
  return std::polar(1.0, arg);
}

std::complex<double> gauss_sum(const FFPoly& a, const FFPoly& c, long long t,
                               FFContext& ctx, int deg_bound) {
  if (!c.monic()) throw Error("gauss_sum: modulus must be monic");
  if (c.deg() > deg_bound) throw Error("gauss_sum: degree bound exceeded");
  long long q = ctx.q();
  int D = c.deg();
  std::complex<double> total = 0.0;
  std::vector<long long> coeffs(static_cast<std::size_t>(D), 0);
  while (true) {
    FFPoly d;
    d.c.assign(coeffs.begin(), coeffs.end());
    trim(d.c);
    auto k = residue_symbol_index(d, c, ctx);
    if (k) total += ctx.eps_pow(*k * t) * psi_frac(ff_mul(a, d, q), c, ctx);
    std::size_t p = 0;
    while (p < coeffs.size() && ++coeffs[p] == q) coeffs[p++] = 0;
    if (p == coeffs.size()) break;
  }
  return total;
}

std::complex<double> xi_factor(const std::vector<FFPoly>& c,
                               const std::vector<FFPoly>& cp, FFContext& ctx,
                               const RootSystem& rs) {
  long long q = ctx.q();
  FFPoly prod = FFPoly::constant(1, q), prodp = FFPoly::constant(1, q);
  for (const auto& f : c) {
    if (!f.monic()) throw Error("xi: arguments must be monic");
    prod = ff_mul(prod, f, q);
  }
  for (const auto& f : cp) {
    if (!f.monic()) throw Error("xi: arguments must be monic");
    prodp = ff_mul(prodp, f, q);
  }
  if (!ff_gcd(prod, prodp, q).is_one())
    throw Error("xi: arguments must be coprime");

  auto sym = [&](const FFPoly& a, const FFPoly& b) {
    auto k = residue_symbol_index(a, b, ctx);
    if (!k) throw Error("xi: unexpected zero symbol");
    return *k;
  };
  long long total = 0;
  int r = rs.rank();
  for (int i = 0; i < r; ++i)
    total += rs.norm2_simple(i) * (sym(c[i], cp[i]) + sym(cp[i], c[i]));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      total += rs.pairing2(i, j) * (sym(c[i], cp[j]) + sym(cp[i], c[j]));
  return ctx.eps_pow(total);
}

nlohmann::json TruncatedZ::to_json() const {
  nlohmann::json out;
  out["bound"] = bound;
  out["coeffs"] = nlohmann::json::array();
  for (const auto& [d, v] : coeffs) {
    nlohmann::json e;
    e["deg"] = d;
    e["re"] = v.real();
    e["im"] = v.imag();
    out["coeffs"].push_back(std::move(e));
  }
  return out;
}

const HTable& GlobalEvaluator::table_for(const std::vector<int>& ell) {
  auto it = tables_.find(ell);
  if (it != tables_.end()) return it->second;
  ActionParams params{rs_, TwistParams{ell}};
  return tables_.emplace(ell, h_table(params)).first->second;
}

const std::vector<std::complex<double>>& GlobalEvaluator::prime_gammas(
    const FFPoly& pi) {
  auto it = gamma_cache_.find(pi);
  if (it != gamma_cache_.end()) return it->second;
  int n = ctx_->n();
  double norm = std::pow(static_cast<double>(ctx_->q()), pi.deg());
  std::vector<std::complex<double>> g(static_cast<std::size_t>(n));
  g[0] = -1.0;
  FFPoly one = FFPoly::constant(1, ctx_->q());
  for (int i = 1; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        gauss_sum(one, pi, i, *ctx_, std::max(pi.deg(), 4)) / norm;
  return gamma_cache_.emplace(pi, std::move(g)).first->second;
}

std::complex<double> GlobalEvaluator::prime_block(const FFPoly& pi,
                                                  const Weight& beta,
                                                  const std::vector<int>& l) {
  GammaScalar coeff = table_for(l).at(beta);
  if (coeff.is_zero()) return 0.0;
  double qnorm = std::pow(static_cast<double>(ctx_->q()), pi.deg());
  NumericGammaContext nctx =
      NumericGammaContext::with_values(qnorm, ctx_->n(), prime_gammas(pi));
  return coeff.eval(nctx);
}

std::complex<double> GlobalEvaluator::h_general(
    const std::vector<FFPoly>& c, const std::vector<FFPoly>& m,
    const std::vector<int>* prime_order) {
  const RootSystem& rs = *rs_;
  long long q = ctx_->q();
  int r = rs.rank();
  if (static_cast<int>(c.size()) != r || static_cast<int>(m.size()) != r)
    throw Error("h_general: tuple size mismatch");

  // Gather the primes of prod c_i with their exponent vectors.
  std::map<FFPoly, Weight> blocks;
  for (int i = 0; i < r; ++i) {
    if (!c[i].monic()) throw Error("h_general: arguments must be monic");
    for (const auto& [pi, mult] : ctx_->factor(c[i])) {
      auto it = blocks.find(pi);
      if (it == blocks.end()) it = blocks.emplace(pi, Weight(r, 0)).first;
      it->second[i] += mult;
    }
  }
  std::vector<const std::pair<const FFPoly, Weight>*> order;
  for (const auto& b : blocks) order.push_back(&b);
  if (prime_order) {
    if (prime_order->size() != order.size())
      throw Error("h_general: bad prime order");
    std::vector<const std::pair<const FFPoly, Weight>*> perm;
    for (int idx : *prime_order) perm.push_back(order[static_cast<std::size_t>(idx)]);
    order = std::move(perm);
  }

  std::complex<double> value = 1.0;
  std::vector<FFPoly> acc(static_cast<std::size_t>(r), FFPoly::constant(1, q));
  bool acc_trivial = true;
  for (const auto* blk : order) {
    const FFPoly& pi = blk->first;
    const Weight& beta = blk->second;
    // Twist split m_i = pi^{l_i} m'_i.
    std::vector<int> l(static_cast<std::size_t>(r), 0);
    long long twist_idx = 0;
    for (int i = 0; i < r; ++i) {
      FFPoly mp = m[i];
      if (!mp.monic()) throw Error("h_general: twist must be monic");
      while (true) {
        auto [quo, rem] = ff_divmod(mp, pi, q);
        if (!rem.is_zero()) break;
        mp = quo;
        ++l[static_cast<std::size_t>(i)];
      }
      if (beta[i] != 0 && !mp.is_one()) {
        auto k = symbol_at_prime(mp, pi, *ctx_);
        if (!k) throw Error("h_general: twist split failed");
        twist_idx -= static_cast<long long>(rs.norm2_simple(i)) * beta[i] * *k;
      }
    }
    std::complex<double> block_value =
        prime_block(pi, beta, l) * ctx_->eps_pow(twist_idx);
    std::vector<FFPoly> cpi(static_cast<std::size_t>(r),
                            FFPoly::constant(1, q));
    for (int i = 0; i < r; ++i)
      for (int e = 0; e < beta[i]; ++e)
        cpi[static_cast<std::size_t>(i)] =
            ff_mul(cpi[static_cast<std::size_t>(i)], pi, q);
    if (!acc_trivial) value *= xi_factor(acc, cpi, *ctx_, rs);
    value *= block_value;
    for (int i = 0; i < r; ++i)
      acc[static_cast<std::size_t>(i)] =
          ff_mul(acc[static_cast<std::size_t>(i)],
                 cpi[static_cast<std::size_t>(i)], q);
    acc_trivial = false;
  }
  return value;
}

TruncatedZ GlobalEvaluator::assemble_z(const std::vector<FFPoly>& m,
                                       int bound) {
  const RootSystem& rs = *rs_;
  long long q = ctx_->q();
  int r = rs.rank();
  TruncatedZ z;
  z.bound = bound;

  std::vector<int> degs(static_cast<std::size_t>(r), 0);
  while (true) {
    int total = 0;
    for (int d : degs) total += d;
    if (total <= bound) {
      // Enumerate all monic tuples of these degrees.
      std::vector<std::vector<FFPoly>> per_coord;
      for (int i = 0; i < r; ++i) {
        std::vector<FFPoly> polys;
        int d = degs[static_cast<std::size_t>(i)];
        std::vector<long long> coeffs(static_cast<std::size_t>(d), 0);
        while (true) {
          FFPoly f;
          f.c.assign(coeffs.begin(), coeffs.end());
          f.c.push_back(1);
          trim(f.c);
          polys.push_back(std::move(f));
          std::size_t k = 0;
          while (k < coeffs.size() && ++coeffs[k] == q) coeffs[k++] = 0;
          if (k == coeffs.size()) break;
        }
        per_coord.push_back(std::move(polys));
      }
      std::complex<double> sum = 0.0;
      std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
      while (true) {
        std::vector<FFPoly> c;
        for (int i = 0; i < r; ++i)
          c.push_back(per_coord[static_cast<std::size_t>(i)]
                               [idx[static_cast<std::size_t>(i)]]);
        sum += h_general(c, m);
        std::size_t k = 0;
        while (k < idx.size() &&
               ++idx[k] == per_coord[k].size())
          idx[k++] = 0;
        if (k == idx.size()) break;
      }
      z.coeffs[degs] = sum;
    }
    // next degree tuple with entries in [0, bound]
    std::size_t k = 0;
    while (k < degs.size() && ++degs[k] > bound) degs[k++] = 0;
    if (k == degs.size()) break;
  }
  return z;
}

nlohmann::json GlobalEvaluator::self_similarity_probe(int bound) {
  const RootSystem& rs = *rs_;
  int r = rs.rank();
  std::vector<FFPoly> m(static_cast<std::size_t>(r),
                        FFPoly::constant(1, ctx_->q()));
  TruncatedZ z = assemble_z(m, bound);

  // Numeric local table at a degree-1 prime, untwisted.
  FFPoly pi = FFPoly::t();
  std::vector<int> ell(static_cast<std::size_t>(r), 0);
  const HTable& table = table_for(ell);
  double qnorm = static_cast<double>(ctx_->q());
  NumericGammaContext nctx =
      NumericGammaContext::with_values(qnorm, ctx_->n(), prime_gammas(pi));

  nlohmann::json report;
  report["bound"] = bound;
  report["advisory"] = true;

  // Fit per-coordinate scalings from the degree-1 ratios, then score the
  // whole array.
  std::vector<std::complex<double>> scale(static_cast<std::size_t>(r), 1.0);
  bool fitted = true;
  for (int i = 0; i < r; ++i) {
    std::vector<int> d(static_cast<std::size_t>(r), 0);
    d[static_cast<std::size_t>(i)] = 1;
    Weight beta(d.begin(), d.end());
    std::complex<double> nv = table.at(beta).is_zero()
                                  ? std::complex<double>(0.0)
                                  : table.at(beta).eval(nctx);
    auto it = z.coeffs.find(d);
    if (it == z.coeffs.end() || std::abs(nv) < 1e-12 ||
        std::abs(it->second) < 1e-12) {
      fitted = false;
      break;
    }
    scale[static_cast<std::size_t>(i)] = it->second / nv;
  }
  report["fitted"] = fitted;
  if (fitted) {
    double max_residual = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [d, zv] : z.coeffs) {
      Weight beta(d.begin(), d.end());
      GammaScalar c = table.at(beta);
      std::complex<double> nv = c.is_zero() ? 0.0 : c.eval(nctx);
      std::complex<double> pred = nv;
      for (int i = 0; i < r; ++i)
        for (int e = 0; e < d[static_cast<std::size_t>(i)]; ++e)
          pred *= scale[static_cast<std::size_t>(i)];
      double res = std::abs(pred - zv);
      max_residual = std::max(max_residual, res);
      nlohmann::json row;
      row["deg"] = d;
      row["z_re"] = zv.real();
      row["z_im"] = zv.imag();
      row["pred_re"] = pred.real();
      row["pred_im"] = pred.imag();
      row["residual"] = res;
      rows.push_back(std::move(row));
    }
    nlohmann::json sc = nlohmann::json::array();
    for (const auto& s : scale) {
      nlohmann::json e;
      e["re"] = s.real();
      e["im"] = s.imag();
      // log_q of |s| locates the substitution among q-powers
      e["log_q_abs"] = std::log(std::abs(s)) /
                       std::log(static_cast<double>(ctx_->q()));
      sc.push_back(std::move(e));
    }
    report["scales"] = std::move(sc);
    report["max_residual"] = max_residual;
    report["matched"] = max_residual < 1e-6;
    report["rows"] = std::move(rows);
  }
  return report;
}

}  // namespace wmd
