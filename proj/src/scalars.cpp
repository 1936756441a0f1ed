#include "wmd/scalars.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wmd {

namespace {

long long mod_nonneg(long long k, long long n) {
  long long r = k % n;
  return r < 0 ? r + n : r;
}

}  // namespace

int GammaScalar::merge_n(int a, int b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if (a != b) throw Error("GammaScalar: mixing scalars of degree n=" +
                          std::to_string(a) + " and n=" + std::to_string(b));
  return a;
}

GammaMonomial GammaScalar::canonicalize(GammaMonomial m, int n) {
  std::size_t gens = n / 2;
  if (m.gexp.size() < gens) m.gexp.resize(gens, 0);
  if (n > 0 && n % 2 == 0 && gens > 0) {
    // gamma(n/2)^2 = 1/q, so keep its exponent in {0,1}.
    int e = m.gexp[gens - 1];
    int r = mod_nonneg(e, 2);
    m.qexp -= (e - r) / 2;
    m.gexp[gens - 1] = r;
  }
  // Unique key: plain q-powers always carry an empty gexp.
  while (!m.gexp.empty() && m.gexp.back() == 0) m.gexp.pop_back();
  return m;
}

void GammaScalar::insert_term(GammaMonomial m, Rational c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GammaScalar GammaScalar::integer(long long v) { return rational(Rational(v)); }

GammaScalar GammaScalar::rational(Rational v) {
  GammaScalar s;
  s.insert_term(GammaMonomial{}, std::move(v));
  return s;
}

GammaScalar GammaScalar::q_power(int e) {
  GammaScalar s;
  s.insert_term(GammaMonomial{e, {}}, Rational(1));
  return s;
}

GammaScalar GammaScalar::gamma(long long i, int n) {
  if (n < 1) throw Error("gamma: n must be positive");
  long long r = mod_nonneg(i, n);
  if (r == 0) return integer(-1);
  GammaScalar s;
  s.n_ = n;
  GammaMonomial m;
  m.gexp.assign(static_cast<std::size_t>(n / 2), 0);
  if (r <= n / 2) {
    m.gexp[static_cast<std::size_t>(r) - 1] = 1;
  } else {
    // gamma(r) = q^{-1} gamma(n-r)^{-1}
    m.qexp = -1;
    m.gexp[static_cast<std::size_t>(n - r) - 1] = -1;
  }
  s.insert_term(canonicalize(std::move(m), n), Rational(1));
  return s;
}

bool GammaScalar::operator==(const GammaScalar& o) const {
  // Keys are canonical (trailing zeros stripped), so a direct compare works
  // even across n_=0 constants and full scalars.
  return terms_ == o.terms_;
}

GammaScalar GammaScalar::operator+(const GammaScalar& o) const {
  GammaScalar r = *this;
  r += o;
  return r;
}

GammaScalar& GammaScalar::operator+=(const GammaScalar& o) {
  n_ = merge_n(n_, o.n_);
  for (const auto& [m, c] : o.terms_) insert_term(canonicalize(m, n_), c);
  if (terms_.empty()) n_ = std::max(n_, o.n_);
  return *this;
}

GammaScalar GammaScalar::operator-() const {
  GammaScalar r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

GammaScalar GammaScalar::operator-(const GammaScalar& o) const {
  return *this + (-o);
}

GammaScalar GammaScalar::operator*(const GammaScalar& o) const {
  GammaScalar r;
  r.n_ = merge_n(n_, o.n_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      GammaMonomial m;
      m.qexp = ma.qexp + mb.qexp;
      m.gexp.resize(std::max(ma.gexp.size(), mb.gexp.size()), 0);
      for (std::size_t k = 0; k < ma.gexp.size(); ++k) m.gexp[k] += ma.gexp[k];
      for (std::size_t k = 0; k < mb.gexp.size(); ++k) m.gexp[k] += mb.gexp[k];
      r.insert_term(canonicalize(std::move(m), r.n_), ca * cb);
    }
  }
  return r;
}

GammaScalar GammaScalar::mul_q(int e) const {
  GammaScalar r = *this;
  std::map<GammaMonomial, Rational> shifted;
  for (auto& [m, c] : r.terms_) {
    GammaMonomial m2 = m;
    m2.qexp += e;
    shifted.emplace(std::move(m2), std::move(c));
  }
  r.terms_ = std::move(shifted);
  return r;
}

GammaScalar GammaScalar::inverse() const {
  if (terms_.size() != 1)
    throw Error("GammaScalar: inversion requires a single-term scalar");
  const auto& [m, c] = *terms_.begin();
  GammaScalar r;
  r.n_ = n_;
  GammaMonomial inv;
  inv.qexp = -m.qexp;
  inv.gexp.resize(m.gexp.size());
  for (std::size_t k = 0; k < m.gexp.size(); ++k) inv.gexp[k] = -m.gexp[k];
  // For even n the middle generator satisfies g^{-1} = q g.
  r.insert_term(canonicalize(std::move(inv), n_), Rational(1) / c);
  return r;
}

std::complex<double> GammaScalar::eval(const NumericGammaContext& ctx) const {
  if (n_ != 0 && n_ != ctx.n())
    throw Error("GammaScalar: evaluating degree-n scalar in wrong context");
  std::complex<double> total = 0.0;
  for (const auto& [m, c] : terms_) {
    std::complex<double> v = static_cast<double>(c);
    v *= std::pow(ctx.q(), m.qexp);
    for (std::size_t k = 0; k < m.gexp.size(); ++k) {
      if (m.gexp[k] == 0) continue;
      std::complex<double> g = ctx.gamma_value(static_cast<long long>(k) + 1);
      std::complex<double> p = std::pow(g, std::abs(m.gexp[k]));
      v *= m.gexp[k] > 0 ? p : 1.0 / p;
    }
    total += v;
  }
  return total;
}

std::string GammaScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c;
    if (m.qexp != 0) os << "*q^" << m.qexp;
    for (std::size_t k = 0; k < m.gexp.size(); ++k)
      if (m.gexp[k] != 0) os << "*g" << (k + 1) << "^" << m.gexp[k];
  }
  return os.str();
}

nlohmann::json GammaScalar::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : terms_) {
    nlohmann::json t;
    std::ostringstream os;
    os << c;
    t["coeff"] = os.str();
    t["qexp"] = m.qexp;
    t["gexp"] = m.gexp;
    arr.push_back(std::move(t));
  }
  return arr;
}

bool is_prime(long long q) {
  if (q < 2) return false;
  for (long long d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

namespace {

long long pow_mod(long long b, long long e, long long q) {
  long long r = 1;
  b %= q;
  while (e > 0) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

}  // namespace

long long smallest_generator(long long q) {
  std::vector<long long> prime_factors;
  long long m = q - 1;
  for (long long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      prime_factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) prime_factors.push_back(m);
  for (long long g = 2; g < q; ++g) {
    bool ok = true;
    for (long long p : prime_factors)
      if (pow_mod(g, (q - 1) / p, q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error("no generator found (is q prime?)");
}

NumericGammaContext NumericGammaContext::build(long long q, int n) {
  if (!is_prime(q))
    throw Error("numeric gamma context: q = " + std::to_string(q) +
                " must be prime");
  if ((q - 1) % (2 * n) != 0)
    throw Error("numeric gamma context: need q = 1 mod 2n, got q = " +
                std::to_string(q) + ", n = " + std::to_string(n));
  long long g0 = smallest_generator(q);
  // chi(g0^a) = exp(2 pi i a / n); psi0(d) = exp(2 pi i d / q).
  std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
  const double tau = 2.0 * std::numbers::pi;
  for (int i = 1; i < n; ++i) {
    std::complex<double> sum = 0.0;
    long long d = 1;
    for (long long a = 0; a < q - 1; ++a) {
      double chi_arg = tau * static_cast<double>(i) *
                       static_cast<double>(a % n) / static_cast<double>(n);
      double psi_arg = tau * static_cast<double>(d) / static_cast<double>(q);
      sum += std::polar(1.0, chi_arg) * std::polar(1.0, psi_arg);
      d = d * g0 % q;
    }
    values[static_cast<std::size_t>(i)] = sum / static_cast<double>(q);
  }
  values[0] = -1.0;
  NumericGammaContext ctx;
  ctx.q_ = static_cast<double>(q);
  ctx.n_ = n;
  ctx.gamma_values_ = std::move(values);
  return ctx;
}

NumericGammaContext NumericGammaContext::with_values(
    double qnorm, int n, std::vector<std::complex<double>> g) {
  if (static_cast<int>(g.size()) != n)
    throw Error("numeric gamma context: need n gamma values");
  NumericGammaContext ctx;
  ctx.q_ = qnorm;
  ctx.n_ = n;
  ctx.gamma_values_ = std::move(g);
  return ctx;
}

std::complex<double> NumericGammaContext::gamma_value(long long i) const {
  long long r = mod_nonneg(i, n_);
  return gamma_values_[static_cast<std::size_t>(r)];
}

}  // namespace wmd
