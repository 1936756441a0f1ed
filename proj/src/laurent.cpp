#include "wmd/laurent.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wmd {

namespace {

// Total order under which multiplying by a positively-oriented vector
// strictly increases: (height, lex).
bool order_lt(const Weight& a, const Weight& b) {
  int ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

bool positively_oriented(const Weight& v) {
  Weight zero(v.size(), 0);
  return order_lt(zero, v);
}

}  // namespace

LaurentPoly LaurentPoly::constant(int rank, GammaScalar c) {
  LaurentPoly f(rank);
  f.add_term(Weight(rank, 0), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(Weight beta, GammaScalar c) {
  LaurentPoly f(static_cast<int>(beta.size()));
  f.add_term(beta, c);
  return f;
}

GammaScalar LaurentPoly::coeff(const Weight& beta) const {
  auto it = terms_.find(beta);
  return it == terms_.end() ? GammaScalar::zero() : it->second;
}

void LaurentPoly::add_term(const Weight& beta, const GammaScalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(beta);
  if (it == terms_.end()) {
    terms_.emplace(beta, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [b, c] : o.terms_) r.add_term(b, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [b, c] : o.terms_) r.add_term(b, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r(rank_);
  for (const auto& [ba, ca] : terms_)
    for (const auto& [bb, cb] : o.terms_) r.add_term(ba + bb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::scaled(const GammaScalar& c) const {
  LaurentPoly r(rank_);
  for (const auto& [b, t] : terms_) r.add_term(b, t * c);
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt)
    if (it->first != jt->first || it->second != jt->second) return false;
  return true;
}

LaurentPoly LaurentPoly::substitute_weyl(const WeylElement& w,
                                         const RootSystem& rs) const {
  WeylElement winv = w.inverse(rs);
  LaurentPoly r(rank_);
  for (const auto& [beta, c] : terms_) {
    Weight im = winv.apply(beta);
    int qshift = height(im) - height(beta);
    r.add_term(im, c.mul_q(qshift));
  }
  return r;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms_) {
    if (!first) os << "  +  ";
    first = false;
    os << "(" << c.str() << ")*x^[";
    for (std::size_t i = 0; i < b.size(); ++i)
      os << (i ? "," : "") << b[i];
    os << "]";
  }
  return os.str();
}

nlohmann::json LaurentPoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [b, c] : terms_) {
    nlohmann::json t;
    t["exponent"] = b;
    t["scalar"] = c.to_json();
    arr.push_back(std::move(t));
  }
  return arr;
}

LaurentPoly BinomialFactor::expand(int rank) const {
  LaurentPoly f = LaurentPoly::one(rank);
  f.add_term(vec, GammaScalar::integer(-1).mul_q(qexp));
  return f;
}

LaurentPoly expand_product(int rank, const std::vector<BinomialFactor>& fs) {
  LaurentPoly f = LaurentPoly::one(rank);
  for (const auto& b : fs) f = f * b.expand(rank);
  return f;
}

std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& f,
                                            const BinomialFactor& b) {
  int rank = f.rank();
  Weight zero(rank, 0);
  if (b.vec == zero) throw Error("exact_divide: zero direction vector");
  if (f.is_zero()) return LaurentPoly::zero(rank);

  // Reorient so the direction vector increases in the term order; the
  // mismatch unit -q^e x^v is accounted for at the end.
  if (!positively_oriented(b.vec)) {
    // 1 - q^e x^v = (-q^e x^v)(1 - q^{-e} x^{-v})
    BinomialFactor flipped{-b.qexp, -1 * b.vec};
    auto g = try_exact_divide(f, flipped);
    if (!g) return std::nullopt;
    // f = g (1 - q^{-e}x^{-v})  =>  f / (1-q^e x^v) = g * (-q^{-e} x^{-v})
    return g->operator*(LaurentPoly::monomial(
        -1 * b.vec, GammaScalar::integer(-1).mul_q(-b.qexp)));
  }

  // Group terms into lines beta + Z v and do univariate synthetic division
  // along each line; the per-line remainder must vanish.
  std::size_t pivot = 0;
  while (b.vec[pivot] == 0) ++pivot;
  int step = b.vec[pivot];

  struct Line {
    std::map<int, GammaScalar> coeffs;  // offset k -> coefficient
  };
  auto floordiv = [](int a, int b) {
    int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
  };
  std::map<Weight, Line> lines;
  for (const auto& [beta, c] : f.terms()) {
    int m = floordiv(beta[pivot], step);
    Weight key = beta - m * b.vec;
    lines[key].coeffs[m] = c;
  }

  LaurentPoly quotient(rank);
  LaurentPoly remainder(rank);
  for (const auto& [key, line] : lines) {
    int kmin = line.coeffs.begin()->first;
    int kmax = line.coeffs.rbegin()->first;
    // p(y) = sum c_k y^{k-kmin}, y = q^e x^v; divide by (1 - q^e y).
    std::vector<GammaScalar> c(static_cast<std::size_t>(kmax - kmin) + 1);
    for (const auto& [k, v] : line.coeffs)
      c[static_cast<std::size_t>(k - kmin)] = v;
    std::size_t deg = c.size() - 1;
    std::vector<GammaScalar> q(deg);  // quotient coefficients
    if (deg >= 1) {
      q[deg - 1] = (-c[deg]).mul_q(-b.qexp);
      for (std::size_t k = deg - 1; k >= 1; --k)
        q[k - 1] = (q[k] - c[k]).mul_q(-b.qexp);
    }
    GammaScalar rem = c[0] - (deg >= 1 ? q[0] : GammaScalar::zero());
    if (!rem.is_zero()) {
      remainder.add_term(key + kmin * b.vec, rem);
      continue;
    }
    for (std::size_t k = 0; k < deg; ++k)
      quotient.add_term(key + (kmin + static_cast<int>(k)) * b.vec, q[k]);
  }
  if (!remainder.is_zero()) return std::nullopt;
  return quotient;
}

LaurentPoly exact_divide(const LaurentPoly& f, const BinomialFactor& b) {
  auto g = try_exact_divide(f, b);
  if (!g) {
    // Recompute the remainder for the error payload.
    std::ostringstream os;
    os << "exact division failed: remainder nonzero dividing by (1 - q^"
       << b.qexp << " x^[";
    for (std::size_t i = 0; i < b.vec.size(); ++i)
      os << (i ? "," : "") << b.vec[i];
    os << "])";
    LaurentPoly rem = f;  // report the dividend as context
    throw DivisibilityError(os.str(), rem);
  }
  return *g;
}

std::map<Weight, LaurentPoly> grade_decompose(const LaurentPoly& f,
                                              const RootSystem& rs) {
  std::map<Weight, LaurentPoly> out;
  for (const auto& [beta, c] : f.terms()) {
    Weight cls = rs.reduce_mod_sublattice(beta);
    auto it = out.find(cls);
    if (it == out.end())
      it = out.emplace(cls, LaurentPoly::zero(f.rank())).first;
    it->second.add_term(beta, c);
  }
  return out;
}

GradedRational::GradedRational(LaurentPoly numer,
                               std::vector<BinomialFactor> denom)
    : numer_(std::move(numer)) {
  for (auto& b : denom) push_denominator(std::move(b));
}

void GradedRational::push_denominator(BinomialFactor b) {
  Weight zero(b.vec.size(), 0);
  if (b.vec == zero) throw Error("denominator factor with zero vector");
  if (!positively_oriented(b.vec)) {
    // 1/(1 - q^e x^v) = (-q^{-e} x^{-v}) / (1 - q^{-e} x^{-v})
    numer_ = numer_ * LaurentPoly::monomial(
                          -1 * b.vec, GammaScalar::integer(-1).mul_q(-b.qexp));
    b = BinomialFactor{-b.qexp, -1 * b.vec};
  }
  denom_.insert(std::upper_bound(denom_.begin(), denom_.end(), b),
                std::move(b));
}

GradedRational GradedRational::operator+(const GradedRational& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  // Least common denominator: multiset max of the two factor lists.
  std::vector<BinomialFactor> lcd;
  std::vector<BinomialFactor> extra_self, extra_other;
  std::size_t i = 0, j = 0;
  while (i < denom_.size() || j < o.denom_.size()) {
    if (j == o.denom_.size() ||
        (i < denom_.size() && denom_[i] < o.denom_[j])) {
      lcd.push_back(denom_[i]);
      extra_other.push_back(denom_[i]);
      ++i;
    } else if (i == denom_.size() || o.denom_[j] < denom_[i]) {
      lcd.push_back(o.denom_[j]);
      extra_self.push_back(o.denom_[j]);
      ++j;
    } else {
      lcd.push_back(denom_[i]);
      ++i;
      ++j;
    }
  }
  int rank = numer_.rank();
  LaurentPoly n = numer_ * expand_product(rank, extra_self) +
                  o.numer_ * expand_product(rank, extra_other);
  GradedRational r(std::move(n));
  if (!r.is_zero()) r.denom_ = std::move(lcd);
  return r;
}

GradedRational GradedRational::operator*(const GradedRational& o) const {
  GradedRational r(numer_ * o.numer_);
  if (r.is_zero()) return r;
  r.denom_ = denom_;
  r.denom_.insert(r.denom_.end(), o.denom_.begin(), o.denom_.end());
  std::sort(r.denom_.begin(), r.denom_.end());
  return r;
}

GradedRational GradedRational::scaled(const GammaScalar& c) const {
  GradedRational r(numer_.scaled(c));
  if (!r.is_zero()) r.denom_ = denom_;
  return r;
}

GradedRational GradedRational::substitute_weyl(const WeylElement& w,
                                               const RootSystem& rs) const {
  GradedRational r(numer_.substitute_weyl(w, rs));
  if (r.is_zero()) return r;
  WeylElement winv = w.inverse(rs);
  for (const auto& b : denom_) {
    Weight im = winv.apply(b.vec);
    r.push_denominator(BinomialFactor{b.qexp + height(im) - height(b.vec), im});
  }
  return r;
}

void GradedRational::normalize() {
  if (numer_.is_zero()) {
    denom_.clear();
    return;
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < denom_.size(); ++i) {
      auto g = try_exact_divide(numer_, denom_[i]);
      if (g) {
        numer_ = std::move(*g);
        denom_.erase(denom_.begin() + static_cast<std::ptrdiff_t>(i));
        progress = true;
        break;
      }
    }
  }
}

bool GradedRational::equals(const GradedRational& o) const {
  int rank = numer_.rank() ? numer_.rank() : o.numer_.rank();
  // Shared factors can be skipped on both sides.
  std::vector<BinomialFactor> only_self, only_other;
  std::size_t i = 0, j = 0;
  while (i < denom_.size() || j < o.denom_.size()) {
    if (j == o.denom_.size() ||
        (i < denom_.size() && denom_[i] < o.denom_[j])) {
      only_self.push_back(denom_[i++]);
    } else if (i == denom_.size() || o.denom_[j] < denom_[i]) {
      only_other.push_back(o.denom_[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  return numer_ * expand_product(rank, only_other) ==
         o.numer_ * expand_product(rank, only_self);
}

}  // namespace wmd
