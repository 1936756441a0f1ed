#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "wmd/local_series.hpp"

namespace wmd {

/// Polynomial over F_q, little-endian coefficients, no trailing zeros.
struct FFPoly {
  std::vector<long long> c;

  static FFPoly zero() { return FFPoly{}; }
  static FFPoly constant(long long v, long long q);
  static FFPoly t();  // the variable

  int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  bool monic() const { return !c.empty() && c.back() == 1; }
  long long coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : 0;
  }
  auto operator<=>(const FFPoly&) const = default;
  std::string str() const;
};

FFPoly ff_add(const FFPoly& a, const FFPoly& b, long long q);
FFPoly ff_sub(const FFPoly& a, const FFPoly& b, long long q);
FFPoly ff_mul(const FFPoly& a, const FFPoly& b, long long q);
FFPoly ff_mod(const FFPoly& a, const FFPoly& b, long long q);
std::pair<FFPoly, FFPoly> ff_divmod(const FFPoly& a, const FFPoly& b,
                                    long long q);
FFPoly ff_gcd(FFPoly a, FFPoly b, long long q);  // monic normalized
FFPoly ff_powmod(FFPoly a, boost::multiprecision::cpp_int e, const FFPoly& mod,
                 long long q);
FFPoly ff_parse(const std::string& s, long long q);  // "t^2+3t+1"

/// Arithmetic context for F_q[t] with the n-th power residue structure;
/// q prime with q = 1 mod 2n.  Owns the factorization cache and the
/// irreducible list.
class FFContext {
 public:
  FFContext(long long q, int n);

  long long q() const { return q_; }
  int n() const { return n_; }
  long long generator() const { return g0_; }

  /// Discrete log base g0 of a nonzero element of F_q.
  long long dlog(long long v) const;
  /// e^{2 pi i k / n}.
  std::complex<double> eps_pow(long long k) const;

  const std::vector<FFPoly>& irreducibles(int max_deg);
  const std::vector<std::pair<FFPoly, int>>& factor(const FFPoly& f);

 private:
  long long q_ = 0;
  int n_ = 1;
  long long g0_ = 0;
  std::vector<long long> dlog_;
  std::vector<FFPoly> irreducibles_;
  int irreducibles_deg_ = 0;
  std::map<FFPoly, std::vector<std::pair<FFPoly, int>>> factor_cache_;
};

/// Index k of the n-th power residue symbol (a/b) = e^{2 pi i k/n}, for
/// monic b; nullopt when gcd(a,b) != 1 (symbol value 0).
std::optional<long long> residue_symbol_index(const FFPoly& a, const FFPoly& b,
                                              FFContext& ctx);
std::complex<double> residue_symbol(const FFPoly& a, const FFPoly& b,
                                    FFContext& ctx, long long t = 1);

/// psi(x) = e^{2 pi i res_inf(x) / q}, res_inf = t^{-1} Laurent coefficient.
std::complex<double> psi_frac(const FFPoly& num, const FFPoly& den,
                              FFContext& ctx);

/// g(a, c; eps^t) = sum over residues d mod c of eps^t((d/c)) psi(ad/c).
std::complex<double> gauss_sum(const FFPoly& a, const FFPoly& c, long long t,
                               FFContext& ctx, int deg_bound = 4);

/// xi(c, c') from the twisted-multiplicativity rule; rejects non-coprime or
/// non-monic inputs.
std::complex<double> xi_factor(const std::vector<FFPoly>& c,
                               const std::vector<FFPoly>& cp, FFContext& ctx,
                               const RootSystem& rs);

struct TruncatedZ {
  int bound = 0;
  std::map<std::vector<int>, std::complex<double>> coeffs;
  nlohmann::json to_json() const;
};

/// Evaluator for global coefficients H(c;m): factors the arguments, reduces
/// the twist prime-by-prime, instantiates the local tables numerically, and
/// reassembles with xi factors.  Caches symbolic tables per twist and gamma
/// data per prime.
class GlobalEvaluator {
 public:
  GlobalEvaluator(FFContext& ctx, const RootSystem& rs)
      : ctx_(&ctx), rs_(&rs) {}

  /// H(c;m).  `prime_order`, when given, permutes the reassembly fold order
  /// (the value must not depend on it).
  std::complex<double> h_general(
      const std::vector<FFPoly>& c, const std::vector<FFPoly>& m,
      const std::vector<int>* prime_order = nullptr);

  /// Numeric value of the prime-power block H(pi^beta; pi^l).
  std::complex<double> prime_block(const FFPoly& pi, const Weight& beta,
                                   const std::vector<int>& l);

  /// Normalized Gauss sums gamma_pi(i) = g(1,pi;eps^i)/|pi| for i in [0,n).
  const std::vector<std::complex<double>>& prime_gammas(const FFPoly& pi);

  TruncatedZ assemble_z(const std::vector<FFPoly>& m, int bound);

  nlohmann::json self_similarity_probe(int bound);

 private:
  const HTable& table_for(const std::vector<int>& ell);

  FFContext* ctx_;
  const RootSystem* rs_;
  std::map<std::vector<int>, HTable> tables_;
  std::map<FFPoly, std::vector<std::complex<double>>> gamma_cache_;
};

}  // namespace wmd
