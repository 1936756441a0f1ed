#pragma once

#include <string>
#include <vector>

#include "wmd/scalars.hpp"

namespace wmd {

/// Lattice element in the simple-root basis.
using Weight = std::vector<int>;

int height(const Weight& w);
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(int k, const Weight& a);
bool is_dominant_support(const Weight& w);  // all coordinates >= 0

struct TwistParams {
  std::vector<int> ell;
};

class WeylElement;

/// Root datum for a (possibly reducible) finite root system, together with
/// the cover degree n and the derived multipliers m(alpha).
class RootSystem {
 public:
  /// Codes like "A2", "B3", "G2", or products "A1xA1".
  static RootSystem build(const std::string& code, int n);
  static RootSystem build(char type, int rank, int n);

  const std::string& code() const { return code_; }
  int rank() const { return rank_; }
  int n() const { return n_; }

  /// Cartan integer c(i,j) = 2<a_i,a_j>/<a_j,a_j>, 0-based indices.
  int cartan(int i, int j) const { return cartan_[i][j]; }
  /// 2<a_i,a_j>, always an integer in the short-root normalization.
  int pairing2(int i, int j) const { return pairing2_[i][j]; }

  const std::vector<Weight>& positive_roots() const { return pos_roots_; }
  int norm2(const Weight& root) const;
  int norm2_simple(int i) const { return norms_[i]; }
  int m_of(const Weight& root) const;
  int m_simple(int i) const;

  /// Order of the braid relation (sigma_i sigma_j)^{r(i,j)} = 1.
  int relation_order(int i, int j) const;

  long long weyl_order() const { return weyl_order_; }

  Weight reflect_simple(int i, const Weight& w) const;

  /// Canonical representative of w mod the sublattice generated by the
  /// m(alpha)alpha; the zero vector marks the trivial class.
  Weight reduce_mod_sublattice(const Weight& w) const;
  bool in_sublattice(const Weight& w) const;

 private:
  void finish(int n);  // derive roots, norms, m, Lambda' basis

  std::string code_;
  int rank_ = 0;
  int n_ = 1;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<int>> pairing2_;
  std::vector<int> norms_;
  std::vector<Weight> pos_roots_;
  long long weyl_order_ = 1;
  std::vector<Weight> lattice_pivots_;  // triangular basis of Lambda'
};

class WeylElement {
 public:
  static WeylElement identity(int rank);
  static WeylElement simple(int i, const RootSystem& rs);
  static WeylElement from_word(const std::vector<int>& word,
                               const RootSystem& rs);

  Weight apply(const Weight& w) const;
  WeylElement operator*(const WeylElement& o) const;  // composition (uv)x=u(vx)
  WeylElement inverse(const RootSystem& rs) const;
  bool operator==(const WeylElement& o) const { return mat_ == o.mat_; }
  bool operator<(const WeylElement& o) const { return mat_ < o.mat_; }

  const std::vector<int>& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  int sign() const { return length() % 2 == 0 ? 1 : -1; }

  /// Recompute the canonical (lex-minimal) reduced word from the matrix.
  void canonicalize_word(const RootSystem& rs);

 private:
  std::vector<std::vector<int>> mat_;  // column j = image of alpha_j
  std::vector<int> word_;
};

/// All Weyl elements, identity first, sorted by (length, lex word).
std::vector<WeylElement> weyl_enumerate(const RootSystem& rs,
                                        long long budget = 60000);

std::vector<Weight> inversion_set(const WeylElement& w, const RootSystem& rs);

Weight dot_action_simple(int i, const Weight& lam, const TwistParams& tp,
                         const RootSystem& rs);
Weight dot_action(const WeylElement& w, const Weight& lam,
                  const TwistParams& tp, const RootSystem& rs);

}  // namespace wmd
