#include "wmd/rootsys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wmd {

int height(const Weight& w) { return std::accumulate(w.begin(), w.end(), 0); }

Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Weight operator*(int k, const Weight& a) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
  return r;
}

bool is_dominant_support(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int k) { return k >= 0; });
}

namespace {

struct TypeData {
  std::vector<std::vector<int>> cartan;
  std::vector<int> norms;
  long long weyl_order;
};

long long factorial(int k) {
  long long r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

// Cartan matrix and squared root lengths (short root = 1) per type.
TypeData irreducible_data(char type, int r) {
  auto make = [&](std::vector<int> norms,
                  std::vector<std::pair<int, int>> edges,
                  std::vector<int> edge_pairing2, long long order) {
    std::vector<std::vector<int>> c(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) c[i][i] = 2;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto [i, j] = edges[e];
      int p2 = edge_pairing2[e];  // 2<a_i,a_j>
      if (p2 % norms[j] != 0 || p2 % norms[i] != 0)
        throw Error("inconsistent Cartan data");
      c[i][j] = p2 / norms[j];
      c[j][i] = p2 / norms[i];
    }
    return TypeData{std::move(c), std::move(norms), order};
  };

  switch (type) {
    case 'A': {
      if (r < 1) throw Error("type A needs rank >= 1");
      std::vector<int> norms(r, 1);
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < r; ++i) edges.push_back({i, i + 1});
      return make(norms, edges, std::vector<int>(edges.size(), -1),
                  factorial(r + 1));
    }
    case 'B': {
      if (r < 2) throw Error("type B needs rank >= 2");
      std::vector<int> norms(r, 2);
      norms[r - 1] = 1;  // last simple root short
      std::vector<std::pair<int, int>> edges;
      std::vector<int> p2;
      for (int i = 0; i + 1 < r; ++i) {
        edges.push_back({i, i + 1});
        p2.push_back(i + 1 == r - 1 ? -2 : -2);
      }
      // long-long edges have 2<,> = -2; the long-short edge also -2.
      return make(norms, edges, p2, (1LL << r) * factorial(r));
    }
    case 'C': {
      if (r < 2) throw Error("type C needs rank >= 2");
      std::vector<int> norms(r, 1);
      norms[r - 1] = 2;  // last simple root long
      std::vector<std::pair<int, int>> edges;
      std::vector<int> p2;
      for (int i = 0; i + 1 < r; ++i) {
        edges.push_back({i, i + 1});
        p2.push_back(i + 1 == r - 1 ? -2 : -1);
      }
      return make(norms, edges, p2, (1LL << r) * factorial(r));
    }
    case 'D': {
      if (r < 4) throw Error("type D needs rank >= 4");
      std::vector<int> norms(r, 1);
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < r - 1; ++i) edges.push_back({i, i + 1});
      edges.push_back({r - 3, r - 1});
      return make(norms, edges, std::vector<int>(edges.size(), -1),
                  (1LL << (r - 1)) * factorial(r));
    }
    case 'E': {
      if (r != 6) throw Error("type E supported at rank 6 only (desk scale)");
      std::vector<int> norms(r, 1);
      // Bourbaki numbering: chain 1-3-4-5-6, node 2 attached to 4.
      std::vector<std::pair<int, int>> edges = {{0, 2}, {2, 3}, {3, 4},
                                                {4, 5}, {1, 3}};
      return make(norms, edges, std::vector<int>(edges.size(), -1), 51840);
    }
    case 'F': {
      if (r != 4) throw Error("type F needs rank 4");
      std::vector<int> norms = {2, 2, 1, 1};
      std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}};
      std::vector<int> p2 = {-2, -2, -1};
      return make(norms, edges, p2, 1152);
    }
    case 'G': {
      if (r != 2) throw Error("type G needs rank 2");
      std::vector<int> norms = {1, 3};
      std::vector<std::pair<int, int>> edges = {{0, 1}};
      std::vector<int> p2 = {-3};
      return make(norms, edges, p2, 12);
    }
    default:
      throw Error(std::string("unknown root system type '") + type + "'");
  }
}

}  // namespace

RootSystem RootSystem::build(char type, int rank, int n) {
  return build(std::string(1, type) + std::to_string(rank), n);
}

RootSystem RootSystem::build(const std::string& code, int n) {
  if (n < 1) throw Error("root system: n must be >= 1");
  // Split on 'x' for reducible systems like "A1xA1".
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : code) {
    if (ch == 'x' || ch == 'X') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);

  RootSystem rs;
  rs.code_ = code;
  rs.n_ = n;
  std::vector<TypeData> blocks;
  for (const auto& p : parts) {
    if (p.size() < 2 || p[0] < 'A' || p[0] > 'G')
      throw Error("invalid root system code '" + code + "'");
    int r = 0;
    try {
      std::size_t used = 0;
      r = std::stoi(p.substr(1), &used);
      if (used != p.size() - 1) throw Error("");
    } catch (...) {
      throw Error("invalid root system code '" + code + "'");
    }
    blocks.push_back(irreducible_data(p[0], r));
  }

  int total = 0;
  for (const auto& b : blocks) total += static_cast<int>(b.norms.size());
  rs.rank_ = total;
  rs.cartan_.assign(total, std::vector<int>(total, 0));
  rs.pairing2_.assign(total, std::vector<int>(total, 0));
  rs.norms_.assign(total, 1);
  int off = 0;
  rs.weyl_order_ = 1;
  for (const auto& b : blocks) {
    int r = static_cast<int>(b.norms.size());
    for (int i = 0; i < r; ++i) {
      rs.norms_[off + i] = b.norms[i];
      for (int j = 0; j < r; ++j) {
        rs.cartan_[off + i][off + j] = b.cartan[i][j];
        rs.pairing2_[off + i][off + j] = b.cartan[i][j] * b.norms[j];
      }
    }
    rs.weyl_order_ *= b.weyl_order;
    off += r;
  }
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      if (rs.pairing2_[i][j] != rs.pairing2_[j][i])
        throw Error("asymmetric pairing: internal Cartan data error");
  rs.finish(n);
  return rs;
}

Weight RootSystem::reflect_simple(int i, const Weight& w) const {
  int coef = 0;
  for (int j = 0; j < rank_; ++j) coef += w[j] * cartan_[j][i];
  Weight r = w;
  r[i] -= coef;
  return r;
}

void RootSystem::finish(int n) {
  // All roots = closure of the simple roots under the simple reflections.
  std::set<Weight> all;
  std::vector<Weight> queue;
  for (int i = 0; i < rank_; ++i) {
    Weight e(rank_, 0);
    e[i] = 1;
    all.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    Weight w = queue.back();
    queue.pop_back();
    for (int i = 0; i < rank_; ++i) {
      Weight im = reflect_simple(i, w);
      if (all.insert(im).second) queue.push_back(im);
    }
  }
  pos_roots_.clear();
  for (const auto& w : all)
    if (is_dominant_support(w)) pos_roots_.push_back(w);
  std::sort(pos_roots_.begin(), pos_roots_.end(),
            [](const Weight& a, const Weight& b) {
              return std::pair(height(a), a) < std::pair(height(b), b);
            });

  // Triangular pivot basis for Lambda' = <m(alpha) alpha>.
  lattice_pivots_.assign(rank_, Weight());
  auto insert_vec = [&](Weight v) {
    for (int i = 0; i < rank_; ++i) {
      if (v[i] == 0) continue;
      if (lattice_pivots_[i].empty()) {
        if (v[i] < 0) v = -1 * v;
        lattice_pivots_[i] = v;
        return;
      }
      // Euclid on the i-th coordinate.
      while (v[i] != 0) {
        int k = lattice_pivots_[i][i] / v[i];
        Weight t = lattice_pivots_[i] - k * v;
        lattice_pivots_[i] = v;
        v = t;
        if (lattice_pivots_[i][i] < 0) lattice_pivots_[i] = -1 * lattice_pivots_[i];
      }
    }
  };
  for (const auto& alpha : pos_roots_) insert_vec(m_of(alpha) * alpha);
  for (int i = 0; i < rank_; ++i)
    if (lattice_pivots_[i].empty())
      throw Error("sublattice not full rank: internal error");
  (void)n;
}

int RootSystem::norm2(const Weight& root) const {
  long long s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      s += static_cast<long long>(root[i]) * root[j] * pairing2_[i][j];
  if (s % 2 != 0) throw Error("norm2: odd pairing sum");
  return static_cast<int>(s / 2);
}

int RootSystem::m_of(const Weight& root) const {
  return n_ / std::gcd(n_, norm2(root));
}

int RootSystem::m_simple(int i) const {
  return n_ / std::gcd(n_, norms_[i]);
}

int RootSystem::relation_order(int i, int j) const {
  if (i == j) return 1;
  int prod = cartan_[i][j] * cartan_[j][i];
  switch (prod) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw Error("invalid Cartan product");
  }
}

Weight RootSystem::reduce_mod_sublattice(const Weight& w) const {
  // Pivot i has its first nonzero entry at coordinate i, so reducing in
  // ascending order pins each coordinate into [0, pivot_i) exactly once.
  Weight v = w;
  for (int i = 0; i < rank_; ++i) {
    const Weight& p = lattice_pivots_[i];
    int d = p[i];
    int k = v[i] >= 0 ? v[i] / d : -((-v[i] + d - 1) / d);
    v = v - k * p;
  }
  return v;
}

bool RootSystem::in_sublattice(const Weight& w) const {
  Weight v = reduce_mod_sublattice(w);
  return std::all_of(v.begin(), v.end(), [](int k) { return k == 0; });
}

WeylElement WeylElement::identity(int rank) {
  WeylElement e;
  e.mat_.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) e.mat_[i][i] = 1;
  return e;
}

WeylElement WeylElement::simple(int i, const RootSystem& rs) {
  int r = rs.rank();
  WeylElement e = identity(r);
  // sigma_i : alpha_j -> alpha_j - c(j,i) alpha_i
  for (int j = 0; j < r; ++j) e.mat_[i][j] -= rs.cartan(j, i);
  e.word_ = {i};
  return e;
}

WeylElement WeylElement::from_word(const std::vector<int>& word,
                                   const RootSystem& rs) {
  WeylElement e = identity(rs.rank());
  for (int i : word) e = e * simple(i, rs);
  e.canonicalize_word(rs);
  return e;
}

Weight WeylElement::apply(const Weight& w) const {
  int r = static_cast<int>(mat_.size());
  Weight out(r, 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += mat_[i][j] * w[j];
  return out;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  int r = static_cast<int>(mat_.size());
  WeylElement e;
  e.mat_.assign(r, std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (mat_[i][k] == 0) continue;
      for (int j = 0; j < r; ++j) e.mat_[i][j] += mat_[i][k] * o.mat_[k][j];
    }
  e.word_ = word_;
  e.word_.insert(e.word_.end(), o.word_.begin(), o.word_.end());
  return e;
}

WeylElement WeylElement::inverse(const RootSystem& rs) const {
  std::vector<int> rev(word_.rbegin(), word_.rend());
  return from_word(rev, rs);
}

void WeylElement::canonicalize_word(const RootSystem& rs) {
  // Lex-minimal reduced word via left descents: the first letter of the
  // canonical word of w is the least i with sigma_i w shorter than w, i.e.
  // w^{-1} alpha_i < 0, i.e. -alpha_i = w beta for some positive beta.
  auto neg = [](const Weight& w) {
    return std::all_of(w.begin(), w.end(), [](int k) { return k <= 0; });
  };
  auto len = [&](const WeylElement& e) {
    int c = 0;
    for (const auto& a : rs.positive_roots())
      if (neg(e.apply(a))) ++c;
    return c;
  };
  word_.clear();
  WeylElement cur = *this;
  int cur_len = len(cur);
  while (cur_len > 0) {
    bool found = false;
    for (int i = 0; i < rs.rank() && !found; ++i) {
      WeylElement cand = simple(i, rs) * cur;
      int cand_len = len(cand);
      if (cand_len < cur_len) {
        word_.push_back(i);
        cur = std::move(cand);
        cur_len = cand_len;
        found = true;
      }
    }
    if (!found) throw Error("canonicalize_word: no descent found");
  }
}

std::vector<WeylElement> weyl_enumerate(const RootSystem& rs,
                                        long long budget) {
  if (rs.weyl_order() > budget)
    throw Error("Weyl group too large: |W| = " +
                std::to_string(rs.weyl_order()) + " exceeds budget " +
                std::to_string(budget));
  std::vector<WeylElement> gens;
  for (int i = 0; i < rs.rank(); ++i) gens.push_back(WeylElement::simple(i, rs));

  std::set<WeylElement> seen;
  std::vector<WeylElement> frontier = {WeylElement::identity(rs.rank())};
  seen.insert(frontier[0]);
  std::vector<WeylElement> out = frontier;
  while (!frontier.empty()) {
    std::vector<WeylElement> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        WeylElement cand = g * w;
        if (seen.insert(cand).second) next.push_back(cand);
      }
    }
    for (auto& w : next) out.push_back(w);
    frontier = std::move(next);
  }
  if (static_cast<long long>(out.size()) != rs.weyl_order())
    throw Error("Weyl enumeration mismatch: internal error");
  for (auto& w : out) w.canonicalize_word(rs);
  std::sort(out.begin(), out.end(), [](const WeylElement& a,
                                       const WeylElement& b) {
    return std::pair(a.length(), a.word()) < std::pair(b.length(), b.word());
  });
  return out;
}

std::vector<Weight> inversion_set(const WeylElement& w, const RootSystem& rs) {
  std::vector<Weight> out;
  for (const auto& alpha : rs.positive_roots()) {
    Weight im = w.apply(alpha);
    if (std::all_of(im.begin(), im.end(), [](int k) { return k <= 0; }))
      out.push_back(alpha);
  }
  return out;
}

Weight dot_action_simple(int i, const Weight& lam, const TwistParams& tp,
                         const RootSystem& rs) {
  // sigma_i . lam = sigma_i lam + (l_i + 1) alpha_i
  Weight r = rs.reflect_simple(i, lam);
  r[i] += tp.ell[i] + 1;
  return r;
}

Weight dot_action(const WeylElement& w, const Weight& lam,
                  const TwistParams& tp, const RootSystem& rs) {
  Weight r = lam;
  const auto& word = w.word();
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    r = dot_action_simple(*it, r, tp, rs);
  return r;
}

}  // namespace wmd
