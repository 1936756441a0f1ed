// Acceptance sweep: one pass/fail line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "wmd/averaging.hpp"
#include "wmd/global_ff.hpp"
#include "wmd/local_series.hpp"

using namespace wmd;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::cout << "CRITERION " << idx << " (" << name << "): "
            << (ok ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << std::endl;
  if (!ok) ++failures;
}

std::vector<int> ell_pattern(int rank, int kind) {
  std::vector<int> ell(static_cast<std::size_t>(rank), 0);
  if (kind >= 1) ell[0] = kind == 1 ? 1 : 2;
  if (kind == 2 && rank > 1) ell[1] = 1;
  return ell;
}

bool criterion_relations(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  int suites = 0;
  for (const char* code : {"A1xA1", "A2", "B2", "G2", "A3", "B3", "C3"})
    for (int n : {1, 2, 3, 4, 6})
      for (int kind : {0, 1, 2}) {
        RootSystem rs = RootSystem::build(code, n);
        ActionParams params{&rs, TwistParams{ell_pattern(rs.rank(), kind)}};
        RelationReport rep = verify_relations(params, 20, 1234 + suites);
        ok = ok && rep.all_passed();
        ++suites;
      }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  detail = std::to_string(suites) + " sweeps in " + std::to_string(secs) + "s";
  return ok && secs < 600;
}

bool criterion_invariance(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  int systems = 0;
  auto run = [&](const char* code, int n) {
    RootSystem rs = RootSystem::build(code, n);
    ActionParams params{&rs,
                        TwistParams{std::vector<int>(
                            static_cast<std::size_t>(rs.rank()), 0)}};
    // average_h certifies polynomiality via exact division or throws
    AveragingResult res = average_h(params, 2000000);
    for (const auto& [i, passed] : verify_invariance(res, params))
      ok = ok && passed;
    ++systems;
  };
  try {
    for (const char* code : {"A2", "B2", "G2"})
      for (int n : {1, 2, 3}) run(code, n);
    for (int n : {1, 2}) run("A3", n);
  } catch (const Error& e) {
    detail = e.what();
    return false;
  }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  detail = std::to_string(systems) + " systems in " + std::to_string(secs) + "s";
  return ok && secs < 900;
}

bool criterion_axis(std::string& detail) {
  bool ok = true;
  for (const char* code : {"A2", "B2", "G2", "A3"}) {
    RootSystem rs = RootSystem::build(code, 2);
    ActionParams params{&rs,
                        TwistParams{std::vector<int>(
                            static_cast<std::size_t>(rs.rank()), 0)}};
    AveragingResult res = average_h(params, 2000000);
    for (int i = 0; i < rs.rank(); ++i) {
      bool match =
          axis_specialization(res, i, params).equals(axis_closed_form(i, rs));
      if (!match) detail += std::string(code) + " axis " + std::to_string(i) + " ";
      ok = ok && match;
    }
  }
  return ok;
}

bool criterion_cocycle(std::string& detail) {
  bool ok = true;
  for (const char* code : {"A2", "B2", "G2"}) {
    RootSystem rs = RootSystem::build(code, 2);
    auto W = weyl_enumerate(rs);
    for (const auto& w : W)
      for (const auto& wp : W)
        if (!(j_cocycle(w * wp, rs) ==
              j_cocycle(w, rs).substitute_weyl(wp, rs) * j_cocycle(wp, rs))) {
          ok = false;
          detail += std::string("cocycle ") + code + " ";
        }
  }
  for (const char* code : {"A1", "A2", "B2", "G2", "A3"}) {
    RootSystem rs = RootSystem::build(code, 2);
    if (!sum_j_equals_delta(rs, 2000000)) {
      ok = false;
      detail += std::string("sumj ") + code + " ";
    }
  }
  return ok;
}

bool criterion_local_fe(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (const char* code : {"A2", "B2"})
    for (int n : {2, 3})
      for (int kind : {0, 1, 2}) {
        RootSystem rs = RootSystem::build(code, n);
        ActionParams params{&rs, TwistParams{ell_pattern(2, kind)}};
        HTable table = h_table(params, 2000000);
        for (int i = 0; i < 2; ++i)
          for (int a = 0; a < 2 * rs.m_simple(0); ++a)
            for (int b = 0; b < 2 * rs.m_simple(1); ++b) {
              FEReport rep = verify_local_fe(table, Weight{a, b}, i, params);
              if (!rep.passed) {
                ok = false;
                detail += std::string(code) + " n=" + std::to_string(n) + " ";
              }
            }
      }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  if (detail.empty())
    detail = "all k in [0,2m)^2, both i, in " + std::to_string(secs) + "s";
  return ok && secs < 600;
}

bool criterion_gauss(std::string& detail) {
  double worst = 0.0;
  for (auto [q, n] : {std::pair<long long, int>{5, 2}, {13, 2}, {13, 3}}) {
    FFContext ctx(q, n);
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long long> elem(0, q - 1);
    auto random_monic = [&](int deg) {
      FFPoly f;
      for (int k = 0; k < deg; ++k) f.c.push_back(elem(rng));
      f.c.push_back(1);
      return f;
    };
    FFPoly one = FFPoly::constant(1, q);
    int done = 0;
    while (done < 50) {
      FFPoly a = random_monic(1);
      FFPoly b = random_monic(1 + static_cast<int>(rng() % 2));
      if (!ff_gcd(a, b, q).is_one()) continue;
      long long t = 1 + static_cast<long long>(rng() % n);
      FFPoly m = FFPoly::constant(1 + static_cast<long long>(rng() % (q - 1)), q);
      std::complex<double> lhs = gauss_sum(m, ff_mul(a, b, q), t, ctx);
      std::complex<double> rhs =
          gauss_sum(m, a, t, ctx) * gauss_sum(m, b, t, ctx) *
          ctx.eps_pow(t * (*residue_symbol_index(a, b, ctx) +
                           *residue_symbol_index(b, a, ctx)));
      worst = std::max(worst, std::abs(lhs - rhs));
      std::complex<double> lhs2 = gauss_sum(ff_mul(a, m, q), b, t, ctx);
      std::complex<double> rhs2 =
          ctx.eps_pow(-t * *residue_symbol_index(a, b, ctx)) *
          gauss_sum(m, b, t, ctx);
      worst = std::max(worst, std::abs(lhs2 - rhs2));
      std::complex<double> pair =
          gauss_sum(one, b, 1, ctx) * gauss_sum(one, b, -1, ctx);
      bool sf = true;
      for (const auto& [pi, mult] : ctx.factor(b)) sf = sf && mult == 1;
      if (sf)
        worst = std::max(worst,
                         std::abs(pair - std::pow(static_cast<double>(q),
                                                  b.deg())));
      ++done;
    }
  }
  {
    FFContext ctx(5, 2);
    worst = std::max(
        worst, std::abs(gauss_sum(FFPoly::constant(1, 5), FFPoly::t(), 1, ctx) -
                        std::complex<double>(std::sqrt(5.0))));
  }
  detail = "max residual " + std::to_string(worst);
  return worst < 1e-9;
}

bool criterion_multiplicativity(std::string& detail) {
  bool ok = true;
  // order independence for A1, A2 over F_5 (n=2) and F_13 (n=3)
  for (auto [q, n] : {std::pair<long long, int>{5, 2}, {13, 3}})
    for (const char* code : {"A1", "A2"}) {
      FFContext ctx(q, n);
      RootSystem rs = RootSystem::build(code, n);
      GlobalEvaluator ev(ctx, rs);
      std::mt19937_64 rng(31337);
      std::uniform_int_distribution<long long> elem(0, q - 1);
      auto random_monic = [&](int deg) {
        FFPoly f;
        for (int k = 0; k < deg; ++k) f.c.push_back(elem(rng));
        f.c.push_back(1);
        return f;
      };
      FFPoly one = FFPoly::constant(1, q);
      int done = 0;
      double worst = 0.0;
      while (done < 25) {
        std::vector<FFPoly> c, m;
        for (int i = 0; i < rs.rank(); ++i) {
          c.push_back(random_monic(1 + static_cast<int>(rng() % 2)));
          m.push_back(one);
        }
        std::map<FFPoly, int> primes;
        for (const auto& f : c)
          for (const auto& [pi, mult] : ctx.factor(f)) primes[pi] += mult;
        if (primes.size() < 2) continue;
        std::vector<int> order(primes.size());
        for (std::size_t k = 0; k < order.size(); ++k)
          order[k] = static_cast<int>(k);
        std::complex<double> base = ev.h_general(c, m, &order);
        for (int rep = 0; rep < 3; ++rep) {
          std::shuffle(order.begin(), order.end(), rng);
          worst = std::max(worst, std::abs(ev.h_general(c, m, &order) - base));
        }
        ++done;
      }
      if (worst >= 1e-10) {
        ok = false;
        detail += std::string(code) + " q=" + std::to_string(q) + " ";
      }
    }
  // A1, n=2: H(c) equals the Gauss sum for every squarefree monic c, deg <= 3
  {
    FFContext ctx(5, 2);
    RootSystem a1 = RootSystem::build("A1", 2);
    GlobalEvaluator ev(ctx, a1);
    FFPoly one = FFPoly::constant(1, 5);
    for (int d = 1; d <= 3; ++d) {
      std::vector<long long> coeffs(static_cast<std::size_t>(d), 0);
      while (true) {
        FFPoly c;
        c.c.assign(coeffs.begin(), coeffs.end());
        c.c.push_back(1);
        bool squarefree = true;
        for (const auto& [pi, mult] : ctx.factor(c))
          if (mult > 1) squarefree = false;
        if (squarefree &&
            std::abs(ev.h_general({c}, {one}) - gauss_sum(one, c, 1, ctx)) >=
                1e-9) {
          ok = false;
          detail += "H!=g at " + c.str() + " ";
        }
        std::size_t k = 0;
        while (k < coeffs.size() && ++coeffs[k] == 5) coeffs[k++] = 0;
        if (k == coeffs.size()) break;
      }
    }
  }
  if (detail.empty()) detail = "order independence + squarefree Gauss match";
  return ok;
}

bool criterion_degeneration(std::string& detail) {
  struct Case {
    const char* code;
    std::vector<int> ell;
  };
  bool ok = true;
  for (const auto& [code, ell] :
       {Case{"A2", {0, 0}}, {"A2", {1, 0}}, {"A2", {1, 1}}, {"A1", {0}},
        {"A1", {3}}, {"B2", {0, 0}}}) {
    RootSystem rs = RootSystem::build(code, 1);
    ActionParams params{&rs, TwistParams{ell}};
    AveragingResult res = average_h(params, 2000000);
    DegenerationReport rep = n1_degeneration(res, params);
    if (!rep.passed()) {
      ok = false;
      detail += std::string(code) + " ";
    } else {
      detail += std::string(code) + ":dim" + std::to_string(rep.dim_theta) + " ";
    }
  }
  return ok;
}

bool criterion_determinism(std::string& detail) {
  RootSystem g2 = RootSystem::build("G2", 2);
  ActionParams params{&g2, TwistParams{{0, 0}}};
  std::string a = verify_relations(params, 5, 99).to_json().dump();
  std::string b = verify_relations(params, 5, 99).to_json().dump();
  RootSystem a2 = RootSystem::build("A2", 2);
  ActionParams p2{&a2, TwistParams{{1, 0}}};
  std::string c = h_table(p2).to_json().dump();
  std::string d = h_table(p2).to_json().dump();
  detail = "byte-identical JSON across repeated runs";
  return a == b && c == d;
}

}  // namespace

int main() {
  std::string detail;

  detail.clear();
  report(1, "Coxeter relation suite", criterion_relations(detail), detail);
  detail.clear();
  report(2, "invariance + polynomiality", criterion_invariance(detail), detail);
  detail.clear();
  report(3, "axis specialization", criterion_axis(detail), detail);
  detail.clear();
  report(4, "j-cocycle + denominator identity", criterion_cocycle(detail),
         detail);
  detail.clear();
  report(5, "local functional equation", criterion_local_fe(detail), detail);
  detail.clear();
  report(6, "Gauss-sum identities", criterion_gauss(detail), detail);
  detail.clear();
  report(7, "twisted multiplicativity", criterion_multiplicativity(detail),
         detail);
  detail.clear();
  report(8, "character degeneration", criterion_degeneration(detail), detail);
  detail.clear();
  report(9, "determinism", criterion_determinism(detail), detail);

  if (failures == 0) {
    std::cout << "ALL CRITERIA PASSED" << std::endl;
    return 0;
  }
  std::cout << failures << " CRITERIA FAILED" << std::endl;
  return 1;
}
