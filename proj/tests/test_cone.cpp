#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "multinorm/cone.hpp"
#include "multinorm/weights.hpp"

using namespace multinorm;
using namespace multinorm::testing;

namespace {

std::vector<std::vector<long long>> brute_lattice(ConeSpec const& C, int depth) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> t(C.n, -depth);
  while (true) {
    if (member(C, t)) out.push_back(t);
    int p = C.n - 1;
    while (p >= 0 && t[p] == -1) t[p--] = -depth;
    if (p < 0) break;
    ++t[p];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("membership") {
  auto E = mat({{"1", "1"}, {"2", "1"}});
  auto C = cone_of(E);
  CHECK(member(C, std::vector<long long>{-1, -1}));
  CHECK_FALSE(member(C, std::vector<long long>{-1, -3}));
  for (auto const& g : generators(E)) CHECK(member(C, g));
}

TEST_CASE("generators lie in the cone and span the reduced rank") {
  {
    auto E = mat({{"1", "1"}, {"2", "1"}});
    auto g = generators(E);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == rats({"-1", "-2"}));
    CHECK(g[1] == rats({"-1", "-1"}));
    CHECK(g[2] == rats({"-1", "-1"}));
    CHECK(g[3] == rats({"-1/2", "-1"}));
  }
  {
    auto E = mat({{"1"}});
    auto g = generators(E);
    CHECK(g[0] == rats({"-1"}));
    CHECK(g[1] == rats({"-1"}));
  }
  {
    // every generator sits on the single ray t_1 = 2 t_2
    auto E = mat({{"1", "2"}, {"1/2", "1"}});
    for (auto const& v : generators(E)) CHECK(v[0] == 2 * v[1]);
  }
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 200; ++it) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto E = random_closed(rng, n);
    auto C = cone_of(E);
    for (auto const& v : generators(E)) CHECK(member(C, v));
  }
}

TEST_CASE("interior and dimension") {
  CHECK(has_interior(mat({{"1", "1"}, {"2", "1"}})));
  CHECK(dimension(mat({{"1", "1"}, {"2", "1"}})) == 2);
  CHECK_FALSE(has_interior(mat({{"1", "2"}, {"1/2", "1"}})));
  CHECK(dimension(mat({{"1", "2"}, {"1/2", "1"}})) == 1);
  CHECK(dimension(mat({{"1"}})) == 1);
}

TEST_CASE("lattice enumeration") {
  {
    auto pts = enumerate_lattice(cone_of(mat({{"1", "1"}, {"2", "1"}})), 2);
    std::vector<std::vector<long long>> expect{{-2, -2}, {-1, -2}, {-1, -1}};
    CHECK(pts == expect);
  }
  {
    auto pts = enumerate_lattice(cone_of(mat({{"1"}})), 3);
    std::vector<std::vector<long long>> expect{{-3}, {-2}, {-1}};
    CHECK(pts == expect);
  }
  {
    auto pts = enumerate_lattice(cone_of(mat({{"1", "2"}, {"1/2", "1"}})), 4);
    std::vector<std::vector<long long>> expect{{-4, -2}, {-2, -1}};
    CHECK(pts == expect);
  }
  std::mt19937_64 rng(615);
  for (int it = 0; it < 50; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto E = random_closed(rng, n);
    auto C = cone_of(E);
    CHECK(enumerate_lattice(C, 6) == brute_lattice(C, 6));
  }
}

TEST_CASE("extend a point coordinate by coordinate") {
  {
    auto E = mat({{"1", "1"}, {"2", "1"}});
    auto t = extend_point(E, rats({"-1"}));
    CHECK(t == rats({"-1", "-3/2"}));
  }
  {
    auto E = mat({{"1", "1"}, {"2", "1"}});
    auto u = rats({"-1", "-1"});
    CHECK(extend_point(E, u) == u);
  }
  {
    auto E = mat({{"1", "1", "1"}, {"2", "1", "1"}, {"3", "3/2", "1"}});
    auto t = extend_point(E, rats({"-1", "-2"}));
    CHECK(t == rats({"-1", "-2", "-5/2"}));
  }
  std::mt19937_64 rng(112233);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto E = random_closed(rng, n);
    auto C = cone_of(E);
    auto gens = generators(E);
    for (int jt = 0; jt < 100; ++jt) {
      // random positive combination of generators lies in the cone
      std::vector<Rational> u(n, Rational(0));
      for (auto const& g : gens) {
        Rational c = Rational(static_cast<long long>(rng() % 4));
        for (int i = 0; i < n; ++i) u[i] += c * g[i];
      }
      if (!member(C, u)) continue;  // all weights may be zero
      int p = 1 + static_cast<int>(rng() % n);
      std::vector<Rational> prefix(u.begin(), u.begin() + p);
      auto t = extend_point(E, prefix);
      CHECK(member(C, t));
      for (int i = 0; i < p; ++i) CHECK(t[i] == u[i]);
    }
  }
}

TEST_CASE("projection examples") {
  {
    auto P = project(cone_of(mat({{"1", "1"}, {"2", "1"}})), {0});
    CHECK(P.n == 1);
    CHECK(P.constraints.empty());  // every t_1 < 0 extends
  }
  {
    // product cone onto its first factor
    auto ES = mat({{"1", "1"}, {"2", "1"}});
    ConeSpec prod;
    prod.n = 4;
    for (auto const& c : cone_of(ES).constraints) {
      prod.constraints.push_back(c);
      prod.constraints.push_back({c.j + 2, c.k + 2, c.coef, c.strict});
    }
    auto P = project(prod, {0, 1});
    // same lattice as the factor
    CHECK(enumerate_lattice(P, 6) == enumerate_lattice(cone_of(ES), 6));
  }
}

TEST_CASE("projection agrees with extension feasibility on boxes") {
  std::mt19937_64 rng(321);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto E = random_closed(rng, n);
    ConeSpec C = cone_of(E);
    // random strictness sprinkles
    for (auto& c : C.constraints)
      if (rng() % 4 == 0) c.strict = true;
    if (!feasible(C)) continue;
    std::vector<int> keep;
    for (int i = 0; i < n; ++i)
      if (rng() % 2 == 0) keep.push_back(i);
    if (keep.empty() || static_cast<int>(keep.size()) == n) continue;
    auto P = project(C, keep);
    int depth = 6;
    std::vector<long long> y(keep.size(), -depth);
    while (true) {
      bool in_proj = member(P, y);
      std::vector<FixedValue> fixed;
      for (size_t i = 0; i < keep.size(); ++i)
        fixed.push_back({keep[i], Rational(y[i])});
      bool extends = feasible_with_fixed(C, fixed);
      CHECK(in_proj == extends);
      int p = static_cast<int>(y.size()) - 1;
      while (p >= 0 && y[p] == -1) y[p--] = -depth;
      if (p < 0) break;
      ++y[p];
    }
  }
}

TEST_CASE("feasibility and witnesses") {
  auto E = mat({{"1", "1"}, {"2", "1"}});
  auto C = cone_of(E);
  CHECK(feasible(C));
  auto w = integer_witness(C);
  REQUIRE(w.has_value());
  CHECK(member(C, *w));

  // empty: opposite strict ratio bounds
  ConeSpec bad;
  bad.n = 2;
  bad.constraints.push_back({0, 1, Rational(1), true});   // t_2 < t_1
  bad.constraints.push_back({1, 0, Rational(1), false});  // t_1 <= t_2
  CHECK_FALSE(feasible(bad));
  CHECK_FALSE(integer_witness(bad).has_value());

  std::mt19937_64 rng(888);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + static_cast<int>(rng() % 4);
    auto B = random_partial(rng, n, 0.4);
    auto c = close(B);
    ConeSpec C2 = cone_of(B);
    CHECK(feasible(C2) == !c.empty);  // cycle emptiness matches elimination
    if (!c.empty) {
      auto w2 = integer_witness(C2);
      REQUIRE(w2.has_value());
      CHECK(member(C2, *w2));
    }
  }
}

TEST_CASE("cyclic weight sums converge when the cycle product is off 1") {
  auto prof = cyclic_weight_sum(rats({"1", "2"}), Rational(1, 2), 40);
  REQUIRE(prof.partial.size() == 40);
  for (size_t i = 0; i + 1 < prof.partial.size(); ++i)
    CHECK(prof.partial[i] <= prof.partial[i + 1] + 1e-15);
  // geometric tail: increments shrink by a stable factor
  CHECK(prof.increment[39] < prof.increment[20]);
  CHECK_THROWS_AS(cyclic_weight_sum(rats({"2", "1/2"}), Rational(1, 2), 10),
                  DivergentParameters);
}

TEST_CASE("two-sided scaled min sum") {
  auto prof = scaled_min_sum(1.0, 1.0, 60);
  CHECK(prof.partial.back() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("lattice sum against the closed-form envelope") {
  auto E = mat({{"1", "1"}, {"2", "1"}});
  // decay exponent matched to the envelope scaling:
  // sum_j alpha_j * max_k e(j,k) + sum_j M_j = 1 + 2
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k <= 20; ++k) {
    double A = std::exp2(k);
    auto r = envelope_ratio(E, {1.0, 1.0}, {0.0, 0.0}, 3.0, {A, A}, 80);
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  CHECK(hi / lo <= 8.0);
  CHECK(lo > 0.0);
}
