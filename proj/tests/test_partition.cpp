#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "multinorm/cone.hpp"
#include "multinorm/partitions.hpp"

using namespace multinorm;
using namespace multinorm::testing;

namespace {

NormSystem heisenberg_flat() {
  return NormSystem{mat({{"1", "1"}, {"2", "1"}}), BlockDecomposition::isotropic({1, 1}),
                    Side::Space};
}

// independent count of marked partitions: sum over set partitions of the
// product of block sizes
long long oracle_partition_count(int n) {
  std::vector<int> assign(n, -1);
  long long total = 0;
  auto rec = [&](auto&& self, int pos, int blocks) -> void {
    if (pos == n) {
      std::vector<long long> size(blocks, 0);
      for (int v : assign) ++size[v];
      long long prod = 1;
      for (long long s : size) prod *= s;
      total += prod;
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      assign[pos] = b;
      self(self, pos + 1, std::max(blocks, b + 1));
    }
  };
  rec(rec, 0, 0);
  return total;
}

}  // namespace

TEST_CASE("norm evaluation on both sides") {
  auto sys = heisenberg_flat();
  auto N = norms(sys, {1.0, 1.0});
  CHECK(N[0] == doctest::Approx(2.0));
  CHECK(N[1] == doctest::Approx(2.0));
  CHECK(norms(sys, {0.0, 0.0}) == std::vector<double>{0.0, 0.0});

  NormSystem dual = sys;
  dual.side = Side::Frequency;
  auto Nh = norms(dual, {1.0, 1.0});
  CHECK(Nh[0] == doctest::Approx(2.0));
  CHECK(Nh[1] == doctest::Approx(2.0));
  auto Nh2 = norms(dual, {0.0, 4.0});
  CHECK(Nh2[0] == doctest::Approx(2.0));
  CHECK(Nh2[1] == doctest::Approx(4.0));
}

TEST_CASE("euclidean norm on isotropic blocks") {
  auto dec = BlockDecomposition::isotropic({2, 1});
  auto nb = block_norms(dec, {3.0, 4.0, 2.0});
  CHECK(nb[0] == doctest::Approx(5.0));
  CHECK(nb[1] == doctest::Approx(2.0));
  auto aniso = BlockDecomposition::make({{Rational(1), Rational(2)}});
  auto nb2 = block_norms(aniso, {4.0, 4.0});
  CHECK(nb2[0] == doctest::Approx(6.0));  // 4 + 4^{1/2}
}

TEST_CASE("marked partition enumeration") {
  CHECK(enumerate_partitions(1).size() == 1);
  CHECK(enumerate_partitions(2).size() == 3);
  CHECK(enumerate_partitions(3).size() == 10);
  CHECK(enumerate_partitions(4).size() == static_cast<size_t>(oracle_partition_count(4)));
  for (int n = 1; n <= 4; ++n) {
    auto all = enumerate_partitions(n);
    CHECK(all.front().is_principal());
    // no duplicates
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
  }
}

TEST_CASE("classification of points in the unit ball") {
  auto sys = heisenberg_flat();
  {
    auto r = classify(sys, {0.3, 0.2});
    REQUIRE(r.status == ClassifyResult::Ok);
    CHECK(r.S.is_principal());
  }
  {
    auto r = classify(sys, {0.5, 0.1});
    REQUIRE(r.status == ClassifyResult::Ok);
    CHECK(r.S.blocks == std::vector<std::vector<int>>{{0, 1}});
    CHECK(r.S.marks == std::vector<int>{0});
  }
  {
    auto r = classify(sys, {0.3, 0.09});
    CHECK(r.status == ClassifyResult::Tie);
  }
  {
    auto r = classify(sys, {1.5, 0.2});
    CHECK(r.status == ClassifyResult::WrongSide);
  }
  // exact rational variant agrees, including the exact tie
  {
    auto r = classify_exact(sys, {Rational(3, 10), Rational(9, 100)});
    CHECK(r.status == ClassifyResult::Tie);
    auto r2 = classify_exact(sys, {Rational(1, 2), Rational(1, 10)});
    REQUIRE(r2.status == ClassifyResult::Ok);
    CHECK(r2.S.marks == std::vector<int>{0});
  }
}

TEST_CASE("region membership, reduced versus full") {
  auto sys = heisenberg_flat();
  MarkedPartition merged;
  merged.blocks = {{0, 1}};
  merged.marks = {0};
  auto S0 = principal_partition(2);

  CHECK(member_es(sys, merged, 1.0, {0.5, 0.1}));
  CHECK_FALSE(member_es(sys, S0, 1.0, {0.5, 0.1}));
  CHECK(member_es(sys, merged, 10.0, {0.5, 0.1}));
  CHECK(member_es(sys, S0, 10.0, {0.5, 0.1}));

  // overlap regions with A > 1 via the full definition
  auto all = classify_all(sys, {0.5, 0.1}, 10.0);
  CHECK(all.size() >= 2);
}

TEST_CASE("classification picks the unique region") {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto sys = heisenberg_flat();
  auto partitions = enumerate_partitions(2);
  int used = 0;
  for (int it = 0; it < 1000; ++it) {
    std::vector<double> x{U(rng), U(rng)};
    auto r = classify(sys, x);
    if (r.status != ClassifyResult::Ok) continue;
    ++used;
    int hits = 0;
    for (auto const& S : partitions) {
      bool m = member_es(sys, S, 1.0, x);
      bool mf = member_es_full(sys, S, 1.0, x);
      CHECK(m == mf);
      if (m) {
        ++hits;
        CHECK(S == r.S);
      }
    }
    CHECK(hits == 1);
  }
  CHECK(used > 500);
}

TEST_CASE("sigma tau identities") {
  std::mt19937_64 rng(7117);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto E = random_closed(rng, n);
    for (auto const& S : enumerate_partitions(n)) {
      auto st = sigma_tau(E, S);
      for (int r = 0; r < S.order(); ++r) {
        int kr = S.marks[r];
        for (int l : S.blocks[r]) {
          CHECK(st.sigma[r][l] == Rational(1) / E(l, kr));
          CHECK(st.tau[l][r] == Rational(1) / E(kr, l));
        }
        // submultiplicativity across marks
        for (int p = 0; p < S.order(); ++p)
          for (int m : S.blocks[p]) {
            CHECK(st.sigma[r][m] >= st.sigma[r][S.marks[p]] * st.sigma[p][m]);
            CHECK(st.tau[m][r] >= st.tau[m][p] * st.tau[S.marks[p]][r]);
          }
      }
    }
  }
}

TEST_CASE("derived matrices") {
  auto E = mat({{"1", "1"}, {"2", "1"}});
  {
    auto dm = derived_matrix(E, principal_partition(2));
    REQUIRE(dm.active);
    CHECK(dm.ES == E);
  }
  {
    MarkedPartition S;
    S.blocks = {{0, 1}};
    S.marks = {0};
    auto dm = derived_matrix(E, S);
    REQUIRE(dm.active);
    CHECK(dm.ES == mat({{"1"}}));
    auto dims = s_dims(E, S, BlockDecomposition::isotropic({1, 1}));
    CHECK(dims.Q[0] == Rational(3));  // 1*e(1,1) + 1*e(2,1)
    CHECK(dims.Qhat[0] == Rational(2));  // 1/e(1,1) + 1/e(1,2)
  }
  {
    auto dm = derived_matrix(mat({{"1", "2"}, {"1/2", "1"}}), principal_partition(2));
    CHECK_FALSE(dm.active);
  }
}

TEST_CASE("derived cone lattice equals the raw inequality set") {
  std::mt19937_64 rng(515151);
  int boxes = 0;
  for (int it = 0; it < 25; ++it) {
    int n = 2 + static_cast<int>(rng() % 3);
    auto E = random_closed(rng, n);
    for (auto const& S : enumerate_partitions(n)) {
      auto dm = derived_matrix(E, S);
      if (!dm.active) continue;
      ++boxes;
      int depth = 12;
      auto closed_pts = enumerate_lattice(cone_of(dm.ES), depth);
      auto raw_pts = enumerate_lattice(cone_of(dm.raw), depth);
      CHECK(closed_pts == raw_pts);
    }
  }
  CHECK(boxes > 10);
}

TEST_CASE("classification is invariant under the exponent re-encoding") {
  // flat encoding: unit weights with anisotropy in the matrix
  NormSystem flat = heisenberg_flat();
  // automorphic encoding: weight 2 on the second coordinate, rescaled matrix
  NormSystem group{mat({{"1", "2"}, {"1", "1"}}),
                   BlockDecomposition::make({{Rational(1)}, {Rational(2)}}), Side::Space};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> x{U(rng), U(rng)};
    auto r1 = classify(flat, x);
    auto r2 = classify(group, x);
    CHECK(r1.status == r2.status);
    if (r1.status == ClassifyResult::Ok) CHECK(r1.S == r2.S);
  }
}

TEST_CASE("group compatibility report") {
  // unit-weight encoding of the two-step group: matrix fails double monotonicity
  {
    auto rep = group_compatibility(BlockDecomposition::isotropic({2, 1}),
                                   mat({{"1", "1"}, {"2", "1"}}));
    CHECK_FALSE(rep.doubly_monotone);
    CHECK_FALSE(rep.all_ok);
  }
  // automorphic encoding passes every check
  {
    auto dec = BlockDecomposition::make({{Rational(1), Rational(1)}, {Rational(2)}});
    auto rep = group_compatibility(dec, mat({{"1", "2"}, {"1", "1"}}));
    CHECK(rep.d_nondecreasing);
    CHECK(rep.doubly_monotone);
    CHECK(rep.lambda_monotone);
    CHECK(rep.derived_doubly_monotone);
    CHECK(rep.all_ok);
  }
  // constant matrix passes with any ordered weights
  {
    auto rep = group_compatibility(BlockDecomposition::isotropic({1, 1, 1}),
                                   mat({{"1", "1", "1"}, {"1", "1", "1"}, {"1", "1", "1"}}));
    CHECK(rep.all_ok);
  }
  // reversed block weights break the ordering
  {
    auto dec = BlockDecomposition::make({{Rational(2)}, {Rational(1), Rational(1)}});
    auto rep = group_compatibility(dec, mat({{"1", "1"}, {"1", "1"}}));
    CHECK_FALSE(rep.d_nondecreasing);
    CHECK_FALSE(rep.all_ok);
  }
}
