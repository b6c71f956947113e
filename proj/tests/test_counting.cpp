#include "doctest.h"

#include <array>

#include "oracles.hpp"
#include "paucity/counting.hpp"
#include "paucity/errors.hpp"

using namespace paucity;

namespace {

const IntPoly kXX1{0, 1, 1};

}  // namespace

TEST_CASE("count_A fixed points") {
  CHECK(count_A(kXX1, Box::upto(10), 2) == 202);
  CHECK(count_A(kXX1, Box::upto(2), 2) == 6);
  CHECK(count_A(kXX1, Box::upto(10), 1) == 10);
  CHECK(count_A(kXX1, Box::upto(0), 2) == 0);
  CHECK_THROWS_AS(count_A(kXX1, Box::upto(10), 0), DomainError);
}

TEST_CASE("trivial_count") {
  CHECK(trivial_count(10, 2) == 190);
  CHECK(trivial_count(2, 3) == 20);
  CHECK(trivial_count(5, 1) == 5);
  CHECK(trivial_count(0, 2) == 0);
  for (std::uint64_t n = 1; n <= 5; ++n)
    for (unsigned k = 1; k <= 3; ++k) CHECK(trivial_count(n, k) == from_u64(oracle::trivial(n, k)));
  // 2 N^2 - N for k = 2
  CHECK(trivial_count(1000, 2) == 2 * 1000 * 1000 - 1000);
}

TEST_CASE("box_values refuses non-positive values") {
  CHECK_THROWS_AS(box_values(IntPoly{0, -2, 1}, Box::upto(5)), PreconditionError);
  CHECK_THROWS_AS(count_A(IntPoly{0, -2, 1}, Box::upto(5), 2), PreconditionError);
  CHECK(box_values(IntPoly{0, -2, 1}, Box{3, 5}).size() == 3);
}

TEST_CASE("engine agrees with the 2k-fold oracle") {
  for (const auto& p : oracle::battery()) {
    CAPTURE(to_string(p));
    for (std::uint64_t n = 1; n <= 20; ++n)
      for (unsigned k = 1; k <= 2; ++k) CHECK(count_A(p, Box::upto(n), k) == from_u64(oracle::count_A(p, n, k)));
    for (std::uint64_t n = 1; n <= 6; ++n) CHECK(count_A(p, Box::upto(n), 3) == from_u64(oracle::count_A(p, n, 3)));
  }
}

TEST_CASE("engine agrees with the product multiset") {
  for (const auto& p : oracle::battery())
    for (unsigned k = 1; k <= 4; ++k) {
      CAPTURE(to_string(p));
      CAPTURE(k);
      const Box box{3, 14};
      CHECK(count_A(p, box, k) == product_multiset(p, box, k).sum_of_squares());
    }
}

TEST_CASE("key widths") {
  CHECK(count_A_stats(kXX1, Box::upto(50), 2).key_width == "u64");
  const IntPoly wide = pow(BigInt(2), 40) * kXX1;
  auto s128 = count_A_stats(wide, Box::upto(30), 2);
  CHECK(s128.key_width == "u128");
  const IntPoly huge = pow(BigInt(2), 100) * kXX1;
  auto smpz = count_A_stats(huge, Box::upto(30), 2);
  CHECK(smpz.key_width == "mpz");
  // scaling P by a constant scales every product by c^k and leaves A unchanged
  CHECK(s128.a == count_A(kXX1, Box::upto(30), 2));
  CHECK(smpz.a == s128.a);
  CHECK(count_A(huge, Box::upto(12), 3) == count_A(kXX1, Box::upto(12), 3));
}

TEST_CASE("memory budget, passes and threads do not change A") {
  const IntPoly p{1, 0, 1};
  const auto ref = count_A_stats(p, Box::upto(300), 2);
  CHECK(ref.passes == 1);
  for (std::size_t budget : {std::size_t{1} << 16, std::size_t{1} << 18})
    for (unsigned threads : {1u, 2u, 3u}) {
      auto s = count_A_stats(p, Box::upto(300), 2, CountOptions{threads, budget});
      CHECK(s.a == ref.a);
      CHECK(s.distinct_keys == ref.distinct_keys);
      CHECK(s.passes > 1);
    }
  CHECK_THROWS_AS(count_A(p, Box::upto(300), 2, CountOptions{1, 1}), ResourceError);
}

TEST_CASE("property: A is monotone in N and at least trivial") {
  for (const auto& p : oracle::battery())
    for (unsigned k = 1; k <= 3; ++k) {
      BigInt prev = 0;
      for (std::uint64_t n = 1; n <= 25; ++n) {
        const BigInt a = count_A(p, Box::upto(n), k);
        CHECK(a >= prev);
        CHECK(a >= trivial_count(n, k));
        prev = a;
      }
    }
}

TEST_CASE("product multiset") {
  auto m = product_multiset(kXX1, Box::upto(3), 2);
  CHECK(m.mass() == 9);
  CHECK(m.counts.at(BigInt(12)) == 2);  // 2*6, 6*2
  CHECK(m.counts.at(BigInt(4)) == 1);
  CHECK(m.k == 2);

  SUBCASE("mass conservation") {
    for (const auto& p : oracle::battery())
      for (unsigned k = 1; k <= 3; ++k) CHECK(product_multiset(p, Box::upto(9), k).mass() == pow(BigInt(9), k));
  }
  SUBCASE("partitioned merge reproduces the whole") {
    const Box box = Box::upto(15);
    for (unsigned k = 1; k <= 3; ++k) {
      auto whole = product_multiset(kXX1, box, k);
      auto part = product_multiset_partial(kXX1, box, k, Box{1, 4});
      part.merge(product_multiset_partial(kXX1, box, k, Box{5, 11}));
      part.merge(product_multiset_partial(kXX1, box, k, Box{12, 15}));
      CHECK(part.counts == whole.counts);
      CHECK(part.sum_of_squares() == whole.sum_of_squares());
    }
  }
  SUBCASE("merge rejects mismatched inputs") {
    auto a = product_multiset(kXX1, Box::upto(5), 2);
    CHECK_THROWS_AS(a.merge(product_multiset(kXX1, Box::upto(5), 3)), PreconditionError);
    CHECK_THROWS_AS(a.merge(product_multiset(IntPoly{1, 0, 1}, Box::upto(5), 2)), PreconditionError);
  }
  CHECK_THROWS_AS(product_multiset_partial(kXX1, Box::upto(5), 2, Box{4, 9}), PreconditionError);
}

TEST_CASE("tally") {
  auto t = tally(make_profile(kXX1), 10, 2);
  CHECK(t.a_count == 202);
  CHECK(t.trivial == 190);
  CHECK(t.nontrivial == 12);
  REQUIRE(t.r_count.has_value());
  REQUIRE(t.nprime_count.has_value());
  CHECK(t.nontrivial <= 4 * *t.r_count + 4 * *t.nprime_count);

  auto small = tally(make_profile(kXX1), 7, 2);
  CHECK(small.nontrivial == 0);

  TallyOptions skip;
  skip.enumeration_limit = 10;
  auto big = tally(make_profile(kXX1), 10, 2, skip);
  CHECK(big.nontrivial == 12);
  CHECK_FALSE(big.r_count.has_value());
}

TEST_CASE("tally nontrivial counts across the battery") {
  // per polynomial: nontrivial at N = 5, 10, 20 (k = 2)
  const std::vector<std::array<int, 3>> expect{{0, 12, 52}, {0, 0, 0}, {0, 12, 44}, {0, 8, 28}, {0, 0, 0}};
  const auto polys = oracle::battery();
  for (std::size_t i = 0; i < polys.size(); ++i) {
    CAPTURE(to_string(polys[i]));
    const auto pr = make_profile(polys[i]);
    const std::uint64_t ns[] = {5, 10, 20};
    for (int j = 0; j < 3; ++j) {
      auto t = tally(pr, ns[j], 2);
      CHECK(t.nontrivial == expect[i][j]);
      const auto s = oracle::split(polys[i], ns[j], 2);
      CHECK(*t.r_count == from_u64(s.r));
      CHECK(*t.nprime_count == from_u64(s.nprime));
    }
  }
}

TEST_CASE("g_count") {
  CHECK(g_count(kXX1, 10, BigInt(12), 3) == 1);
  CHECK(g_count(kXX1, 10, BigInt(7), 5) == 0);
  CHECK_THROWS_AS(g_count(kXX1, 10, BigInt(12), 0), DomainError);
  ValueIndex idx(kXX1, 30);
  for (const auto& p : oracle::battery()) {
    ValueIndex pi(p, 30);
    for (std::uint64_t z = 1; z <= 150; ++z)
      for (std::uint64_t lambda : {1u, 2u, 5u}) {
        CHECK(g_count(pi, from_u64(z), lambda) == oracle::g_count(p, 30, from_u64(z), lambda));
      }
  }
  CHECK(idx.n() == 30);
}

TEST_CASE("t_count") {
  CHECK(t_count(kXX1, 4, 2, BigInt(12)) == 3);
  CHECK(t_count(kXX1, 4, 1, BigInt(12)) == 0);
  CHECK(t_count(kXX1, 10, 2, BigInt(180)) == 32);
  CHECK_THROWS_AS(t_count(kXX1, 4, 2, BigInt(0)), DomainError);
  for (const auto& p : oracle::battery())
    for (std::uint64_t z : {1u, 6u, 12u, 30u, 60u, 64u, 210u, 720u})
      for (unsigned k = 1; k <= 3; ++k) {
        CAPTURE(z);
        CHECK(t_count(p, 8, k, from_u64(z)) == from_u64(oracle::t_count(p, 8, k, from_u64(z))));
      }
}

TEST_CASE("cor24_report") {
  auto r = cor24_report(make_profile(kXX1), 4, 2, BigInt(12), 3, BigRational(1));
  CHECK(r.exact == 3);
  CHECK(r.advisory);
  CHECK(r.holds);
  REQUIRE(r.bound_exact.has_value());
  CHECK(*r.bound_exact == 360);
  REQUIRE(r.input("G") != nullptr);
  CHECK(*r.input("G") == "1");
  CHECK(*r.input("tau_k") == "6");
  CHECK(*r.input("C") == "1");
  CHECK_THROWS_AS(cor24_report(make_profile(IntPoly{1, 1}), 4, 2, BigInt(12), 3, BigRational(1)), PreconditionError);
  CHECK_THROWS_AS(cor24_report(make_profile(kXX1), 4, 2, BigInt(12), 3, BigRational(0)), DomainError);
}

TEST_CASE("default parameters") {
  CHECK(default_lambda(63) == 1);
  CHECK(default_lambda(64) == 2);
  CHECK(default_lambda(1000000) == 10);
  CHECK(default_m(1, 16) == 2);
  CHECK(default_m(2, 16) == 4);
}
