#include "doctest.h"

#include "oracles.hpp"
#include "paucity/errors.hpp"
#include "paucity/polyalg.hpp"

using namespace paucity;

namespace {

std::vector<IntPoly> extended_battery() {
  auto b = oracle::battery();
  b.push_back(IntPoly{9, -12, 4});                          // (2x-3)^2
  b.push_back(pow(IntPoly{-3, 2}, 4));                      // (2x-3)^4
  b.push_back(IntPoly{30, -10, 1});                         // x^2-10x+30
  b.push_back(IntPoly{0, -2, 1});                           // x(x-2)
  b.push_back(pow(IntPoly{0, 1}, 3) * pow(IntPoly{1, 1}, 2));  // x^3(x+1)^2
  b.push_back(IntPoly{0, 2, 2});                            // 2x(x+1)
  b.push_back(IntPoly{-1, 0, 0, 1});                        // x^3-1
  return b;
}

}  // namespace

TEST_CASE("eval") {
  IntPoly p{0, 1, 1};
  CHECK(eval(p, 3) == 12);
  CHECK(eval(p, 0) == 0);
  CHECK(eval(IntPoly{0, 0, 1, 1}, 2) == 12);
  CHECK(IntPoly{0, 0, 1, 1}(-3) == -18);
  // exact well past 64 bits
  CHECK(IntPoly{0, 1, 1}(BigInt("100000000000000000000")) == BigInt("10000000000000000000100000000000000000000"));
}

TEST_CASE("zero polynomial representation") {
  IntPoly z{0, 0, 0};
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  CHECK(z.coeffs().size() == 1);
  CHECK(IntPoly{1, 2, 0, 0}.degree() == 1);
}

TEST_CASE("squarefree_kernel") {
  CHECK(squarefree_kernel(IntPoly{0, 0, 1, 1}) == IntPoly{0, 1, 1});
  CHECK(squarefree_kernel(IntPoly{0, 1, 1}) == IntPoly{0, 1, 1});
  // (2x-3)^2: gcd with the derivative 8x-12 is 2x-3, checked by hand
  CHECK(squarefree_kernel(IntPoly{9, -12, 4}) == IntPoly{-3, 2});
  CHECK(squarefree_kernel(-IntPoly{0, 1, 1}) == IntPoly{0, 1, 1});
  CHECK_THROWS_AS(squarefree_kernel(IntPoly{5}), DegenerateInput);
  CHECK_THROWS_AS(squarefree_kernel(IntPoly{}), DegenerateInput);
}

TEST_CASE("squarefree_kernel keeps content so that P | Q^e over Z") {
  const IntPoly p{0, 2, 2};
  const IntPoly q = squarefree_kernel(p);
  CHECK(q == IntPoly{0, 2, 2});
  CHECK(divides_over_z(p, pow(q, max_multiplicity(p))));
  // 12 x^2 (x+1): content 12, e = 2, smallest c with c | 12 | c^2 is 6
  const IntPoly p2 = BigInt(12) * IntPoly{0, 0, 1, 1};
  CHECK(squarefree_kernel(p2) == BigInt(6) * IntPoly{0, 1, 1});
}

TEST_CASE("max_multiplicity") {
  CHECK(max_multiplicity(IntPoly{0, 0, 1, 1}) == 2);
  CHECK(max_multiplicity(IntPoly{0, 1, 1}) == 1);
  CHECK(max_multiplicity(pow(IntPoly{-3, 2}, 4)) == 4);
  CHECK_THROWS_AS(max_multiplicity(IntPoly{7}), DegenerateInput);
}

TEST_CASE("discriminant") {
  CHECK(discriminant(IntPoly{0, 1, 1}) == 1);
  // b^2 - 4ac
  CHECK(discriminant(IntPoly{-1, 0, 1}) == 4);
  CHECK(discriminant(IntPoly{1, 0, 1}) == -4);
  CHECK(discriminant(IntPoly{0, 1, 2}) == 1);
  // cubic x^3 + px + q: -4p^3 - 27q^2; x^3 - 1 -> -27
  CHECK(discriminant(IntPoly{-1, 0, 0, 1}) == -27);
  CHECK(discriminant(IntPoly{-3, 2}) == 1);
  CHECK_THROWS_AS(discriminant(IntPoly{1, 2, 1}), InconsistencyError);
}

TEST_CASE("resultant against the product formula") {
  // Res((x-1)(x-2), (x-3)) = (1-3)(2-3) = 2
  CHECK(resultant(IntPoly{2, -3, 1}, IntPoly{-3, 1}) == 2);
  CHECK(resultant(IntPoly{2, -3, 1}, IntPoly{-1, 1}) == 0);
}

TEST_CASE("eligibility") {
  CHECK(eligibility(IntPoly{0, 1, 1}).eligible);
  auto e = eligibility(pow(IntPoly{-3, 2}, 5));
  CHECK_FALSE(e.eligible);
  CHECK(e.reason.find("c(ax-r)^m") != std::string::npos);
  CHECK_FALSE(eligibility(IntPoly{0, 1}).eligible);
  CHECK_FALSE(eligibility(IntPoly{4}).eligible);
}

TEST_CASE("positivity_threshold") {
  CHECK(positivity_threshold(IntPoly{0, 1, 1}) == 0);
  CHECK(positivity_threshold(IntPoly{1, 0, 1}) == 0);
  // scan: x(x-2) is -1, 0 at 1, 2 and positive from 3
  CHECK(positivity_threshold(IntPoly{0, -2, 1}) == 2);
  CHECK_THROWS_AS(positivity_threshold(-IntPoly{0, 1, 1}), PreconditionError);
}

TEST_CASE("normalize") {
  auto n = normalize(IntPoly{0, -2, 1});
  CHECK(n.shift == 2);
  CHECK(n.poly == IntPoly{0, 2, 1});
  for (long x = 1; x <= 10; ++x) CHECK(n.poly(x) == IntPoly{0, -2, 1}(x + 2));
  CHECK(n.poly(1) == 3);

  auto same = normalize(IntPoly{0, 1, 1});
  CHECK(same.shift == 0);
  CHECK(same.poly == IntPoly{0, 1, 1});

  auto flipped = normalize(IntPoly{0, -1, -1});
  CHECK(flipped.shift == 0);
  CHECK(flipped.poly == IntPoly{0, 1, 1});

  CHECK_THROWS_AS(normalize(IntPoly{0, 1}), PreconditionError);
}

TEST_CASE("growth_threshold") {
  CHECK(growth_threshold(IntPoly{0, 1, 1}) == 1);
  CHECK(growth_threshold(IntPoly{0, 0, 1, 1}) == 1);
  // x^2 - 10x + 30 >= x^2/2 first holds for good at 17 (scan oracle)
  const IntPoly p{30, -10, 1};
  const auto m = growth_threshold(p);
  CHECK(m == 17);
  BigInt running = p(0);
  for (long n = 1; n < static_cast<long>(m) + 1000; ++n) {
    BigInt v = p(n);
    if (n >= static_cast<long>(m)) {
      CHECK(v > running);
      CHECK(2 * v >= BigInt(n) * n);
    }
    if (v > running) running = v;
  }
  CHECK_THROWS_AS(growth_threshold(IntPoly{1, 1}), PreconditionError);
}

TEST_CASE("make_profile") {
  auto pr = make_profile(IntPoly{0, 0, 1, 1});
  CHECK(pr.d == 3);
  CHECK(pr.eligible);
  CHECK(pr.e_p == 2);
  CHECK(pr.q == IntPoly{0, 1, 1});
  CHECK(pr.disc_q == 1);
  CHECK(pr.n0 == 0);
  REQUIRE(pr.m_p.has_value());
  CHECK(*pr.m_p == 1);

  auto lin = make_profile(IntPoly{5, 3});
  CHECK_FALSE(lin.eligible);
  CHECK_FALSE(lin.m_p.has_value());
  CHECK_THROWS_AS(make_profile(IntPoly{3}), DegenerateInput);
}

TEST_CASE("parse_poly") {
  CHECK(parse_poly("0,1,1") == IntPoly{0, 1, 1});
  CHECK(parse_poly(" 9, -12 , 4") == IntPoly{9, -12, 4});
  CHECK(parse_poly("x*(x+1)") == IntPoly{0, 1, 1});
  CHECK(parse_poly("x^2(x+1)") == IntPoly{0, 0, 1, 1});
  CHECK(parse_poly("(2x-3)^2") == IntPoly{9, -12, 4});
  CHECK(parse_poly("-x^2 - x") == IntPoly{0, -1, -1});
  CHECK(parse_poly("2*x^2 + x") == IntPoly{0, 1, 2});
  CHECK(parse_poly("7") == IntPoly{7});
  CHECK_THROWS_AS(parse_poly("x+"), ParseError);
  CHECK_THROWS_AS(parse_poly("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_poly("x,1"), ParseError);
  CHECK_THROWS_AS(parse_poly("y+1"), ParseError);
  CHECK(to_string(parse_poly("x^2-10x+30")) == "x^2 - 10x + 30");
}

TEST_CASE("property: Q | P | Q^e and nonzero discriminant across the battery") {
  for (const auto& p : extended_battery()) {
    CAPTURE(to_string(p));
    const IntPoly q = squarefree_kernel(p);
    const unsigned e = max_multiplicity(p);
    CHECK(divides_over_z(q, p));
    CHECK(divides_over_z(p, pow(q, e)));
    CHECK(divides(q, p));
    CHECK(divides(p, pow(q, e)));
    CHECK(discriminant(q) != 0);
    if (eligibility(p).eligible) {
      CHECK(e >= 1);
      CHECK(e <= static_cast<unsigned>(p.degree() - 1));
    }
  }
}

TEST_CASE("property: normalize shifts evaluation") {
  for (const auto& p : extended_battery()) {
    if (!eligibility(p).eligible) continue;
    CAPTURE(to_string(p));
    auto n = normalize(p);
    const IntPoly signed_p = sgn(p.leading()) < 0 ? -p : p;
    for (long x = 1; x <= 100; ++x) {
      CHECK(n.poly(x) == signed_p(x + static_cast<long>(n.shift)));
      CHECK(n.poly(x) > 0);
    }
  }
}

TEST_CASE("property: multiplicity of powers") {
  for (const auto& p : extended_battery())
    for (unsigned m = 1; m <= 3; ++m) {
      CAPTURE(to_string(p));
      CHECK(max_multiplicity(pow(p, m)) == m * max_multiplicity(p));
    }
}

TEST_CASE("property: eligibility is invariant under scaling") {
  for (const auto& p : extended_battery())
    for (long c : {1L, 2L, -3L}) {
      CAPTURE(to_string(p));
      CHECK(eligibility(BigInt(c) * p).eligible == eligibility(p).eligible);
    }
}

TEST_CASE("property: positivity threshold is minimal") {
  for (const auto& p : extended_battery()) {
    const IntPoly s = sgn(p.leading()) < 0 ? -p : p;
    const auto n0 = positivity_threshold(s);
    CAPTURE(to_string(s));
    if (n0 > 0) CHECK(s(static_cast<long>(n0)) <= 0);
    for (long n = static_cast<long>(n0) + 1; n < static_cast<long>(n0) + 200; ++n) CHECK(s(n) > 0);
  }
}
