#include "supercalc/calculus.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace sc = supercalc;
using sc::Dims;
using sc::Parity;
using sc::SuperMap;
using sc::SuperPolynomial;

namespace {

SuperPolynomial var(Dims d, const char* token) { return SuperPolynomial::variable(d, sc::parse_coordinate(token)); }

}  // namespace

TEST(Substitute, IdentityMap) {
  const Dims d{1, 1};
  const auto f = var(d, "x1") * var(d, "xi1");  // y1 zeta1 over the target
  EXPECT_EQ(sc::substitute(f, SuperMap::identity(d)), f);
}

TEST(Substitute, SoulEntersThroughFirstTaylorTerm) {
  const Dims src{1, 2};
  const Dims tgt{1, 0};
  const auto x1 = var(src, "x1");
  const auto nilpotent = var(src, "xi1") * var(src, "xi2");
  SuperMap map{src, tgt, {x1 + nilpotent}, {}};
  const auto y1 = SuperPolynomial::even_variable(tgt, 1);
  const auto expected = x1 * x1 + SuperPolynomial::constant(src, 2) * x1 * nilpotent;
  EXPECT_EQ(sc::substitute(y1 * y1, map), expected);
  EXPECT_EQ(sc::compose_direct(y1 * y1, map), expected);
}

TEST(Substitute, ZeroSoulIsClassicalComposition) {
  const Dims src{2, 1};
  const Dims tgt{2, 0};
  const auto x1 = var(src, "x1"), x2 = var(src, "x2");
  SuperMap map{src, tgt, {x1 * x2, x1 + x2}, {}};
  const auto y1 = SuperPolynomial::even_variable(tgt, 1), y2 = SuperPolynomial::even_variable(tgt, 2);
  const auto f = y1 * y2 * y2 - y1;
  EXPECT_EQ(sc::substitute(f, map), x1 * x2 * (x1 + x2) * (x1 + x2) - x1 * x2);
}

TEST(ComposeDirect, ComponentAndOddProduct) {
  const Dims src{1, 2};
  const Dims tgt{1, 2};
  sc::testing::Gen g(3);
  SuperMap map = g.map(src, tgt);
  EXPECT_EQ(sc::compose_direct(SuperPolynomial::even_variable(tgt, 1), map), map.even[0]);

  SuperMap odd_identity{src, tgt, {var(src, "x1")}, {var(src, "xi1"), var(src, "xi2")}};
  const auto zz = SuperPolynomial::odd_variable(tgt, 1) * SuperPolynomial::odd_variable(tgt, 2);
  EXPECT_EQ(sc::compose_direct(zz, odd_identity), var(src, "xi1") * var(src, "xi2"));
}

TEST(Substitute, RejectsBadMaps) {
  const Dims src{1, 1};
  const Dims tgt{1, 1};
  const auto f = SuperPolynomial::even_variable(tgt, 1);
  SuperMap wrong_parity{src, tgt, {var(src, "xi1")}, {var(src, "xi1")}};
  EXPECT_THROW(sc::substitute(f, wrong_parity), std::invalid_argument);
  SuperMap missing{src, tgt, {var(src, "x1")}, {}};
  EXPECT_THROW(sc::compose_direct(f, missing), std::invalid_argument);
  SuperMap ok{src, tgt, {var(src, "x1")}, {var(src, "xi1")}};
  EXPECT_THROW(sc::substitute(SuperPolynomial::even_variable({2, 1}, 1), ok), std::invalid_argument);
}

TEST(Differentiate, ChainRuleOnBareComposite) {
  const sc::MapDims dims{{1, 1}, {1, 1}};
  const auto fsym = sc::Symbol::composite("f", Parity::even);
  const auto e = sc::Expression::single(sc::Term{1, {sc::make_jet(fsym)}});
  const auto a = sc::source_odd(1);
  std::vector<sc::Term> expected;
  for (auto b : sc::target_coordinates(dims.target)) {
    expected.push_back({1, {sc::make_jet(sc::Symbol::component(b), {a}), sc::make_jet(fsym, {b})}});
  }
  EXPECT_EQ(sc::differentiate(e, a, dims), sc::Expression::from_terms(expected));
}

TEST(Differentiate, ConstantsVanish) {
  EXPECT_TRUE(sc::differentiate(sc::Expression::constant(5), sc::source_even(1), {{1, 0}, {1, 0}}).is_zero());
}

TEST(Differentiate, TwiceBySameOddCoordinateVanishes) {
  const sc::MapDims dims{{2, 2}, {2, 2}};
  const auto fsym = sc::Symbol::composite("f", Parity::odd);
  auto e = sc::Expression::single(sc::Term{1, {sc::make_jet(fsym)}});
  e = sc::differentiate(e, sc::source_even(2), dims);
  e = sc::differentiate(e, sc::source_odd(1), dims);
  EXPECT_FALSE(e.is_zero());
  EXPECT_TRUE(sc::differentiate(e, sc::source_odd(1), dims).is_zero());
}

TEST(Differentiate, OutOfRangeCoordinateThrows) {
  const auto e = sc::Expression::constant(1);
  EXPECT_THROW(sc::differentiate(e, sc::source_odd(2), {{1, 1}, {1, 1}}), std::out_of_range);
  EXPECT_THROW(sc::differentiate(e, sc::target_even(1), {{1, 1}, {1, 1}}), std::out_of_range);
}

// ---------------------------------------------------------------------------
// Properties

class PullbackProperties : public ::testing::TestWithParam<int> {};

TEST_P(PullbackProperties, SubstituteAgreesWithDirectComposition) {
  sc::testing::Gen g(static_cast<std::uint64_t>(GetParam()));
  for (int trial = 0; trial < 10; ++trial) {
    const Dims src = g.dims({3, 3}), tgt = g.dims({3, 3});
    const SuperMap map = g.map(src, tgt, 3, 3);
    const auto f = g.poly(tgt, 5, 3);
    EXPECT_EQ(sc::substitute(f, map), sc::compose_direct(f, map));
  }
}

TEST_P(PullbackProperties, PullbackIsParityPreservingHomomorphism) {
  sc::testing::Gen g(static_cast<std::uint64_t>(GetParam()) + 1000);
  for (int trial = 0; trial < 10; ++trial) {
    const Dims src = g.dims({3, 3}), tgt = g.dims({3, 3});
    const SuperMap map = g.map(src, tgt, 3, 2);
    const Parity pf = g.uniform(0, 1) ? Parity::odd : Parity::even;
    const auto f = g.homogeneous(tgt, pf, 3, 2);
    const auto h = g.poly(tgt, 3, 2);
    EXPECT_EQ(sc::substitute(f * h, map), sc::substitute(f, map) * sc::substitute(h, map));
    EXPECT_EQ(sc::substitute(f + h, map), sc::substitute(f, map) + sc::substitute(h, map));
    EXPECT_TRUE(sc::substitute(f, map).is_homogeneous(pf));
  }
}

TEST_P(PullbackProperties, ChainRuleMatchesConcreteDerivative) {
  sc::testing::Gen g(static_cast<std::uint64_t>(GetParam()) + 2000);
  for (int trial = 0; trial < 10; ++trial) {
    const Dims src = g.dims({2, 2}), tgt = g.dims({2, 2});
    const SuperMap map = g.map(src, tgt, 3, 2);
    const Parity pf = g.uniform(0, 1) ? Parity::odd : Parity::even;
    const auto f = g.homogeneous(tgt, pf, 4, 3);
    const auto a = g.coordinate(src);
    const auto fsym = sc::Symbol::composite("f", pf);
    const auto abstract = sc::differentiate(sc::Expression::single({1, {sc::make_jet(fsym)}}), a, map.dims());
    sc::Instantiator inst{src, &map};
    inst.bind_composite("f", f);
    EXPECT_EQ(inst.expression(abstract), sc::substitute(f, map).partial(a));
  }
}

TEST_P(PullbackProperties, IteratedDifferentiationSupercommutes) {
  sc::testing::Gen g(static_cast<std::uint64_t>(GetParam()) + 3000);
  const sc::MapDims dims{{2, 2}, {2, 2}};
  const auto fsym = sc::Symbol::composite("f", g.uniform(0, 1) ? Parity::odd : Parity::even);
  auto e = sc::Expression::single({1, {sc::make_jet(fsym)}});
  e = sc::differentiate(e, g.coordinate(dims.source), dims);
  const auto a = g.coordinate(dims.source), b = g.coordinate(dims.source);
  const auto ab = sc::differentiate(sc::differentiate(e, b, dims), a, dims);
  const auto ba = sc::differentiate(sc::differentiate(e, a, dims), b, dims);
  EXPECT_EQ(ab, sc::Rational{sc::sign_of(a.parity * b.parity)} * ba);
}

INSTANTIATE_TEST_SUITE_P(Seeds, PullbackProperties, ::testing::Range(1, 11));
