#include "supercalc/verify.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace sc = supercalc;
using sc::Parity;

TEST(RandomInstance, DeterministicFromSeed) {
  const sc::RandomConfig cfg;
  for (std::uint64_t seed : {1u, 2u, 77u}) {
    const auto a = sc::random_instance(cfg, seed);
    const auto b = sc::random_instance(cfg, seed);
    EXPECT_EQ(sc::instance_to_json(a), sc::instance_to_json(b));
  }
  EXPECT_NE(sc::instance_to_json(sc::random_instance(cfg, 1)), sc::instance_to_json(sc::random_instance(cfg, 2)));
}

TEST(RandomInstance, ComponentsHaveSlotParity) {
  const sc::RandomConfig cfg{{3, 3}, {3, 3}, 3, 1, 6, 4};
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto inst = sc::random_instance(cfg, seed);
    for (const auto& y : inst.map.even) EXPECT_TRUE(y.is_homogeneous(Parity::even));
    for (const auto& z : inst.map.odd) EXPECT_TRUE(z.is_homogeneous(Parity::odd));
    EXPECT_TRUE(inst.f.is_homogeneous(inst.f_parity));
    EXPECT_GE(inst.idx.size(), 1u);
    EXPECT_LE(inst.idx.size(), 6u);
    EXPECT_NO_THROW(sc::validate_instance(inst));
  }
}

TEST(RandomInstance, BoundsEnforced) {
  EXPECT_THROW(sc::random_instance({{4, 0}, {1, 1}, 3, 1, 3, 3}, 1), std::invalid_argument);
  EXPECT_THROW(sc::random_instance({{1, 1}, {1, 1}, 4, 1, 3, 3}, 1), std::invalid_argument);
  EXPECT_THROW(sc::random_instance({{1, 1}, {1, 1}, 3, 1, 7, 3}, 1), std::invalid_argument);
  EXPECT_THROW(sc::random_instance({{1, 1}, {1, 1}, 3, 3, 2, 3}, 1), std::invalid_argument);
}

TEST(LhsDirect, EmptyIndexListIsBareJet) {
  const sc::MapDims dims{{1, 1}, {1, 1}};
  const auto e = sc::lhs_direct({}, dims, {"f", 2, Parity::odd});
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e.terms()[0].factors, (std::vector<sc::Jet>{sc::make_jet(sc::Symbol::composite("f", Parity::odd))}));
}

TEST(LhsDirect, FirstOrderIsChainRule) {
  const sc::MapDims dims{{1, 2}, {2, 1}};
  const sc::FunctionSymbol f{"f", 3, Parity::even};
  EXPECT_EQ(sc::lhs_direct({sc::source_odd(2)}, dims, f), sc::fdb_rhs({sc::source_odd(2)}, dims, f));
}

TEST(VerifyInstance, IdentityMapGivesIteratedPartials) {
  sc::testing::Gen g(21);
  const sc::Dims d{2, 2};
  for (int trial = 0; trial < 20; ++trial) {
    sc::Instance inst;
    inst.id = "identity";
    inst.map = sc::SuperMap::identity(d);
    inst.f_parity = g.uniform(0, 1) ? Parity::odd : Parity::even;
    inst.f = g.homogeneous(d, inst.f_parity, 5, 3);
    for (int k = g.uniform(1, 4); k > 0; --k) inst.idx.push_back(g.coordinate(d));
    auto expected = inst.f;
    for (auto a : inst.idx) expected = expected.partial(a);
    EXPECT_EQ(sc::lhs_concrete(inst), expected);
    for (auto mode : {sc::Mode::abstract, sc::Mode::concrete}) {
      const auto r = sc::verify_instance(inst, mode);
      EXPECT_TRUE(r.equal);
      if (mode == sc::Mode::concrete) EXPECT_EQ(r.lhs, sc::to_text(expected));
    }
  }
}

TEST(VerifyInstance, FiveIndexShapeWithRandomParities) {
  sc::testing::Gen g(31);
  const sc::RandomConfig cfg{{2, 2}, {2, 2}, 3, 5, 5, 3};
  for (int trial = 0; trial < 4; ++trial) {
    auto inst = sc::random_instance(cfg, static_cast<std::uint64_t>(500 + trial));
    inst.idx.clear();
    for (int k = 0; k < 5; ++k) inst.idx.push_back(g.coordinate(inst.map.source));
    EXPECT_TRUE(sc::verify_instance(inst, sc::Mode::abstract).equal) << sc::to_string(inst.idx);
    EXPECT_TRUE(sc::verify_instance(inst, sc::Mode::concrete).equal) << sc::to_string(inst.idx);
  }
}

TEST(VerifyInstance, ModesAgree) {
  const sc::RandomConfig cfg{{2, 2}, {2, 2}, 3, 1, 4, 3};
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto inst = sc::random_instance(cfg, seed);
    const auto a = sc::verify_instance(inst, sc::Mode::abstract);
    const auto c = sc::verify_instance(inst, sc::Mode::concrete);
    EXPECT_EQ(a.equal, c.equal) << inst.id;
    EXPECT_TRUE(a.equal) << inst.id;
  }
}

TEST(VerifyInstance, ReportsInequalityWithoutThrowing) {
  // A corrupted right-hand side must be reported as unequal.
  const auto inst = sc::random_instance({{1, 1}, {1, 1}, 2, 1, 1, 2}, 4);
  const auto lhs = sc::lhs_direct(inst.idx, inst.dims(), inst.symbol());
  const auto wrong = lhs + sc::Expression::constant(1);
  EXPECT_NE(sc::rhs_concrete(inst, wrong), sc::lhs_concrete(inst));
}

TEST(VerifyInstance, InvalidInstanceRejected) {
  auto inst = sc::random_instance({}, 3);
  inst.f_parity = inst.f_parity + Parity::odd;
  if (!inst.f.is_zero()) EXPECT_THROW(sc::verify_instance(inst, sc::Mode::abstract), std::invalid_argument);
  inst = sc::random_instance({}, 3);
  inst.idx.push_back(sc::source_even(9));
  EXPECT_THROW(sc::verify_instance(inst, sc::Mode::concrete), std::out_of_range);
}

TEST(ExpNilpotent, InverseAndErrors) {
  sc::testing::Gen g(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = sc::split_body_soul(g.homogeneous({2, 3}, Parity::even, 5, 2)).soul;
    EXPECT_EQ(sc::exp_nilpotent(s) * sc::exp_nilpotent(-s), sc::SuperPolynomial::constant({2, 3}, 1));
  }
  EXPECT_THROW(sc::exp_nilpotent(sc::SuperPolynomial::constant({1, 1}, 1)), std::invalid_argument);
}
