#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace mulseries;
using fixtures::model;
using fixtures::q;

TEST(Hi, CuspSetUpToTwo) {
  auto m = model({2, 3, 6});
  std::vector<Rational> got;
  for (const auto& el : enumerate_Hi(m, 1, q(2))) got.push_back(el.value);
  std::vector<Rational> want{q(5, 6), q(7, 6), q(4, 3), q(3, 2), q(5, 3), q(11, 6), q(2)};
  EXPECT_EQ(got, want);
  EXPECT_THROW(enumerate_Hi(m, 2, q(2)), std::out_of_range);
}

TEST(Hi, IotaValues) {
  auto m = model({2, 3, 7});
  EXPECT_EQ(iota(m, 1, 1, 1, 0), q(5, 6));
  EXPECT_EQ(iota(m, 1, 1, 1, 2), q(17, 6));
  EXPECT_EQ(iota(m, 2, 1, 1), q(1, 1) + q(1, 7));
}

TEST(Hi, Lct) {
  EXPECT_EQ(lct(model({1, 1})), q(2));
  EXPECT_EQ(lct(model({2, 3, 6})), q(5, 6));
  EXPECT_EQ(lct(model({3, 5, 15})), q(8, 15));
  EXPECT_EQ(lct(model({2, 3, 7})), q(5, 6));
}

TEST(Hi, DecompositionAgreesWithEnumeration) {
  for (const auto& seq : generate_corpus(CorpusSpec{4, 24})) {
    auto m = model_from_contact(seq);
    const Rational bound = 3;
    for (std::size_t i = 1; i <= m.g_star() + 1; ++i) {
      std::set<Rational> members;
      for (const auto& el : enumerate_Hi(m, i, bound)) {
        members.insert(el.value);
        auto d = try_decompose(m, i, el.value);
        ASSERT_TRUE(d.has_value()) << seq.str() << " H_" << i << " " << to_string(el.value);
        EXPECT_EQ(d->base + d->r, el.value);
        if (i == m.g_star() + 1) {
          EXPECT_GE(d->s, 1);
          EXPECT_LE(d->s, m.contact.e(m.g_star()));
          EXPECT_GE(d->q, 1);
          EXPECT_LE(d->q, m.contact.bbar(i));
          EXPECT_EQ(d->base, iota(m, i, d->s, d->q));
        } else {
          EXPECT_GE(d->s, 0);
          EXPECT_LT(d->s, m.contact.e(i));
          EXPECT_LE(iota(m, i, *d->p, d->q), Rational(1, m.contact.e(i)));
          EXPECT_EQ(d->base, iota(m, i, *d->p, d->q, d->s));
        }
      }
      // Every fraction with a small denominator below the bound is classified
      // the same way by both methods.
      const Integer N = m.contact.e(i - 1) * m.contact.bbar(i);
      for (Integer k = 1; Rational(k, N) <= bound; ++k) {
        Rational x(k, N);
        EXPECT_EQ(in_H(m, i, x), members.count(x) == 1) << seq.str() << " H_" << i << " " << to_string(x);
      }
    }
  }
}

TEST(Hi, NotMember) {
  auto m = model({2, 3, 6});
  EXPECT_THROW(decompose_membership(m, 1, q(1)), NotMember);
  EXPECT_FALSE(in_H(m, 1, q(1, 2)));
  EXPECT_TRUE(memberships(m, q(1)).empty());
}

TEST(Contribution, Examples) {
  auto cusp = model({2, 3, 6});
  EXPECT_TRUE(contributes(cusp, 3, q(5, 6)));
  EXPECT_FALSE(contributes(cusp, 1, q(5, 6)));
  EXPECT_TRUE(contributes_by_ideal(cusp, 3, q(5, 6)));
  EXPECT_FALSE(contributes_by_ideal(cusp, 1, q(5, 6)));
  EXPECT_EQ(contributing_divisors(cusp, q(5, 6)), (std::set<std::size_t>{3}));
  EXPECT_EQ(contributing_divisors(cusp, q(2)), (std::set<std::size_t>{3}));
  auto m1 = model({1, 1});
  EXPECT_TRUE(contributes(m1, 1, q(2)));
  EXPECT_EQ(contributing_divisors(m1, q(3)), (std::set<std::size_t>{1}));
}

TEST(Contribution, EachSetHasItsDivisor) {
  // (2,3,7): H_1 = 5/6 + Z_{>=0} belongs to the star E_3, H_2 = {p + q/7} to E_4.
  auto m = model({2, 3, 7});
  EXPECT_EQ(memberships(m, q(11, 6)), (std::vector<std::size_t>{1}));
  EXPECT_EQ(contributing_divisors(m, q(11, 6)), (std::set<std::size_t>{3}));
  EXPECT_EQ(memberships(m, q(8, 7)), (std::vector<std::size_t>{2}));
  EXPECT_EQ(contributing_divisors(m, q(8, 7)), (std::set<std::size_t>{4}));
  EXPECT_TRUE(memberships(m, q(13, 6)).empty());
}

TEST(PredecessorIdeal, Examples) {
  auto cusp = model({2, 3, 6});
  EXPECT_TRUE(predecessor_ideal(cusp, q(5, 6)).is_unit());
  EXPECT_EQ(predecessor_ideal(cusp, q(7, 6)).divisor, (ExceptionalDivisor{1, 1, 2}));
  auto m1 = model({1, 1});
  EXPECT_EQ(predecessor_ideal(m1, q(3)).divisor, (ExceptionalDivisor{1}));
  EXPECT_THROW(predecessor_ideal(cusp, q(1)), NotMember);
}

TEST(Dimensions, Examples) {
  auto cusp = model({2, 3, 6});
  EXPECT_EQ(dim_d_i(cusp, 1, q(5, 6)), 1);
  EXPECT_EQ(dim_d_i(cusp, 1, q(11, 6)), 2);
  EXPECT_EQ(total_dimension(cusp, q(5, 6)), 1);
  EXPECT_EQ(total_dimension(cusp, q(11, 6)), 2);
  auto m1 = model({1, 1});
  for (long k = 2; k <= 6; ++k) {
    EXPECT_EQ(dim_d_i(m1, 1, q(k)), k - 1);
    EXPECT_EQ(total_dimension(m1, q(k)), k - 1);
  }
  EXPECT_THROW(dim_d_i(cusp, 1, q(1)), NotMember);
}

TEST(JumpingNumbers, CuspTable) {
  auto m = model({2, 3, 6});
  auto jumps = jumping_numbers(m, q(2), true);
  std::vector<Rational> values;
  std::vector<Integer> dims;
  for (const auto& r : jumps) {
    values.push_back(r.value);
    dims.push_back(r.dimension);
    EXPECT_EQ(r.contributing, (std::set<std::size_t>{3}));
  }
  EXPECT_EQ(values, (std::vector<Rational>{q(5, 6), q(7, 6), q(4, 3), q(3, 2), q(5, 3), q(11, 6), q(2)}));
  EXPECT_EQ(dims, (std::vector<Integer>{1, 1, 1, 1, 1, 2, 1}));
  EXPECT_TRUE(jumps.front().in_omega);
  EXPECT_FALSE(jumps[5].in_omega);
  EXPECT_TRUE(jumping_numbers(m, q(1, 2)).empty());
}

TEST(JumpingNumbers, MaximalIdeal) {
  auto jumps = jumping_numbers(model({1, 1}), q(4), true);
  ASSERT_EQ(jumps.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(jumps[k].value, q(static_cast<long>(k) + 2));
    EXPECT_EQ(jumps[k].dimension, static_cast<long>(k) + 1);
  }
}

TEST(JumpingNumbers, VerifiedOnMixedModels) {
  for (auto m : {model({2, 3, 7}), model({4, 6, 13, 27}), model({3, 7, 22}), model({4, 6, 13, 26})}) {
    EXPECT_NO_THROW(jumping_numbers(m, q(3), true)) << m.contact.str();
  }
}
