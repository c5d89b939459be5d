#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace mulseries;
using fixtures::ints;
using fixtures::model;

TEST(Corpus, GeneratesSortedValidSequences) {
  auto corpus = generate_corpus(CorpusSpec{4, 40});
  EXPECT_GE(corpus.size(), 30u);
  for (std::size_t k = 1; k < corpus.size(); ++k) EXPECT_LT(corpus[k - 1].values(), corpus[k].values());
  for (const auto& seq : corpus) {
    EXPECT_LE(seq[0], 4);
    EXPECT_LE(seq[seq.size() - 1], 40);
  }
  EXPECT_EQ(corpus.front().values(), ints({1, 1}));
  auto has = [&](std::initializer_list<long> v) {
    for (const auto& seq : corpus)
      if (seq.values() == ints(v)) return true;
    return false;
  };
  EXPECT_TRUE(has({2, 3, 6}));
  EXPECT_TRUE(has({4, 6, 13, 27}));
  EXPECT_TRUE(has({4, 6, 13, 26}));
  EXPECT_FALSE(has({2, 3, 5}));
}

TEST(Corpus, Spec) {
  auto s = parse_corpus_spec("b0<=4,bg<=40");
  EXPECT_EQ(s.b0_max, 4);
  EXPECT_EQ(s.last_max, 40);
  s = parse_corpus_spec(" bg <= 12 ");
  EXPECT_EQ(s.b0_max, 4);
  EXPECT_EQ(s.last_max, 12);
  EXPECT_THROW(parse_corpus_spec("b0<4"), InvalidInput);
  EXPECT_THROW(parse_corpus_spec("b0<=4,b0<=5"), InvalidInput);
  EXPECT_THROW(parse_corpus_spec("b0<=0"), InvalidInput);
  EXPECT_THROW(parse_corpus_spec(""), InvalidInput);
}

TEST(Verify, CuspPasses) {
  auto rep = verify_model(model({2, 3, 6}));
  EXPECT_EQ(rep.key, "(2,3,6)");
  EXPECT_EQ(rep.checks.size(), 10u);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(Verify, TwoCharacteristicPairsPass) {
  for (auto m : {model({4, 6, 13, 27}), model({4, 6, 13, 26}), model({3, 7, 22})}) {
    auto rep = verify_model(m);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << rep.key << " " << c.name << ": " << c.detail;
  }
}

TEST(Verify, TamperedValuationFails) {
  auto m = model({2, 3, 6});
  m.valuation = ints({2, 3, 7});
  auto rep = verify_model(m);
  EXPECT_FALSE(rep.passed());
  bool named = false;
  for (const auto& c : rep.checks)
    if (c.name == "intersection_identities") named = !c.passed;
  EXPECT_TRUE(named);
}

TEST(Verify, SmallCorpusInParallel) {
  auto corpus = generate_corpus(CorpusSpec{3, 15});
  auto serial = verify_corpus(corpus, VerifyOptions{3, 3}, 1);
  auto parallel = verify_corpus(corpus, VerifyOptions{3, 3}, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t k = 0; k < serial.size(); ++k) {
    EXPECT_EQ(serial[k].key, parallel[k].key);
    EXPECT_EQ(serial[k].passed(), parallel[k].passed());
    for (const auto& c : serial[k].checks) EXPECT_TRUE(c.passed) << serial[k].key << " " << c.name << ": " << c.detail;
  }
}

TEST(Verify, WorkerCountHonoursEnvironment) {
  setenv("MULSERIES_THREADS", "3", 1);
  EXPECT_EQ(worker_count(100), 3u);
  EXPECT_EQ(worker_count(2), 2u);
  setenv("MULSERIES_THREADS", "junk", 1);
  EXPECT_GE(worker_count(100), 1u);
  unsetenv("MULSERIES_THREADS");
}
