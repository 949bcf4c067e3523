#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "ulc/ulc.hpp"

using namespace ulc;

namespace {

const std::vector<double> kFour{1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6};

Reason reason_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.reason();
  }
  ADD_FAILURE() << "expected an ulc::Error";
  return Reason::numerical_failure;
}

// Codeword costs of a word list under a finite cost list.
double word_cost(const std::vector<Letter>& w, std::span<const double> costs) {
  double s = 0.0;
  for (auto l : w) s += costs[l];
  return s;
}

}  // namespace

TEST(ExactOpt, FourItemsUnitCosts) {
  const auto r = exact_opt(prepare(kFour), CostSpec::finite({1, 1}));
  EXPECT_NEAR(r.opt_cost, 2.0, 1e-12);
  EXPECT_EQ(r.codeword_costs, (std::vector<double>{2, 2, 2, 2}));
}

TEST(ExactOpt, FourItemsCostsOneThree) {
  const auto r = exact_opt(prepare(kFour), CostSpec::finite({1, 3}));
  EXPECT_NEAR(r.opt_cost, 3.5, 1e-12);
  EXPECT_EQ(r.codeword_costs, (std::vector<double>{3, 3, 4, 5}));
  EXPECT_GT(r.nodes_explored, 0u);
}

TEST(ExactOpt, WitnessIsPrefixFreeAndRealizesTheCost) {
  const auto spec = CostSpec::finite({1, 3});
  const auto in = prepare(kFour);
  const auto r = exact_opt(in, spec);
  EXPECT_TRUE(verify_prefix_free(r.codewords));
  double total = 0.0;
  for (std::size_t i = 0; i < kFour.size(); ++i) total += kFour[i] * word_cost(r.codewords[i], spec.costs());
  EXPECT_NEAR(total, r.opt_cost, 1e-12);
}

TEST(ExactOpt, SingleItemCostsCheapestLetter) {
  const auto r = exact_opt(prepare(std::vector<double>{1.0}), CostSpec::finite({1, 2}));
  EXPECT_EQ(r.opt_cost, 1.0);
}

TEST(ExactOpt, RespectsLimitsAndCaps) {
  EXPECT_EQ(reason_of([] { exact_opt(prepare(gen::flat(11)), CostSpec::finite({1, 1})); }),
            Reason::too_large);
  EXPECT_EQ(reason_of([] { exact_opt(prepare(gen::flat(4)), CostSpec::finite({1, 1, 1, 1, 1})); }),
            Reason::too_large);
  EXPECT_EQ(reason_of([] { exact_opt(prepare(gen::flat(4)), CostSpec::linear()); }),
            Reason::too_large);
  EXPECT_EQ(reason_of([] { exact_opt(prepare(kFour), CostSpec::finite({1, 1}), 1.9); }),
            Reason::cap_too_small);
  // a cap equal to the optimum is accepted
  EXPECT_NEAR(exact_opt(prepare(kFour), CostSpec::finite({1, 3}), 3.5).opt_cost, 3.5, 1e-12);
}

TEST(ExactOpt, AgreesWithHuffmanForEqualCosts) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto in = prepare(gen::uniform(n, rng()));
    for (std::size_t t : {2u, 3u}) {
      const auto spec = CostSpec::finite(std::vector<double>(t, 1.0));
      EXPECT_NEAR(exact_opt(in, spec).opt_cost, huffman_equal_cost(in, t), 1e-9)
          << "n=" << n << " t=" << t;
    }
  }
}

TEST(ExactOpt, NeverBelowEntropyNorAboveCoder) {
  std::mt19937_64 rng(9);
  for (const char* s : {"finite:1,2", "finite:1,3", "finite:1,2,3", "finite:1,1,2,2"}) {
    const auto spec = parse_costs(s);
    const auto root = char_root(spec);
    for (int trial = 0; trial < 25; ++trial) {
      const auto in = prepare(gen::uniform(2 + rng() % 7, rng()));
      const double coder = expected_cost(build_code(in, spec, root).tree, in);
      const auto r = exact_opt(in, spec, coder);
      EXPECT_GE(r.opt_cost, entropy(in) / root.c - 1e-9) << s;
      EXPECT_LE(r.opt_cost, coder + 1e-12) << s;
    }
  }
}

TEST(ExactOpt, PermutationInvariant) {
  std::mt19937_64 rng(21);
  auto p = gen::uniform(8, 77);
  const auto spec = CostSpec::finite({1, 2, 4});
  const double base = exact_opt(prepare(p), spec).opt_cost;
  for (int i = 0; i < 5; ++i) {
    std::shuffle(p.begin(), p.end(), rng);
    EXPECT_NEAR(exact_opt(prepare(p), spec).opt_cost, base, 1e-12);
  }
}

TEST(ExactOpt, ExtendingTheAlphabetNeverHurts) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto in = prepare(gen::uniform(2 + rng() % 8, rng()));
    const double two = exact_opt(in, CostSpec::finite({1, 2})).opt_cost;
    const double three = exact_opt(in, CostSpec::finite({1, 2, 3})).opt_cost;
    const double four = exact_opt(in, CostSpec::finite({1, 2, 3, 3})).opt_cost;
    EXPECT_LE(three, two + 1e-12);
    EXPECT_LE(four, three + 1e-12);
  }
}

TEST(Huffman, KnownValues) {
  EXPECT_NEAR(huffman_equal_cost(prepare(kFour), 2), 2.0, 1e-12);
  EXPECT_NEAR(huffman_equal_cost(prepare(gen::dyadic(4)), 2), 1.75, 1e-12);
  EXPECT_EQ(huffman_equal_cost(prepare(std::vector<double>{1.0}), 3), 1.0);
  // ternary with padding: 4 items need one dummy
  EXPECT_NEAR(huffman_equal_cost(prepare(std::vector<double>{0.4, 0.3, 0.2, 0.1}), 3), 1.3, 1e-12);
}
