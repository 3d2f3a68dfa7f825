#include "supercalc/partitions.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace sc = supercalc;

namespace {

sc::IndexList parities(std::initializer_list<int> odd_flags) {
  sc::IndexList idx;
  int k = 1;
  for (int flag : odd_flags) idx.push_back(flag ? sc::source_odd(k++) : sc::source_even(k++));
  return idx;
}

/// Bubble-sorts the original order (a_n, ..., a_1) into the ranking and
/// counts exchanges of two odd indices.
sc::Parity parity_by_bubble_sort(const sc::OrderedPartition& op, const sc::IndexList& idx) {
  std::vector<std::size_t> target_rank(idx.size() + 1);
  for (std::size_t r = 0; r < op.ranking.size(); ++r) target_rank[static_cast<std::size_t>(op.ranking[r])] = r;
  std::vector<int> seq;
  for (int pos = static_cast<int>(idx.size()); pos >= 1; --pos) seq.push_back(pos);
  unsigned swaps = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 1; k < seq.size(); ++k) {
      if (target_rank[static_cast<std::size_t>(seq[k])] < target_rank[static_cast<std::size_t>(seq[k - 1])]) {
        if (sc::is_odd(idx[static_cast<std::size_t>(seq[k] - 1)].parity) &&
            sc::is_odd(idx[static_cast<std::size_t>(seq[k - 1] - 1)].parity)) {
          ++swaps;
        }
        std::swap(seq[k], seq[k - 1]);
        changed = true;
      }
    }
  }
  return swaps % 2 ? sc::Parity::odd : sc::Parity::even;
}

}  // namespace

TEST(EnumeratePartitions, BellNumbers) {
  const std::vector<std::size_t> bell{1, 2, 5, 15, 52, 203, 877};
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(sc::enumerate_partitions(n).size(), bell[static_cast<std::size_t>(n - 1)]);
}

TEST(EnumeratePartitions, NoDuplicatesAndCoverAllPositions) {
  for (int n = 1; n <= 6; ++n) {
    std::set<std::set<std::set<int>>> seen;
    for (const auto& p : sc::enumerate_partitions(n)) {
      std::set<std::set<int>> as_set;
      int count = 0;
      for (const auto& b : p) {
        as_set.insert(std::set<int>(b.begin(), b.end()));
        count += static_cast<int>(b.size());
      }
      EXPECT_EQ(count, n);
      EXPECT_TRUE(seen.insert(as_set).second);
    }
  }
}

TEST(EnumeratePartitions, RangeGuard) {
  EXPECT_THROW(sc::enumerate_partitions(0), std::out_of_range);
  EXPECT_THROW(sc::enumerate_partitions(13), std::out_of_range);
}

TEST(OrderPartition, WorkedFiveElementExample) {
  const auto op = sc::order_partition({{1, 4}, {2, 5}, {3}}, 5);
  ASSERT_EQ(op.size(), 3u);
  EXPECT_EQ(op.blocks[0], (std::vector<int>{3}));
  EXPECT_EQ(op.blocks[1], (std::vector<int>{5, 2}));
  EXPECT_EQ(op.blocks[2], (std::vector<int>{4, 1}));
  EXPECT_EQ(op.ranking, (std::vector<int>{3, 5, 2, 4, 1}));
}

TEST(OrderPartition, TwoElementCases) {
  const auto singletons = sc::order_partition({{1}, {2}}, 2);
  EXPECT_EQ(singletons.blocks, (std::vector<std::vector<int>>{{2}, {1}}));
  const auto whole = sc::order_partition({{1, 2}}, 2);
  EXPECT_EQ(whole.blocks, (std::vector<std::vector<int>>{{2, 1}}));
}

TEST(OrderPartition, MalformedPartitionsThrow) {
  EXPECT_THROW(sc::order_partition({{1}, {1, 2}}, 2), std::invalid_argument);
  EXPECT_THROW(sc::order_partition({{1}}, 2), std::invalid_argument);
  EXPECT_THROW(sc::order_partition({{1, 3}}, 2), std::invalid_argument);
  EXPECT_THROW(sc::order_partition({{}, {1}}, 1), std::invalid_argument);
}

TEST(PartitionParity, AllEvenIsZero) {
  const auto idx = parities({0, 0, 0, 0});
  for (const auto& p : sc::enumerate_partitions(4)) {
    EXPECT_EQ(sc::partition_parity(sc::order_partition(p, idx), idx), sc::Parity::even);
  }
}

TEST(PartitionParity, ThreeOddWithOneInversion) {
  const auto idx = parities({1, 1, 1});
  const auto op = sc::order_partition({{1, 3}, {2}}, idx);
  EXPECT_EQ(op.ranking, (std::vector<int>{2, 3, 1}));
  EXPECT_EQ(sc::partition_parity(op, idx), sc::Parity::odd);
}

TEST(PartitionParity, TwoElementPartitionsPreserveOrder) {
  for (auto flags : {std::vector<int>{1, 1}, {0, 1}, {1, 0}}) {
    sc::IndexList idx{flags[0] ? sc::source_odd(1) : sc::source_even(1), flags[1] ? sc::source_odd(2) : sc::source_even(2)};
    for (const auto& p : sc::enumerate_partitions(2)) {
      EXPECT_EQ(sc::partition_parity(sc::order_partition(p, idx), idx), sc::Parity::even);
    }
  }
}

TEST(PartitionParity, MatchesBubbleSortOracle) {
  for (int n = 1; n <= 6; ++n) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      sc::IndexList idx;
      for (int i = 0; i < n; ++i) idx.push_back((mask >> i) & 1u ? sc::source_odd(1) : sc::source_even(1));
      for (const auto& p : sc::enumerate_partitions(n)) {
        const auto op = sc::order_partition(p, idx);
        ASSERT_EQ(sc::partition_parity(op, idx), parity_by_bubble_sort(op, idx));
      }
    }
  }
}

TEST(OrderPartition, LastElementsDescend) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& p : sc::enumerate_partitions(n)) {
      const auto op = sc::order_partition(p, static_cast<std::size_t>(n));
      for (std::size_t i = 1; i < op.size(); ++i) EXPECT_GT(op.blocks[i - 1].back(), op.blocks[i].back());
      for (const auto& b : op.blocks) EXPECT_TRUE(std::is_sorted(b.rbegin(), b.rend()));
    }
  }
}
