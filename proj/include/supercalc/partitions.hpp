#pragma once

// Set partitions of index positions {1..n}, with the block ordering and
// parity used by the super Faa di Bruno formula.

#include "supercalc/algebra.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace supercalc {

/// Ordered list a_1..a_n of source coordinates; position i holds a_i.
using IndexList = std::vector<Coordinate>;

/// A set partition of positions {1..n}; blocks hold 1-based positions.
using SetPartition = std::vector<std::vector<int>>;

inline constexpr int kMaxPartitionSize = 12;

/// All set partitions of {1..n} via restricted-growth strings, in
/// lexicographic order of the growth string.
inline std::vector<SetPartition> enumerate_partitions(int n) {
  if (n < 1 || n > kMaxPartitionSize) throw std::out_of_range("partition size must be in [1, 12]");
  std::vector<SetPartition> out;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  for (;;) {
    const int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    SetPartition p(static_cast<std::size_t>(blocks));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(rgs[i])].push_back(i + 1);
    out.push_back(std::move(p));

    // next growth string: rgs[i] <= 1 + max(rgs[0..i-1])
    int i = n - 1;
    while (i > 0 && rgs[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) break;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int j = i + 1; j < n; ++j) {
      rgs[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

/// Blocks of a partition of {a_n, ..., a_1}: each block lists positions in
/// descending order; blocks are sorted so that their last (smallest)
/// positions descend. The ranking concatenates the blocks.
struct OrderedPartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> ranking;

  std::size_t size() const { return blocks.size(); }
};

inline OrderedPartition order_partition(const SetPartition& partition, std::size_t n) {
  std::vector<int> seen(n + 1, 0);
  OrderedPartition op;
  for (const auto& block : partition) {
    if (block.empty()) throw std::invalid_argument("partition has an empty block");
    for (int pos : block) {
      if (pos < 1 || static_cast<std::size_t>(pos) > n || seen[static_cast<std::size_t>(pos)]++) {
        throw std::invalid_argument("malformed partition");
      }
    }
    auto sorted = block;
    std::sort(sorted.begin(), sorted.end(), std::greater<>{});
    op.blocks.push_back(std::move(sorted));
  }
  for (std::size_t pos = 1; pos <= n; ++pos) {
    if (!seen[pos]) throw std::invalid_argument("malformed partition: positions not covered");
  }
  std::sort(op.blocks.begin(), op.blocks.end(), [](const auto& a, const auto& b) { return a.back() > b.back(); });
  for (const auto& block : op.blocks) op.ranking.insert(op.ranking.end(), block.begin(), block.end());
  return op;
}

inline OrderedPartition order_partition(const SetPartition& partition, const IndexList& idx) {
  return order_partition(partition, idx.size());
}

/// Mod-2 count of odd-odd pairs i < j that the ranking places a_i before a_j,
/// i.e. pairs inverted relative to the original order a_n, ..., a_1.
inline Parity partition_parity(const OrderedPartition& op, const IndexList& idx) {
  if (op.ranking.size() != idx.size()) throw std::invalid_argument("partition does not match index list");
  std::vector<std::size_t> rank(idx.size() + 1);
  for (std::size_t r = 0; r < op.ranking.size(); ++r) rank[static_cast<std::size_t>(op.ranking[r])] = r;
  unsigned count = 0;
  for (std::size_t i = 1; i <= idx.size(); ++i) {
    if (!is_odd(idx[i - 1].parity)) continue;
    for (std::size_t j = i + 1; j <= idx.size(); ++j) {
      if (is_odd(idx[j - 1].parity) && rank[i] < rank[j]) ++count;
    }
  }
  return (count % 2) ? Parity::odd : Parity::even;
}

}  // namespace supercalc
