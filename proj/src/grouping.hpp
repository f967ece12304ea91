#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace elmlc {

// Paired partition of input and hidden node indices into k groups. Group g
// of inputs is fully connected to group g of hidden nodes and to nothing
// else. Valid partitions give every hidden group at least one more node
// than its input group.
struct GroupPartition {
  std::vector<std::vector<std::size_t>> input_groups;
  std::vector<std::vector<std::size_t>> hidden_groups;

  std::size_t group_count() const { return input_groups.size(); }
  std::size_t input_count() const;
  std::size_t hidden_count() const;

  // Number of structurally present input-hidden weights: sum over groups of
  // |inputs_g| * |hidden_g|. Equals n*L/k when k divides both n and L.
  std::size_t weight_count() const;
};

// Default scheme: contiguous index ranges, base sizes floor(n/k) and
// floor(L/k), remainders handed one-per-group to the earliest groups.
// Throws ConfigError when k is out of range or some hidden group would not
// outsize its input group.
GroupPartition make_partition(std::size_t n, std::size_t L, std::size_t k);

// Contiguous partition with caller-chosen group sizes, for groupings the
// default scheme cannot express. Same validation as make_partition.
GroupPartition make_explicit_partition(const std::vector<std::size_t>& input_sizes,
                                       const std::vector<std::size_t>& hidden_sizes);

struct PartitionViolation {
  enum class Kind { Shape, EmptyGroup, Disjointness, Coverage, SizeConstraint };
  Kind kind;
  std::size_t group;  // offending group index, or npos for partition-wide issues
  std::string detail;

  static constexpr std::size_t kWholePartition = static_cast<std::size_t>(-1);
};

// Checks disjointness, coverage of {0..n-1} / {0..L-1}, and the strict
// hidden-larger-than-input constraint. Returns every violation found;
// empty result means the partition is valid.
std::vector<PartitionViolation> validate(const GroupPartition& p, std::size_t n,
                                         std::size_t L);

}  // namespace elmlc
