#include "grouping.hpp"

#include <numeric>

#include "errors.hpp"

namespace elmlc {

namespace {

std::vector<std::vector<std::size_t>> contiguous_groups(
    const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<std::size_t>> groups;
  groups.reserve(sizes.size());
  std::size_t next = 0;
  for (std::size_t s : sizes) {
    std::vector<std::size_t> g(s);
    std::iota(g.begin(), g.end(), next);
    next += s;
    groups.push_back(std::move(g));
  }
  return groups;
}

// floor(total/k) everywhere, one extra for the first (total mod k) groups.
std::vector<std::size_t> spread_sizes(std::size_t total, std::size_t k) {
  std::vector<std::size_t> sizes(k, total / k);
  for (std::size_t g = 0; g < total % k; ++g) sizes[g] += 1;
  return sizes;
}

void check_size_constraint(const GroupPartition& p) {
  for (std::size_t g = 0; g < p.group_count(); ++g) {
    const std::size_t in = p.input_groups[g].size();
    const std::size_t hid = p.hidden_groups[g].size();
    if (hid < in + 1) {
      throw ConfigError("infeasible partition: hidden group " + std::to_string(g) +
                        " has " + std::to_string(hid) + " nodes but needs at least " +
                        std::to_string(in + 1) + " (one more than its input group)");
    }
  }
}

}  // namespace

std::size_t GroupPartition::input_count() const {
  std::size_t total = 0;
  for (const auto& g : input_groups) total += g.size();
  return total;
}

std::size_t GroupPartition::hidden_count() const {
  std::size_t total = 0;
  for (const auto& g : hidden_groups) total += g.size();
  return total;
}

std::size_t GroupPartition::weight_count() const {
  std::size_t total = 0;
  for (std::size_t g = 0; g < group_count(); ++g) {
    total += input_groups[g].size() * hidden_groups[g].size();
  }
  return total;
}

GroupPartition make_partition(std::size_t n, std::size_t L, std::size_t k) {
  if (k < 1) throw ConfigError("group count must be at least 1");
  if (k > n) {
    throw ConfigError("cannot divide " + std::to_string(n) + " inputs into " +
                      std::to_string(k) + " nonempty groups");
  }
  if (k > L) {
    throw ConfigError("cannot divide " + std::to_string(L) + " hidden nodes into " +
                      std::to_string(k) + " nonempty groups");
  }
  GroupPartition p{contiguous_groups(spread_sizes(n, k)),
                   contiguous_groups(spread_sizes(L, k))};
  check_size_constraint(p);
  return p;
}

GroupPartition make_explicit_partition(const std::vector<std::size_t>& input_sizes,
                                       const std::vector<std::size_t>& hidden_sizes) {
  if (input_sizes.empty() || input_sizes.size() != hidden_sizes.size()) {
    throw ConfigError("explicit partition needs equally many (and at least one) "
                      "input and hidden group sizes, got " +
                      std::to_string(input_sizes.size()) + " and " +
                      std::to_string(hidden_sizes.size()));
  }
  for (std::size_t g = 0; g < input_sizes.size(); ++g) {
    if (input_sizes[g] == 0 || hidden_sizes[g] == 0) {
      throw ConfigError("explicit partition: group " + std::to_string(g) +
                        " is empty");
    }
  }
  GroupPartition p{contiguous_groups(input_sizes), contiguous_groups(hidden_sizes)};
  check_size_constraint(p);
  return p;
}

std::vector<PartitionViolation> validate(const GroupPartition& p, std::size_t n,
                                         std::size_t L) {
  std::vector<PartitionViolation> out;
  using Kind = PartitionViolation::Kind;

  if (p.input_groups.size() != p.hidden_groups.size() || p.input_groups.empty()) {
    out.push_back({Kind::Shape, PartitionViolation::kWholePartition,
                   "partition must pair equally many (>=1) input and hidden groups"});
    return out;
  }

  auto check_side = [&](const std::vector<std::vector<std::size_t>>& groups,
                        std::size_t universe, const char* side) {
    std::vector<std::size_t> seen(universe, 0);
    std::size_t covered = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].empty()) {
        out.push_back({Kind::EmptyGroup, g, std::string(side) + " group is empty"});
      }
      for (std::size_t idx : groups[g]) {
        if (idx >= universe) {
          out.push_back({Kind::Coverage, g,
                         std::string(side) + " index " + std::to_string(idx) +
                             " out of range [0," + std::to_string(universe) + ")"});
          continue;
        }
        if (seen[idx]++) {
          out.push_back({Kind::Disjointness, g,
                         std::string(side) + " index " + std::to_string(idx) +
                             " appears in more than one group"});
        } else {
          ++covered;
        }
      }
    }
    if (covered < universe) {
      out.push_back({Kind::Coverage, PartitionViolation::kWholePartition,
                     std::string(side) + " groups cover " + std::to_string(covered) +
                         " of " + std::to_string(universe) + " indices"});
    }
  };
  check_side(p.input_groups, n, "input");
  check_side(p.hidden_groups, L, "hidden");

  for (std::size_t g = 0; g < p.group_count(); ++g) {
    const std::size_t in = p.input_groups[g].size();
    const std::size_t hid = p.hidden_groups[g].size();
    if (hid < in + 1) {
      out.push_back({Kind::SizeConstraint, g,
                     "hidden group has " + std::to_string(hid) +
                         " nodes, needs at least " + std::to_string(in + 1)});
    }
  }
  return out;
}

}  // namespace elmlc
