#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace cachesim {

/// Exact binomial coefficient; returns 0 outside 0 <= k <= n.
std::uint64_t binomial(int n, int k);

/// A set of user indices held in canonical (strictly increasing) order.
/// Equality is set equality; ordering is lexicographic on the member list.
/// Sets are limited to users 0..63 so that mask() can serve as a map key.
class UserSubset {
 public:
  UserSubset() = default;
  explicit UserSubset(std::vector<int> members);
  UserSubset(std::initializer_list<int> members);

  static UserSubset from_mask(std::uint64_t mask);
  static UserSubset full(int count);
  static UserSubset single(int user);

  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const& { return members_; }
  std::vector<int> members() && { return std::move(members_); }
  int member(int i) const { return members_[static_cast<std::size_t>(i)]; }

  bool contains(int user) const;
  bool subset_of(const UserSubset& other) const;
  std::uint64_t mask() const;

  UserSubset with(int user) const;
  UserSubset without(int user) const;
  UserSubset set_minus(const UserSubset& other) const;

  /// Position of `user` within the member list; -1 if absent.
  int index_of(int user) const;

  std::string to_string() const;

  friend bool operator==(const UserSubset&, const UserSubset&) = default;
  friend std::strong_ordering operator<=>(const UserSubset& a,
                                          const UserSubset& b) {
    return a.members_ <=> b.members_;
  }

 private:
  std::vector<int> members_;
};

/// All size-`subset_size` subsets of {0,...,count-1} in lexicographic order of
/// their member lists. Throws std::invalid_argument outside 0 <= s <= count.
std::vector<UserSubset> enumerate_subsets(int count, int subset_size);

/// All size-`subset_size` subsets of `base`, lexicographic on member lists.
std::vector<UserSubset> subsets_of(const UserSubset& base, int subset_size);

}  // namespace cachesim
