#include "cachesim/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cachesim {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<std::uint64_t>(n - k + i) /
             static_cast<std::uint64_t>(i);
  }
  return result;
}

UserSubset::UserSubset(std::vector<int> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] > 63)
      throw std::invalid_argument("UserSubset: member out of [0, 64)");
    if (i > 0 && members_[i] == members_[i - 1])
      throw std::invalid_argument("UserSubset: duplicate member");
  }
}

UserSubset::UserSubset(std::initializer_list<int> members)
    : UserSubset(std::vector<int>(members)) {}

UserSubset UserSubset::from_mask(std::uint64_t mask) {
  std::vector<int> m;
  for (int i = 0; i < 64; ++i) {
    if (mask & (1ULL << i)) m.push_back(i);
  }
  UserSubset s;
  s.members_ = std::move(m);
  return s;
}

UserSubset UserSubset::full(int count) {
  std::vector<int> m(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) m[static_cast<std::size_t>(i)] = i;
  UserSubset s;
  s.members_ = std::move(m);
  return s;
}

UserSubset UserSubset::single(int user) { return UserSubset{user}; }

bool UserSubset::contains(int user) const {
  return std::binary_search(members_.begin(), members_.end(), user);
}

bool UserSubset::subset_of(const UserSubset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

std::uint64_t UserSubset::mask() const {
  std::uint64_t m = 0;
  for (int u : members_) m |= 1ULL << u;
  return m;
}

UserSubset UserSubset::with(int user) const {
  if (contains(user)) return *this;
  std::vector<int> m = members_;
  m.insert(std::upper_bound(m.begin(), m.end(), user), user);
  UserSubset s;
  s.members_ = std::move(m);
  return s;
}

UserSubset UserSubset::without(int user) const {
  std::vector<int> m;
  m.reserve(members_.size());
  for (int u : members_) {
    if (u != user) m.push_back(u);
  }
  UserSubset s;
  s.members_ = std::move(m);
  return s;
}

UserSubset UserSubset::set_minus(const UserSubset& other) const {
  std::vector<int> m;
  for (int u : members_) {
    if (!other.contains(u)) m.push_back(u);
  }
  UserSubset s;
  s.members_ = std::move(m);
  return s;
}

int UserSubset::index_of(int user) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), user);
  if (it == members_.end() || *it != user) return -1;
  return static_cast<int>(it - members_.begin());
}

std::string UserSubset::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(members_[i]);
  }
  out += "}";
  return out;
}

std::vector<UserSubset> enumerate_subsets(int count, int subset_size) {
  if (subset_size < 0 || subset_size > count || count < 0)
    throw std::invalid_argument("enumerate_subsets: size out of range");
  return subsets_of(UserSubset::full(count), subset_size);
}

std::vector<UserSubset> subsets_of(const UserSubset& base, int subset_size) {
  const int n = base.size();
  if (subset_size < 0 || subset_size > n)
    throw std::invalid_argument("subsets_of: size out of range");
  std::vector<UserSubset> out;
  out.reserve(binomial(n, subset_size));
  std::vector<int> idx(static_cast<std::size_t>(subset_size));
  for (int i = 0; i < subset_size; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> members;
    members.reserve(idx.size());
    for (int i : idx) members.push_back(base.member(i));
    out.emplace_back(std::move(members));
    int pos = subset_size - 1;
    while (pos >= 0 &&
           idx[static_cast<std::size_t>(pos)] == n - subset_size + pos) {
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < subset_size; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

}  // namespace cachesim
