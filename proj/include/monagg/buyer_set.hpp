// Copyright 2026 The monagg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "monagg/errors.hpp"

namespace monagg {

// A subset of buyers {0, ..., n-1}, n <= 32, stored as a bitmask.
class BuyerSet {
 public:
  static constexpr int kMaxBuyers = 32;

  constexpr BuyerSet() = default;
  constexpr explicit BuyerSet(std::uint32_t bits) : bits_(bits) {}
  BuyerSet(std::initializer_list<int> members) {
    for (int i : members) insert(i);
  }

  static constexpr BuyerSet all(int n) {
    return BuyerSet(n >= kMaxBuyers ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
  }
  static BuyerSet single(int i) { return BuyerSet{i}; }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return i >= 0 && i < kMaxBuyers && ((bits_ >> i) & 1u); }
  constexpr bool is_subset_of(BuyerSet other) const { return (bits_ & ~other.bits_) == 0; }

  void insert(int i) {
    check(i);
    bits_ |= std::uint32_t{1} << i;
  }
  void erase(int i) {
    check(i);
    bits_ &= ~(std::uint32_t{1} << i);
  }
  BuyerSet with(int i) const {
    BuyerSet s = *this;
    s.insert(i);
    return s;
  }
  BuyerSet without(int i) const {
    BuyerSet s = *this;
    s.erase(i);
    return s;
  }

  friend constexpr BuyerSet operator|(BuyerSet a, BuyerSet b) { return BuyerSet(a.bits_ | b.bits_); }
  friend constexpr BuyerSet operator&(BuyerSet a, BuyerSet b) { return BuyerSet(a.bits_ & b.bits_); }
  // Set difference.
  friend constexpr BuyerSet operator-(BuyerSet a, BuyerSet b) { return BuyerSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(BuyerSet, BuyerSet) = default;
  friend constexpr auto operator<=>(BuyerSet a, BuyerSet b) { return a.bits_ <=> b.bits_; }

  // Lowest member, or -1 when empty.
  constexpr int first() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator t = *this;
      ++*this;
      return t;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    std::uint32_t rest_ = 0;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> members() const { return {begin(), end()}; }

  // Sorted comma-joined zero-based indices: "0,2". Empty set is "".
  std::string key() const {
    std::string out;
    for (int i : *this) {
      if (!out.empty()) out += ',';
      out += std::to_string(i);
    }
    return out;
  }

  static BuyerSet from_key(std::string_view key) {
    BuyerSet s;
    std::size_t pos = 0;
    while (pos < key.size()) {
      std::size_t comma = key.find(',', pos);
      if (comma == std::string_view::npos) comma = key.size();
      std::string_view tok = key.substr(pos, comma - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      if (tok.empty()) throw DomainError("malformed subset key \"" + std::string(key) + "\"");
      int v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw DomainError("malformed subset key \"" + std::string(key) + "\"");
        v = v * 10 + (c - '0');
        if (v >= kMaxBuyers) throw DomainError("buyer index out of range in \"" + std::string(key) + "\"");
      }
      s.insert(v);
      pos = comma + 1;
    }
    return s;
  }

  // One-based, for people: "{1,3}".
  std::string display() const {
    std::string out = "{";
    bool first_member = true;
    for (int i : *this) {
      if (!first_member) out += ',';
      out += std::to_string(i + 1);
      first_member = false;
    }
    return out + "}";
  }

 private:
  static void check(int i) {
    if (i < 0 || i >= kMaxBuyers) throw DomainError("buyer index out of range: " + std::to_string(i));
  }
  std::uint32_t bits_ = 0;
};

// All non-empty subsets of `universe`, visited in increasing bitmask order.
template <typename Fn>
void for_each_nonempty_subset(BuyerSet universe, Fn&& fn) {
  const std::uint32_t u = universe.bits();
  std::uint32_t s = 0;
  do {
    s = (s - u) & u;
    if (s != 0) fn(BuyerSet(s));
  } while (s != 0);
}

}  // namespace monagg
