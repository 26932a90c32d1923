#pragma once

#include <cassert>
#include <initializer_list>
#include <vector>

namespace wmp {

// Dense subset of {0, ..., universe-1}.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(int universe, bool full = false)
      : bits_(static_cast<std::size_t>(universe), full ? 1 : 0) {}

  static IndexSet of(int universe, std::initializer_list<int> items) {
    IndexSet s(universe);
    for (int i : items) s.insert(i);
    return s;
  }
  static IndexSet from(int universe, const std::vector<int>& items) {
    IndexSet s(universe);
    for (int i : items) s.insert(i);
    return s;
  }

  int universe() const { return static_cast<int>(bits_.size()); }
  bool contains(int i) const { return i >= 0 && i < universe() && bits_[i] != 0; }
  void insert(int i) {
    assert(i >= 0 && i < universe());
    bits_[i] = 1;
  }
  void erase(int i) {
    assert(i >= 0 && i < universe());
    bits_[i] = 0;
  }

  int size() const {
    int n = 0;
    for (char b : bits_) n += b;
    return n;
  }
  bool empty() const { return size() == 0; }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < universe(); ++i)
      if (bits_[i]) out.push_back(i);
    return out;
  }

  bool subset_of(const IndexSet& other) const {
    for (int i = 0; i < universe(); ++i)
      if (bits_[i] && !other.contains(i)) return false;
    return true;
  }
  bool intersects(const IndexSet& other) const {
    for (int i = 0; i < universe(); ++i)
      if (bits_[i] && other.contains(i)) return true;
    return false;
  }

  IndexSet complement() const {
    IndexSet out(universe());
    for (int i = 0; i < universe(); ++i) out.bits_[i] = bits_[i] ? 0 : 1;
    return out;
  }

  IndexSet& operator|=(const IndexSet& o) {
    assert(o.universe() == universe());
    for (int i = 0; i < universe(); ++i) bits_[i] = bits_[i] | o.bits_[i];
    return *this;
  }
  IndexSet& operator&=(const IndexSet& o) {
    assert(o.universe() == universe());
    for (int i = 0; i < universe(); ++i) bits_[i] = bits_[i] & o.bits_[i];
    return *this;
  }
  IndexSet& operator-=(const IndexSet& o) {
    assert(o.universe() == universe());
    for (int i = 0; i < universe(); ++i)
      if (o.bits_[i]) bits_[i] = 0;
    return *this;
  }

  friend IndexSet operator|(IndexSet a, const IndexSet& b) { return a |= b; }
  friend IndexSet operator&(IndexSet a, const IndexSet& b) { return a &= b; }
  friend IndexSet operator-(IndexSet a, const IndexSet& b) { return a -= b; }
  bool operator==(const IndexSet& o) const = default;

 private:
  std::vector<char> bits_;
};

using VertexSet = IndexSet;
using EdgeSet = IndexSet;

}  // namespace wmp
