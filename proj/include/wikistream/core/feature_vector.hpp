// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wikistream {

/// Dense index of a named feature inside a FeatureSpace. Ids are assigned in
/// first-seen order, so two pipelines fed the same stream agree on them.
struct FeatureId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(FeatureId, FeatureId) = default;
};

struct FeatureIdHash {
  std::size_t operator()(FeatureId id) const noexcept { return std::hash<std::uint32_t>{}(id.index); }
};

/// Interns feature names. Grows as new n-gram terms appear.
class FeatureSpace {
 public:
  FeatureId intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    const FeatureId id{static_cast<std::uint32_t>(names_.size())};
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
  }

  std::optional<FeatureId> find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name(FeatureId id) const {
    if (id.index >= names_.size()) throw std::out_of_range("unknown feature id " + std::to_string(id.index));
    return names_[id.index];
  }

  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, FeatureId> ids_;
};

struct FeatureEntry {
  FeatureId id;
  double value = 0.0;

  friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

/// Sparse feature vector kept sorted by id. Absent ids mean "not observed",
/// which is distinct from an explicit zero.
class FeatureVector {
 public:
  FeatureVector() = default;

  /// Inserts or overwrites.
  void set(FeatureId id, double value) {
    auto it = lower(id);
    if (it != entries_.end() && it->id == id) {
      it->value = value;
    } else {
      entries_.insert(it, FeatureEntry{id, value});
    }
  }

  /// Appends assuming ids arrive in increasing order; falls back to set() otherwise.
  void push(FeatureId id, double value) {
    if (entries_.empty() || entries_.back().id < id) {
      entries_.push_back(FeatureEntry{id, value});
    } else {
      set(id, value);
    }
  }

  std::optional<double> get(FeatureId id) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const FeatureEntry& e, FeatureId key) { return e.id < key; });
    if (it == entries_.end() || it->id != id) return std::nullopt;
    return it->value;
  }

  bool contains(FeatureId id) const { return get(id).has_value(); }

  std::span<const FeatureEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  void reserve(std::size_t n) { entries_.reserve(n); }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<FeatureEntry>::iterator lower(FeatureId id) {
    return std::lower_bound(entries_.begin(), entries_.end(), id,
                            [](const FeatureEntry& e, FeatureId key) { return e.id < key; });
  }

  std::vector<FeatureEntry> entries_;
};

/// Binary label. 0 = non-disinformation, 1 = disinformation.
enum class Label : std::uint8_t { kNonDisinformation = 0, kDisinformation = 1 };

constexpr int to_int(Label l) noexcept { return static_cast<int>(l); }
constexpr Label label_from_int(int v) { return v == 0 ? Label::kNonDisinformation : Label::kDisinformation; }

inline std::string_view class_name(Label l) {
  return l == Label::kDisinformation ? "disinformation" : "non-disinformation";
}

}  // namespace wikistream
