#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace gvb {

/// Unordered multiset of base-coordinate indices, stored sorted
/// non-decreasing. Identifies repeated total derivatives: two multi-indices
/// are the same jet label iff they are equal as multisets.
class MultiIndex {
  public:
    MultiIndex() = default;

    MultiIndex(std::initializer_list<int> indices)
        : indices_(indices) {
        std::sort(indices_.begin(), indices_.end());
    }

    explicit MultiIndex(std::vector<int> indices) : indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
    }

    std::size_t order() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    const std::vector<int>& indices() const { return indices_; }

    /// The multiset lambda + Lambda.
    MultiIndex merged(int lambda) const {
        MultiIndex out = *this;
        out.indices_.insert(
            std::upper_bound(out.indices_.begin(), out.indices_.end(), lambda),
            lambda);
        return out;
    }

    /// Multiset with one copy of lambda removed; lambda must occur.
    MultiIndex removed(int lambda) const {
        MultiIndex out = *this;
        auto it = std::find(out.indices_.begin(), out.indices_.end(), lambda);
        out.indices_.erase(it);
        return out;
    }

    int count(int lambda) const {
        return static_cast<int>(
            std::count(indices_.begin(), indices_.end(), lambda));
    }

    bool contains(int lambda) const { return count(lambda) > 0; }

    int max_index() const {
        return indices_.empty() ? -1 : indices_.back();
    }

    /// Order on jet labels: shorter first, then lexicographic.
    std::strong_ordering operator<=>(const MultiIndex& other) const {
        if (auto c = indices_.size() <=> other.indices_.size(); c != 0) return c;
        return indices_ <=> other.indices_;
    }

    bool operator==(const MultiIndex&) const = default;

  private:
    std::vector<int> indices_;
};

/// All multisets of the given order over indices 0..dim-1, in canonical
/// (non-decreasing lexicographic) order.
inline std::vector<MultiIndex> all_multi_indices(int dim, int order) {
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == order) {
            out.emplace_back(cur);
            return;
        }
        for (int i = start; i < dim; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace gvb
