#pragma once

// Partially persistent union-find.
//
// Union by rank without path compression: every node's parent pointer is
// written at most once, together with the time of the union that wrote it.
// A query at time t walks parent links whose stamp is <= t, so the forest as
// it was after the t-th union is still readable. Rank linking bounds every
// such walk by floor(log2 n) links.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gapgraph {

class persistent_dsu {
 public:
  using timestamp = std::uint32_t;
  static constexpr timestamp kNever = std::numeric_limits<timestamp>::max();

  persistent_dsu() = default;
  explicit persistent_dsu(std::size_t n) : parent_(n), stamp_(n, kNever), rank_(n, 0) {
    for (std::size_t k = 0; k < n; ++k) parent_[k] = static_cast<std::uint32_t>(k);
  }

  std::size_t size() const { return parent_.size(); }
  timestamp now() const { return now_; }

  /// Advances time by one and merges the components of u and v if they
  /// differ. Returns the new time.
  timestamp unite(std::size_t u, std::size_t v) {
    check(u);
    check(v);
    ++now_;
    std::size_t ru = root(u, now_);
    std::size_t rv = root(v, now_);
    if (ru == rv) return now_;
    if (rank_[ru] < rank_[rv] || (rank_[ru] == rank_[rv] && ru > rv)) std::swap(ru, rv);
    // ru survives as root
    parent_[rv] = static_cast<std::uint32_t>(ru);
    stamp_[rv] = now_;
    if (rank_[ru] == rank_[rv]) ++rank_[ru];
    return now_;
  }

  /// Root of u's component as of time t; `hops` accumulates links followed.
  std::size_t root(std::size_t u, timestamp t, std::size_t* hops = nullptr) const {
    while (stamp_[u] <= t) {
      u = parent_[u];
      if (hops) ++*hops;
    }
    return u;
  }

  bool connected(std::size_t u, std::size_t v, timestamp t, std::size_t* hops = nullptr) const {
    check(u);
    check(v);
    if (t > now_) throw std::out_of_range("persistent_dsu: time beyond the last union");
    return root(u, t, hops) == root(v, t, hops);
  }

  // Raw state, for serialization.
  const std::vector<std::uint32_t>& parents() const { return parent_; }
  const std::vector<timestamp>& stamps() const { return stamp_; }
  const std::vector<std::uint8_t>& ranks() const { return rank_; }

  static persistent_dsu restore(std::vector<std::uint32_t> parent, std::vector<timestamp> stamp,
                                std::vector<std::uint8_t> rank, timestamp now) {
    if (parent.size() != stamp.size() || parent.size() != rank.size())
      throw std::invalid_argument("persistent_dsu: inconsistent sizes");
    persistent_dsu d;
    d.parent_ = std::move(parent);
    d.stamp_ = std::move(stamp);
    d.rank_ = std::move(rank);
    d.now_ = now;
    for (std::size_t k = 0; k < d.parent_.size(); ++k)
      if (d.parent_[k] >= d.parent_.size() || (d.stamp_[k] != kNever && d.stamp_[k] > now))
        throw std::invalid_argument("persistent_dsu: corrupt link");
    return d;
  }

 private:
  void check(std::size_t u) const {
    if (u >= parent_.size()) throw std::out_of_range("persistent_dsu: node id out of range");
  }

  std::vector<std::uint32_t> parent_;
  std::vector<timestamp> stamp_;
  std::vector<std::uint8_t> rank_;
  timestamp now_ = 0;
};

}  // namespace gapgraph
