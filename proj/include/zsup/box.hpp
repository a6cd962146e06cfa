#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "zsup/rational.hpp"

namespace zsup {

/// Open rational box prod_i (lo_i, hi_i). Stands in for the open sets of the
/// base; all checks against it are sample-based.
class Box {
 public:
  Box() = default;
  /// Throws ValidationError when some lo_i >= hi_i.
  explicit Box(std::vector<std::pair<Rational, Rational>> bounds);
  /// (-r, r)^dim.
  static Box symmetric(std::size_t dim, const Rational& radius);

  std::size_t dimension() const noexcept { return bounds_.size(); }
  const std::vector<std::pair<Rational, Rational>>& bounds() const noexcept { return bounds_; }

  bool contains(std::span<const Rational> point) const;
  /// Nonempty open intersection, or nullopt.
  std::optional<Box> intersect(const Box& other) const;
  /// Uniform rational point strictly inside the box, on a 1/1024 lattice of
  /// each edge.
  std::vector<Rational> sample(std::mt19937_64& rng) const;
  /// `count` points: the center first, then sample(rng) draws.
  std::vector<std::vector<Rational>> sample_points(std::size_t count, std::uint64_t seed) const;
  std::vector<Rational> center() const;

  bool operator==(const Box&) const = default;

 private:
  std::vector<std::pair<Rational, Rational>> bounds_;
};

}  // namespace zsup
