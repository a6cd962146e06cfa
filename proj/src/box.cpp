#include "zsup/box.hpp"

#include "zsup/error.hpp"

namespace zsup {

Box::Box(std::vector<std::pair<Rational, Rational>> bounds) : bounds_(std::move(bounds)) {
  for (const auto& [lo, hi] : bounds_) {
    if (!(lo < hi)) throw ValidationError("empty box edge (" + to_string(lo) + ", " + to_string(hi) + ")");
  }
}

Box Box::symmetric(std::size_t dim, const Rational& radius) {
  return Box(std::vector<std::pair<Rational, Rational>>(dim, {Rational(-radius), radius}));
}

bool Box::contains(std::span<const Rational> point) const {
  if (point.size() != bounds_.size()) throw DimensionError("point dimension does not match box");
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(bounds_[i].first < point[i] && point[i] < bounds_[i].second)) return false;
  }
  return true;
}

std::optional<Box> Box::intersect(const Box& other) const {
  if (other.dimension() != dimension()) throw DimensionError("box dimension mismatch");
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    Rational lo = std::max(bounds_[i].first, other.bounds_[i].first);
    Rational hi = std::min(bounds_[i].second, other.bounds_[i].second);
    if (!(lo < hi)) return std::nullopt;
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return Box(std::move(out));
}

std::vector<Rational> Box::sample(std::mt19937_64& rng) const {
  constexpr unsigned kLattice = 1024;
  std::uniform_int_distribution<unsigned> pick(1, kLattice - 1);
  std::vector<Rational> point;
  point.reserve(bounds_.size());
  for (const auto& [lo, hi] : bounds_) {
    Rational t(pick(rng), kLattice);
    t.canonicalize();
    point.push_back(lo + (hi - lo) * t);
  }
  return point;
}

std::vector<Rational> Box::center() const {
  std::vector<Rational> point;
  point.reserve(bounds_.size());
  for (const auto& [lo, hi] : bounds_) point.push_back((lo + hi) / 2);
  return point;
}

std::vector<std::vector<Rational>> Box::sample_points(std::size_t count, std::uint64_t seed) const {
  std::vector<std::vector<Rational>> points;
  if (count == 0) return points;
  points.reserve(count);
  points.push_back(center());
  std::mt19937_64 rng(seed);
  while (points.size() < count) points.push_back(sample(rng));
  return points;
}

}  // namespace zsup
