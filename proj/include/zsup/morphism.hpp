#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsup/box.hpp"
#include "zsup/series.hpp"

namespace zsup {

/// Coordinate form of a superdomain morphism source -> target: one pullback
/// series over the source for every target coordinate, base coordinates
/// first, then formal coordinates in canonical order. Each pullback must be
/// homogeneous of the degree of its coordinate (see check_morphism_data).
class Morphism {
 public:
  /// Throws on shape problems: rank mismatch, wrong pullback count, or a
  /// pullback over a domain other than `source`.
  Morphism(Domain source, Domain target, std::vector<Series> pullbacks);

  /// Pullbacks given by target coordinate name; every coordinate required.
  static Morphism from_named(Domain source, Domain target, const std::map<std::string, Series>& pullbacks);
  static Morphism identity(const Domain& domain);

  const Domain& source() const noexcept { return source_; }
  const Domain& target() const noexcept { return target_; }
  const std::vector<Series>& pullbacks() const noexcept { return pullbacks_; }
  const Series& pullback_of(const std::string& coordinate) const;

  /// Name of target coordinate k (base first, then formal).
  std::string coordinate_name(std::size_t k) const;
  /// Degree of target coordinate k (zero for base coordinates).
  Degree coordinate_degree(std::size_t k) const;

  /// The underlying base map: base projections of the base pullbacks.
  std::vector<Polynomial> base_map() const;

  bool operator==(const Morphism& other) const;

 private:
  Domain source_;
  Domain target_;
  std::vector<Series> pullbacks_;
};

/// Sample-based range condition: the base map must send points of
/// `source_box` into `target_box`.
struct RangeCheck {
  Box source_box;
  Box target_box;
  std::size_t samples = 32;
  std::uint64_t seed = 0;
};

struct MorphismReport {
  bool ok = true;
  std::vector<std::string> problems;
};

MorphismReport check_morphism_data(const Morphism& phi, const std::optional<RangeCheck>& range = std::nullopt);

/// phi^*(g) = sum_nu phi^*(g_nu) (phi^* eta)^nu, where phi^*(g_nu) is the
/// formal Taylor expansion sum_alpha (1/alpha!) d^alpha g_nu(phi(x)) j^alpha.
/// Throws DomainMismatch if g is not over phi.target(), ValidationError if
/// phi fails the degree check.
Series pullback_section(const Morphism& phi, const Series& g);

/// psi o phi, for phi: M -> N and psi: N -> P.
Morphism compose(const Morphism& psi, const Morphism& phi);

/// Left derivative with respect to a base or formal variable.
Series partial_derivative(const Series& f, const std::string& variable);
Series partial_derivative(const Series& f, std::size_t formal_index);

/// Entry (w, v) = d_v phi^*(w); rows are target coordinates, columns source
/// coordinates (base first, then formal).
std::vector<std::vector<Series>> jacobian(const Morphism& phi);

/// eps(phi^* g) == g_0 o (base map).
bool base_map_commutes(const Morphism& phi, const Series& g);

/// Largest l with [f]_m in m_m^l: min over mu of (vanishing order of f_mu at
/// m) + |mu|. nullopt means +infinity (f = 0).
std::optional<std::size_t> maximal_ideal_order(const Series& f, const std::vector<Rational>& point);

/// Finite jet at a base point. `local` is a series over the original domain
/// whose base variables stand for x - center; no stored term has weight
/// (x-degree + |mu|) above `order`.
struct Jet {
  std::vector<Rational> center;
  std::size_t order = 0;
  Series local;

  /// The jet as a polynomial series in the original coordinates.
  Series to_series() const;
  bool operator==(const Jet& other) const = default;
};

/// Keeps the part of weight <= order; the shifted coefficients are x - center.
Series truncate_weight(const Series& local, std::size_t order);

/// Polynomial P with maximal_ideal_order(f - P, m) >= k, i.e. the jet of
/// weight < k. Throws ValidationError for k = 0.
Jet jet_at(const Series& f, const std::vector<Rational>& point, std::size_t k);

/// Inverse germ up to weight k. Throws NotInvertible when f_0(m) = 0.
Jet germ_invert(const Series& f, const std::vector<Rational>& point, std::size_t k);

/// Product of two jets at the same center, truncated to the smaller order.
Jet jet_product(const Jet& a, const Jet& b);

/// Jet of f at a point, re-expressed in local coordinates (x - m) with
/// weight <= order.
Jet local_jet(const Series& f, const std::vector<Rational>& point, std::size_t order);

}  // namespace zsup
