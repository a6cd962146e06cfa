#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zsup/box.hpp"
#include "zsup/morphism.hpp"
#include "zsup/series.hpp"

namespace zsup {

struct Chart {
  std::string id;
  Domain domain;
  Box box;
};

/// Coordinates of chart `to` expressed through those of chart `from` on
/// the overlap (a box in the `from` chart). map.source() is the `from`
/// domain, map.target() the `to` domain.
struct Transition {
  std::string from;
  std::string to;
  Box overlap;
  Morphism map;
};

class Atlas {
 public:
  /// Checks structure only: unique chart ids, transitions between known
  /// charts with matching domains and overlap dimensions, no duplicate
  /// ordered pair.
  Atlas(std::vector<Chart> charts, std::vector<Transition> transitions);

  const std::vector<Chart>& charts() const noexcept { return charts_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const Chart& chart(const std::string& id) const;
  /// Transition from -> to; a missing self transition is the identity on the
  /// whole chart. Throws ValidationError for any other missing pair.
  Transition transition(const std::string& from, const std::string& to) const;
  bool has_transition(const std::string& from, const std::string& to) const;

 private:
  std::vector<Chart> charts_;
  std::vector<Transition> transitions_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;
};

struct AtlasReport {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Sample-based checks: every transition passes check_morphism_data with the
/// overlap mapped into the target chart box, its base-projected Jacobian is
/// nonsingular at the samples, both directions of every pair exist, and
/// self transitions are identities.
AtlasReport validate_atlas(const Atlas& atlas, std::size_t samples = 32, std::uint64_t seed = 0);

/// Nonzero determinant of eps(Jacobian) at `samples` points of the overlap.
bool transition_invertible_at_samples(const Transition& t, std::size_t samples, std::uint64_t seed);

struct CocycleResult {
  std::array<std::string, 3> triple;
  bool ok = true;
  /// First target coordinate of chart beta whose two expressions differ.
  std::optional<std::string> counterexample_coordinate;
};

/// Compares (gamma -> beta) o (alpha -> gamma) against (alpha -> beta) on
/// the triple overlap, symbolically at truncation order. Throws
/// ValidationError for a missing transition or an empty triple overlap.
CocycleResult check_cocycle(const Atlas& atlas, const std::string& alpha, const std::string& beta,
                            const std::string& gamma);

/// check_cocycle over every ordered triple of distinct charts whose triple
/// overlap is nonempty.
std::vector<CocycleResult> check_all_cocycles(const Atlas& atlas);

// ---------------------------------------------------------------------------
// Tangent lift

/// Name given to the tangent partner of a coordinate.
std::string dotted_name(const std::string& coordinate);

/// Doubles every coordinate u with a partner u' of degree (1, deg u);
/// original degrees become (0, d). The lifted order defaults to N + 1.
Domain lift_domain(const Domain& domain, std::optional<std::size_t> order = std::nullopt);

/// Re-expresses a series over `from` in a domain that contains every
/// variable of `from` under the same name.
Series transport(const Series& f, const Domain& to);

/// Lifted pullbacks: originals unchanged, and udot' = sum_v vdot * d_v u'.
Morphism tangent_lift(const Morphism& phi, std::optional<std::size_t> order = std::nullopt);
Transition tangent_lift(const Transition& t, std::optional<std::size_t> order = std::nullopt);
Atlas tangent_lift(const Atlas& atlas, std::optional<std::size_t> order = std::nullopt);

// ---------------------------------------------------------------------------
// n-fold vector bundle superization

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Double vector bundle transition data
///   x' = phi(x), xi' = a(x) xi, eta' = b(x) eta, psi' = c(x) psi + d(x) xi eta,
/// where psi'^k gets sum_ij d[k][i][j] xi^i eta^j.
struct DvbSpec {
  enum class ProductOrder { XiEta, EtaXi };

  std::vector<std::string> base_vars;
  std::vector<Polynomial> base_map;
  PolyMatrix a;
  PolyMatrix b;
  PolyMatrix c;
  std::vector<PolyMatrix> d;
  std::vector<std::string> xi_names;
  std::vector<std::string> eta_names;
  std::vector<std::string> psi_names;
  /// Order in which the d-term product is written; irrelevant under the
  /// Z_2^2 sign rule since deg xi and deg eta have scalar product 0.
  ProductOrder product_order = ProductOrder::XiEta;
  Box sample_box;
  std::size_t samples = 16;
  std::uint64_t seed = 0;
  std::size_t truncation_order = 2;
};

/// Fills default coordinate names xi1.., eta1.., psi1.. (or xi, eta, psi for
/// rank-one blocks) and the sample box (-1,1)^p.
DvbSpec make_dvb_spec(std::vector<std::string> base_vars, std::vector<Polynomial> base_map, PolyMatrix a,
                      PolyMatrix b, PolyMatrix c, std::vector<PolyMatrix> d);

/// Degrees ((0,0),(0,1),(1,0),(1,1)) for (x, xi, eta, psi).
Domain dvb_domain(const DvbSpec& spec);

/// Throws ValidationError if a, b or c is singular at a sample point or the
/// block shapes disagree.
Morphism superize_dvb(const DvbSpec& spec);

/// The composite transition data: first `first`, then `second`.
DvbSpec compose_dvb(const DvbSpec& second, const DvbSpec& first);

struct NvbCoordinate {
  std::string name;
  std::vector<int> multidegree;  // in {0,1}^n, nonzero
};

struct NvbTerm {
  Polynomial coeff;
  std::vector<std::string> factors;
};

/// Transition of an n-fold vector bundle: polynomial in the fiber
/// coordinates, multidegree preserving.
struct NvbSpec {
  std::size_t rank = 0;
  std::vector<std::string> base_vars;
  std::vector<NvbCoordinate> coordinates;
  std::vector<Polynomial> base_map;
  std::map<std::string, std::vector<NvbTerm>> fiber_map;
  std::optional<std::size_t> truncation_order;  // defaults to rank
};

/// Reinterprets the data with Z_2^n degrees. Throws ValidationError when a
/// product mixes coordinates with overlapping supports or a term does not
/// have the multidegree of its target coordinate.
Morphism superize_nvb(const NvbSpec& spec);

/// The same transition written as n-fold bundle data (n = 2).
NvbSpec dvb_as_nvb(const DvbSpec& spec);

}  // namespace zsup
