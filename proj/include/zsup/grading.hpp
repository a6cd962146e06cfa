#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace zsup {

/// An element of Z_2^n. Components are stored as 0/1 bytes; addition is
/// componentwise mod 2. Ordering is lexicographic with the first component
/// most significant, which is the order used for degree enumeration and for
/// grouping formal variables.
class Degree {
 public:
  Degree() = default;
  explicit Degree(std::size_t rank) : bits_(rank, 0) {}
  Degree(std::initializer_list<int> bits);
  explicit Degree(const std::vector<int>& bits);

  static Degree zero(std::size_t rank) { return Degree(rank); }

  std::size_t rank() const noexcept { return bits_.size(); }
  int operator[](std::size_t i) const { return bits_.at(i); }
  void set(std::size_t i, int bit) { bits_.at(i) = static_cast<std::uint8_t>(bit & 1); }
  bool is_zero() const noexcept;
  std::vector<int> bits() const { return {bits_.begin(), bits_.end()}; }

  /// Componentwise sum mod 2. Throws DimensionError on rank mismatch.
  Degree operator+(const Degree& other) const;
  Degree& operator+=(const Degree& other);

  /// Concatenation: (this, other).
  Degree concat(const Degree& other) const;

  std::string to_string() const;  // "(1,0,1)"

  auto operator<=>(const Degree&) const = default;
  bool operator==(const Degree&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// <a,b> = sum a_i b_i mod 2.
int scalar_product(const Degree& a, const Degree& b);

/// Sum of components mod 2; equals scalar_product(d, d).
int parity(const Degree& d);

/// (-1)^<a,b>.
int commutation_sign(const Degree& a, const Degree& b);

/// All 2^n degrees of Z_2^n in lexicographic order, zero first.
std::vector<Degree> enumerate_degrees(std::size_t rank);

/// A symmetric table phi(i,j) in {+1,-1} over m generators.
class SignTable {
 public:
  /// Throws ValidationError if `phi` is not square, has entries other than
  /// +-1, or is asymmetric.
  explicit SignTable(std::vector<std::vector<int>> phi);

  std::size_t size() const noexcept { return phi_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return phi_.at(i).at(j); }
  /// p(i,j) in {0,1} with (-1)^p = phi(i,j).
  int parity(std::size_t i, std::size_t j) const { return phi_.at(i).at(j) < 0 ? 1 : 0; }
  const std::vector<std::vector<int>>& rows() const noexcept { return phi_; }

 private:
  std::vector<std::vector<int>> phi_;
};

/// A map from m generators into Z_2^n.
struct DegreeAssignment {
  std::size_t rank = 0;
  std::vector<Degree> sigmas;
};

/// Constructive realization of a symmetric sign table by Z_2^n degrees with
/// n = 2m. Coordinates are indexed by (1,-1,2,-2,...,m,-m).
DegreeAssignment realize_sign_table(const SignTable& table);

/// True iff phi(i,j) = (-1)^<sigma_i,sigma_j> for all pairs. Throws
/// DimensionError when the assignment has the wrong number of entries or
/// inconsistent ranks.
bool verify_assignment(const SignTable& table, const DegreeAssignment& assignment);

/// Drops coordinate positions that are zero in every sigma, and cancels
/// pairs of positions on which all sigmas agree.
DegreeAssignment minimize_assignment(const DegreeAssignment& assignment);

}  // namespace zsup
