#include "zsup/grading.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#include "zsup/error.hpp"

namespace zsup {

namespace {

void require_same_rank(const Degree& a, const Degree& b) {
  if (a.rank() != b.rank()) {
    throw DimensionError("degree rank mismatch: " + a.to_string() + " vs " + b.to_string());
  }
}

}  // namespace

Degree::Degree(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) bits_.push_back(static_cast<std::uint8_t>(b & 1));
}

Degree::Degree(const std::vector<int>& bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw ValidationError("degree components must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

bool Degree::is_zero() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

Degree Degree::operator+(const Degree& other) const {
  Degree out = *this;
  out += other;
  return out;
}

Degree& Degree::operator+=(const Degree& other) {
  require_same_rank(*this, other);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

Degree Degree::concat(const Degree& other) const {
  Degree out = *this;
  out.bits_.insert(out.bits_.end(), other.bits_.begin(), other.bits_.end());
  return out;
}

std::string Degree::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (i) s += ',';
    s += bits_[i] ? '1' : '0';
  }
  return s + ")";
}

int scalar_product(const Degree& a, const Degree& b) {
  require_same_rank(a, b);
  int acc = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) acc ^= a[i] & b[i];
  return acc;
}

int parity(const Degree& d) {
  int acc = 0;
  for (std::size_t i = 0; i < d.rank(); ++i) acc ^= d[i];
  return acc;
}

int commutation_sign(const Degree& a, const Degree& b) { return scalar_product(a, b) ? -1 : 1; }

std::vector<Degree> enumerate_degrees(std::size_t rank) {
  if (rank >= 8 * sizeof(std::size_t)) throw DimensionError("grading rank too large to enumerate");
  const std::size_t count = std::size_t{1} << rank;
  std::vector<Degree> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    Degree d(rank);
    for (std::size_t i = 0; i < rank; ++i) d.set(i, static_cast<int>((code >> (rank - 1 - i)) & 1));
    out.push_back(std::move(d));
  }
  return out;
}

SignTable::SignTable(std::vector<std::vector<int>> phi) : phi_(std::move(phi)) {
  const std::size_t m = phi_.size();
  for (const auto& row : phi_) {
    if (row.size() != m) throw ValidationError("sign table must be square");
    for (int v : row) {
      if (v != 1 && v != -1) throw ValidationError("sign table entries must be +1 or -1");
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (phi_[i][j] != phi_[j][i]) {
        throw ValidationError("sign table is not symmetric at (" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + ")");
      }
    }
  }
}

DegreeAssignment realize_sign_table(const SignTable& table) {
  const std::size_t m = table.size();
  const std::size_t rank = 2 * m;
  // Generator k (0-based) owns positions 2k ("+(k+1)") and 2k+1 ("-(k+1)").
  const auto plus = [](std::size_t k) { return 2 * k; };
  const auto minus = [](std::size_t k) { return 2 * k + 1; };

  std::vector<Degree> sigma(m, Degree(rank));
  for (std::size_t r = 0; r < m; ++r) {
    // Positions already fixed: |k| <= r, i.e. indices [0, 2r).
    int own = 0;
    for (std::size_t pos = 0; pos < 2 * r; ++pos) own ^= sigma[r][pos];
    sigma[r].set(plus(r), 1);
    sigma[r].set(minus(r), 1 ^ own ^ table.parity(r, r));

    for (std::size_t j = r + 1; j < m; ++j) {
      int cross = 0;
      for (std::size_t pos = 0; pos < 2 * r; ++pos) cross ^= sigma[j][pos] & sigma[r][pos];
      sigma[j].set(plus(r), cross ^ table.parity(j, r));
      sigma[j].set(minus(r), 0);
    }
  }
  return DegreeAssignment{rank, std::move(sigma)};
}

bool verify_assignment(const SignTable& table, const DegreeAssignment& assignment) {
  const std::size_t m = table.size();
  if (assignment.sigmas.size() != m) {
    throw DimensionError("assignment has " + std::to_string(assignment.sigmas.size()) +
                         " degrees for a table of size " + std::to_string(m));
  }
  for (const auto& s : assignment.sigmas) {
    if (s.rank() != assignment.rank) throw DimensionError("assignment degree has wrong rank");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (commutation_sign(assignment.sigmas[i], assignment.sigmas[j]) != table(i, j)) return false;
    }
  }
  return true;
}

DegreeAssignment minimize_assignment(const DegreeAssignment& assignment) {
  auto column = [&](std::size_t pos) {
    std::vector<std::uint8_t> c;
    c.reserve(assignment.sigmas.size());
    for (const auto& d : assignment.sigmas) c.push_back(static_cast<std::uint8_t>(d[pos]));
    return c;
  };
  std::vector<std::size_t> kept;
  std::vector<std::vector<std::uint8_t>> kept_columns;
  for (std::size_t pos = 0; pos < assignment.rank; ++pos) {
    auto c = column(pos);
    if (std::all_of(c.begin(), c.end(), [](std::uint8_t b) { return b == 0; })) continue;
    const auto twin = std::find(kept_columns.begin(), kept_columns.end(), c);
    if (twin != kept_columns.end()) {
      kept.erase(kept.begin() + (twin - kept_columns.begin()));
      kept_columns.erase(twin);
      continue;
    }
    kept.push_back(pos);
    kept_columns.push_back(std::move(c));
  }
  DegreeAssignment out{kept.size(), {}};
  out.sigmas.reserve(assignment.sigmas.size());
  for (const auto& d : assignment.sigmas) {
    Degree reduced(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) reduced.set(i, d[kept[i]]);
    out.sigmas.push_back(std::move(reduced));
  }
  return out;
}

}  // namespace zsup
