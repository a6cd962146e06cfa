#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zsup/rational.hpp"

namespace zsup::detail {

using PowerFactor = std::pair<std::string, unsigned>;

/// Magnitude part of a term, e.g. "3/2*x^2*xi"; the sign is emitted by
/// join_terms. A unit coefficient is omitted unless there are no factors.
std::string format_term_body(const Rational& magnitude, const std::vector<PowerFactor>& factors);

/// Accumulates signed terms into "a + b - c" (spaced) or "a+b-c".
class TermJoiner {
 public:
  explicit TermJoiner(bool spaced) : spaced_(spaced) {}
  void add(const Rational& coeff, const std::vector<PowerFactor>& factors);
  std::string str() const { return out_.empty() ? "0" : out_; }

 private:
  bool spaced_;
  std::string out_;
};

}  // namespace zsup::detail
