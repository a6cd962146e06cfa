#include "zsup/detail/format.hpp"

namespace zsup::detail {

std::string format_term_body(const Rational& magnitude, const std::vector<PowerFactor>& factors) {
  std::string out;
  if (magnitude != 1 || factors.empty()) out = to_string(magnitude);
  for (const auto& [name, power] : factors) {
    if (!out.empty()) out += '*';
    out += name;
    if (power != 1) out += '^' + std::to_string(power);
  }
  return out;
}

void TermJoiner::add(const Rational& coeff, const std::vector<PowerFactor>& factors) {
  if (coeff == 0) return;
  const bool negative = coeff < 0;
  const Rational magnitude = negative ? Rational(-coeff) : coeff;
  const std::string body = format_term_body(magnitude, factors);
  if (out_.empty()) {
    out_ = negative ? "-" + body : body;
  } else if (spaced_) {
    out_ += negative ? " - " : " + ";
    out_ += body;
  } else {
    out_ += negative ? '-' : '+';
    out_ += body;
  }
}

}  // namespace zsup::detail
