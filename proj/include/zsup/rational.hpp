#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace zsup {

/// Exact rational scalar. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws zsup::ValidationError on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace zsup
