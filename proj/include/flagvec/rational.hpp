#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace flagvec {

// Exact rational scalar. All arithmetic in this library is over Q; nothing
// is ever rounded.
using Q = mpq_class;

/// Serializes as "p/q" with q > 0 and gcd(|p|, q) = 1. The denominator is
/// always written, even when it is 1.
inline std::string q_to_string(const Q& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Parses "p" or "p/q" (optional leading '-' on p). Rejects zero
/// denominators and anything with stray characters.
inline Q q_from_string(const std::string& s) {
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    for (char c : s)
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("bad character in rational literal: " + s);
    Q x;
    try {
        x = Q(s);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("unparsable rational literal: " + s);
    }
    if (x.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: " + s);
    x.canonicalize();
    return x;
}

inline Q q_factorial(int n) {
    if (n < 0)
        throw std::invalid_argument("factorial of negative argument");
    Q r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace flagvec
