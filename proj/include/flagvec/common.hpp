#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace flagvec {

// Raised when an instance exceeds a configured resource budget (vertex cap,
// enumeration size), as opposed to being malformed.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonicalization is an exhaustive permutation search, so the vertex count
// has a hard ceiling regardless of FLAGVEC_MAX_N.
inline constexpr int kHardVertexCap = 12;

// Enumeration iterates over all labeled cell subsets; cap the subset count.
inline constexpr unsigned long long kMaxLabeledGraphs = 1ull << 22;

/// Effective vertex budget: FLAGVEC_MAX_N if set, clamped to the hard cap.
inline int vertex_budget() {
    static const int cached = [] {
        if (const char* env = std::getenv("FLAGVEC_MAX_N")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 0)
                return v < kHardVertexCap ? static_cast<int>(v) : kHardVertexCap;
        }
        return kHardVertexCap;
    }();
    return cached;
}

}  // namespace flagvec
