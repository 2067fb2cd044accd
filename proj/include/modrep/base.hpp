#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace modrep {

using i64 = long long;
using i128 = __int128;

// Size caps. All are engineering choices, not mathematical bounds; operations
// that would exceed them throw CapError instead of thrashing.
struct Limits {
    i64 max_group_order = 1 << 24;   // largest abelian-group order handled by linalg
    i64 max_unit_group = 200000;     // largest Aut we will enumerate
    i64 max_submodules = 20000;      // submodule-lattice cap
    i64 max_tensor = 1 << 20;        // largest basis for KM^n style sets
};

Limits& limits();

struct CapError : std::runtime_error {
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A structural theorem failed on concrete data. Never caught internally;
// reaching this means either a bug or a counterexample.
struct TheoremViolation : std::runtime_error {
    explicit TheoremViolation(const std::string& what) : std::runtime_error(what) {}
};

inline i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

inline int valuation(i64 x, i64 p, int vmax) {
    if (x == 0) return vmax;
    int v = 0;
    while (x % p == 0 && v < vmax) { x /= p; ++v; }
    return v;
}

}  // namespace modrep
