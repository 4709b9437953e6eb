#pragma once

// Reference implementations written independently of the library: scans,
// direct definitions and plain recursion. Slow on purpose.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 product(const std::vector<u64> &primes) {
    return std::accumulate(primes.begin(), primes.end(), u64{1}, std::multiplies<>());
}

/// Unique x in [0, m) with x = r_i (mod p_i), found by scanning.
inline u64 crt_scan(const std::vector<u64> &residues, const std::vector<u64> &primes) {
    const u64 m = product(primes);
    for (u64 x = 0; x < m; ++x) {
        bool ok = true;
        for (std::size_t i = 0; i < primes.size(); ++i) ok = ok && x % primes[i] == residues[i];
        if (ok) return x;
    }
    return m; // not found
}

inline std::optional<u64> inverse_scan(u64 a, u64 m) {
    for (u64 b = 0; b < m; ++b)
        if ((a % m) * b % m == 1 % m) return b;
    return std::nullopt;
}

inline std::vector<u64> canonical_scan(const std::vector<u64> &primes) {
    std::vector<u64> out;
    for (u64 v = 1; v < product(primes); ++v) {
        bool ok = true;
        for (auto p : primes) ok = ok && v % p <= 1;
        if (ok) out.push_back(v);
    }
    return out;
}

inline bool prime_trial(u64 n) {
    if (n < 2) return false;
    for (u64 k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

/// Order of a in Z_q^* by repeated multiplication; 0 if a is not a unit.
inline u64 order_naive(u64 a, u64 q) {
    a %= q;
    if (a == 0) return 0;
    u64 x = a;
    for (u64 k = 1; k < q; ++k) {
        if (x == 1) return k;
        x = x * a % q;
    }
    return 0;
}

inline u64 pow_naive(u64 b, u64 e, u64 m) {
    u64 r = 1 % m;
    for (u64 i = 0; i < e; ++i) r = r * (b % m) % m;
    return r;
}

/// Pascal's triangle up to n.
inline std::vector<std::vector<u64>> pascal(unsigned n) {
    std::vector<std::vector<u64>> c(n + 1, std::vector<u64>(n + 1, 0));
    for (unsigned i = 0; i <= n; ++i) {
        c[i][0] = 1;
        for (unsigned j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

/// All w-subsets of {0..h-1} as bitmasks in colex order (compare the largest
/// differing element), which is the order of the combinatorial number system.
inline std::vector<u64> colex_subsets(unsigned h, unsigned w) {
    std::vector<u64> out;
    for (u64 mask = 0; mask < (u64{1} << h); ++mask)
        if (static_cast<unsigned>(__builtin_popcountll(mask)) == w) out.push_back(mask);
    // for equal-size sets, colex order is numeric order of the masks
    std::sort(out.begin(), out.end());
    return out;
}

/// Sentinel monomial by materializing all p coefficients.
inline std::pair<int, u64> sentinel_direct(u64 p, u64 g1, u64 g2) {
    std::vector<int> coef(p, 0);
    coef[(g1 * g2) % p] += 1;
    coef[((g1 + 1) * g2) % p] -= 1;
    coef[(g1 * (g2 + 1)) % p] -= 1;
    coef[((g1 + 1) * (g2 + 1)) % p] += 1;
    for (u64 e = 0; e < p; ++e)
        if (coef[e] != 0) return {coef[e], e};
    return {0, p};
}

/// Root value by top-down recursion over an r-ary tree given through
/// callbacks (leaf value of a path index, table lookup at (depth, index, key)).
inline u64 tree_value(unsigned h, unsigned ell, unsigned r, const std::function<u64(u64)> &leaf,
                      const std::function<u64(unsigned, u64, u64)> &table, unsigned depth = 0,
                      u64 index = 0) {
    if (depth == h) return leaf(index);
    u64 key = 0;
    for (unsigned c = 0; c < r; ++c)
        key = (key << ell) | tree_value(h, ell, r, leaf, table, depth + 1, index * r + c);
    return table(depth, index, key);
}

/// Multilinear extension by the Lagrange formula over F_q.
inline u64 mle_lagrange(const std::vector<u64> &table, const std::vector<u64> &point, u64 q) {
    const std::size_t n = point.size();
    u64 total = 0;
    for (u64 w = 0; w < table.size(); ++w) {
        u64 term = table[w] % q;
        for (std::size_t i = 0; i < n; ++i) {
            const u64 z = point[i] % q;
            term = term * (((w >> i) & 1) ? z : (1 + q - z) % q) % q;
        }
        total = (total + term) % q;
    }
    return total;
}

inline u64 dot(const std::vector<std::uint32_t> &a, const std::vector<std::uint32_t> &b, u64 m) {
    u64 acc = 0;
    for (std::size_t k = 0; k < a.size(); ++k) acc = (acc + u64{a[k]} * b[k]) % m;
    return acc;
}

/// Oracle calls of one pass over a height-h tree with per-run cost q: a run
/// at height k makes q calls, and each call into a non-leaf child triggers
/// the child's run.
inline u64 pass_calls(unsigned h, u64 q) {
    return h == 0 ? 0 : q * (1 + pass_calls(h - 1, q));
}

/// Ordinary least squares y = a x + b.
inline std::pair<double, double> fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double a = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {a, (sy - a * sx) / n};
}

} // namespace oracle
