#pragma once

// Reference computations for tests. Nothing here calls into the library's
// arithmetic, interpolation or enumeration code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

/// GF(p) by integer residues, GF(4) by discrete logarithms of alpha with
/// codes 0, 1, alpha = 2, alpha^2 = 3.
struct Arith {
    unsigned q;

    [[nodiscard]] unsigned add(unsigned a, unsigned b) const {
        if (q == 4) {
            // (a1 alpha + a0) + (b1 alpha + b0), coefficients mod 2
            const unsigned hi = ((a >> 1) + (b >> 1)) % 2;
            const unsigned lo = ((a & 1) + (b & 1)) % 2;
            return hi * 2 + lo;
        }
        return (a + b) % q;
    }
    [[nodiscard]] unsigned neg(unsigned a) const { return q == 4 ? a : (q - a) % q; }
    [[nodiscard]] unsigned sub(unsigned a, unsigned b) const { return add(a, neg(b)); }
    [[nodiscard]] unsigned mul(unsigned a, unsigned b) const {
        if (q == 4) {
            if (a == 0 || b == 0) {
                return 0;
            }
            static const unsigned log[4] = {0, 0, 1, 2};
            static const unsigned exp[3] = {1, 2, 3};
            return exp[(log[a] + log[b]) % 3];
        }
        return (a * b) % q;
    }
    [[nodiscard]] unsigned pow(unsigned a, unsigned e) const {
        unsigned r = 1;
        for (unsigned k = 0; k < e; ++k) {
            r = mul(r, a);
        }
        return r;
    }
    [[nodiscard]] unsigned inv(unsigned a) const {
        for (unsigned b = 1; b < q; ++b) {
            if (mul(a, b) == 1) {
                return b;
            }
        }
        throw std::domain_error("no inverse");
    }
};

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) {
        r *= b;
    }
    return r;
}

/// Point k of GF(q)^n, first coordinate most significant.
inline std::vector<unsigned> point(unsigned q, unsigned n, std::uint64_t k) {
    std::vector<unsigned> x(n);
    for (unsigned i = n; i-- > 0;) {
        x[i] = static_cast<unsigned>(k % q);
        k /= q;
    }
    return x;
}

/// Coefficients c[e] (e indexes exponent vectors 0..q-1 per variable, like
/// points) of the reduced polynomial with values `table` on GF(q)^n, by
/// Gaussian elimination on the full q^n x q^n monomial system.
inline std::vector<unsigned> interpolate_by_elimination(unsigned q, unsigned n, const std::vector<unsigned> &table) {
    const Arith f{q};
    const std::uint64_t N = ipow(q, n);
    std::vector<std::vector<unsigned>> a(N, std::vector<unsigned>(N + 1));
    for (std::uint64_t r = 0; r < N; ++r) {
        const auto x = point(q, n, r);
        for (std::uint64_t c = 0; c < N; ++c) {
            const auto e = point(q, n, c);
            unsigned v = 1;
            for (unsigned i = 0; i < n; ++i) {
                v = f.mul(v, f.pow(x[i], e[i]));
            }
            a[r][c] = v;
        }
        a[r][N] = table[r];
    }
    for (std::uint64_t c = 0; c < N; ++c) {
        std::uint64_t p = c;
        while (p < N && a[p][c] == 0) {
            ++p;
        }
        if (p == N) {
            throw std::logic_error("monomial system is singular");
        }
        std::swap(a[p], a[c]);
        const unsigned inv = f.inv(a[c][c]);
        for (auto &v : a[c]) {
            v = f.mul(v, inv);
        }
        for (std::uint64_t r = 0; r < N; ++r) {
            if (r != c && a[r][c] != 0) {
                const unsigned k = a[r][c];
                for (std::uint64_t j = 0; j <= N; ++j) {
                    a[r][j] = f.sub(a[r][j], f.mul(k, a[c][j]));
                }
            }
        }
    }
    std::vector<unsigned> coeff(N);
    for (std::uint64_t c = 0; c < N; ++c) {
        coeff[c] = a[c][N];
    }
    return coeff;
}

/// Orbit structure of a map on {0..N-1} by following every orbit until it
/// revisits a state.
struct Portrait {
    std::set<std::vector<std::uint64_t>> cycles; ///< rotated to start at the minimum
    std::vector<unsigned> transient;
    std::map<std::vector<std::uint64_t>, std::uint64_t> basin;
    unsigned max_transient = 0;
};

inline Portrait portrait(std::uint64_t N, const std::function<std::uint64_t(std::uint64_t)> &F) {
    Portrait p;
    p.transient.resize(N);
    for (std::uint64_t s = 0; s < N; ++s) {
        std::map<std::uint64_t, unsigned> seen;
        std::vector<std::uint64_t> orbit;
        std::uint64_t x = s;
        while (!seen.count(x)) {
            seen[x] = static_cast<unsigned>(orbit.size());
            orbit.push_back(x);
            x = F(x);
        }
        const unsigned start = seen[x];
        std::vector<std::uint64_t> cycle(orbit.begin() + start, orbit.end());
        auto min_it = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), min_it, cycle.end());
        p.cycles.insert(cycle);
        p.transient[s] = start;
        p.basin[cycle] += 1;
        p.max_transient = std::max(p.max_transient, start);
    }
    return p;
}

} // namespace oracle
