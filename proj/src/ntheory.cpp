#include "toruslab/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace toruslab::nt {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(u64 n, u64 a) {
    if (n % a == 0) return n == a;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    u64 c = 1;
    while (true) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            u64 diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // deterministic for n < 3.3e24 with these bases
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

FactoredInteger factorize(u64 n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    FactoredInteger f{n, {}};
    u64 m = n;
    for (u64 p = 2; p <= 100000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) {
        std::vector<u64> rest;
        factor_rec(m, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            f.factors.emplace_back(rest[i], static_cast<int>(j - i));
            i = j;
        }
    }
    return f;
}

std::pair<u64, u64> squarefree_part(u64 n) {
    FactoredInteger f = factorize(n);
    u64 c = 1, d = 1;
    for (auto [p, e] : f.factors) {
        for (int i = 0; i < e / 2; ++i) c *= p;
        if (e & 1) d *= p;
    }
    return {c, d};
}

bool has_obstruction_prime(u64 n) {
    FactoredInteger f = factorize(n);
    for (auto [p, e] : f.factors)
        if (p % 4 == 3 && (e & 1)) return true;
    return false;
}

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_perfect_square(u64 n, u64* root) {
    u64 r = isqrt_u64(n);
    if (root) *root = r;
    return r * r == n;
}

TwoSquares is_sum_two_squares(u64 n) {
    if (n == 0) return {true, 0, 0};
    if (has_obstruction_prime(n)) return {false};
    for (u64 x = 0; 2 * x * x <= n; ++x) {
        u64 y;
        if (is_perfect_square(n - x * x, &y)) return {true, x, y};
    }
    return {false};  // unreachable for valid n
}

ThreeSquares is_sum_three_squares(u64 n) {
    if (n == 0) return {true, 0, 0, 0};
    u64 m = n;
    while (m % 4 == 0) m /= 4;
    if (m % 8 == 7) return {false};
    for (u64 x = 0; 3 * x * x <= n; ++x)
        for (u64 y = x; x * x + 2 * y * y <= n; ++y) {
            u64 z;
            if (is_perfect_square(n - x * x - y * y, &z)) return {true, x, y, z};
        }
    return {false};  // unreachable for valid n
}

std::array<u64, 4> four_square_decomposition(u64 n) {
    for (u64 w = 0; 4 * w * w <= n; ++w)
        for (u64 x = w; w * w + 3 * x * x <= n; ++x)
            for (u64 y = x; w * w + x * x + 2 * y * y <= n; ++y) {
                u64 z;
                if (is_perfect_square(n - w * w - x * x - y * y, &z)) return {w, x, y, z};
            }
    throw std::logic_error("four_square_decomposition: search failed");
}

}  // namespace toruslab::nt
