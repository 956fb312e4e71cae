#include "doctest.h"
#include "toruslab/ntheory.hpp"

using namespace toruslab::nt;

TEST_CASE("squarefree part") {
    CHECK(squarefree_part(12) == std::pair<std::uint64_t, std::uint64_t>{2, 3});
    CHECK(squarefree_part(1) == std::pair<std::uint64_t, std::uint64_t>{1, 1});
    CHECK(squarefree_part(50) == std::pair<std::uint64_t, std::uint64_t>{5, 2});
}

TEST_CASE("square decompositions") {
    auto t5 = is_sum_two_squares(5);
    CHECK(t5.representable);
    CHECK(t5.x == 1);
    CHECK(t5.y == 2);
    CHECK_FALSE(is_sum_two_squares(21).representable);
    auto t2 = is_sum_two_squares(2);
    CHECK(t2.representable);
    CHECK(t2.x == 1);
    CHECK(t2.y == 1);

    CHECK_FALSE(is_sum_three_squares(7).representable);
    auto s6 = is_sum_three_squares(6);
    CHECK(s6.representable);
    CHECK(s6.x == 1);
    CHECK(s6.y == 1);
    CHECK(s6.z == 2);
    CHECK_FALSE(is_sum_three_squares(28).representable);

    CHECK(four_square_decomposition(0) == std::array<std::uint64_t, 4>{0, 0, 0, 0});
    CHECK(four_square_decomposition(7) == std::array<std::uint64_t, 4>{1, 1, 1, 2});
    CHECK(four_square_decomposition(18) == std::array<std::uint64_t, 4>{0, 0, 3, 3});
}

TEST_CASE("obstruction primes") {
    CHECK(has_obstruction_prime(3));
    CHECK_FALSE(has_obstruction_prime(9));
    CHECK_FALSE(has_obstruction_prime(45));  // 3^2 * 5
    CHECK(has_obstruction_prime(63));        // 3^2 * 7
}

TEST_CASE("factorization") {
    auto f = factorize(720);
    CHECK(f.factors == std::vector<std::pair<std::uint64_t, int>>{{2, 4}, {3, 2}, {5, 1}});
    CHECK(is_prime(1'000'000'007ull));
    auto g = factorize(1'000'003ull * 1'000'033ull);
    CHECK(g.factors == std::vector<std::pair<std::uint64_t, int>>{{1'000'003, 1}, {1'000'033, 1}});
    auto big = factorize(999'999'999'999'999'989ull);  // prime
    CHECK(big.factors.size() == 1);
    CHECK(big.factors[0].second == 1);
}

TEST_CASE("brute-force agreement up to 10^4") {
    constexpr std::uint64_t N = 10'000;
    std::vector<char> is_sq(N + 1, 0);
    for (std::uint64_t x = 0; x * x <= N; ++x) is_sq[x * x] = 1;

    // direct searches, independent of the residue-class tests under check
    std::vector<char> two(N + 1, 0), three(N + 1, 0);
    for (std::uint64_t n = 0; n <= N; ++n) {
        for (std::uint64_t x = 0; 2 * x * x <= n; ++x)
            if (is_sq[n - x * x]) {
                two[n] = 1;
                break;
            }
        for (std::uint64_t x = 0; 3 * x * x <= n && !three[n]; ++x)
            for (std::uint64_t y = x; x * x + 2 * y * y <= n; ++y)
                if (is_sq[n - x * x - y * y]) {
                    three[n] = 1;
                    break;
                }
    }
    int fail2 = 0, fail3 = 0, fail4 = 0, failcons = 0;
    for (std::uint64_t n = 1; n <= N; ++n) {
        auto r2 = is_sum_two_squares(n);
        if (r2.representable != static_cast<bool>(two[n])) ++fail2;
        if (r2.representable && r2.x * r2.x + r2.y * r2.y != n) ++fail2;
        if (r2.representable == has_obstruction_prime(n)) ++failcons;

        auto r3 = is_sum_three_squares(n);
        if (r3.representable != static_cast<bool>(three[n])) ++fail3;
        if (r3.representable && r3.x * r3.x + r3.y * r3.y + r3.z * r3.z != n) ++fail3;

        auto q = four_square_decomposition(n);
        if (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] != n) ++fail4;
    }
    CHECK(fail2 == 0);
    CHECK(fail3 == 0);
    CHECK(fail4 == 0);
    CHECK(failcons == 0);
}
