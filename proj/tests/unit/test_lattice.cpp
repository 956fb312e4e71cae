#include <random>
#include <set>

#include "doctest.h"
#include "toruslab/lattice.hpp"

using namespace toruslab;

TEST_CASE("sobolev weights") {
    CHECK(sobolev_weight(Frequency{0}, 5.0) == 1.0);
    CHECK(sobolev_weight(Frequency{1, 1}, 1.0) == 3.0);
    CHECK(sobolev_weight(Frequency{3, 4}, -1.0) == doctest::Approx(1.0 / 26.0).epsilon(1e-15));
}

TEST_CASE("window enumeration") {
    std::vector<std::vector<Coord>> pts;
    enumerate_window(Window(1, 2), [&](std::span<const Coord> xi) { pts.emplace_back(xi.begin(), xi.end()); });
    CHECK(pts == std::vector<std::vector<Coord>>{{-2}, {-1}, {0}, {1}, {2}});

    size_t n2r1 = 0;
    enumerate_window(Window(2, 1), [&](std::span<const Coord>) { ++n2r1; });
    CHECK(n2r1 == 5);

    size_t n2r50 = 0;
    enumerate_window(Window(2, 50), [&](std::span<const Coord>) { ++n2r50; });
    CHECK(n2r50 == 5101);  // 2R^2 + 2R + 1
    CHECK(l1_ball_count(2, 50) == 5101);

    // count formula agrees with enumeration in higher dimension
    size_t n3r6 = 0;
    enumerate_window(Window(3, 6), [&](std::span<const Coord>) { ++n3r6; });
    CHECK(l1_ball_count(3, 6) == n3r6);

    CHECK_THROWS_AS(Window(2, 2'000'000), std::domain_error);
}

TEST_CASE("enumeration determinism and shell partition") {
    std::vector<std::vector<Coord>> a, b;
    enumerate_window(Window(2, 7), [&](std::span<const Coord> xi) { a.emplace_back(xi.begin(), xi.end()); });
    enumerate_window(Window(2, 7), [&](std::span<const Coord> xi) { b.emplace_back(xi.begin(), xi.end()); });
    CHECK(a == b);

    std::set<std::vector<Coord>> from_shells;
    size_t total = 0;
    for (std::int64_t s = 0; s <= 7; ++s)
        enumerate_l1_shell(2, s, [&](std::span<const Coord> xi) {
            CHECK(l1_norm(xi) == static_cast<std::uint64_t>(s));
            from_shells.emplace(xi.begin(), xi.end());
            ++total;
        });
    CHECK(total == a.size());             // disjoint
    CHECK(from_shells.size() == a.size());  // union covers the window
}

TEST_CASE("norm equivalence inequality") {
    CHECK(norm_equivalence_check(Frequency{1, 0}, 1.0));
    CHECK(norm_equivalence_check(Frequency{5, 0}, 0.0));
    CHECK_THROWS_AS(norm_equivalence_check(Frequency{0, 0}, 1.0), std::domain_error);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Coord> coord(-1000, 1000);
    std::uniform_real_distribution<double> tau(-10.0, 10.0);
    for (int i = 0; i < 20000; ++i) {
        Frequency xi{coord(rng), coord(rng)};
        if (xi.is_zero()) continue;
        CHECK(norm_equivalence_check(xi, tau(rng)));
    }
}
