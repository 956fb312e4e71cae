#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace toruslab {

// Hard cap on per-axis coordinates: larger windows would make the int64
// fast paths in the symbol kernels unsafe.
inline constexpr std::int64_t kMaxCoord = 1'000'000;

using Coord = std::int64_t;

// A lattice point xi in Z^n.
struct Frequency {
    std::vector<Coord> c;

    Frequency() = default;
    explicit Frequency(std::vector<Coord> coords) : c(std::move(coords)) {}
    Frequency(std::initializer_list<Coord> coords) : c(coords) {}

    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const {
        for (Coord x : c)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const Frequency&) const = default;
    // lexicographic; fixes all tie-breaking downstream
    bool operator<(const Frequency& o) const { return c < o.c; }
};

std::uint64_t l1_norm(std::span<const Coord> xi);
std::uint64_t l2_norm_sq(std::span<const Coord> xi);

inline std::uint64_t l1_norm(const Frequency& xi) { return l1_norm(std::span<const Coord>(xi.c)); }
inline std::uint64_t l2_norm_sq(const Frequency& xi) { return l2_norm_sq(std::span<const Coord>(xi.c)); }

// (1 + ||xi||^2)^k
double sobolev_weight(const Frequency& xi, double k);
double sobolev_weight_from_l2sq(std::uint64_t l2sq, double k);

// Checks |xi|^{-2 tau} <= (1+n)^{|tau|} (1+||xi||^2)^{-tau}.  The comparison
// reduces to an exact integer inequality whose direction depends only on
// sign(tau), so the result is exact for every real tau.
bool norm_equivalence_check(const Frequency& xi, double tau);

enum class Norm { L1, L2 };

struct Window {
    int dim;
    std::int64_t radius;
    Norm norm = Norm::L1;

    Window(int n, std::int64_t r, Norm nm = Norm::L1) : dim(n), radius(r), norm(nm) {
        if (n < 1) throw std::domain_error("window: dimension must be >= 1");
        if (r < 0) throw std::domain_error("window: radius must be >= 0");
        if (r > kMaxCoord) throw std::domain_error("window: radius exceeds coordinate bound 10^6");
    }
};

// Number of lattice points with |xi|_1 <= R in Z^n.
std::uint64_t l1_ball_count(int n, std::int64_t radius);

// Visits every point of the window exactly once, in lexicographic order.
// The visitor receives a span valid only for the duration of the call.
void enumerate_window(const Window& w, const std::function<void(std::span<const Coord>)>& visit);

// Visits the shell {xi : |xi|_1 = s} of an L1 window, lexicographic order.
void enumerate_l1_shell(int dim, std::int64_t s, const std::function<void(std::span<const Coord>)>& visit);

}  // namespace toruslab
