#include "toruslab/lattice.hpp"

#include <cmath>
#include <cstdlib>

namespace toruslab {

std::uint64_t l1_norm(std::span<const Coord> xi) {
    std::uint64_t s = 0;
    for (Coord x : xi) s += static_cast<std::uint64_t>(x < 0 ? -x : x);
    return s;
}

std::uint64_t l2_norm_sq(std::span<const Coord> xi) {
    std::uint64_t s = 0;
    for (Coord x : xi) s += static_cast<std::uint64_t>(x * x);
    return s;
}

double sobolev_weight_from_l2sq(std::uint64_t l2sq, double k) {
    return std::pow(1.0 + static_cast<double>(l2sq), k);
}

double sobolev_weight(const Frequency& xi, double k) {
    return sobolev_weight_from_l2sq(l2_norm_sq(xi), k);
}

bool norm_equivalence_check(const Frequency& xi, double tau) {
    if (xi.is_zero()) throw std::domain_error("norm_equivalence_check: xi must be nonzero");
    const std::uint64_t l1 = l1_norm(xi);
    const std::uint64_t l2sq = l2_norm_sq(xi);
    const std::uint64_t n = xi.c.size();
    if (tau >= 0.0) return 1 + l2sq <= (1 + n) * l1 * l1;
    return l1 * l1 <= (1 + n) * (1 + l2sq);
}

std::uint64_t l1_ball_count(int n, std::int64_t radius) {
    // Delannoy-type recurrence: points of |xi|_1 <= R in Z^n.
    std::vector<std::uint64_t> cnt(static_cast<size_t>(radius) + 1, 1);  // n = 0: only xi = ()
    for (int d = 1; d <= n; ++d) {
        std::vector<std::uint64_t> next(cnt.size());
        // shell counts S_d(s) = #{|xi|_1 = s}; cumulative gives the ball
        std::uint64_t acc = 0;
        std::vector<std::uint64_t> shell_prev(cnt.size());  // S_{d-1}(s) = cnt[s] - cnt[s-1]
        for (size_t s = 0; s < cnt.size(); ++s) shell_prev[s] = cnt[s] - (s ? cnt[s - 1] : 0);
        for (size_t s = 0; s < cnt.size(); ++s) {
            std::uint64_t shell = shell_prev[s];  // last coordinate 0
            for (size_t t = 1; t <= s; ++t) shell += 2 * shell_prev[s - t];
            acc += shell;
            next[s] = acc;
        }
        cnt = std::move(next);
    }
    return cnt[static_cast<size_t>(radius)];
}

namespace {

void enum_rec(std::vector<Coord>& buf, size_t pos, std::int64_t budget_l1, bool l2, std::uint64_t budget_l2sq,
              const std::function<void(std::span<const Coord>)>& visit) {
    const size_t n = buf.size();
    if (pos + 1 == n) {
        std::int64_t lim = budget_l1;
        if (l2) {
            std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(budget_l2sq))) + 2;
            while (static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r) > budget_l2sq) --r;
            lim = r;
        }
        for (Coord x = -lim; x <= lim; ++x) {
            buf[pos] = x;
            visit(std::span<const Coord>(buf));
        }
        return;
    }
    std::int64_t lim = budget_l1;
    if (l2) {
        std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(budget_l2sq))) + 2;
        while (static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(r) > budget_l2sq) --r;
        lim = r;
    }
    for (Coord x = -lim; x <= lim; ++x) {
        buf[pos] = x;
        enum_rec(buf, pos + 1, budget_l1 - std::llabs(x), l2,
                 budget_l2sq - static_cast<std::uint64_t>(x * x), visit);
    }
}

}  // namespace

void enumerate_window(const Window& w, const std::function<void(std::span<const Coord>)>& visit) {
    std::vector<Coord> buf(static_cast<size_t>(w.dim), 0);
    if (w.norm == Norm::L1)
        enum_rec(buf, 0, w.radius, false, 0, visit);
    else
        enum_rec(buf, 0, 0, true, static_cast<std::uint64_t>(w.radius) * static_cast<std::uint64_t>(w.radius),
                 visit);
}

namespace {

void shell_rec(std::vector<Coord>& buf, size_t pos, std::int64_t rem,
               const std::function<void(std::span<const Coord>)>& visit) {
    const size_t n = buf.size();
    if (pos + 1 == n) {
        if (rem == 0) {
            buf[pos] = 0;
            visit(std::span<const Coord>(buf));
        } else {
            buf[pos] = -rem;
            visit(std::span<const Coord>(buf));
            buf[pos] = rem;
            visit(std::span<const Coord>(buf));
        }
        return;
    }
    for (Coord x = -rem; x <= rem; ++x) {
        buf[pos] = x;
        shell_rec(buf, pos + 1, rem - std::llabs(x), visit);
    }
}

}  // namespace

void enumerate_l1_shell(int dim, std::int64_t s, const std::function<void(std::span<const Coord>)>& visit) {
    if (dim < 1 || s < 0) throw std::domain_error("enumerate_l1_shell: bad arguments");
    if (s > kMaxCoord) throw std::domain_error("enumerate_l1_shell: radius exceeds coordinate bound 10^6");
    std::vector<Coord> buf(static_cast<size_t>(dim), 0);
    shell_rec(buf, 0, s, visit);
}

}  // namespace toruslab
