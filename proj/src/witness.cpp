#include <algorithm>
#include <cmath>

#include "toruslab/analysis.hpp"

namespace toruslab {

namespace {

constexpr double kAcceptMargin = 1e-9;  // the j-th inequality is accepted only with this slack

struct Candidate {
    double q;  // |p(xi)| |xi|^{r-m}
    std::vector<Coord> xi;
    double abs_p;

    bool better_than(const Candidate& o) const { return q < o.q || (q == o.q && xi < o.xi); }
};

std::int64_t default_budget(int dim) { return dim <= 2 ? 1'000'000 : 1'000; }

// keeps the `cap` best candidates by (q, lex)
struct Pool {
    size_t cap;
    std::vector<Candidate> v;  // kept sorted ascending by (q, lex)

    explicit Pool(size_t c) : cap(c) {}
    void offer(Candidate c) {
        if (v.size() == cap && !c.better_than(v.back())) return;
        auto it = std::lower_bound(v.begin(), v.end(), c,
                                   [](const Candidate& a, const Candidate& b) { return a.better_than(b); });
        if (it != v.end() && it->xi == c.xi) return;
        v.insert(it, std::move(c));
        if (v.size() > cap) v.pop_back();
    }
};

// Optimal matching of a pool sorted ascending: the loosest bound (j = 1) takes
// the largest q.  Returns true when all N inequalities hold with margin.
bool feasible(const std::vector<Candidate>& asc, int N) {
    if (static_cast<int>(asc.size()) < N) return false;
    for (int i = 0; i < N; ++i) {
        int j = N - i;  // asc[i] is assigned index j
        if (asc[static_cast<size_t>(i)].q * static_cast<double>(j) > 1.0 - kAcceptMargin) return false;
    }
    return true;
}

void collect_window(const Symbol& sym, double exp_rm, std::int64_t R, Pool& pool) {
    const int n = sym.dim();
    std::vector<double> lnl1(static_cast<size_t>(R) + 1, 0.0);
    for (std::int64_t l = 1; l <= R; ++l) lnl1[static_cast<size_t>(l)] = std::log(static_cast<double>(l));
    std::vector<std::uint8_t> tag(static_cast<size_t>(2 * R + 1));
    std::vector<double> la(static_cast<size_t>(2 * R + 1));
    std::vector<Coord> xi(static_cast<size_t>(n), 0);

    auto row = [&](Coord lo, Coord hi) {
        std::uint64_t pre = 0;
        for (int j = 0; j + 1 < n; ++j) pre += static_cast<std::uint64_t>(std::llabs(xi[static_cast<size_t>(j)]));
        sym.scan_span(std::span<const Coord>(xi.data(), static_cast<size_t>(n - 1)), lo, hi, tag.data(),
                      la.data());
        for (Coord t = lo; t <= hi; ++t) {
            size_t i = static_cast<size_t>(t - lo);
            if (tag[i] != static_cast<std::uint8_t>(ZeroTag::NonZero)) continue;
            std::uint64_t l1 = pre + static_cast<std::uint64_t>(t < 0 ? -t : t);
            if (l1 == 0) continue;
            double q = std::exp(la[i] + exp_rm * lnl1[l1]);
            if (q > 1.0) continue;
            xi[static_cast<size_t>(n - 1)] = t;
            Candidate c{q, xi, std::exp(la[i])};
            pool.offer(std::move(c));
        }
    };
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t rem) {
        if (pos + 1 == n) {
            row(-rem, rem);
            return;
        }
        for (Coord x = -rem; x <= rem; ++x) {
            xi[static_cast<size_t>(pos)] = x;
            rec(pos + 1, rem - (x < 0 ? -x : x));
        }
    };
    if (n == 1)
        row(-R, R);
    else {
        for (Coord x = -R; x <= R; ++x) {
            xi[0] = x;
            rec(1, R - (x < 0 ? -x : x));
        }
    }
}

// expanding-window search for N distinct frequencies with
// |p(xi_j)| <= (1/j) |xi_j|^{m-r}
std::vector<Candidate> search_sequence(const Symbol& sym, double r, int N, std::int64_t budget) {
    const double exp_rm = r - sym.order();
    for (std::int64_t R = std::min<std::int64_t>(16, budget);; R = std::min(R * 2, budget)) {
        Pool pool(static_cast<size_t>(N));
        collect_window(sym, exp_rm, R, pool);
        if (feasible(pool.v, N)) {
            // assign descending: witness j gets asc[N - j]
            std::vector<Candidate> wit;
            for (int j = 1; j <= N; ++j) wit.push_back(pool.v[static_cast<size_t>(N - j)]);
            return wit;
        }
        if (R >= budget) {
            // report the longest prefix feasible at this budget
            int best = 0;
            for (int Np = N - 1; Np >= 1; --Np)
                if (feasible(pool.v, Np)) {
                    best = Np;
                    break;
                }
            std::vector<Candidate> wit;
            for (int j = 1; j <= best; ++j) wit.push_back(pool.v[static_cast<size_t>(best - j)]);
            return wit;
        }
    }
}

WitnessResult build_from_candidates(const Symbol& sym, WitnessKind kind, double r, double k, int count,
                                    std::vector<Candidate> wit, bool exhausted) {
    const int n = sym.dim();
    const double m = sym.order();
    WitnessResult res{kind, r, k, false, exhausted, count, {}, {}, {}, SpectralDistribution(n, "witness")};
    for (size_t j = 0; j < wit.size(); ++j) {
        res.xi.emplace_back(wit[j].xi);
        res.abs_p.push_back(wit[j].abs_p);
        res.bound.push_back(std::pow(static_cast<double>(l1_norm(std::span<const Coord>(wit[j].xi))),
                                      m - r) /
                            static_cast<double>(j + 1));
    }
    const double nn = static_cast<double>(n);
    double sumj = 0.0;
    for (size_t j = 1; j <= wit.size(); ++j) sumj += 1.0 / (static_cast<double>(j) * static_cast<double>(j));
    res.proof_bound = std::pow(1.0 + nn, std::abs(m - r)) * sumj;

    if (kind == WitnessKind::Gh) {
        for (auto& c : wit) res.u.set(Frequency{c.xi}, GaussQ(mpq_class(1), mpq_class(0)));
        res.u_norm_h0_sq = sobolev_norm_sq(res.u, 0.0);
        res.pu_norm_sq = sobolev_norm_sq(apply(sym, res.u), r - m);
    } else {
        for (auto& c : wit) {
            EvalValue v = sym.eval(std::span<const Coord>(c.xi));
            if (v.exact)
                res.u.set(Frequency{c.xi}, Coeff::from(v.exact_value));
            else
                res.u.set(Frequency{c.xi}, Coeff::from(v.approx));
        }
        res.pu_norm_sq = sobolev_norm_sq(res.u, r - m);
        res.u_norm_h0_sq = static_cast<double>(wit.size());  // the associated solution has unit modes
    }
    return res;
}

}  // namespace

WitnessResult nonzero_witness_search(const Symbol& sym, WitnessKind kind, double r, double k, int count,
                                     const WitnessOptions& opt) {
    if (count < 1) throw std::domain_error("witness: count must be >= 1");
    std::int64_t budget = opt.budget_radius > 0 ? opt.budget_radius : default_budget(sym.dim());
    budget = std::min<std::int64_t>(budget, kMaxCoord);
    std::vector<Candidate> found = search_sequence(sym, r, count, budget);
    bool exhausted = static_cast<int>(found.size()) < count;
    return build_from_candidates(sym, kind, r, k, count, std::move(found), exhausted);
}

WitnessResult gh_witness(const Symbol& sym, double r, int count, const WitnessOptions& opt) {
    if (count < 1) throw std::domain_error("witness: count must be >= 1");
    // a growing zero set gives witnesses for every r: modes supported on zeros
    std::int64_t budget = opt.budget_radius > 0 ? opt.budget_radius : default_budget(sym.dim());
    budget = std::min<std::int64_t>(budget, kMaxCoord);
    std::vector<Frequency> zeros;
    for (std::int64_t R = 64; R <= budget; R = std::min(R * 4, budget)) {
        ZeroCensus census = zero_scan(sym, Window(sym.dim(), R), static_cast<size_t>(count) + 1);
        zeros.clear();
        for (auto& z : census.zeros)
            if (!z.is_zero()) zeros.push_back(z);
        if (static_cast<int>(zeros.size()) >= count &&
            census.verdict == ZeroVerdict::GrowingSuspected)
            break;
        if (R >= budget) {
            zeros.clear();  // not enough zeros: fall back to the small-value search
            break;
        }
    }
    if (static_cast<int>(zeros.size()) >= count) {
        WitnessResult res{WitnessKind::Gh, r, 0.0, true,          false, count, {}, {}, {},
                          SpectralDistribution(sym.dim(), "witness")};
        for (int j = 0; j < count; ++j) {
            res.xi.push_back(zeros[static_cast<size_t>(j)]);
            res.abs_p.push_back(0.0);
            res.bound.push_back(0.0);
            res.u.set(zeros[static_cast<size_t>(j)], GaussQ(mpq_class(1), mpq_class(0)));
        }
        res.u_norm_h0_sq = sobolev_norm_sq(res.u, 0.0);
        res.pu_norm_sq = sobolev_norm_sq(apply(sym, res.u), r - sym.order());  // identically zero
        res.proof_bound = 0.0;
        return res;
    }
    return nonzero_witness_search(sym, WitnessKind::Gh, r, 0.0, count, opt);
}

WitnessResult gs_witness(const Symbol& sym, double r, int count, const WitnessOptions& opt) {
    return nonzero_witness_search(sym, WitnessKind::Gs, r, 0.0, count, opt);
}

WitnessResult closed_range_witness(const Symbol& sym, double r, double k, int count,
                                   const WitnessOptions& opt) {
    WitnessResult base = nonzero_witness_search(sym, WitnessKind::ClosedRange, r, k, count, opt);
    base.k = k;
    if (base.xi.empty()) return base;

    const double m = sym.order();
    const double wexp = (-k - m + r) / 2.0;  // per-mode weight (1+||xi||^2)^{wexp}
    const int N = static_cast<int>(base.xi.size());

    // f has coefficients p(xi_j) (1+||xi_j||^2)^{wexp}
    SpectralDistribution f(sym.dim(), "witness");
    std::vector<double> fcoef_sq(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) {
        std::span<const Coord> sp(base.xi[static_cast<size_t>(j)].c);
        double w = sobolev_weight_from_l2sq(l2_norm_sq(sp), wexp);
        EvalValue v = sym.eval(sp);
        std::complex<double> val = v.approx * w;
        f.set(base.xi[static_cast<size_t>(j)], Coeff::from(val));
        fcoef_sq[static_cast<size_t>(j)] = std::norm(val);
    }
    // || p(D)u_l - f ||_{H^k}^2 = sum_{j>l} (1+||xi_j||^2)^k |f(xi_j)|^2
    base.tail_norms_sq.resize(static_cast<size_t>(N));
    base.exact_tails_sq.resize(static_cast<size_t>(N));
    for (int l = 1; l <= N; ++l) {
        SpectralDistribution diff(sym.dim(), "witness");
        double tail = 0.0;
        for (int j = l; j < N; ++j) {
            diff.set(base.xi[static_cast<size_t>(j)], *f.find(base.xi[static_cast<size_t>(j)]));
            std::span<const Coord> sp(base.xi[static_cast<size_t>(j)].c);
            tail += sobolev_weight_from_l2sq(l2_norm_sq(sp), k) * fcoef_sq[static_cast<size_t>(j)];
        }
        base.tail_norms_sq[static_cast<size_t>(l - 1)] = sobolev_norm_sq(diff, k);
        base.exact_tails_sq[static_cast<size_t>(l - 1)] = tail;
    }
    base.u = std::move(f);
    return base;
}

}  // namespace toruslab
