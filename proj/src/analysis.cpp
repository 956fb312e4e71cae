#include "toruslab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

namespace toruslab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

int shell_of(std::uint64_t l1) { return static_cast<int>(std::bit_width(l1)) - 1; }

mpq_class weight_pow(std::uint64_t l1, long e) {  // l1^e as a rational, l1 >= 1
    mpz_class base(static_cast<unsigned long>(l1));
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    mpq_class w = e >= 0 ? mpq_class(pw) : mpq_class(1, pw);
    w.canonicalize();
    return w;
}

struct ScanConfig {
    const Symbol* sym = nullptr;
    std::int64_t radius = 0;
    int dim = 0;
    double m = 0.0;
    bool cert_on = false;
    double cert_exp = 0.0;  // r - m
    long cert_exp2 = 0;     // 2(r - m) when integral
    bool cert_exact = false;
    bool env_on = false;
    size_t zero_cap = 64;
    std::int64_t r_quarter = 0, r_half = 0;
    const double* lnl1 = nullptr;
};

struct ChunkAccum {
    struct Sh {
        std::uint64_t count = 0;
        double max_loss = kNegInf;
        std::vector<Coord> wit;
        double wit_la = 0.0;
    };
    std::vector<Sh> shells;

    long z_quarter = 0, z_half = 0, z_full = 0, z_origin = 0;
    std::vector<std::vector<Coord>> zeros;
    long zero_total = 0;
    std::vector<std::vector<Coord>> undecided;
    long undecided_total = 0;

    double cert_log = std::numeric_limits<double>::infinity();
    std::vector<Coord> cert_arg;
    mpq_class cert_sq;  // exact K^2 of cert_arg (exact mode)

    struct Env {
        double loss = kNegInf;
        std::vector<Coord> xi;
        double la = 0.0;
    };
    std::vector<Env> env;

    explicit ChunkAccum(const ScanConfig& cfg) {
        shells.resize(static_cast<size_t>(shell_of(static_cast<std::uint64_t>(
                          std::max<std::int64_t>(cfg.radius, 2)))) + 1);
        if (cfg.env_on) env.resize(static_cast<size_t>(cfg.radius) + 1);
    }
};

bool lex_less(const std::vector<Coord>& a, const std::vector<Coord>& b) { return a < b; }

mpq_class exact_cert_sq(const ScanConfig& cfg, const std::vector<Coord>& xi) {
    GaussQ v = cfg.sym->eval_exact(std::span<const Coord>(xi));
    return v.abs_sq() * weight_pow(l1_norm(std::span<const Coord>(xi)), cfg.cert_exp2);
}

void cert_consider(const ScanConfig& cfg, ChunkAccum& acc, double logk, const std::vector<Coord>& xi) {
    if (cfg.cert_exact) {
        if (logk > acc.cert_log + 1e-9) return;
        if (logk < acc.cert_log - 1e-9 || acc.cert_arg.empty()) {
            acc.cert_log = logk;
            acc.cert_arg = xi;
            acc.cert_sq = exact_cert_sq(cfg, xi);
            return;
        }
        mpq_class cand = exact_cert_sq(cfg, xi);
        if (cand < acc.cert_sq || (cand == acc.cert_sq && lex_less(xi, acc.cert_arg))) {
            acc.cert_log = logk;
            acc.cert_arg = xi;
            acc.cert_sq = std::move(cand);
        }
        return;
    }
    if (logk < acc.cert_log || (logk == acc.cert_log && (acc.cert_arg.empty() || lex_less(xi, acc.cert_arg)))) {
        acc.cert_log = logk;
        acc.cert_arg = xi;
    }
}

// scans rows (prefix..., t) for t in [lo, hi]
void scan_row(const ScanConfig& cfg, ChunkAccum& acc, std::vector<Coord>& xi, Coord lo, Coord hi,
              std::uint8_t* tag, double* la) {
    const int n = cfg.dim;
    std::uint64_t pre = 0;
    for (int j = 0; j + 1 < n; ++j) pre += static_cast<std::uint64_t>(std::llabs(xi[static_cast<size_t>(j)]));
    cfg.sym->scan_span(std::span<const Coord>(xi.data(), static_cast<size_t>(n - 1)), lo, hi, tag, la);
    for (Coord t = lo; t <= hi; ++t) {
        const size_t i = static_cast<size_t>(t - lo);
        const std::uint64_t l1 = pre + static_cast<std::uint64_t>(t < 0 ? -t : t);
        if (tag[i] == static_cast<std::uint8_t>(ZeroTag::Zero)) {
            xi[static_cast<size_t>(n - 1)] = t;
            ++acc.z_full;
            if (l1 == 0) ++acc.z_origin;
            if (static_cast<std::int64_t>(l1) <= cfg.r_quarter) ++acc.z_quarter;
            if (static_cast<std::int64_t>(l1) <= cfg.r_half) ++acc.z_half;
            ++acc.zero_total;
            if (acc.zeros.size() < cfg.zero_cap) acc.zeros.emplace_back(xi.begin(), xi.end());
            continue;
        }
        if (tag[i] == static_cast<std::uint8_t>(ZeroTag::Undecided)) {
            xi[static_cast<size_t>(n - 1)] = t;
            ++acc.undecided_total;
            if (acc.undecided.size() < cfg.zero_cap) acc.undecided.emplace_back(xi.begin(), xi.end());
            continue;
        }
        if (l1 == 0) continue;  // nonzero symbol value at the origin: outside every estimate
        const double lg = cfg.lnl1[l1];
        if (cfg.cert_on) {
            double logk = la[i] + cfg.cert_exp * lg;
            if (logk <= acc.cert_log + 1e-9) {
                xi[static_cast<size_t>(n - 1)] = t;
                cert_consider(cfg, acc, logk, xi);
            }
        }
        if (l1 < 2) continue;
        const double loss = cfg.m - la[i] / lg;
        auto& sh = acc.shells[static_cast<size_t>(shell_of(l1))];
        ++sh.count;
        if (loss > sh.max_loss) {
            xi[static_cast<size_t>(n - 1)] = t;
            sh.max_loss = loss;
            sh.wit.assign(xi.begin(), xi.end());
            sh.wit_la = la[i];
        } else if (loss == sh.max_loss) {
            xi[static_cast<size_t>(n - 1)] = t;
            if (lex_less(xi, sh.wit)) {
                sh.wit.assign(xi.begin(), xi.end());
                sh.wit_la = la[i];
            }
        }
        if (cfg.env_on) {
            auto& e = acc.env[l1];
            if (loss > e.loss) {
                xi[static_cast<size_t>(n - 1)] = t;
                e.loss = loss;
                e.xi.assign(xi.begin(), xi.end());
                e.la = la[i];
            } else if (loss == e.loss) {
                xi[static_cast<size_t>(n - 1)] = t;
                if (e.xi.empty() || lex_less(xi, e.xi)) {
                    e.xi.assign(xi.begin(), xi.end());
                    e.la = la[i];
                }
            }
        }
    }
}

void scan_prefix(const ScanConfig& cfg, ChunkAccum& acc, std::vector<Coord>& xi, int pos,
                 std::int64_t rem, std::uint8_t* tag, double* la) {
    if (pos + 1 == cfg.dim) {
        scan_row(cfg, acc, xi, -rem, rem, tag, la);
        return;
    }
    for (Coord x = -rem; x <= rem; ++x) {
        xi[static_cast<size_t>(pos)] = x;
        scan_prefix(cfg, acc, xi, pos + 1, rem - (x < 0 ? -x : x), tag, la);
    }
}

void scan_chunk(const ScanConfig& cfg, ChunkAccum& acc, Coord first_lo, Coord first_hi) {
    std::vector<std::uint8_t> tag(static_cast<size_t>(2 * cfg.radius + 1));
    std::vector<double> la(static_cast<size_t>(2 * cfg.radius + 1));
    std::vector<Coord> xi(static_cast<size_t>(cfg.dim), 0);
    if (cfg.dim == 1) {
        scan_row(cfg, acc, xi, first_lo, first_hi, tag.data(), la.data());
        return;
    }
    for (Coord x = first_lo; x <= first_hi; ++x) {
        xi[0] = x;
        scan_prefix(cfg, acc, xi, 1, cfg.radius - (x < 0 ? -x : x), tag.data(), la.data());
    }
}

void merge_into(const ScanConfig& cfg, ChunkAccum& dst, ChunkAccum& src) {
    for (size_t s = 0; s < dst.shells.size(); ++s) {
        auto& a = dst.shells[s];
        auto& b = src.shells[s];
        a.count += b.count;
        if (b.max_loss > a.max_loss ||
            (b.max_loss == a.max_loss && !b.wit.empty() && (a.wit.empty() || lex_less(b.wit, a.wit)))) {
            a.max_loss = b.max_loss;
            a.wit = std::move(b.wit);
            a.wit_la = b.wit_la;
        }
    }
    dst.z_quarter += src.z_quarter;
    dst.z_half += src.z_half;
    dst.z_full += src.z_full;
    dst.z_origin += src.z_origin;
    dst.zero_total += src.zero_total;
    for (auto& z : src.zeros)
        if (dst.zeros.size() < cfg.zero_cap) dst.zeros.push_back(std::move(z));
    dst.undecided_total += src.undecided_total;
    for (auto& z : src.undecided)
        if (dst.undecided.size() < cfg.zero_cap) dst.undecided.push_back(std::move(z));
    if (cfg.cert_on && !src.cert_arg.empty()) {
        if (dst.cert_arg.empty()) {
            dst.cert_log = src.cert_log;
            dst.cert_arg = std::move(src.cert_arg);
            dst.cert_sq = std::move(src.cert_sq);
        } else if (cfg.cert_exact) {
            if (src.cert_sq < dst.cert_sq ||
                (src.cert_sq == dst.cert_sq && lex_less(src.cert_arg, dst.cert_arg))) {
                dst.cert_log = src.cert_log;
                dst.cert_arg = std::move(src.cert_arg);
                dst.cert_sq = std::move(src.cert_sq);
            }
        } else if (src.cert_log < dst.cert_log ||
                   (src.cert_log == dst.cert_log && lex_less(src.cert_arg, dst.cert_arg))) {
            dst.cert_log = src.cert_log;
            dst.cert_arg = std::move(src.cert_arg);
        }
    }
    if (cfg.env_on) {
        for (size_t l = 0; l < dst.env.size(); ++l) {
            auto& a = dst.env[l];
            auto& b = src.env[l];
            if (b.loss > a.loss ||
                (b.loss == a.loss && !b.xi.empty() && (a.xi.empty() || lex_less(b.xi, a.xi)))) {
                a = std::move(b);
            }
        }
    }
}

ChunkAccum run_scan(const ScanConfig& cfg, int threads) {
    const Coord R = cfg.radius;
    threads = std::max(1, threads);
    const long span = 2 * R + 1;
    const int chunks = static_cast<int>(std::min<long>(span, threads));
    std::vector<ChunkAccum> accs;
    accs.reserve(static_cast<size_t>(chunks));
    for (int c = 0; c < chunks; ++c) accs.emplace_back(cfg);
    if (chunks == 1) {
        scan_chunk(cfg, accs[0], -R, R);
        return std::move(accs[0]);
    }
    std::vector<std::thread> pool;
    for (int c = 0; c < chunks; ++c) {
        Coord lo = -R + static_cast<Coord>((span * c) / chunks);
        Coord hi = -R + static_cast<Coord>((span * (c + 1)) / chunks) - 1;
        pool.emplace_back([&cfg, &accs, c, lo, hi] { scan_chunk(cfg, accs[static_cast<size_t>(c)], lo, hi); });
    }
    for (auto& t : pool) t.join();
    for (int c = 1; c < chunks; ++c) merge_into(cfg, accs[0], accs[static_cast<size_t>(c)]);
    return std::move(accs[0]);
}

std::vector<double> make_ln_table(std::int64_t R) {
    std::vector<double> t(static_cast<size_t>(R) + 1, 0.0);
    for (std::int64_t l = 1; l <= R; ++l) t[static_cast<size_t>(l)] = std::log(static_cast<double>(l));
    return t;
}

ScanConfig make_config(const Symbol& sym, const Window& w, const ScanOptions& opt,
                       const std::vector<double>& lnt) {
    if (w.norm != Norm::L1) throw std::domain_error("analysis: only L1 windows are supported");
    if (w.dim != sym.dim()) throw std::domain_error("analysis: window/symbol dimension mismatch");
    ScanConfig cfg;
    cfg.sym = &sym;
    cfg.radius = w.radius;
    cfg.dim = w.dim;
    cfg.m = sym.order();
    cfg.zero_cap = opt.zero_cap;
    cfg.r_quarter = w.radius / 4;
    cfg.r_half = w.radius / 2;
    cfg.lnl1 = lnt.data();
    if (opt.certificate_r) {
        cfg.cert_on = true;
        cfg.cert_exp = *opt.certificate_r - sym.order();
        double e2 = 2.0 * cfg.cert_exp;
        cfg.cert_exact = sym.exact_values() && e2 == std::floor(e2) && std::abs(e2) < 1e6;
        cfg.cert_exp2 = cfg.cert_exact ? static_cast<long>(e2) : 0;
    }
    cfg.env_on = opt.want_envelope;
    return cfg;
}

ZeroCensus census_from(const ChunkAccum& acc, std::int64_t radius) {
    ZeroCensus c;
    c.radius = radius;
    c.count_quarter = acc.z_quarter;
    c.count_half = acc.z_half;
    c.count_full = acc.z_full;
    c.zero_total = acc.zero_total;
    for (auto& z : acc.zeros) c.zeros.push_back(Frequency{z});
    for (auto& z : acc.undecided) c.undecided.push_back(Frequency{z});
    c.undecided_total = acc.undecided_total;
    if (c.zero_total == acc.z_origin)
        c.verdict = ZeroVerdict::OnlyOrigin;
    else if (c.count_quarter < c.count_half && c.count_half < c.count_full)
        c.verdict = ZeroVerdict::GrowingSuspected;
    else
        c.verdict = ZeroVerdict::FiniteSuspected;
    return c;
}

}  // namespace

ZeroCensus zero_scan(const Symbol& sym, const Window& w, size_t zero_cap, int threads) {
    ScanOptions opt;
    opt.zero_cap = zero_cap;
    auto lnt = make_ln_table(w.radius);
    ScanConfig cfg = make_config(sym, w, opt, lnt);
    ChunkAccum acc = run_scan(cfg, threads);
    return census_from(acc, w.radius);
}

Certificate certify_lower_bound(const Symbol& sym, const Window& w, double r,
                                std::optional<double> target, int threads) {
    ScanOptions opt;
    opt.certificate_r = r;
    auto lnt = make_ln_table(w.radius);
    ScanConfig cfg = make_config(sym, w, opt, lnt);
    ChunkAccum acc = run_scan(cfg, threads);
    Certificate cert;
    cert.r = r;
    if (acc.cert_arg.empty()) {
        cert.degenerate = true;
        return cert;
    }
    cert.argmin = Frequency{acc.cert_arg};
    if (cfg.cert_exact) {
        cert.K_sq_exact = acc.cert_sq;
        cert.K = std::sqrt(acc.cert_sq.get_d());
    } else {
        cert.K = std::exp(acc.cert_log);
    }
    if (target && cert.K < *target) cert.violator = cert.argmin;
    return cert;
}

IndexReport estimate_indices(const Symbol& sym, const Window& w, const ScanOptions& opt) {
    if (w.radius < 16) throw std::domain_error("estimate_indices: window radius must be >= 16");
    auto lnt = make_ln_table(w.radius);
    ScanConfig cfg = make_config(sym, w, opt, lnt);
    ChunkAccum acc = run_scan(cfg, std::max(1, opt.threads));

    IndexReport rep;
    rep.symbol_text = sym.text();
    rep.dim = sym.dim();
    rep.order_m = sym.order();
    rep.radius = w.radius;
    rep.tail_shells = opt.tail_shells;
    rep.census = census_from(acc, w.radius);
    rep.undecided_total = acc.undecided_total;

    for (size_t s = 0; s < acc.shells.size(); ++s) {
        auto& sh = acc.shells[s];
        if (sh.count == 0) continue;
        ShellStat st;
        st.s = static_cast<int>(s);
        st.count = sh.count;
        st.max_loss = sh.max_loss;
        st.witness = Frequency{sh.wit};
        st.witness_log_abs = sh.wit_la;
        st.witness_abs_p = sym.abs_lower(std::span<const Coord>(sh.wit)).abs;
        rep.shells.push_back(std::move(st));
    }
    if (rep.shells.empty()) {
        rep.degenerate = true;
        rep.r_hat_gs = std::numeric_limits<double>::quiet_NaN();
        rep.r_hat_gh = rep.r_hat_gs;
        return rep;
    }
    const size_t tail = std::min<size_t>(static_cast<size_t>(std::max(1, opt.tail_shells)),
                                         rep.shells.size());
    double rhat = kNegInf;
    for (size_t i = rep.shells.size() - tail; i < rep.shells.size(); ++i)
        rhat = std::max(rhat, rep.shells[i].max_loss);
    rep.r_hat_gs = rhat;
    rep.gh_infinite_heuristic = rep.census.verdict == ZeroVerdict::GrowingSuspected;
    rep.r_hat_gh = rep.gh_infinite_heuristic ? std::numeric_limits<double>::infinity() : rhat;

    if (opt.certificate_r) {
        Certificate cert;
        cert.r = *opt.certificate_r;
        if (acc.cert_arg.empty()) {
            cert.degenerate = true;
        } else {
            cert.argmin = Frequency{acc.cert_arg};
            if (cfg.cert_exact) {
                cert.K_sq_exact = acc.cert_sq;
                cert.K = std::sqrt(acc.cert_sq.get_d());
            } else {
                cert.K = std::exp(acc.cert_log);
            }
            if (opt.certificate_target && cert.K < *opt.certificate_target) cert.violator = cert.argmin;
        }
        rep.certificate = std::move(cert);
    }
    if (opt.want_envelope) {
        for (size_t l = 2; l < acc.env.size(); ++l) {
            auto& e = acc.env[l];
            if (e.xi.empty()) continue;
            EnvelopeRow row;
            row.l1 = l;
            row.xi = Frequency{e.xi};
            row.log_l1 = std::log(static_cast<double>(l));
            row.log_abs_p = e.la;
            row.abs_p = sym.abs_lower(std::span<const Coord>(e.xi)).abs;
            row.loss = e.loss;
            rep.envelope.push_back(std::move(row));
        }
    }
    return rep;
}

}  // namespace toruslab
