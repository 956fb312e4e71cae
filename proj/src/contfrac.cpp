#include "toruslab/contfrac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toruslab::dio {

namespace {

void push_convergent(ContinuedFraction& cf, const mpz_class& ak) {
    const size_t k = cf.a.size();
    cf.a.push_back(ak);
    if (k == 0) {
        cf.p.push_back(ak);
        cf.q.push_back(1);
    } else if (k == 1) {
        cf.p.push_back(ak * cf.p[0] + 1);
        cf.q.push_back(ak);
    } else {
        cf.p.push_back(ak * cf.p[k - 1] + cf.p[k - 2]);
        cf.q.push_back(ak * cf.q[k - 1] + cf.q[k - 2]);
    }
}

double ln_mpz(const mpz_class& z) {
    signed long exp2;
    double m = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::abs(m)) + static_cast<double>(exp2) * std::log(2.0);
}

// exact rational expansion; certification by the digit-information rule when
// digits > 0 (the value is a base-b truncation of the underlying real)
ContinuedFraction cf_rational(const mpq_class& v, int depth, long digits, int base) {
    ContinuedFraction cf;
    cf.from_truncation = digits > 0;
    cf.truncation_digits = digits;
    mpz_class num = v.get_num(), den = v.get_den();
    mpz_class info;  // b^digits
    if (digits > 0) {
        mpz_ui_pow_ui(info.get_mpz_t(), static_cast<unsigned long>(base),
                      static_cast<unsigned long>(digits));
    }
    bool info_capped = false;
    while (sgn(den) != 0 && static_cast<long>(cf.a.size()) <= depth) {
        mpz_class ak, rem;
        mpz_fdiv_qr(ak.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        push_convergent(cf, ak);
        if (digits > 0 && !info_capped) {
            // a_k certified only while 10 q_k^2 < b^digits
            if (10 * cf.q.back() * cf.q.back() < info)
                cf.certified_depth = static_cast<long>(cf.a.size());
            else
                info_capped = true;
        }
        num = den;
        den = rem;
    }
    if (digits == 0) cf.certified_depth = static_cast<long>(cf.a.size());
    cf.status = sgn(den) == 0 && static_cast<long>(cf.a.size()) <= depth
                    ? CfStatus::Terminated
                    : (info_capped ? CfStatus::TruncationLimited : CfStatus::Complete);
    if (digits > 0 && static_cast<long>(cf.a.size()) <= depth && cf.status == CfStatus::Terminated)
        cf.status = CfStatus::TruncationLimited;  // ran out of digits, not a real termination
    return cf;
}

// periodic expansion of sqrt(a/b) = (0 + sqrt(ab)) / b via the P,Q recurrence
ContinuedFraction cf_surd(const mpq_class& radicand, int depth) {
    ContinuedFraction cf;
    mpz_class D = radicand.get_num() * radicand.get_den();
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());
    mpz_class P = 0, Q = radicand.get_den();
    while (static_cast<long>(cf.a.size()) <= depth) {
        // floor((P + sqrt(D)) / Q), exact since sqrt(D) is irrational
        mpz_class ak, num = P + s;
        if (sgn(Q) > 0) {
            mpz_fdiv_q(ak.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        } else {
            mpz_class t;
            mpz_fdiv_q(t.get_mpz_t(), num.get_mpz_t(), mpz_class(-Q).get_mpz_t());
            ak = -t - 1;
        }
        push_convergent(cf, ak);
        P = ak * Q - P;
        Q = (D - P * P) / Q;
    }
    cf.certified_depth = static_cast<long>(cf.a.size());
    cf.status = CfStatus::Complete;
    return cf;
}

// interval Gauss map at a fixed precision; returns quotients certain for every
// number in the enclosure (hence for alpha itself)
std::vector<mpz_class> gauss_certified(const RatIv& iv0, int depth, bool* terminated) {
    std::vector<mpz_class> out;
    *terminated = false;
    RatIv x = iv0;
    while (static_cast<long>(out.size()) <= depth) {
        mpz_class flo, fhi;
        mpz_fdiv_q(flo.get_mpz_t(), x.lo.get_num().get_mpz_t(), x.lo.get_den().get_mpz_t());
        mpz_fdiv_q(fhi.get_mpz_t(), x.hi.get_num().get_mpz_t(), x.hi.get_den().get_mpz_t());
        if (flo != fhi) break;
        out.push_back(flo);
        RatIv frac = iv_shift(x, mpq_class(-flo));
        if (sgn(frac.hi) == 0) {  // exactly an integer tail: the value is rational
            *terminated = true;
            break;
        }
        if (sgn(frac.lo) <= 0) break;  // cannot certify the next inversion
        x = iv_inv(frac);
    }
    return out;
}

ContinuedFraction cf_enclosure(const CertifiedReal& alpha, int depth, unsigned pcap) {
    ContinuedFraction cf;
    std::vector<mpz_class> best;
    bool terminated = false;
    unsigned p = 128;
    while (true) {
        p = std::min(p, pcap);
        bool term = false;
        std::vector<mpz_class> got = gauss_certified(alpha.enclosure(p), depth, &term);
        if (got.size() > best.size()) {
            best = std::move(got);
            terminated = term;
        }
        if (terminated || static_cast<long>(best.size()) > depth || p >= pcap) break;
        p *= 2;
    }
    for (const mpz_class& ak : best) push_convergent(cf, ak);
    cf.certified_depth = static_cast<long>(cf.a.size());
    cf.status = terminated ? CfStatus::Terminated
                           : (static_cast<long>(cf.a.size()) > depth ? CfStatus::Complete
                                                                     : CfStatus::TruncationLimited);
    return cf;
}

}  // namespace

ContinuedFraction cf_expand(const CertifiedReal& alpha, int depth, unsigned precision_cap_bits) {
    if (depth < 0) throw std::domain_error("cf_expand: depth must be >= 0");
    const unsigned pcap = precision_cap_bits ? std::min(precision_cap_bits, alpha.pmax_bits())
                                             : alpha.pmax_bits();
    if (auto* d = std::get_if<DecimalSpec>(&alpha.spec()))
        return cf_rational(d->v, depth, d->digits, 10);
    if (auto* r = std::get_if<RatSpec>(&alpha.spec())) return cf_rational(r->v, depth, 0, 10);
    if (auto* sq = std::get_if<SqrtSpec>(&alpha.spec())) return cf_surd(sq->radicand, depth);
    if (auto* ch = std::get_if<ChampernowneSpec>(&alpha.spec())) {
        const double lb = std::log2(static_cast<double>(ch->base));
        long digits = static_cast<long>(std::floor(static_cast<double>(pcap) / lb));
        return cf_rational(champernowne_truncation(ch->base, digits), depth, digits, ch->base);
    }
    return cf_enclosure(alpha, depth, pcap);
}

bool convergents_satisfy_determinant_identity(const ContinuedFraction& cf) {
    for (size_t k = 1; k < cf.a.size(); ++k) {
        mpz_class det = cf.p[k] * cf.q[k - 1] - cf.p[k - 1] * cf.q[k];
        if (det != ((k - 1) % 2 == 0 ? 1 : -1)) return false;
    }
    return true;
}

namespace {

double median_of_tail_half(const std::vector<double>& mu) {
    if (mu.empty()) return 0.0;
    std::vector<double> tail(mu.begin() + static_cast<long>(mu.size()) / 2, mu.end());
    std::sort(tail.begin(), tail.end());
    size_t n = tail.size();
    return n % 2 == 1 ? tail[n / 2] : 0.5 * (tail[n / 2 - 1] + tail[n / 2]);
}

// Liouville signature: a run of record highs growing without an apparent
// bound.  Heuristic: three or more successive records, each at least 0.5
// above the previous one, ending at 4 or more.
bool growth_signature(const std::vector<double>& mu) {
    int qualified = 0;
    double record = -1e300;
    double last_qualified = 0;
    for (double v : mu) {
        if (v > record) {
            if (record > -1e299 && v >= record + 0.5) {
                ++qualified;
                last_qualified = v;
            }
            record = v;
        }
    }
    return qualified >= 3 && last_qualified >= 4.0;
}

}  // namespace

MuEstimate mu_estimate(const CertifiedReal& alpha, int depth, double growth_threshold,
                       unsigned precision_cap_bits) {
    if (depth < 3) throw std::domain_error("mu_estimate: depth must be >= 3");
    if (alpha.is_rational_class())
        throw std::domain_error("mu_estimate: rational value; its measure is 1 by the registry");

    MuEstimate est;
    est.requested_depth = depth;
    est.growth_threshold = growth_threshold;

    if (auto* lv = std::get_if<LiouvilleSpec>(&alpha.spec())) {
        // The defining series supplies the approximation witnesses directly:
        // |alpha - S_j| lies in (b^{-(j+1)!}, 2 b^{-(j+1)!}) with denominator
        // b^{j!}, so the per-level exponent is certified in closed form.
        est.method = "series-levels";
        const double lnb = std::log(static_cast<double>(lv->base));
        double fact_j = 1.0;  // j!
        for (int j = 1; j <= depth; ++j) {
            fact_j *= j;
            double fact_j1 = fact_j * (j + 1);
            double lo = (fact_j1 * lnb - std::log(2.0)) / (fact_j * lnb);
            double hi = fact_j1 / fact_j;
            if (j >= 2) {
                est.index.push_back(j);
                est.mu.push_back(0.5 * (lo + hi));
            }
        }
        est.mu_hat = median_of_tail_half(est.mu);
        est.mu_max = *std::max_element(est.mu.begin(), est.mu.end());
        bool grow = growth_signature(est.mu) ||
                    std::any_of(est.mu.begin(), est.mu.end(),
                                [&](double v) { return v >= growth_threshold; });
        est.status = grow ? MuStatus::GrowingUnbounded : MuStatus::Converged;
        return est;
    }

    ContinuedFraction cf = cf_expand(alpha, depth, precision_cap_bits);
    est.method = "cf-convergents";
    const long kmax = std::min<long>(static_cast<long>(cf.size()) - 1, cf.certified_depth - 1);
    for (long k = 2; k + 1 <= kmax; ++k) {
        est.index.push_back(static_cast<int>(k));
        est.mu.push_back(1.0 + ln_mpz(cf.q[static_cast<size_t>(k + 1)]) /
                                   ln_mpz(cf.q[static_cast<size_t>(k)]));
    }
    if (est.mu.empty()) {
        est.status = MuStatus::TruncationLimited;
        return est;
    }
    est.mu_hat = median_of_tail_half(est.mu);
    est.mu_max = *std::max_element(est.mu.begin(), est.mu.end());
    if (growth_signature(est.mu) ||
        std::any_of(est.mu.begin(), est.mu.end(), [&](double v) { return v >= growth_threshold; }))
        est.status = MuStatus::GrowingUnbounded;
    else if (cf.status == CfStatus::TruncationLimited)
        est.status = MuStatus::TruncationLimited;
    else
        est.status = MuStatus::Converged;
    return est;
}

std::optional<RegistryEntry> registry_lookup(const RealSpec& spec) {
    RegistryEntry e;
    if (std::holds_alternative<RatSpec>(spec)) {
        e = {"rational", 1.0, 1.0, true, "", "mu(p/q) = 1 for every rational"};
    } else if (std::holds_alternative<SqrtSpec>(spec) || std::holds_alternative<AlgebraicSpec>(spec)) {
        e = {"algebraic-irrational", 2.0, 2.0, true, "",
             "Roth (1955): irrational algebraic numbers have measure exactly 2"};
    } else if (std::holds_alternative<EulerESpec>(spec)) {
        e = {"e", 2.0, 2.0, true, "", "classical: mu(e) = 2 from its continued fraction"};
    } else if (auto* ch = std::get_if<ChampernowneSpec>(&spec)) {
        double b = static_cast<double>(ch->base);
        e = {"champernowne", b, b, true, "",
             "Amou (1991): the base-b Champernowne constant has measure exactly b"};
    } else if (std::holds_alternative<LiouvilleSpec>(spec)) {
        e = {"liouville", std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), true, "inf",
             "Liouville numbers have infinite irrationality measure"};
    } else {
        return std::nullopt;  // decimal truncations etc: unknown class
    }
    return e;
}

std::optional<RegistryEntry> registry_lookup_name(const std::string& name) {
    if (name == "pi")
        return RegistryEntry{"pi", 2.0, 7.6063, false, "",
                             "Zeilberger-Zudilin (2020): 2 <= mu(pi) <= 7.6063"};
    if (name == "gamma(1/4)")
        return RegistryEntry{"gamma(1/4)", 2.0, std::numeric_limits<double>::infinity(), false, "1e330",
                             "Waldschmidt (2008): mu(Gamma(1/4)) <= 10^330"};
    if (name == "e")
        return registry_lookup(RealSpec(EulerESpec{}));
    return std::nullopt;
}

}  // namespace toruslab::dio
