#include "toruslab/reals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace toruslab {

RatIv iv_add(const RatIv& a, const RatIv& b) { return RatIv(a.lo + b.lo, a.hi + b.hi); }
RatIv iv_sub(const RatIv& a, const RatIv& b) { return RatIv(a.lo - b.hi, a.hi - b.lo); }
RatIv iv_neg(const RatIv& a) { return RatIv(-a.hi, -a.lo); }

RatIv iv_mul(const RatIv& a, const RatIv& b) {
    mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return RatIv(std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4)));
}

RatIv iv_abs(const RatIv& a) {
    if (sgn(a.lo) >= 0) return a;
    if (sgn(a.hi) <= 0) return iv_neg(a);
    return RatIv(0, std::max(mpq_class(-a.lo), a.hi));
}

RatIv iv_inv(const RatIv& a) {
    if (a.sign() == 0) throw std::logic_error("iv_inv: interval contains zero");
    return RatIv(1 / a.hi, 1 / a.lo);
}

RatIv iv_scale(const RatIv& a, const mpq_class& c) {
    if (sgn(c) >= 0) return RatIv(a.lo * c, a.hi * c);
    return RatIv(a.hi * c, a.lo * c);
}

RatIv iv_shift(const RatIv& a, const mpq_class& c) { return RatIv(a.lo + c, a.hi + c); }

namespace {

// floor(q * 2^bits) / 2^bits
mpq_class dyadic_floor(const mpq_class& q, unsigned bits) {
    mpz_class scaled_num = q.get_num() << bits;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class r(fl, mpz_class(1) << bits);
    r.canonicalize();
    return r;
}

mpq_class dyadic_ceil(const mpq_class& q, unsigned bits) {
    mpz_class scaled_num = q.get_num() << bits;
    mpz_class cl;
    mpz_cdiv_q(cl.get_mpz_t(), scaled_num.get_mpz_t(), q.get_den().get_mpz_t());
    mpq_class r(cl, mpz_class(1) << bits);
    r.canonicalize();
    return r;
}

mpq_class pow2_neg(unsigned bits) {
    mpq_class r(1, mpz_class(1) << bits);
    r.canonicalize();
    return r;
}

}  // namespace

RatIv iv_simplify(const RatIv& a, unsigned prec_bits) {
    return RatIv(dyadic_floor(a.lo, prec_bits), dyadic_ceil(a.hi, prec_bits));
}

namespace {

// ln(m) for rational m in [1, 2), via 2*atanh((m-1)/(m+1))
RatIv ln_reduced(const mpq_class& m, unsigned prec) {
    const unsigned guard = prec + 24;
    RatIv z = iv_simplify(RatIv::point((m - 1) / (m + 1)), guard);  // in [0, 1/3]
    RatIv zsq = iv_simplify(iv_mul(z, z), guard);
    RatIv sum = RatIv::point(0);
    RatIv term = z;  // z^{2k+1}
    unsigned k = 0;
    while (true) {
        mpq_class inv(1, 2 * k + 1);
        inv.canonicalize();
        sum = iv_simplify(iv_add(sum, iv_scale(term, inv)), guard);
        term = iv_simplify(iv_mul(term, zsq), guard);
        ++k;
        // remaining tail <= term.hi / (2k+1) * 1/(1-z^2) <= term.hi * 9/8
        mpq_class tail_hi = term.hi * 9 / 8;
        if (tail_hi <= pow2_neg(prec + 2)) {
            RatIv r(2 * sum.lo, 2 * (sum.hi + tail_hi));
            return iv_simplify(r, prec);
        }
    }
}

RatIv ln2_iv(unsigned prec) { return ln_reduced(mpq_class(2), prec); }  // z = 1/3 exactly

}  // namespace

RatIv iv_ln_rat(const mpq_class& x, unsigned prec_bits) {
    if (sgn(x) <= 0) throw std::domain_error("iv_ln_rat: argument must be positive");
    // x = 2^k * m with m in [1, 2)
    long k = 0;
    mpq_class m = x;
    while (m >= 2) {
        m /= 2;
        ++k;
    }
    while (m < 1) {
        m *= 2;
        --k;
    }
    const unsigned p = prec_bits + 8;
    RatIv lm = ln_reduced(m, p);
    if (k == 0) return iv_simplify(lm, prec_bits);
    RatIv l2 = ln2_iv(p + 8);
    RatIv kl2 = iv_scale(l2, mpq_class(k));
    return iv_simplify(iv_add(lm, kl2), prec_bits);
}

RatIv iv_ln(const RatIv& x, unsigned prec_bits) {
    if (sgn(x.lo) <= 0) throw std::domain_error("iv_ln: argument must be positive");
    RatIv a = iv_ln_rat(x.lo, prec_bits + 2);
    RatIv b = iv_ln_rat(x.hi, prec_bits + 2);
    return RatIv(a.lo, b.hi);
}

// ---------------------------------------------------------------------------

bool spec_is_exact_rational(const RealSpec& s) {
    return std::holds_alternative<RatSpec>(s) || std::holds_alternative<DecimalSpec>(s);
}

bool spec_is_quadratic_surd(const RealSpec& s) { return std::holds_alternative<SqrtSpec>(s); }

std::string spec_class_name(const RealSpec& s) {
    return std::visit(
        [](auto&& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, RatSpec>) return "rational";
            if constexpr (std::is_same_v<T, SqrtSpec>) return "sqrt";
            if constexpr (std::is_same_v<T, AlgebraicSpec>) return "algebraic";
            if constexpr (std::is_same_v<T, DecimalSpec>) return "decimal";
            if constexpr (std::is_same_v<T, LiouvilleSpec>) return "liouville";
            if constexpr (std::is_same_v<T, ChampernowneSpec>) return "champernowne";
            if constexpr (std::is_same_v<T, EulerESpec>) return "e";
        },
        s);
}

std::string spec_to_string(const RealSpec& s) {
    return std::visit(
        [](auto&& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, RatSpec>)
                os << "rat:" << v.v.get_num() << "/" << v.v.get_den();
            else if constexpr (std::is_same_v<T, SqrtSpec>) {
                os << "sqrt:" << v.radicand.get_num();
                if (v.radicand.get_den() != 1) os << "/" << v.radicand.get_den();
            } else if constexpr (std::is_same_v<T, AlgebraicSpec>) {
                os << "alg:";
                for (size_t i = 0; i < v.poly.size(); ++i) os << (i ? ":" : "") << v.poly[i];
                os << "," << v.lo << ".." << v.hi;
            } else if constexpr (std::is_same_v<T, DecimalSpec>)
                os << "dec:<" << v.digits << " digits>";
            else if constexpr (std::is_same_v<T, LiouvilleSpec>)
                os << "liouville:" << v.base;
            else if constexpr (std::is_same_v<T, ChampernowneSpec>)
                os << "champernowne:" << v.base;
            else
                os << "e";
            return os.str();
        },
        s);
}

mpq_class champernowne_truncation(int base, long digits) {
    if (base < 2) throw std::domain_error("champernowne: base must be >= 2");
    mpz_class acc = 0;
    long cnt = 0;
    std::vector<int> dg;
    for (unsigned long m = 1; cnt < digits; ++m) {
        dg.clear();
        for (unsigned long t = m; t; t /= static_cast<unsigned long>(base))
            dg.push_back(static_cast<int>(t % static_cast<unsigned long>(base)));
        for (auto it = dg.rbegin(); it != dg.rend() && cnt < digits; ++it) {
            acc = acc * base + *it;
            ++cnt;
        }
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(digits));
    mpq_class r(acc, den);
    r.canonicalize();
    return r;
}

mpq_class liouville_partial_sum(int base, int level) {
    if (base < 2) throw std::domain_error("liouville: base must be >= 2");
    unsigned long fact = 1;
    for (int j = 2; j <= level; ++j) fact *= static_cast<unsigned long>(j);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(base), fact);
    mpz_class num = 0;
    unsigned long f = 1;
    for (int j = 1; j <= level; ++j) {
        f *= static_cast<unsigned long>(j);
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(base), fact - f);
        num += t;
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------------------
// polynomial helpers for AlgebraicSpec

namespace {

mpq_class poly_eval(const std::vector<mpz_class>& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + mpq_class(*it);
    return acc;
}

using QPoly = std::vector<mpq_class>;

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    return d;
}

void normalize(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_rem(QPoly a, const QPoly& b) {
    normalize(a);
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class c = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        normalize(a);
    }
    return a;
}

mpq_class qpoly_eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int sturm_count(const std::vector<mpz_class>& poly, const mpq_class& lo, const mpq_class& hi) {
    QPoly p0;
    for (auto& c : poly) p0.emplace_back(c);
    normalize(p0);
    std::vector<QPoly> chain{p0, derivative(p0)};
    normalize(chain.back());
    while (chain.back().size() > 0) {
        QPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    auto signchanges = [&](const mpq_class& x) {
        int changes = 0, prev = 0;
        for (auto& q : chain) {
            int s = sgn(qpoly_eval(q, x));
            if (s != 0) {
                if (prev != 0 && s != prev) ++changes;
                prev = s;
            }
        }
        return changes;
    };
    return signchanges(lo) - signchanges(hi);
}

}  // namespace

// ---------------------------------------------------------------------------

CertifiedReal::CertifiedReal(RealSpec spec, unsigned pmax_bits) : spec_(std::make_shared<State>()) {
    spec_->pmax = pmax_bits;
    if (auto* sq = std::get_if<SqrtSpec>(&spec)) {
        if (sgn(sq->radicand) <= 0) throw std::domain_error("sqrt: radicand must be positive");
        mpz_class n2 = sq->radicand.get_num() * sq->radicand.get_den();
        mpz_class root;
        if (mpz_perfect_square_p(n2.get_mpz_t()))
            throw std::domain_error("sqrt: radicand is a perfect square of a rational; use rat:");
    } else if (auto* al = std::get_if<AlgebraicSpec>(&spec)) {
        if (al->poly.size() < 2) throw std::domain_error("alg: polynomial must have degree >= 1");
        if (!(al->lo < al->hi)) throw std::domain_error("alg: empty isolating interval");
        mpq_class flo = poly_eval(al->poly, al->lo), fhi = poly_eval(al->poly, al->hi);
        if (sgn(flo) == 0 || sgn(fhi) == 0)
            throw std::domain_error("alg: isolating interval endpoints must not be roots");
        if (sgn(flo) == sgn(fhi)) throw std::domain_error("alg: no sign change on isolating interval");
        if (sturm_count(al->poly, al->lo, al->hi) != 1)
            throw std::domain_error("alg: isolating interval does not contain exactly one root");
    } else if (auto* lv = std::get_if<LiouvilleSpec>(&spec)) {
        if (lv->base < 2) throw std::domain_error("liouville: base must be >= 2");
    } else if (auto* ch = std::get_if<ChampernowneSpec>(&spec)) {
        if (ch->base < 2) throw std::domain_error("champernowne: base must be >= 2");
    }
    spec_->spec = std::move(spec);
}

std::optional<mpq_class> CertifiedReal::exact_rational() const {
    if (auto* r = std::get_if<RatSpec>(&spec_->spec)) return r->v;
    if (auto* d = std::get_if<DecimalSpec>(&spec_->spec)) return d->v;
    return std::nullopt;
}

namespace {

RatIv compute_enclosure(const RealSpec& spec, unsigned p) {
    if (auto* r = std::get_if<RatSpec>(&spec)) return RatIv::point(r->v);
    if (auto* d = std::get_if<DecimalSpec>(&spec)) return RatIv::point(d->v);
    if (auto* sq = std::get_if<SqrtSpec>(&spec)) {
        const mpz_class &a = sq->radicand.get_num(), &b = sq->radicand.get_den();
        unsigned shift = p + static_cast<unsigned>(mpz_sizeinbase(b.get_mpz_t(), 2)) + 2;
        mpz_class scaled = (a * b) << (2 * shift);
        mpz_class t;
        mpz_sqrt(t.get_mpz_t(), scaled.get_mpz_t());
        mpz_class den = b << shift;
        mpq_class lo(t, den), hi(t + 1, den);
        lo.canonicalize();
        hi.canonicalize();
        return RatIv(lo, hi);
    }
    if (auto* al = std::get_if<AlgebraicSpec>(&spec)) {
        mpq_class lo = al->lo, hi = al->hi;
        int slo = sgn(poly_eval(al->poly, lo));
        mpq_class target = pow2_neg(p);
        while (hi - lo > target) {
            mpq_class mid = (lo + hi) / 2;
            int sm = sgn(poly_eval(al->poly, mid));
            if (sm == 0) return RatIv::point(mid);  // landed exactly on a rational root
            if (sm == slo)
                lo = mid;
            else
                hi = mid;
        }
        return RatIv(lo, hi);
    }
    if (auto* lv = std::get_if<LiouvilleSpec>(&spec)) {
        const double lb = std::log2(static_cast<double>(lv->base));
        int J = 1;
        double fact = 2.0;  // (J+1)!
        while (fact * lb < static_cast<double>(p) + 1) {
            ++J;
            fact *= static_cast<double>(J + 1);
        }
        mpq_class s = liouville_partial_sum(lv->base, J);
        unsigned long f = 1;
        for (int j = 2; j <= J + 1; ++j) f *= static_cast<unsigned long>(j);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(lv->base), f);
        mpq_class tail(1, den);
        tail.canonicalize();
        // tail of the series lies in (b^{-(J+1)!}, 2 b^{-(J+1)!})
        return RatIv(s + tail, s + 2 * tail);
    }
    if (auto* ch = std::get_if<ChampernowneSpec>(&spec)) {
        const double lb = std::log2(static_cast<double>(ch->base));
        long digits = static_cast<long>(std::ceil(static_cast<double>(p) / lb)) + 1;
        mpq_class s = champernowne_truncation(ch->base, digits);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(ch->base),
                      static_cast<unsigned long>(digits));
        mpq_class ulp(1, den);
        ulp.canonicalize();
        return RatIv(s, s + ulp);
    }
    // EulerE: sum 1/k! with tail bound 2/(K+1)!
    int K = 2;
    {
        double lg = 0;  // log2 (K+1)!
        while (lg < static_cast<double>(p) + 2) {
            ++K;
            lg += std::log2(static_cast<double>(K + 1));
        }
    }
    mpz_class f = 1;
    mpq_class s = 1;  // k = 0 term
    for (int k = 1; k <= K; ++k) {
        f *= k;
        mpq_class t(1, f);
        t.canonicalize();
        s += t;
    }
    mpq_class tail(2, f * (K + 1));
    tail.canonicalize();
    return RatIv(s, s + tail);
}

}  // namespace

RatIv CertifiedReal::enclosure(unsigned prec_bits) const {
    if (prec_bits > spec_->pmax)
        throw PrecisionExhausted("enclosure request beyond precision cap " + std::to_string(spec_->pmax));
    std::lock_guard<std::mutex> lock(spec_->mu);
    if (spec_->has_cache && spec_->cache_bits >= prec_bits) return spec_->cache;
    RatIv iv = compute_enclosure(spec_->spec, prec_bits);
    if (spec_->has_cache) iv = iv.intersect(spec_->cache);  // keep refinements nested
    spec_->cache = iv;
    spec_->cache_bits = prec_bits;
    spec_->has_cache = true;
    return iv;
}

double CertifiedReal::approx() const {
    if (auto ex = exact_rational()) return ex->get_d();
    return enclosure(64).mid().get_d();
}

int CertifiedReal::compare(const mpq_class& q) const {
    if (auto ex = exact_rational()) return sgn(mpq_class(*ex - q));
    if (auto* sq = std::get_if<SqrtSpec>(&spec_->spec)) {
        if (sgn(q) < 0) return 1;
        return sgn(mpq_class(sq->radicand - q * q));
    }
    if (auto* al = std::get_if<AlgebraicSpec>(&spec_->spec)) {
        // the isolating interval holds exactly one root, so a root found at q is the value
        if (q >= al->lo && q <= al->hi && sgn(poly_eval(al->poly, q)) == 0) return 0;
    }
    unsigned p = 64;
    while (true) {
        RatIv iv = enclosure(p);
        if (q < iv.lo) return 1;
        if (q > iv.hi) return -1;
        if (iv.lo == iv.hi) return 0;
        if (p >= spec_->pmax) break;
        p = std::min(2 * p, spec_->pmax);
    }
    throw PrecisionExhausted("compare undecided at precision cap for " + spec_class_name(spec_->spec));
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    bool eat(const char* lit) {
        size_t n = std::string_view(lit).size();
        if (s.compare(i, n, lit) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i); }
    bool done() const { return i == s.size(); }
};

mpz_class parse_int(Cursor& c) {
    size_t start = c.i;
    if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
    size_t dstart = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == dstart) c.fail("expected integer");
    return mpz_class(c.s.substr(start, c.i - start));
}

mpq_class parse_rational(Cursor& c) {
    mpz_class num = parse_int(c);
    mpz_class den = 1;
    if (c.i < c.s.size() && c.s[c.i] == '/') {
        ++c.i;
        den = parse_int(c);
        if (den == 0) c.fail("zero denominator");
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

RealSpec parse_real_spec_at(Cursor& c);

RealSpec parse_real_spec(const std::string& text) {
    Cursor c{text};
    RealSpec spec = parse_real_spec_at(c);
    if (!c.done()) c.fail("trailing characters after real spec");
    return spec;
}

RealSpec parse_real_spec_at(Cursor& c) {
    if (c.eat("rat:")) {
        mpz_class num = parse_int(c);
        if (c.i >= c.s.size() || c.s[c.i] != '/') c.fail("rat: expects p/q");
        ++c.i;
        mpz_class den = parse_int(c);
        if (den == 0) c.fail("zero denominator");
        mpq_class v(num, den);
        v.canonicalize();
        return RatSpec{v};
    }
    if (c.eat("sqrt:")) {
        mpq_class r = parse_rational(c);
        return SqrtSpec{r};
    }
    if (c.eat("alg:")) {
        std::vector<mpz_class> poly;
        poly.push_back(parse_int(c));
        while (c.i < c.s.size() && c.s[c.i] == ':') {
            ++c.i;
            poly.push_back(parse_int(c));
        }
        if (c.i >= c.s.size() || c.s[c.i] != ',') c.fail("alg: expects ',' before isolating interval");
        ++c.i;
        mpq_class lo = parse_rational(c);
        if (!c.eat("..")) c.fail("alg: expects 'lo..hi' interval");
        mpq_class hi = parse_rational(c);
        while (!poly.empty() && poly.back() == 0) poly.pop_back();
        return AlgebraicSpec{std::move(poly), lo, hi};
    }
    if (c.eat("dec:")) {
        size_t start = c.i;
        if (c.i < c.s.size() && (c.s[c.i] == '-' || c.s[c.i] == '+')) ++c.i;
        size_t ip = c.i;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
        if (c.i == ip) c.fail("dec: expects digits");
        long digits = 0;
        mpz_class num(c.s.substr(start, c.i - start));
        if (c.i < c.s.size() && c.s[c.i] == '.') {
            ++c.i;
            size_t fp = c.i;
            while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
            digits = static_cast<long>(c.i - fp);
            if (digits == 0) c.fail("dec: expects digits after '.'");
            mpz_class frac(c.s.substr(fp, static_cast<size_t>(digits)));
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits));
            bool neg = c.s[start] == '-';
            num = num * den + (neg ? -frac : frac);
            mpq_class v(num, den);
            v.canonicalize();
            return DecimalSpec{v, digits};
        }
        return DecimalSpec{mpq_class(num), 0};
    }
    if (c.eat("liouville:")) {
        mpz_class b = parse_int(c);
        if (b < 2 || b > 64) c.fail("liouville: base must be in [2, 64]");
        return LiouvilleSpec{static_cast<int>(b.get_si())};
    }
    if (c.eat("champernowne:")) {
        mpz_class b = parse_int(c);
        if (b < 2 || b > 64) c.fail("champernowne: base must be in [2, 64]");
        return ChampernowneSpec{static_cast<int>(b.get_si())};
    }
    if (c.eat("e")) return EulerESpec{};
    c.fail("unknown real spec");
}

}  // namespace toruslab
