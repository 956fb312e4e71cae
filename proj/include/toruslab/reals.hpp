#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace toruslab {

struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t at) : std::runtime_error(msg), pos(at) {}
};

// closed interval with exact rational endpoints
struct RatIv {
    mpq_class lo, hi;

    RatIv() : lo(0), hi(0) {}
    RatIv(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::logic_error("RatIv: lo > hi");
    }
    static RatIv point(mpq_class v) { return RatIv(v, v); }

    mpq_class width() const { return hi - lo; }
    mpq_class mid() const { return (lo + hi) / 2; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
    int sign() const {  // +1 / -1 when certain, 0 when the interval straddles 0
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        return 0;
    }
    RatIv intersect(const RatIv& o) const {
        mpq_class l = std::max(lo, o.lo), h = std::min(hi, o.hi);
        if (l > h) throw std::logic_error("RatIv: empty intersection");
        return RatIv(l, h);
    }
};

RatIv iv_add(const RatIv& a, const RatIv& b);
RatIv iv_sub(const RatIv& a, const RatIv& b);
RatIv iv_mul(const RatIv& a, const RatIv& b);
RatIv iv_neg(const RatIv& a);
RatIv iv_abs(const RatIv& a);
RatIv iv_inv(const RatIv& a);  // requires sign() != 0
RatIv iv_scale(const RatIv& a, const mpq_class& c);
RatIv iv_shift(const RatIv& a, const mpq_class& c);

// Enclosure of ln(x) for x > 0, width <= 2^-prec_bits.  Argument reduction to
// [1, 2) plus the atanh series, all in exact rational arithmetic.
RatIv iv_ln(const RatIv& x, unsigned prec_bits);
RatIv iv_ln_rat(const mpq_class& x, unsigned prec_bits);

// trims endpoint denominators, keeping the enclosure valid
RatIv iv_simplify(const RatIv& a, unsigned prec_bits);

// ---------------------------------------------------------------------------
// Coefficient classes

struct RatSpec {
    mpq_class v;
};
struct SqrtSpec {
    mpq_class radicand;  // positive, not a square of a rational
};
struct AlgebraicSpec {
    std::vector<mpz_class> poly;  // coefficients, constant term first
    mpq_class lo, hi;             // isolating interval, verified at construction
};
struct DecimalSpec {
    mpq_class v;
    long digits;  // fractional digits carried by the input string
};
struct LiouvilleSpec {
    int base;  // sum of base^{-j!}
};
struct ChampernowneSpec {
    int base;
};
struct EulerESpec {};

using RealSpec =
    std::variant<RatSpec, SqrtSpec, AlgebraicSpec, DecimalSpec, LiouvilleSpec, ChampernowneSpec, EulerESpec>;

bool spec_is_exact_rational(const RealSpec& s);   // value is an explicit rational
bool spec_is_quadratic_surd(const RealSpec& s);   // sqrt of a rational
std::string spec_class_name(const RealSpec& s);
std::string spec_to_string(const RealSpec& s);

inline constexpr unsigned kDefaultPmaxBits = 4096;

// A real number given by a RealSpec, queryable for nested enclosures of
// width <= 2^-p up to the configured cap.
class CertifiedReal {
  public:
    explicit CertifiedReal(RealSpec spec, unsigned pmax_bits = kDefaultPmaxBits);

    const RealSpec& spec() const { return spec_->spec; }
    unsigned pmax_bits() const { return spec_->pmax; }

    // interval of width <= 2^-prec_bits containing the value;
    // throws PrecisionExhausted when prec_bits > pmax
    RatIv enclosure(unsigned prec_bits) const;

    // exact value when the class is an explicit rational
    std::optional<mpq_class> exact_rational() const;

    double approx() const;

    // sign of (value - q), refining as needed; throws PrecisionExhausted when
    // the cap cannot separate them (never guesses)
    int compare(const mpq_class& q) const;

    bool is_rational_class() const { return spec_is_exact_rational(spec_->spec); }

  private:
    struct State {
        RealSpec spec;
        unsigned pmax;
        mutable std::mutex mu;
        mutable bool has_cache = false;
        mutable unsigned cache_bits = 0;
        mutable RatIv cache;
    };
    std::shared_ptr<State> spec_;
};

// "rat:3/2", "sqrt:2", "alg:-2:0:1,1..2", "dec:1.414", "liouville:10",
// "champernowne:10", "e"; position-carrying ParseError on bad input
RealSpec parse_real_spec(const std::string& text);

// the Champernowne truncation to `digits` base-b fractional digits, exact
mpq_class champernowne_truncation(int base, long digits);
// partial sum of base^{-j!} through level J, exact
mpq_class liouville_partial_sum(int base, int level);

}  // namespace toruslab
