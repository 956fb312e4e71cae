#include "toruslab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace toruslab {

namespace detail {

namespace {

using i128 = __int128;

double ln_i128(i128 v) {
    if (v < 0) v = -v;
    return std::log(static_cast<double>(v));
}

bool fits_i64(const mpz_class& z) { return z.fits_slong_p(); }

}  // namespace

class Kernel {
  public:
    std::string text;
    std::string family;
    int dim = 1;
    double order = 0.0;
    bool exact_zero = true;
    bool exact_vals = true;

    virtual ~Kernel() = default;
    virtual ZeroTag zero(const Coord* xi) const = 0;
    virtual AbsLower absl(const Coord* xi) const = 0;
    virtual EvalValue eval(const Coord* xi, unsigned prec) const = 0;

    // xi[0..dim-2] fixed, xi[dim-1] runs over [lo, hi]
    virtual void scan(Coord* xi, Coord lo, Coord hi, std::uint8_t* tag, double* la) const {
        for (Coord t = lo; t <= hi; ++t) {
            xi[dim - 1] = t;
            AbsLower r = absl(xi);
            tag[t - lo] = static_cast<std::uint8_t>(r.tag);
            la[t - lo] = r.tag == ZeroTag::NonZero ? r.log_abs : 0.0;
        }
    }

  protected:
    static AbsLower nonzero(double log_abs) {
        return AbsLower{ZeroTag::NonZero, std::exp(log_abs), log_abs};
    }
    static AbsLower nonzero_abs(double a) { return AbsLower{ZeroTag::NonZero, a, std::log(a)}; }
};

// ---------------------------------------------------------------------------

class LaplacianKernel final : public Kernel {
  public:
    explicit LaplacianKernel(int n) {
        dim = n;
        order = 2;
        family = "laplacian";
        text = "laplacian:" + std::to_string(n);
    }
    ZeroTag zero(const Coord* xi) const override {
        for (int j = 0; j < dim; ++j)
            if (xi[j]) return ZeroTag::NonZero;
        return ZeroTag::Zero;
    }
    AbsLower absl(const Coord* xi) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi, static_cast<size_t>(dim)));
        if (!s) return {ZeroTag::Zero};
        return nonzero_abs(static_cast<double>(s));
    }
    EvalValue eval(const Coord* xi, unsigned) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi, static_cast<size_t>(dim)));
        EvalValue v;
        v.exact = true;
        v.exact_value = GaussQ(mpq_class(-static_cast<long>(s)), mpq_class(0));
        v.approx = {-static_cast<double>(s), 0.0};
        return v;
    }
    void scan(Coord* xi, Coord lo, Coord hi, std::uint8_t* tag, double* la) const override {
        std::uint64_t pre = l2_norm_sq(std::span<const Coord>(xi, static_cast<size_t>(dim - 1)));
        for (Coord t = lo; t <= hi; ++t) {
            std::uint64_t s = pre + static_cast<std::uint64_t>(t * t);
            tag[t - lo] = static_cast<std::uint8_t>(s ? ZeroTag::NonZero : ZeroTag::Zero);
            la[t - lo] = s ? std::log(static_cast<double>(s)) : 0.0;
        }
    }
};

// heat on T^{n+1}: p(xi) = i xi_1 + sum_{j>=2} xi_j^2
class HeatKernel final : public Kernel {
  public:
    explicit HeatKernel(int n) {
        dim = n + 1;
        order = 2;
        family = "heat";
        text = "heat:" + std::to_string(n);
    }
    ZeroTag zero(const Coord* xi) const override {
        for (int j = 0; j < dim; ++j)
            if (xi[j]) return ZeroTag::NonZero;
        return ZeroTag::Zero;
    }
    AbsLower absl(const Coord* xi) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 1)));
        double a2 = static_cast<double>(xi[0]) * static_cast<double>(xi[0]) +
                    static_cast<double>(s) * static_cast<double>(s);
        if (!xi[0] && !s) return {ZeroTag::Zero};
        return nonzero(0.5 * std::log(a2));
    }
    EvalValue eval(const Coord* xi, unsigned) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 1)));
        EvalValue v;
        v.exact = true;
        v.exact_value = GaussQ(mpq_class(static_cast<unsigned long>(s)), mpq_class(static_cast<long>(xi[0])));
        v.approx = v.exact_value.to_complex();
        return v;
    }
    void scan(Coord* xi, Coord lo, Coord hi, std::uint8_t* tag, double* la) const override {
        std::uint64_t pre =
            dim >= 3 ? l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 2))) : 0;
        const double x1 = static_cast<double>(xi[0]);
        for (Coord t = lo; t <= hi; ++t) {
            std::uint64_t s = pre + static_cast<std::uint64_t>(t * t);
            if (!xi[0] && !s) {
                tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::Zero);
                la[t - lo] = 0.0;
                continue;
            }
            tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::NonZero);
            double sd = static_cast<double>(s);
            la[t - lo] = 0.5 * std::log(x1 * x1 + sd * sd);
        }
    }
};

class DxKernel final : public Kernel {
  public:
    explicit DxKernel(int j) {
        dim = j;
        order = 1;
        family = "dx";
        text = "dx:" + std::to_string(j);
    }
    ZeroTag zero(const Coord* xi) const override {
        return xi[dim - 1] ? ZeroTag::NonZero : ZeroTag::Zero;
    }
    AbsLower absl(const Coord* xi) const override {
        if (!xi[dim - 1]) return {ZeroTag::Zero};
        return nonzero_abs(std::abs(static_cast<double>(xi[dim - 1])));
    }
    EvalValue eval(const Coord* xi, unsigned) const override {
        EvalValue v;
        v.exact = true;
        v.exact_value = GaussQ(mpq_class(0), mpq_class(static_cast<long>(xi[dim - 1])));
        v.approx = v.exact_value.to_complex();
        return v;
    }
};

// vf on T^2: p(xi) = i(xi_1 - alpha xi_2), alpha = a_re + i a_im with a_im rational
class VfKernel final : public Kernel {
  public:
    CertifiedReal alpha;
    mpq_class alpha_im;
    enum class Cls { Rational, Surd, Generic } cls;

    // rational fast path
    bool small_rat = false;
    std::int64_t rp = 0, rq = 1;
    mpq_class rat_val;

    // surd fast path: alpha = sqrt(sa/sb)
    bool small_surd = false;
    std::int64_t sa = 0, sb = 1;
    mpz_class za, zb;

    double alpha_d = 0.0;
    double alpha_im_d = 0.0;

    VfKernel(CertifiedReal a, mpq_class aim, const std::string& alpha_text)
        : alpha(std::move(a)), alpha_im(std::move(aim)) {
        dim = 2;
        order = 1;
        family = "vf";
        text = "vf:alpha=" + alpha_text;
        if (auto ex = alpha.exact_rational()) {
            cls = Cls::Rational;
            rat_val = *ex;
            if (fits_i64(rat_val.get_num()) && fits_i64(rat_val.get_den())) {
                small_rat = true;
                rp = rat_val.get_num().get_si();
                rq = rat_val.get_den().get_si();
            }
            exact_vals = sgn(alpha_im) == 0 || true;  // Gaussian rational either way
        } else if (auto* sq = std::get_if<SqrtSpec>(&alpha.spec())) {
            cls = Cls::Surd;
            za = sq->radicand.get_num();
            zb = sq->radicand.get_den();
            if (fits_i64(za) && fits_i64(zb)) {
                small_surd = true;
                sa = za.get_si();
                sb = zb.get_si();
            }
            exact_vals = false;
        } else {
            cls = Cls::Generic;
            exact_vals = false;
            exact_zero = std::holds_alternative<AlgebraicSpec>(alpha.spec());
            if (sgn(alpha_im) != 0) exact_zero = true;  // zeros forced onto the origin
        }
        alpha_d = alpha.approx();
        alpha_im_d = alpha_im.get_d();
    }

    ZeroTag zero(const Coord* xi) const override {
        const Coord x1 = xi[0], x2 = xi[1];
        if (sgn(alpha_im) != 0) return (x2 == 0 && x1 == 0) ? ZeroTag::Zero : ZeroTag::NonZero;
        switch (cls) {
            case Cls::Rational: {
                if (small_rat) {
                    i128 c = (i128)rq * x1 - (i128)rp * x2;
                    return c == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
                }
                mpq_class v = mpq_class(x1) - rat_val * mpq_class(x2);
                return sgn(v) == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
            }
            case Cls::Surd: {
                if ((x1 > 0) != (x2 > 0) && x1 != 0 && x2 != 0) return ZeroTag::NonZero;
                if (small_surd) {
                    i128 c = (i128)sb * x1 * x1 - (i128)sa * x2 * x2;
                    return c == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
                }
                mpz_class c = zb * mpz_class(x1) * x1 - za * mpz_class(x2) * x2;
                return sgn(c) == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
            }
            case Cls::Generic: {
                if (x2 == 0) return x1 == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
                mpq_class q(x1, x2);
                q.canonicalize();
                try {
                    return alpha.compare(q) == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
                } catch (const PrecisionExhausted&) {
                    return ZeroTag::Undecided;
                }
            }
        }
        return ZeroTag::Undecided;
    }

    AbsLower absl(const Coord* xi) const override {
        const Coord x1 = xi[0], x2 = xi[1];
        if (sgn(alpha_im) != 0) {
            if (x1 == 0 && x2 == 0) return {ZeroTag::Zero};
            double re = alpha_im_d * static_cast<double>(x2);
            double im = static_cast<double>(x1) - alpha_d * static_cast<double>(x2);
            return nonzero(0.5 * std::log(re * re + im * im));
        }
        switch (cls) {
            case Cls::Rational: {
                if (small_rat) {
                    i128 c = (i128)rq * x1 - (i128)rp * x2;
                    if (c == 0) return {ZeroTag::Zero};
                    return nonzero(ln_i128(c) - std::log(std::abs(static_cast<double>(rq))));
                }
                mpq_class v = mpq_class(x1) - rat_val * mpq_class(x2);
                if (sgn(v) == 0) return {ZeroTag::Zero};
                return nonzero_abs(std::abs(v.get_d()));
            }
            case Cls::Surd:
                return surd_absl(x1, x2);
            case Cls::Generic:
                return generic_absl(x1, x2);
        }
        return {ZeroTag::Undecided};
    }

    EvalValue eval(const Coord* xi, unsigned prec) const override {
        const Coord x1 = xi[0], x2 = xi[1];
        EvalValue v;
        if (cls == Cls::Rational) {
            // p = i(x1 - alpha x2) with alpha = a + i b  =>  p = b x2 + i (x1 - a x2)
            GaussQ g(alpha_im * mpq_class(x2), mpq_class(x1) - rat_val * mpq_class(x2));
            v.exact = true;
            v.exact_value = g;
            v.approx = g.to_complex();
            return v;
        }
        RatIv a = alpha.enclosure(prec);
        RatIv im = iv_shift(iv_scale(a, mpq_class(-x2)), mpq_class(x1));
        v.exact = false;
        v.re_box = RatIv::point(alpha_im * mpq_class(x2));
        v.im_box = im;
        v.approx = {alpha_im_d * static_cast<double>(x2),
                    static_cast<double>(x1) - alpha_d * static_cast<double>(x2)};
        return v;
    }

    void scan(Coord* xi, Coord lo, Coord hi, std::uint8_t* tag, double* la) const override {
        const Coord x1 = xi[0];
        if (sgn(alpha_im) != 0 || (cls == Cls::Rational && !small_rat) ||
            (cls == Cls::Surd && !small_surd)) {
            Kernel::scan(xi, lo, hi, tag, la);
            return;
        }
        if (cls == Cls::Rational) {
            const double lnq = std::log(std::abs(static_cast<double>(rq)));
            for (Coord t = lo; t <= hi; ++t) {
                i128 c = (i128)rq * x1 - (i128)rp * t;
                if (c == 0) {
                    tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::Zero);
                    la[t - lo] = 0.0;
                } else {
                    tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::NonZero);
                    la[t - lo] = ln_i128(c) - lnq;
                }
            }
            return;
        }
        if (cls == Cls::Surd) {
            const double x1d = static_cast<double>(x1);
            const double lnb = std::log(static_cast<double>(sb));
            for (Coord t = lo; t <= hi; ++t) {
                double td = static_cast<double>(t);
                std::uint8_t* tg = tag + (t - lo);
                double* l = la + (t - lo);
                if ((x1 >= 0) == (t >= 0) || x1 == 0 || t == 0) {
                    i128 c = (i128)sb * x1 * x1 - (i128)sa * t * t;
                    if (c == 0 && (x1 == 0) == (t == 0)) {
                        *tg = static_cast<std::uint8_t>(ZeroTag::Zero);
                        *l = 0.0;
                        continue;
                    }
                    *tg = static_cast<std::uint8_t>(ZeroTag::NonZero);
                    *l = ln_i128(c) - lnb - std::log(std::abs(x1d) + alpha_d * std::abs(td));
                } else {
                    *tg = static_cast<std::uint8_t>(ZeroTag::NonZero);
                    *l = std::log(std::abs(x1d) + alpha_d * std::abs(td));
                }
            }
            return;
        }
        // Generic: double filter, certified escalation only near zero
        const double x1d = static_cast<double>(x1);
        for (Coord t = lo; t <= hi; ++t) {
            double v = x1d - alpha_d * static_cast<double>(t);
            double scale = std::abs(x1d) + std::abs(alpha_d * static_cast<double>(t)) + 1.0;
            if (std::abs(v) > 1e-9 * scale) {
                tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::NonZero);
                la[t - lo] = std::log(std::abs(v));
            } else {
                xi[1] = t;
                AbsLower r = generic_absl(x1, t);
                tag[t - lo] = static_cast<std::uint8_t>(r.tag);
                la[t - lo] = r.tag == ZeroTag::NonZero ? r.log_abs : 0.0;
            }
        }
    }

  private:
    AbsLower surd_absl(Coord x1, Coord x2) const {
        const double x1d = static_cast<double>(x1), x2d = static_cast<double>(x2);
        if (x1 == 0 && x2 == 0) return {ZeroTag::Zero};
        bool same_sign = (x1 >= 0) == (x2 >= 0) || x1 == 0 || x2 == 0;
        if (!same_sign) return nonzero(std::log(std::abs(x1d) + alpha_d * std::abs(x2d)));
        if (small_surd) {
            i128 c = (i128)sb * x1 * x1 - (i128)sa * x2 * x2;
            if (c == 0) return {ZeroTag::Zero};
            return nonzero(ln_i128(c) - std::log(static_cast<double>(sb)) -
                           std::log(std::abs(x1d) + alpha_d * std::abs(x2d)));
        }
        mpz_class c = zb * mpz_class(x1) * x1 - za * mpz_class(x2) * x2;
        if (sgn(c) == 0) return {ZeroTag::Zero};
        double lnc = std::log(std::abs(c.get_d()));
        return nonzero(lnc - std::log(zb.get_d()) - std::log(std::abs(x1d) + alpha_d * std::abs(x2d)));
    }

    AbsLower generic_absl(Coord x1, Coord x2) const {
        if (x2 == 0) {
            if (x1 == 0) return {ZeroTag::Zero};
            return nonzero_abs(std::abs(static_cast<double>(x1)));
        }
        double v = static_cast<double>(x1) - alpha_d * static_cast<double>(x2);
        double scale = std::abs(static_cast<double>(x1)) + std::abs(alpha_d * static_cast<double>(x2)) + 1.0;
        if (std::abs(v) > 1e-9 * scale) return nonzero(std::log(std::abs(v)));
        // refine with enclosures until the sign is certain
        unsigned p = 64;
        const unsigned pmax = alpha.pmax_bits();
        bool known_nonzero = false;
        while (true) {
            RatIv iv = iv_shift(iv_scale(alpha.enclosure(p), mpq_class(-x2)), mpq_class(x1));
            if (iv.sign() != 0) {
                RatIv av = iv_abs(iv);
                double lo = av.lo.get_d(), hi = av.hi.get_d();
                if ((lo > 0 && hi <= lo * (1 + 1e-12)) || p >= pmax)
                    return nonzero(std::log(av.mid().get_d()));
            } else if (exact_zero && !known_nonzero) {
                mpq_class q(x1, x2);
                q.canonicalize();
                try {
                    if (alpha.compare(q) == 0) return {ZeroTag::Zero};
                    known_nonzero = true;
                } catch (const PrecisionExhausted&) {
                    return {ZeroTag::Undecided};
                }
            }
            if (p >= pmax) return {ZeroTag::Undecided};
            p = std::min(2 * p, pmax);
        }
    }
};

// wave on T^{n+1}: p(xi) = -xi_1^2 + eta^2 |xi'|^2
class WaveKernel final : public Kernel {
  public:
    bool rational_eta2;
    mpq_class eta2;                       // when rational
    std::optional<CertifiedReal> eta;     // when eta given and eta^2 irrational
    bool small = false;
    std::int64_t ea = 0, eb = 1;
    double eta2_d;

    WaveKernel(int n, bool is2d, bool rat, mpq_class e2, std::optional<CertifiedReal> et,
               const std::string& spec_text)
        : rational_eta2(rat), eta2(std::move(e2)), eta(std::move(et)) {
        dim = n + 1;
        order = 2;
        family = is2d ? "wave2d" : "wave";
        text = spec_text;
        if (rational_eta2) {
            if (fits_i64(eta2.get_num()) && fits_i64(eta2.get_den())) {
                small = true;
                ea = eta2.get_num().get_si();
                eb = eta2.get_den().get_si();
            }
            eta2_d = eta2.get_d();
            exact_vals = true;
        } else {
            eta2_d = eta->approx() * eta->approx();
            exact_vals = false;
            exact_zero = false;  // decided by enclosure refinement only
        }
    }

    ZeroTag zero(const Coord* xi) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 1)));
        if (rational_eta2) {
            mpz_class c = -eta2.get_den() * mpz_class(xi[0]) * xi[0] +
                          eta2.get_num() * mpz_class(static_cast<unsigned long>(s));
            return sgn(c) == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
        }
        if (s == 0) return xi[0] == 0 ? ZeroTag::Zero : ZeroTag::NonZero;
        if (xi[0] == 0) return ZeroTag::NonZero;  // eta^2 > 0
        mpq_class q(mpz_class(xi[0]) * xi[0], mpz_class(static_cast<unsigned long>(s)));
        q.canonicalize();
        // compare eta^2 with q exactly where the class allows, else by enclosure
        unsigned p = 64;
        const unsigned pmax = eta->pmax_bits();
        while (true) {
            RatIv iv = eta->enclosure(p);
            RatIv sq = iv_mul(iv, iv);
            if (q < sq.lo || q > sq.hi) return ZeroTag::NonZero;
            if (p >= pmax) return ZeroTag::Undecided;
            p = std::min(2 * p, pmax);
        }
    }

    AbsLower absl(const Coord* xi) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 1)));
        const double x1d = static_cast<double>(xi[0]);
        if (rational_eta2 && small) {
            i128 c = -(i128)eb * xi[0] * xi[0] + (i128)ea * static_cast<i128>(s);
            if (c == 0) return {ZeroTag::Zero};
            return nonzero(ln_i128(c) - std::log(static_cast<double>(eb)));
        }
        if (rational_eta2) {
            mpq_class v = -mpq_class(mpz_class(xi[0]) * xi[0]) +
                          eta2 * mpq_class(mpz_class(static_cast<unsigned long>(s)));
            if (sgn(v) == 0) return {ZeroTag::Zero};
            return nonzero_abs(std::abs(v.get_d()));
        }
        double v = -x1d * x1d + eta2_d * static_cast<double>(s);
        double scale = x1d * x1d + eta2_d * static_cast<double>(s) + 1.0;
        if (std::abs(v) > 1e-9 * scale) return nonzero(std::log(std::abs(v)));
        ZeroTag z = zero(xi);
        if (z != ZeroTag::NonZero) return {z};
        // certified magnitude via the eta enclosure
        unsigned p = 64;
        const unsigned pmax = eta->pmax_bits();
        while (true) {
            RatIv iv = eta->enclosure(p);
            RatIv sq = iv_mul(iv, iv);
            RatIv val = iv_shift(iv_scale(sq, mpq_class(static_cast<unsigned long>(s))),
                                 mpq_class(-(mpz_class(xi[0]) * xi[0])));
            if (val.sign() != 0) {
                RatIv av = iv_abs(val);
                return nonzero(std::log(av.mid().get_d()));
            }
            if (p >= pmax) return {ZeroTag::Undecided};
            p = std::min(2 * p, pmax);
        }
    }

    EvalValue eval(const Coord* xi, unsigned prec) const override {
        std::uint64_t s = l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 1)));
        EvalValue v;
        if (rational_eta2) {
            mpq_class val = -mpq_class(mpz_class(xi[0]) * xi[0]) +
                            eta2 * mpq_class(mpz_class(static_cast<unsigned long>(s)));
            v.exact = true;
            v.exact_value = GaussQ(val, mpq_class(0));
            v.approx = {val.get_d(), 0.0};
            return v;
        }
        RatIv iv = eta->enclosure(prec);
        RatIv sq = iv_mul(iv, iv);
        RatIv val = iv_shift(iv_scale(sq, mpq_class(static_cast<unsigned long>(s))),
                             mpq_class(-(mpz_class(xi[0]) * xi[0])));
        v.exact = false;
        v.re_box = val;
        v.im_box = RatIv::point(mpq_class(0));
        v.approx = {val.mid().get_d(), 0.0};
        return v;
    }

    void scan(Coord* xi, Coord lo, Coord hi, std::uint8_t* tag, double* la) const override {
        if (!rational_eta2 || !small) {
            Kernel::scan(xi, lo, hi, tag, la);
            return;
        }
        std::uint64_t pre =
            dim >= 3 ? l2_norm_sq(std::span<const Coord>(xi + 1, static_cast<size_t>(dim - 2))) : 0;
        const double lnb = std::log(static_cast<double>(eb));
        const i128 x1sq = (i128)xi[0] * xi[0];
        for (Coord t = lo; t <= hi; ++t) {
            i128 c = -(i128)eb * x1sq + (i128)ea * static_cast<i128>(pre + (std::uint64_t)(t * t));
            if (c == 0) {
                tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::Zero);
                la[t - lo] = 0.0;
            } else {
                tag[t - lo] = static_cast<std::uint8_t>(ZeroTag::NonZero);
                la[t - lo] = ln_i128(c) - lnb;
            }
        }
    }
};

// bessel potential symbol (1 + ||xi||^2)^{-s/2} on T^1
class BesselKernel final : public Kernel {
  public:
    double s;
    bool even_int;

    explicit BesselKernel(double s_, const std::string& stext) : s(s_) {
        dim = 1;
        order = -s_;
        family = "bessel";
        text = "bessel:s=" + stext;
        even_int = s == std::floor(s) && (static_cast<long>(s) % 2 == 0);
        exact_vals = even_int;
    }
    ZeroTag zero(const Coord*) const override { return ZeroTag::NonZero; }
    AbsLower absl(const Coord* xi) const override {
        double w = 1.0 + static_cast<double>(xi[0]) * static_cast<double>(xi[0]);
        return nonzero(-0.5 * s * std::log(w));
    }
    EvalValue eval(const Coord* xi, unsigned) const override {
        EvalValue v;
        mpz_class w = 1 + mpz_class(xi[0]) * xi[0];
        if (even_int) {
            long e = static_cast<long>(s) / 2;
            mpz_class p;
            mpz_pow_ui(p.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
            mpq_class val = e >= 0 ? mpq_class(1, p) : mpq_class(p);
            val.canonicalize();
            v.exact = true;
            v.exact_value = GaussQ(val, mpq_class(0));
            v.approx = {val.get_d(), 0.0};
            return v;
        }
        v.exact = false;
        v.approx = {std::pow(w.get_d(), -0.5 * s), 0.0};
        return v;
    }
};

// p(xi) = xi / ln(e + |xi|) on T^1
class LogDampKernel final : public Kernel {
  public:
    CertifiedReal euler_e;

    LogDampKernel() : euler_e(RealSpec(EulerESpec{})) {
        dim = 1;
        order = 1;
        family = "logdamp";
        text = "logdamp";
        exact_vals = false;
    }
    ZeroTag zero(const Coord* xi) const override { return xi[0] ? ZeroTag::NonZero : ZeroTag::Zero; }
    AbsLower absl(const Coord* xi) const override {
        if (!xi[0]) return {ZeroTag::Zero};
        double a = std::abs(static_cast<double>(xi[0]));
        return nonzero(std::log(a) - std::log(std::log(std::exp(1.0) + a)));
    }
    EvalValue eval(const Coord* xi, unsigned prec) const override {
        EvalValue v;
        if (!xi[0]) {
            v.exact = true;  // p(0) = 0 exactly
            v.exact_value = GaussQ();
            return v;
        }
        std::uint64_t a = static_cast<std::uint64_t>(std::llabs(xi[0]));
        RatIv arg = iv_shift(euler_e.enclosure(prec + 8), mpq_class(static_cast<unsigned long>(a)));
        RatIv ln = iv_ln(arg, prec + 8);
        RatIv val = iv_scale(iv_inv(ln), mpq_class(static_cast<long>(xi[0])));
        v.exact = false;
        v.re_box = iv_simplify(val, prec);
        v.im_box = RatIv::point(mpq_class(0));
        v.approx = {val.mid().get_d(), 0.0};
        return v;
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Symbol facade

const std::string& Symbol::text() const { return kernel_->text; }
const std::string& Symbol::family() const { return kernel_->family; }
int Symbol::dim() const { return kernel_->dim; }
double Symbol::order() const { return kernel_->order; }
bool Symbol::exact_zero_test() const { return kernel_->exact_zero; }
bool Symbol::exact_values() const { return kernel_->exact_vals; }
Symbol Symbol::transpose() const { return Symbol(kernel_, !flip_); }

namespace {

// stack copy with optional negation (transpose evaluates at -xi)
struct XiBuf {
    Coord data[16];
    XiBuf(std::span<const Coord> xi, bool flip) {
        for (size_t j = 0; j < xi.size(); ++j) data[j] = flip ? -xi[j] : xi[j];
    }
};

}  // namespace

ZeroTag Symbol::zero_test(std::span<const Coord> xi) const {
    if (static_cast<int>(xi.size()) != dim()) throw std::domain_error("symbol: dimension mismatch");
    XiBuf b(xi, flip_);
    return kernel_->zero(b.data);
}

AbsLower Symbol::abs_lower(std::span<const Coord> xi) const {
    if (static_cast<int>(xi.size()) != dim()) throw std::domain_error("symbol: dimension mismatch");
    XiBuf b(xi, flip_);
    return kernel_->absl(b.data);
}

EvalValue Symbol::eval(std::span<const Coord> xi, unsigned prec_bits) const {
    if (static_cast<int>(xi.size()) != dim()) throw std::domain_error("symbol: dimension mismatch");
    XiBuf b(xi, flip_);
    return kernel_->eval(b.data, prec_bits);
}

GaussQ Symbol::eval_exact(std::span<const Coord> xi) const {
    EvalValue v = eval(xi, 64);
    if (!v.exact) throw std::domain_error("symbol: not an exact coefficient class");
    return v.exact_value;
}

void Symbol::scan_span(std::span<const Coord> prefix, Coord lo, Coord hi, std::uint8_t* tag,
                       double* logabs) const {
    Coord buf[16];
    const int n = dim();
    for (int j = 0; j + 1 < n; ++j) buf[j] = flip_ ? -prefix[j] : prefix[j];
    if (!flip_) {
        kernel_->scan(buf, lo, hi, tag, logabs);
        return;
    }
    kernel_->scan(buf, -hi, -lo, tag, logabs);
    std::reverse(tag, tag + (hi - lo + 1));
    std::reverse(logabs, logabs + (hi - lo + 1));
}

// ---------------------------------------------------------------------------
// DSL parser

namespace {

[[noreturn]] void fail_at(const std::string& msg, size_t pos) { throw ParseError(msg, pos); }

long parse_long(const std::string& s, size_t& i) {
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t d = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == d) fail_at("expected integer", start);
    return std::stol(s.substr(start, i - start));
}

mpq_class parse_rat_text(const std::string& s, size_t& i) {
    size_t start = i;
    long num = parse_long(s, i);
    long den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        den = parse_long(s, i);
        if (den == 0) fail_at("zero denominator", start);
    }
    mpq_class r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

Symbol Symbol::parse(const std::string& s, unsigned pmax_bits) {
    using namespace detail;
    auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };

    if (starts("laplacian:")) {
        size_t i = 10;
        long n = parse_long(s, i);
        if (i != s.size()) fail_at("trailing characters", i);
        if (n < 1 || n > 15) fail_at("laplacian: dimension out of range", 10);
        return Symbol(std::make_shared<LaplacianKernel>(static_cast<int>(n)), false);
    }
    if (starts("heat:")) {
        size_t i = 5;
        long n = parse_long(s, i);
        if (i != s.size()) fail_at("trailing characters", i);
        if (n < 1 || n > 14) fail_at("heat: dimension out of range", 5);
        return Symbol(std::make_shared<HeatKernel>(static_cast<int>(n)), false);
    }
    if (starts("dx:")) {
        size_t i = 3;
        long j = parse_long(s, i);
        if (i != s.size()) fail_at("trailing characters", i);
        if (j < 1 || j > 15) fail_at("dx: axis out of range", 3);
        return Symbol(std::make_shared<DxKernel>(static_cast<int>(j)), false);
    }
    if (starts("vf:alpha=")) {
        std::string rest = s.substr(9);
        mpq_class aim = 0;
        size_t ip = rest.find("+i*");
        if (ip != std::string::npos) {
            std::string imtext = rest.substr(ip + 3);
            size_t k = 0;
            aim = parse_rat_text(imtext, k);
            if (k != imtext.size()) fail_at("trailing characters after imaginary part", 9 + ip + 3 + k);
            rest = rest.substr(0, ip);
        }
        RealSpec spec;
        try {
            spec = parse_real_spec(rest);
        } catch (ParseError& e) {
            throw ParseError(std::string("vf: ") + e.what(), 9 + e.pos);
        }
        return Symbol(std::make_shared<VfKernel>(CertifiedReal(std::move(spec), pmax_bits), aim, rest),
                      false);
    }
    if (starts("wave2d:eta=") || starts("wave:n=")) {
        int n;
        std::string eta_text;
        bool is2d = starts("wave2d:eta=");
        bool via_eta2 = false;
        if (is2d) {
            n = 1;
            eta_text = s.substr(11);
        } else {
            size_t i = 7;
            long nn = parse_long(s, i);
            if (nn < 1 || nn > 14) fail_at("wave: dimension out of range", 7);
            n = static_cast<int>(nn);
            if (s.compare(i, 6, ",eta2=") == 0) {
                via_eta2 = true;
                i += 6;
                eta_text = s.substr(i);
            } else if (s.compare(i, 5, ",eta=") == 0) {
                i += 5;
                eta_text = s.substr(i);
            } else {
                fail_at("wave: expects ',eta2=' or ',eta='", i);
            }
        }
        if (via_eta2) {
            size_t k = 0;
            mpq_class e2 = parse_rat_text(eta_text, k);
            if (k != eta_text.size()) fail_at("trailing characters after eta2", s.size() - eta_text.size() + k);
            if (sgn(e2) <= 0) fail_at("wave: eta2 must be positive", 0);
            return Symbol(std::make_shared<WaveKernel>(n, false, true, e2, std::nullopt, s), false);
        }
        RealSpec spec = parse_real_spec(eta_text);
        // eta^2 is rational when eta itself is rational or a square root of a rational
        if (auto* r = std::get_if<RatSpec>(&spec)) {
            if (sgn(r->v) <= 0) fail_at("wave: eta must be positive", 0);
            return Symbol(std::make_shared<WaveKernel>(n, is2d, true, r->v * r->v, std::nullopt, s), false);
        }
        if (auto* d = std::get_if<DecimalSpec>(&spec)) {
            if (sgn(d->v) <= 0) fail_at("wave: eta must be positive", 0);
            return Symbol(std::make_shared<WaveKernel>(n, is2d, true, d->v * d->v, std::nullopt, s), false);
        }
        if (auto* sq = std::get_if<SqrtSpec>(&spec)) {
            return Symbol(std::make_shared<WaveKernel>(n, is2d, true, sq->radicand, std::nullopt, s),
                          false);
        }
        CertifiedReal eta(std::move(spec), pmax_bits);
        if (eta.approx() <= 0) fail_at("wave: eta must be positive", 0);
        return Symbol(std::make_shared<WaveKernel>(n, is2d, false, mpq_class(0), std::move(eta), s), false);
    }
    if (starts("bessel:s=")) {
        std::string st = s.substr(9);
        size_t pos;
        double sv;
        try {
            sv = std::stod(st, &pos);
        } catch (...) {
            fail_at("bessel: bad order", 9);
        }
        if (pos != st.size()) fail_at("trailing characters after bessel order", 9 + pos);
        return Symbol(std::make_shared<BesselKernel>(sv, st), false);
    }
    if (s == "logdamp") return Symbol(std::make_shared<LogDampKernel>(), false);
    fail_at("unknown symbol", 0);
}

}  // namespace toruslab
