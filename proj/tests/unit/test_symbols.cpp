#include <cmath>

#include "doctest.h"
#include "toruslab/symbols.hpp"

using namespace toruslab;

namespace {

void check_span_matches_pointwise(const Symbol& sym, std::int64_t R) {
    const int n = sym.dim();
    std::vector<Coord> xi(static_cast<size_t>(n), 0);
    std::vector<std::uint8_t> tag(static_cast<size_t>(2 * R + 1));
    std::vector<double> la(static_cast<size_t>(2 * R + 1));
    std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t rem) {
        if (pos + 1 == n) {
            sym.scan_span(std::span<const Coord>(xi.data(), static_cast<size_t>(n - 1)), -rem, rem,
                          tag.data(), la.data());
            for (Coord t = -rem; t <= rem; ++t) {
                xi[static_cast<size_t>(n - 1)] = t;
                AbsLower ref = sym.abs_lower(xi);
                CHECK(tag[t + rem] == static_cast<std::uint8_t>(ref.tag));
                if (ref.tag == ZeroTag::NonZero)
                    CHECK(la[t + rem] == doctest::Approx(ref.log_abs).epsilon(1e-12));
                CHECK(static_cast<std::uint8_t>(sym.zero_test(xi)) == tag[t + rem]);
            }
            return;
        }
        for (Coord x = -rem; x <= rem; ++x) {
            xi[static_cast<size_t>(pos)] = x;
            rec(pos + 1, rem - (x < 0 ? -x : x));
        }
    };
    rec(0, R);
}

}  // namespace

TEST_CASE("symbol parsing and intrinsic orders") {
    CHECK(Symbol::parse("laplacian:2").order() == 2);
    CHECK(Symbol::parse("laplacian:2").dim() == 2);
    CHECK(Symbol::parse("heat:1").dim() == 2);
    CHECK(Symbol::parse("heat:3").order() == 2);
    CHECK(Symbol::parse("wave2d:eta=sqrt:2").order() == 2);
    CHECK(Symbol::parse("wave:n=3,eta2=2/1").dim() == 4);
    CHECK(Symbol::parse("vf:alpha=sqrt:2").order() == 1);
    CHECK(Symbol::parse("logdamp").order() == 1);
    CHECK(Symbol::parse("bessel:s=1.5").order() == -1.5);
    CHECK(Symbol::parse("dx:2").dim() == 2);
    CHECK(Symbol::parse("dx:2").order() == 1);
    CHECK_THROWS_AS(Symbol::parse("vf:alpha=sqrt:4"), std::domain_error);
    CHECK_THROWS_AS(Symbol::parse("unknown:3"), ParseError);
    CHECK_THROWS_AS(Symbol::parse("laplacian:2x"), ParseError);
    CHECK_THROWS_AS(Symbol::parse("wave:n=2"), ParseError);
    try {
        Symbol::parse("vf:alpha=rat:1//2");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.pos > 0);
    }
}

TEST_CASE("exact evaluations") {
    Symbol heat = Symbol::parse("heat:1");
    GaussQ v = heat.eval_exact(Frequency{3, 2}.c);
    CHECK(v.re == 4);
    CHECK(v.im == 3);

    Symbol vf = Symbol::parse("vf:alpha=rat:3/2");
    CHECK(vf.eval_exact(Frequency{3, 2}.c).is_zero());
    CHECK(vf.zero_test(Frequency{3, 2}.c) == ZeroTag::Zero);
    CHECK(vf.zero_test(Frequency{1, 0}.c) == ZeroTag::NonZero);

    Symbol wave = Symbol::parse("wave2d:eta=sqrt:2");
    CHECK(wave.exact_values());
    CHECK(wave.eval_exact(Frequency{3, 2}.c).re == -1);  // -9 + 2*4

    Symbol lap = Symbol::parse("laplacian:2");
    CHECK(lap.eval_exact(Frequency{1, 1}.c).re == -2);

    Symbol logd = Symbol::parse("logdamp");
    EvalValue lv = logd.eval(Frequency{7}.c, 64);
    CHECK_FALSE(lv.exact);
    CHECK(lv.re_box->contains(mpq_class(0)) == false);
    CHECK(lv.approx.real() == doctest::Approx(7.0 / std::log(std::exp(1.0) + 7.0)).epsilon(1e-12));

    Symbol bes = Symbol::parse("bessel:s=2");
    CHECK(bes.eval_exact(Frequency{1}.c).re == mpq_class(1, 2));
}

TEST_CASE("pell frequencies witness the quadratic loss") {
    Symbol vf = Symbol::parse("vf:alpha=sqrt:2");
    AbsLower a = vf.abs_lower(Frequency{8119, 5741}.c);
    REQUIRE(a.tag == ZeroTag::NonZero);
    double ref = 1.0 / (8119.0 + 5741.0 * std::sqrt(2.0));
    CHECK(std::abs(a.abs - ref) / ref < 1e-9);
    CHECK(vf.zero_test(Frequency{8119, 5741}.c) == ZeroTag::NonZero);
    CHECK(vf.zero_test(Frequency{0, 0}.c) == ZeroTag::Zero);
    // mixed signs have no cancellation
    AbsLower b = vf.abs_lower(Frequency{8119, -5741}.c);
    CHECK(b.abs == doctest::Approx(8119.0 + 5741.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("wave on T^3 with an obstruction prime never vanishes") {
    Symbol w = Symbol::parse("wave:n=2,eta2=3/1");
    for (Coord x1 = -6; x1 <= 6; ++x1)
        for (Coord x2 = -6; x2 <= 6; ++x2)
            for (Coord x3 = -6; x3 <= 6; ++x3) {
                Frequency xi{x1, x2, x3};
                if (xi.is_zero()) continue;
                CHECK(w.zero_test(xi.c) == ZeroTag::NonZero);
            }
}

TEST_CASE("transpose") {
    Symbol vf = Symbol::parse("vf:alpha=rat:3/2");
    Symbol tv = vf.transpose();
    GaussQ a = tv.eval_exact(Frequency{4, 1}.c);
    GaussQ b = vf.eval_exact(Frequency{-4, -1}.c);
    CHECK(a == b);

    Symbol lap = Symbol::parse("laplacian:2");
    Symbol tl = lap.transpose();
    Symbol tt = tl.transpose();
    for (Coord x = -3; x <= 3; ++x)
        for (Coord y = -3; y <= 3; ++y) {
            Frequency xi{x, y};
            CHECK(lap.eval_exact(xi.c) == tl.eval_exact(xi.c));  // even symbol
            CHECK(lap.eval_exact(xi.c) == tt.eval_exact(xi.c));  // involution
        }
}

TEST_CASE("complex coefficient keeps zeros at the origin") {
    Symbol vf = Symbol::parse("vf:alpha=rat:1/2+i*1/3");
    CHECK(vf.zero_test(Frequency{0, 0}.c) == ZeroTag::Zero);
    CHECK(vf.zero_test(Frequency{1, 2}.c) == ZeroTag::NonZero);
    AbsLower a = vf.abs_lower(Frequency{1, 2}.c);
    // |p|^2 = (1 - 1)^2 + (2/3)^2
    CHECK(a.abs == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    GaussQ v = vf.eval_exact(Frequency{1, 2}.c);
    CHECK(v.re == mpq_class(2, 3));
    CHECK(v.im == 0);
}

TEST_CASE("logdamp order sandwich") {
    Symbol logd = Symbol::parse("logdamp");
    for (double eps : {0.5, 0.1, 0.01}) {
        double kmin = 1e300;
        for (std::int64_t t = 2; t <= 1'000'000; t = t < 1000 ? t + 1 : t + t / 3) {
            double ap = logd.abs_lower(Frequency{t}.c).abs;
            kmin = std::min(kmin, ap / std::pow(static_cast<double>(t), 1.0 - eps));
        }
        CAPTURE(eps);
        CHECK(kmin > 0.0);
    }
    double prev = 1e300;
    for (int k = 1; k <= 6; ++k) {
        std::int64_t t = 1;
        for (int i = 0; i < k; ++i) t *= 10;
        double ratio = logd.abs_lower(Frequency{t}.c).abs / static_cast<double>(t);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(prev < 0.075);  // |p(xi)| / |xi| -> 0
}

TEST_CASE("generic coefficient classes certify nonzero values") {
    Symbol vf = Symbol::parse("vf:alpha=e");
    CHECK_FALSE(vf.exact_zero_test());
    CHECK(vf.zero_test(Frequency{3, 1}.c) == ZeroTag::NonZero);
    CHECK(vf.zero_test(Frequency{0, 0}.c) == ZeroTag::Zero);
    EvalValue v = vf.eval(Frequency{3, 2}.c, 96);
    // im part encloses 3 - 2e
    CHECK(v.im_box->contains(mpq_class(-24365, 10000)) == false);
    CHECK(v.approx.imag() == doctest::Approx(3.0 - 2.0 * std::exp(1.0)).epsilon(1e-12));

    Symbol alg = Symbol::parse("vf:alpha=alg:-2:0:1,1..2");
    CHECK(alg.exact_zero_test());
    CHECK(alg.zero_test(Frequency{7, 5}.c) == ZeroTag::NonZero);
}

TEST_CASE("span scans agree with pointwise evaluation") {
    for (const char* text : {"laplacian:2", "heat:1", "vf:alpha=rat:3/2", "vf:alpha=sqrt:2",
                             "wave2d:eta=sqrt:2", "wave2d:eta=rat:1/1", "dx:2"}) {
        CAPTURE(text);
        check_span_matches_pointwise(Symbol::parse(text), 12);
    }
    check_span_matches_pointwise(Symbol::parse("wave:n=2,eta2=2/1"), 8);
    check_span_matches_pointwise(Symbol::parse("heat:2"), 8);
    check_span_matches_pointwise(Symbol::parse("logdamp"), 40);
    check_span_matches_pointwise(Symbol::parse("bessel:s=2"), 40);
    check_span_matches_pointwise(Symbol::parse("vf:alpha=e"), 10);
    check_span_matches_pointwise(Symbol::parse("vf:alpha=rat:1/2+i*1/3"), 10);
    // transposed symbols run through the reversal path
    check_span_matches_pointwise(Symbol::parse("vf:alpha=rat:3/2").transpose(), 10);
    check_span_matches_pointwise(Symbol::parse("heat:1").transpose(), 10);
}
