#include <cmath>

#include "doctest.h"
#include "toruslab/reals.hpp"

using namespace toruslab;

namespace {

mpq_class pow2q(unsigned bits) {
    mpq_class r(1, mpz_class(1) << bits);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("real spec parsing") {
    CHECK(std::holds_alternative<RatSpec>(parse_real_spec("rat:7/3")));
    CHECK(std::get<RatSpec>(parse_real_spec("rat:-6/4")).v == mpq_class(-3, 2));
    CHECK(std::holds_alternative<SqrtSpec>(parse_real_spec("sqrt:2")));
    CHECK(std::get<SqrtSpec>(parse_real_spec("sqrt:9/2")).radicand == mpq_class(9, 2));
    CHECK(std::holds_alternative<EulerESpec>(parse_real_spec("e")));
    CHECK(std::get<DecimalSpec>(parse_real_spec("dec:1.25")).digits == 2);
    CHECK(std::get<DecimalSpec>(parse_real_spec("dec:1.25")).v == mpq_class(5, 4));
    CHECK(std::get<DecimalSpec>(parse_real_spec("dec:-0.5")).v == mpq_class(-1, 2));
    CHECK(std::get<LiouvilleSpec>(parse_real_spec("liouville:10")).base == 10);
    CHECK(std::get<ChampernowneSpec>(parse_real_spec("champernowne:4")).base == 4);
    CHECK_THROWS_AS(parse_real_spec("rat:1/0"), ParseError);
    CHECK_THROWS_AS(parse_real_spec("nope"), ParseError);
    CHECK_THROWS_AS(parse_real_spec("rat:3"), ParseError);  // rat: requires p/q
    CHECK_THROWS_AS(parse_real_spec("e2"), ParseError);
}

TEST_CASE("sqrt enclosures are certified and nested") {
    CertifiedReal r(parse_real_spec("sqrt:2"));
    RatIv a = r.enclosure(64);
    RatIv b = r.enclosure(128);
    CHECK(a.width() <= pow2q(64));
    CHECK(b.width() <= pow2q(128));
    CHECK(a.lo <= b.lo);
    CHECK(b.hi <= a.hi);
    // reference value at higher precision stays inside the coarse enclosure
    mpq_class ref = r.enclosure(160).mid();
    CHECK(a.contains(ref));
    CHECK(ref * ref < 2);
    // perfect squares are rejected
    CHECK_THROWS_AS(CertifiedReal(parse_real_spec("sqrt:4")), std::domain_error);
    CHECK_THROWS_AS(CertifiedReal(parse_real_spec("sqrt:9/4")), std::domain_error);
}

TEST_CASE("euler e enclosure") {
    CertifiedReal e(RealSpec(EulerESpec{}));
    RatIv iv = e.enclosure(96);
    CHECK(iv.width() <= pow2q(96));
    CHECK(iv.contains(e.enclosure(128).mid()));
    CHECK(iv.mid().get_d() == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    CHECK(e.compare(mpq_class(27, 10)) > 0);
    CHECK(e.compare(mpq_class(28, 10)) < 0);
}

TEST_CASE("algebraic root specs") {
    // x^2 - 2 on [1, 2]
    CertifiedReal r(parse_real_spec("alg:-2:0:1,1..2"));
    RatIv iv = r.enclosure(100);
    CHECK(iv.width() <= pow2q(100));
    CHECK(iv.lo * iv.lo <= 2);
    CHECK(iv.hi * iv.hi >= 2);
    CHECK(r.compare(mpq_class(3, 2)) < 0);
    CHECK(r.compare(mpq_class(7, 5)) > 0);
    // interval with no root, or with two roots, is rejected
    CHECK_THROWS_AS(CertifiedReal(parse_real_spec("alg:-2:0:1,2..3")), std::domain_error);
    CHECK_THROWS_AS(CertifiedReal(parse_real_spec("alg:-2:0:1,-2..2")), std::domain_error);
    // rational root collapses to a point
    CertifiedReal half(parse_real_spec("alg:-1:2,0..1"));
    RatIv hv = half.enclosure(64);
    CHECK(hv.contains(mpq_class(1, 2)));
}

TEST_CASE("series constants") {
    CHECK(liouville_partial_sum(10, 3) == mpq_class(110001, 1000000));
    mpq_class c = champernowne_truncation(10, 20);
    CHECK(c == mpq_class(mpz_class("12345678910111213141"), mpz_class("100000000000000000000")));

    CertifiedReal lv(parse_real_spec("liouville:10"));
    RatIv iv = lv.enclosure(64);
    CHECK(iv.width() <= pow2q(64));
    CHECK(iv.lo > mpq_class(110001, 1000000));

    CertifiedReal ch(parse_real_spec("champernowne:10"));
    RatIv cv = ch.enclosure(64);
    CHECK(cv.width() <= pow2q(64));
    CHECK(cv.contains(ch.enclosure(128).mid()));

    CHECK_THROWS_AS(lv.enclosure(1 << 20), PrecisionExhausted);
}

TEST_CASE("interval logarithm") {
    RatIv l2 = iv_ln_rat(mpq_class(2), 64);
    CHECK(l2.width() <= pow2q(64));
    CHECK(l2.mid().get_d() == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    RatIv l10 = iv_ln_rat(mpq_class(10), 80);
    CHECK(l10.mid().get_d() == doctest::Approx(std::log(10.0)).epsilon(1e-15));
    RatIv lhalf = iv_ln_rat(mpq_class(1, 2), 64);
    CHECK(lhalf.mid().get_d() == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(iv_ln_rat(mpq_class(0), 32), std::domain_error);
}

TEST_CASE("decimal specs compare exactly") {
    CertifiedReal d(parse_real_spec("dec:1.4142135623"));
    CHECK(d.exact_rational().has_value());
    CHECK(d.compare(mpq_class(14142135623LL, 10000000000LL)) == 0);
}
