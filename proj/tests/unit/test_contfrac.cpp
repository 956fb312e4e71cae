#include <cmath>

#include "doctest.h"
#include "toruslab/contfrac.hpp"

using namespace toruslab;
using namespace toruslab::dio;

namespace {

std::vector<long> head(const ContinuedFraction& cf, size_t n) {
    std::vector<long> out;
    for (size_t i = 0; i < std::min(n, cf.a.size()); ++i) out.push_back(cf.a[i].get_si());
    return out;
}

}  // namespace

TEST_CASE("rational expansion terminates") {
    CertifiedReal a(parse_real_spec("rat:7/3"));
    ContinuedFraction cf = cf_expand(a, 10);
    CHECK(head(cf, 10) == std::vector<long>{2, 3});
    CHECK(cf.status == CfStatus::Terminated);
    CHECK(convergents_satisfy_determinant_identity(cf));
}

TEST_CASE("quadratic surd expansion is exact and periodic") {
    CertifiedReal s2(parse_real_spec("sqrt:2"));
    ContinuedFraction cf = cf_expand(s2, 6);
    CHECK(head(cf, 7) == std::vector<long>{1, 2, 2, 2, 2, 2, 2});
    CHECK(cf.p[0] == 1);
    CHECK(cf.p[1] == 3);
    CHECK(cf.q[1] == 2);
    CHECK(cf.p[2] == 7);
    CHECK(cf.q[2] == 5);
    CHECK(cf.p[3] == 17);
    CHECK(cf.q[3] == 12);
    CHECK(cf.p[4] == 41);
    CHECK(cf.q[4] == 29);
    CHECK(convergents_satisfy_determinant_identity(cf));
    CHECK(cf.certified_depth == 7);

    ContinuedFraction c3 = cf_expand(CertifiedReal(parse_real_spec("sqrt:3")), 7);
    CHECK(head(c3, 8) == std::vector<long>{1, 1, 2, 1, 2, 1, 2, 1});
    ContinuedFraction ch = cf_expand(CertifiedReal(parse_real_spec("sqrt:9/2")), 5);
    // sqrt(4.5) = [2; 8, 4, 8, 4, ...]
    CHECK(head(ch, 5) == std::vector<long>{2, 8, 4, 8, 4});
    CHECK(convergents_satisfy_determinant_identity(ch));
}

TEST_CASE("e expansion from certified enclosures") {
    CertifiedReal e(RealSpec(EulerESpec{}));
    ContinuedFraction cf = cf_expand(e, 14);
    CHECK(head(cf, 15) == std::vector<long>{2, 1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, 1, 1, 10});
    CHECK(cf.status == CfStatus::Complete);
    CHECK(convergents_satisfy_determinant_identity(cf));
}

TEST_CASE("liouville constant expansion") {
    CertifiedReal lv(parse_real_spec("liouville:10"));
    ContinuedFraction cf = cf_expand(lv, 7);
    CHECK(head(cf, 8) == std::vector<long>{0, 9, 11, 99, 1, 10, 9, 999999999999L});
    CHECK(cf.certified_depth == 8);
    CHECK(convergents_satisfy_determinant_identity(cf));
}

TEST_CASE("champernowne expansion with the information cap") {
    CertifiedReal ch(parse_real_spec("champernowne:10"));
    ContinuedFraction cf = cf_expand(ch, 25, 3322);  // ~1000 decimal digits
    CHECK(head(cf, 5) == std::vector<long>{0, 8, 9, 1, 149083});
    CHECK(cf.from_truncation);
    CHECK(cf.truncation_digits == 1000);
    CHECK(cf.certified_depth >= 19);  // the ~1e165 quotient at index 18 is certified
    CHECK(convergents_satisfy_determinant_identity(cf));
}

TEST_CASE("decimal truncation certification is monotone") {
    // 10-digit truncation of sqrt(2): quotients certified while 10 q_k^2 < 10^10
    CertifiedReal d10(parse_real_spec("dec:1.4142135623"));
    ContinuedFraction cf10 = cf_expand(d10, 30);
    CHECK(cf10.from_truncation);
    CHECK(cf10.certified_depth == 12);  // q_11 = 13860, q_12 = 33461
    for (long k = 0; k < cf10.certified_depth; ++k) CHECK(cf10.a[static_cast<size_t>(k)] == (k ? 2 : 1));

    CertifiedReal d12(parse_real_spec("dec:1.414213562373"));
    ContinuedFraction cf12 = cf_expand(d12, 30);
    CHECK(cf12.certified_depth >= cf10.certified_depth);
    for (long k = 0; k < cf10.certified_depth; ++k)
        CHECK(cf10.a[static_cast<size_t>(k)] == cf12.a[static_cast<size_t>(k)]);
}

TEST_CASE("best approximation property of convergents") {
    CertifiedReal s2(parse_real_spec("sqrt:2"), 4096);
    ContinuedFraction cf = cf_expand(s2, 12);
    RatIv a = s2.enclosure(256);
    for (size_t k = 1; k + 1 < cf.q.size(); ++k) {
        mpq_class conv(cf.p[k], cf.q[k]);
        conv.canonicalize();
        RatIv diff = iv_abs(iv_shift(a, -conv));
        mpq_class lim(1, cf.q[k] * cf.q[k + 1]);
        lim.canonicalize();
        CHECK(diff.hi < lim);
        CHECK(lim <= mpq_class(1, cf.q[k] * cf.q[k]));
    }
}

TEST_CASE("mu estimates for quadratic surds") {
    for (int d : {2, 3, 5}) {
        CertifiedReal s(SqrtSpec{mpq_class(d)});
        MuEstimate mu = mu_estimate(s, 20);
        CAPTURE(d);
        CHECK(mu.mu_hat >= 1.9);
        CHECK(mu.mu_hat <= 2.1);
        CHECK(mu.status == MuStatus::Converged);
        CHECK(mu.method == "cf-convergents");
        for (double v : mu.mu) CHECK(v > 2.0);  // q_{k+1} > q_k
    }
}

TEST_CASE("mu estimate flags liouville growth") {
    CertifiedReal lv(parse_real_spec("liouville:10"));
    MuEstimate mu = mu_estimate(lv, 6);
    CHECK(mu.method == "series-levels");
    CHECK(mu.mu_hat > 5.0);
    CHECK(mu.status == MuStatus::GrowingUnbounded);
    // level exponents approach j + 1
    CHECK(mu.mu.front() == doctest::Approx(3.0).epsilon(0.05));
    CHECK(mu.mu.back() == doctest::Approx(7.0).epsilon(0.05));
}

TEST_CASE("mu estimate for champernowne truncations") {
    CertifiedReal ch(parse_real_spec("champernowne:10"));
    MuEstimate mu = mu_estimate(ch, 40, 100.0, 3322);
    CHECK(mu.mu_max >= 6.0);
    CHECK(mu.status != MuStatus::GrowingUnbounded);  // finite measure, isolated spikes
}

TEST_CASE("mu estimate rejects rationals") {
    CertifiedReal r(parse_real_spec("rat:3/2"));
    CHECK_THROWS_AS(mu_estimate(r, 10), std::domain_error);
    CHECK_THROWS_AS(mu_estimate(CertifiedReal(parse_real_spec("sqrt:2")), 2), std::domain_error);
}

TEST_CASE("registry") {
    CHECK(registry_lookup(parse_real_spec("sqrt:2"))->lo == 2.0);
    CHECK(registry_lookup(parse_real_spec("sqrt:2"))->exact);
    CHECK(registry_lookup(parse_real_spec("champernowne:4"))->lo == 4.0);
    CHECK(registry_lookup(parse_real_spec("rat:3/2"))->lo == 1.0);
    CHECK(registry_lookup(parse_real_spec("e"))->lo == 2.0);
    CHECK(std::isinf(registry_lookup(parse_real_spec("liouville:10"))->hi));
    CHECK_FALSE(registry_lookup(parse_real_spec("dec:1.5")).has_value());
    auto pi = registry_lookup_name("pi");
    REQUIRE(pi.has_value());
    CHECK(pi->lo == 2.0);
    CHECK(pi->hi == doctest::Approx(7.6063));
    auto g4 = registry_lookup_name("gamma(1/4)");
    REQUIRE(g4.has_value());
    CHECK(g4->hi_text == "1e330");
}
