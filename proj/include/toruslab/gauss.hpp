#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace toruslab {

// Gaussian rational a + bi with exact components.
struct GaussQ {
    mpq_class re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    mpq_class abs_sq() const { return re * re + im * im; }
    GaussQ conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
        mpq_class d = b.abs_sq();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend GaussQ operator*(const GaussQ& a, const mpq_class& c) { return {a.re * c, a.im * c}; }
    bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
};

std::string rat_to_string(const mpq_class& q);
mpq_class rat_from_string(const std::string& s);

}  // namespace toruslab
