#include "toruslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace toruslab {

bool SpectralDistribution::all_exact() const {
    for (auto& [xi, c] : coeffs_)
        if (!c.exact) return false;
    return true;
}

void SpectralDistribution::set(const Frequency& xi, Coeff c) {
    if (xi.dim() != n_) throw std::domain_error("distribution: dimension mismatch");
    if (c.is_zero()) {
        coeffs_.erase(xi.c);
        return;
    }
    if (c.exact) c.d = c.q.to_complex();
    coeffs_[xi.c] = std::move(c);
}

const Coeff* SpectralDistribution::find(const Frequency& xi) const {
    auto it = coeffs_.find(xi.c);
    return it == coeffs_.end() ? nullptr : &it->second;
}

bool SpectralDistribution::operator==(const SpectralDistribution& o) const {
    if (n_ != o.n_ || coeffs_.size() != o.coeffs_.size()) return false;
    auto a = coeffs_.begin();
    auto b = o.coeffs_.begin();
    for (; a != coeffs_.end(); ++a, ++b) {
        if (a->first != b->first) return false;
        if (a->second.exact && b->second.exact) {
            if (!(a->second.q == b->second.q)) return false;
        } else if (a->second.approx() != b->second.approx()) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<const std::pair<const std::vector<Coord>, Coeff>*> shell_ordered(
    const SpectralDistribution& u) {
    std::vector<const std::pair<const std::vector<Coord>, Coeff>*> v;
    v.reserve(u.support_size());
    for (auto& e : u.entries()) v.push_back(&e);
    std::stable_sort(v.begin(), v.end(), [](auto* a, auto* b) {
        return l1_norm(std::span<const Coord>(a->first)) < l1_norm(std::span<const Coord>(b->first));
    });
    return v;
}

mpq_class weight_exact(std::uint64_t l2sq, long k) {
    mpz_class base = 1 + mpz_class(static_cast<unsigned long>(l2sq));
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::labs(k)));
    mpq_class w = k >= 0 ? mpq_class(pw) : mpq_class(1, pw);
    w.canonicalize();
    return w;
}

}  // namespace

double sobolev_norm_sq(const SpectralDistribution& u, double k) {
    double s = 0.0;
    for (auto* e : shell_ordered(u)) {
        std::uint64_t l2 = l2_norm_sq(std::span<const Coord>(e->first));
        double w = sobolev_weight_from_l2sq(l2, k);
        s += w * std::norm(e->second.approx());
    }
    return s;
}

double sobolev_norm(const SpectralDistribution& u, double k) { return std::sqrt(sobolev_norm_sq(u, k)); }

std::optional<mpq_class> sobolev_norm_sq_exact(const SpectralDistribution& u, double k) {
    if (k != std::floor(k) || std::abs(k) > 1e6) return std::nullopt;
    if (!u.all_exact()) return std::nullopt;
    long ki = static_cast<long>(k);
    mpq_class s = 0;
    for (auto* e : shell_ordered(u)) {
        std::uint64_t l2 = l2_norm_sq(std::span<const Coord>(e->first));
        s += weight_exact(l2, ki) * e->second.q.abs_sq();
    }
    return s;
}

SpectralDistribution apply(const Symbol& sym, const SpectralDistribution& u,
                           std::vector<Frequency>* undecided) {
    if (sym.dim() != u.dim()) throw std::domain_error("apply: dimension mismatch");
    SpectralDistribution out(u.dim(), "operator");
    for (auto& [xi, c] : u.entries()) {
        std::span<const Coord> sp(xi);
        ZeroTag z = sym.zero_test(sp);
        if (z == ZeroTag::Zero) continue;
        if (z == ZeroTag::Undecided && undecided) undecided->push_back(Frequency{xi});
        EvalValue v = sym.eval(sp);
        if (v.exact && c.exact)
            out.set(Frequency{xi}, Coeff::from(v.exact_value * c.q));
        else
            out.set(Frequency{xi}, Coeff::from(v.approx * c.approx()));
    }
    return out;
}

Compatibility compatibility_check(const Symbol& sym, const SpectralDistribution& f) {
    if (sym.dim() != f.dim()) throw std::domain_error("compatibility_check: dimension mismatch");
    Compatibility r;
    for (auto& [xi, c] : f.entries()) {
        switch (sym.zero_test(std::span<const Coord>(xi))) {
            case ZeroTag::Zero:
                r.compatible = false;
                r.violations.push_back(Frequency{xi});
                break;
            case ZeroTag::Undecided:
                r.undecided.push_back(Frequency{xi});
                break;
            default:
                break;
        }
    }
    return r;
}

SolveResult solve(const Symbol& sym, const SpectralDistribution& f, double k, double r,
                  std::optional<double> window_K) {
    Compatibility comp = compatibility_check(sym, f);
    if (!comp.compatible) throw IncompatibleRhs(comp.violations);
    if (!comp.undecided.empty())
        throw PrecisionExhausted("solve: zero test undecided inside supp(f)");

    SpectralDistribution u(f.dim(), "solver");
    for (auto& [xi, c] : f.entries()) {
        EvalValue v = sym.eval(std::span<const Coord>(xi));
        if (v.exact && c.exact)
            u.set(Frequency{xi}, Coeff::from(c.q / v.exact_value));
        else
            u.set(Frequency{xi}, Coeff::from(c.approx() / v.approx));
    }
    SolveResult res{std::move(u), {}};
    res.report.k = k;
    res.report.r = r;
    res.report.m = sym.order();
    res.report.f_norm_hk = sobolev_norm(f, k);
    res.report.u_norm = sobolev_norm(res.u, k + sym.order() - r);
    res.report.ratio = res.report.f_norm_hk > 0 ? res.report.u_norm / res.report.f_norm_hk : 0.0;
    if (window_K) {
        res.report.window_K = window_K;
        double n = static_cast<double>(sym.dim());
        res.report.proof_bound = std::pow(1.0 + n, std::abs(sym.order() - r) / 2.0) / *window_K;
    }
    return res;
}

SpectralDistribution bessel(const SpectralDistribution& u, double s) {
    SpectralDistribution out(u.dim(), u.origin());
    const bool even_int = s == std::floor(s) && static_cast<long>(s) % 2 == 0;
    for (auto& [xi, c] : u.entries()) {
        std::uint64_t l2 = l2_norm_sq(std::span<const Coord>(xi));
        if (even_int && c.exact) {
            mpq_class w = weight_exact(l2, -static_cast<long>(s) / 2);
            out.set(Frequency{xi}, Coeff::from(c.q * w));
        } else {
            double w = sobolev_weight_from_l2sq(l2, -s / 2.0);
            out.set(Frequency{xi}, Coeff::from(c.approx() * w));
        }
    }
    return out;
}

GaussQ pairing(const SpectralDistribution& u, const SpectralDistribution& v) {
    if (u.dim() != v.dim()) throw std::domain_error("pairing: dimension mismatch");
    GaussQ s;
    std::vector<Coord> neg;
    for (auto& [xi, c] : u.entries()) {
        if (!c.exact) throw std::domain_error("pairing: exact coefficients required");
        neg.assign(xi.begin(), xi.end());
        for (auto& t : neg) t = -t;
        auto it = v.entries().find(neg);
        if (it == v.entries().end()) continue;
        if (!it->second.exact) throw std::domain_error("pairing: exact coefficients required");
        s = s + c.q * it->second.q;
    }
    return s;
}

std::string distribution_to_json(const SpectralDistribution& u) {
    nlohmann::json j;
    j["n"] = u.dim();
    nlohmann::json arr = nlohmann::json::array();
    for (auto& [xi, c] : u.entries()) {
        nlohmann::json e;
        e["xi"] = xi;
        if (c.exact) {
            e["re"] = rat_to_string(c.q.re);
            e["im"] = rat_to_string(c.q.im);
        } else {
            // binary doubles convert to rationals losslessly
            e["re"] = rat_to_string(mpq_class(c.d.real()));
            e["im"] = rat_to_string(mpq_class(c.d.imag()));
        }
        arr.push_back(std::move(e));
    }
    j["coeffs"] = std::move(arr);
    return j.dump(2);
}

SpectralDistribution distribution_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::domain_error("distribution: missing dimension field 'n'");
    int n = j["n"].get<int>();
    if (n < 1 || n > 15) throw std::domain_error("distribution: dimension out of range");
    SpectralDistribution u(n);
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::domain_error("distribution: missing 'coeffs' array");
    std::set<std::vector<Coord>> seen;
    for (auto& e : j["coeffs"]) {
        std::vector<Coord> xi = e.at("xi").get<std::vector<Coord>>();
        if (static_cast<int>(xi.size()) != n) throw std::domain_error("distribution: xi dimension mismatch");
        for (Coord x : xi)
            if (std::llabs(x) > kMaxCoord) throw std::domain_error("distribution: coordinate out of range");
        if (!seen.insert(xi).second)
            throw std::domain_error("distribution: duplicate frequency in coeffs");
        GaussQ g(rat_from_string(e.at("re").get<std::string>()),
                 rat_from_string(e.at("im").get<std::string>()));
        u.set(Frequency{xi}, Coeff::from(std::move(g)));
    }
    return u;
}

}  // namespace toruslab
