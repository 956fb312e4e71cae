#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toruslab/gauss.hpp"
#include "toruslab/lattice.hpp"
#include "toruslab/symbols.hpp"

namespace toruslab {

struct Coeff {
    bool exact = true;
    GaussQ q;                      // valid when exact
    std::complex<double> d{0, 0};  // always mirrors the value

    static Coeff from(GaussQ g) { return {true, std::move(g), {}}; }
    static Coeff from(std::complex<double> z) { return {false, GaussQ(), z}; }
    std::complex<double> approx() const { return exact ? q.to_complex() : d; }
    bool is_zero() const { return exact ? q.is_zero() : (d == std::complex<double>{0, 0}); }
};

// Finitely supported Fourier coefficients xi -> c.  No stored coefficient is
// exactly zero; support iterates in lexicographic order.
class SpectralDistribution {
  public:
    explicit SpectralDistribution(int n, std::string origin = "user")
        : n_(n), origin_(std::move(origin)) {}

    int dim() const { return n_; }
    const std::string& origin() const { return origin_; }
    size_t support_size() const { return coeffs_.size(); }
    bool all_exact() const;

    void set(const Frequency& xi, Coeff c);  // zero drops the entry
    void set(const Frequency& xi, GaussQ g) { set(xi, Coeff::from(std::move(g))); }
    const Coeff* find(const Frequency& xi) const;

    const std::map<std::vector<Coord>, Coeff>& entries() const { return coeffs_; }

    bool operator==(const SpectralDistribution& o) const;

  private:
    int n_;
    std::string origin_;
    std::map<std::vector<Coord>, Coeff> coeffs_;
};

// ||u||_{H^k}^2 summed shell-ascending (then lexicographic) for reproducible
// float results
double sobolev_norm_sq(const SpectralDistribution& u, double k);
double sobolev_norm(const SpectralDistribution& u, double k);
// exact accumulation; available when every coefficient is exact and k integral
std::optional<mpq_class> sobolev_norm_sq_exact(const SpectralDistribution& u, double k);

// coefficientwise p(xi) * u(xi); certified zeros are dropped, undecided
// evaluations are kept and reported through *undecided
SpectralDistribution apply(const Symbol& sym, const SpectralDistribution& u,
                           std::vector<Frequency>* undecided = nullptr);

struct Compatibility {
    bool compatible = true;
    std::vector<Frequency> violations;  // support points sitting on symbol zeros
    std::vector<Frequency> undecided;   // zero test hit the precision cap
};
Compatibility compatibility_check(const Symbol& sym, const SpectralDistribution& f);

struct SolveReport {
    double f_norm_hk = 0.0;       // ||f||_{H^k}
    double u_norm = 0.0;          // ||u||_{H^{k+m-r}}
    double ratio = 0.0;           // u_norm / f_norm (0 when f = 0)
    double k = 0.0, r = 0.0, m = 0.0;
    std::optional<double> window_K;     // certificate from the analysis layer
    std::optional<double> proof_bound;  // (1+n)^{|m-r|/2} / K
};

struct SolveResult {
    SpectralDistribution u;
    SolveReport report;
};

struct IncompatibleRhs : std::runtime_error {
    std::vector<Frequency> violations;
    explicit IncompatibleRhs(std::vector<Frequency> v)
        : std::runtime_error("rhs does not vanish on the symbol zero set"), violations(std::move(v)) {}
};

// u with u(xi) = f(xi)/p(xi); throws IncompatibleRhs unless compatible
SolveResult solve(const Symbol& sym, const SpectralDistribution& f, double k, double r,
                  std::optional<double> window_K = std::nullopt);

// coefficientwise multiply by (1 + ||xi||^2)^{-s/2}; exact for even integer s
SpectralDistribution bessel(const SpectralDistribution& u, double s);

// sum_xi u(xi) * v(-xi), exact (both sides must be all_exact)
GaussQ pairing(const SpectralDistribution& u, const SpectralDistribution& v);

// JSON interchange: { "n": int, "coeffs": [ { "xi": [...], "re": "p/q", "im": "p/q" } ] }
std::string distribution_to_json(const SpectralDistribution& u);
SpectralDistribution distribution_from_json(const std::string& text);

}  // namespace toruslab
