#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toruslab/lattice.hpp"
#include "toruslab/spectral.hpp"
#include "toruslab/symbols.hpp"

namespace toruslab {

enum class ZeroVerdict { OnlyOrigin, FiniteSuspected, GrowingSuspected };

struct ZeroCensus {
    std::int64_t radius = 0;
    // zero counts inside the nested radii floor(R/4), floor(R/2), R
    long count_quarter = 0, count_half = 0, count_full = 0;
    std::vector<Frequency> zeros;  // lexicographically first entries, capped
    long zero_total = 0;
    std::vector<Frequency> undecided;  // capped
    long undecided_total = 0;
    ZeroVerdict verdict = ZeroVerdict::OnlyOrigin;
};

struct ShellStat {
    int s = 0;                    // dyadic shell [2^s, 2^{s+1})
    std::uint64_t count = 0;      // nonzero-symbol points with |xi| >= 2
    double max_loss = 0.0;        // max over the shell of m - ln|p|/ln|xi|
    Frequency witness;            // argmax, lexicographic tie-break
    double witness_abs_p = 0.0;
    double witness_log_abs = 0.0;
};

struct EnvelopeRow {
    std::uint64_t l1 = 0;
    Frequency xi;  // max-loss point on the sphere |xi| = l1
    double log_l1 = 0.0, abs_p = 0.0, log_abs_p = 0.0, loss = 0.0;
};

struct Certificate {
    double r = 0.0;
    double K = 0.0;  // min over the window of |p(xi)| |xi|^{r-m}, xi != 0, p(xi) != 0
    std::optional<mpq_class> K_sq_exact;  // available for exact symbols with 2(r-m) integral
    Frequency argmin;                     // the binding frequency
    bool degenerate = false;              // every nonzero frequency was a symbol zero
    std::optional<Frequency> violator;    // set when K fell below the requested target
};

struct ScanOptions {
    int tail_shells = 3;
    int threads = 1;
    bool want_envelope = false;
    std::optional<double> certificate_r;
    std::optional<double> certificate_target;  // report a violator when K < target
    size_t zero_cap = 64;
};

struct IndexReport {
    std::string symbol_text;
    int dim = 0;
    double order_m = 0.0;
    std::int64_t radius = 0;
    int tail_shells = 3;
    std::vector<ShellStat> shells;
    double r_hat_gs = 0.0;
    bool gh_infinite_heuristic = false;  // growing zero count: index reported as infinite
    double r_hat_gh = 0.0;               // equals r_hat_gs when the heuristic flag is off
    ZeroCensus census;
    std::optional<Certificate> certificate;
    std::vector<EnvelopeRow> envelope;  // per-sphere upper envelope, when requested
    long undecided_total = 0;
    bool degenerate = false;  // no envelope points (all zeros or radius too small)
};

ZeroCensus zero_scan(const Symbol& sym, const Window& w, size_t zero_cap = 64, int threads = 1);

Certificate certify_lower_bound(const Symbol& sym, const Window& w, double r,
                                std::optional<double> target = std::nullopt, int threads = 1);

// window radius must be >= 16
IndexReport estimate_indices(const Symbol& sym, const Window& w, const ScanOptions& opt = {});

// ---------------------------------------------------------------------------
// witness constructions

enum class WitnessKind { Gh, Gs, ClosedRange };

struct WitnessOptions {
    std::int64_t budget_radius = 0;  // 0: default per dimension (1e6 for n<=2, 1e3 otherwise)
    double k = 0.0;                  // closed-range only
};

struct WitnessResult {
    WitnessKind kind = WitnessKind::Gh;
    double r = 0.0, k = 0.0;
    bool zero_mode = false;  // infinitely many zeros: kernel-sequence construction
    bool budget_exhausted = false;
    int requested = 0;
    std::vector<Frequency> xi;   // xi_1 .. xi_N (achieved count)
    std::vector<double> abs_p;   // |p(xi_j)|
    std::vector<double> bound;   // (1/j) |xi_j|^{m-r}
    SpectralDistribution u;      // GH: sum of modes; GS: the right-hand side f
    // norms of the construction
    double u_norm_h0_sq = 0.0;          // exact when representable (= N for GH)
    double pu_norm_sq = 0.0;            // GH: ||p(D)u||^2_{H^{r-m}}; GS: ||f||^2_{H^{r-m}}
    double proof_bound = 0.0;           // (1+n)^{|m-r|} * sum_{j<=N} j^{-2}
    // closed-range extras
    std::vector<double> tail_norms_sq;  // ||p(D)u_l - f||^2_{H^k} for l = 1..N
    std::vector<double> exact_tails_sq; // the tail sums computed directly
};

WitnessResult gh_witness(const Symbol& sym, double r, int count, const WitnessOptions& opt = {});
WitnessResult gs_witness(const Symbol& sym, double r, int count, const WitnessOptions& opt = {});
WitnessResult closed_range_witness(const Symbol& sym, double r, double k, int count,
                                   const WitnessOptions& opt = {});

// small-nonzero-sequence search only (no zero-mode fallback); exposed for tests
WitnessResult nonzero_witness_search(const Symbol& sym, WitnessKind kind, double r, double k, int count,
                                     const WitnessOptions& opt = {});

// ---------------------------------------------------------------------------
// wave operator classifier on T^{n+1}

enum class WaveCase {
    RationalEta,      // eta in Q: infinitely many zeros, GS index 1 (n = 1) or in [1, 2]
    NoNonzeroZeros,   // n = 2 with an obstruction prime, or n = 1 nonsquare
    InfiniteZeros,    // constructive zero family
};

struct WaveClassification {
    int n = 0;  // Laplacian block dimension; torus is T^{n+1}
    mpq_class eta2;
    std::uint64_t a = 0, b = 0;  // eta^2 = a/b in lowest terms
    WaveCase verdict = WaveCase::NoNonzeroZeros;
    std::uint64_t sf_c = 1, sf_d = 1;  // a = c^2 d, d squarefree
    bool obstruction_a = false, obstruction_b = false;
    std::string gh_index;  // "2", "inf", ...
    std::string gs_index;
    std::vector<Frequency> zero_family;  // verified zeros (exact rational evaluation)
    std::vector<std::string> notes;
};

// eta2 = a/b > 0 in lowest terms; perfect squares take the rational-eta branch
WaveClassification wave_classify(int n, const mpq_class& eta2, int family_size = 5);

}  // namespace toruslab
