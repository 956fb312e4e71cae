#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toruslab/reals.hpp"

namespace toruslab::dio {

enum class CfStatus {
    Complete,           // requested depth reached, all quotients certified
    Terminated,         // the value is rational and its expansion ended
    TruncationLimited,  // stopped early: precision cap or digit-information cap
};

struct ContinuedFraction {
    std::vector<mpz_class> a;     // partial quotients a_0 .. a_N
    std::vector<mpz_class> p, q;  // convergents p_k/q_k, same indexing
    // quotients with index < certified_depth are certified for the underlying
    // real; beyond that they describe only the truncation used
    long certified_depth = 0;
    CfStatus status = CfStatus::Complete;
    bool from_truncation = false;
    long truncation_digits = 0;  // base-b fractional digits backing the expansion

    size_t size() const { return a.size(); }
};

// Emits at most depth+1 partial quotients a_0..a_depth.  precision_cap_bits
// defaults to alpha's own cap.
ContinuedFraction cf_expand(const CertifiedReal& alpha, int depth, unsigned precision_cap_bits = 0);

// exact check of p_k q_{k-1} - p_{k-1} q_k = (-1)^{k-1}
bool convergents_satisfy_determinant_identity(const ContinuedFraction& cf);

enum class MuStatus { Converged, GrowingUnbounded, TruncationLimited };

struct MuEstimate {
    std::vector<int> index;    // k for each mu value
    std::vector<double> mu;    // per-convergent (or per-level) exponents
    double mu_hat = 0.0;       // median of the tail half (robust limsup estimate)
    double mu_max = 0.0;       // max over all computed values
    int requested_depth = 0;
    MuStatus status = MuStatus::Converged;
    double growth_threshold = 100.0;
    std::string method;  // "cf-convergents" | "series-levels"
};

// depth >= 3; rational classes are rejected (mu = 1 by the registry)
MuEstimate mu_estimate(const CertifiedReal& alpha, int depth, double growth_threshold = 100.0,
                       unsigned precision_cap_bits = 0);

struct RegistryEntry {
    std::string cls;
    double lo = 0.0, hi = 0.0;  // mu or [lo, hi]; hi may be +inf
    bool exact = false;         // lo == hi == mu known exactly
    std::string hi_text;        // display override for bounds beyond double range
    std::string citation;
};

// by coefficient class; UnknownClass is signalled by nullopt
std::optional<RegistryEntry> registry_lookup(const RealSpec& spec);
// named constants not expressible as a RealSpec ("pi", "gamma(1/4)")
std::optional<RegistryEntry> registry_lookup_name(const std::string& name);

}  // namespace toruslab::dio
