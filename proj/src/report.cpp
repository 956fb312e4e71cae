#include "toruslab/report.hpp"

#include <cmath>
#include <cstdio>

namespace toruslab {

using nlohmann::json;

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json freq_json(const Frequency& f) { return json(f.c); }

json freq_list_json(const std::vector<Frequency>& v) {
    json a = json::array();
    for (auto& f : v) a.push_back(freq_json(f));
    return a;
}

const char* verdict_name(ZeroVerdict v) {
    switch (v) {
        case ZeroVerdict::OnlyOrigin: return "OnlyOrigin";
        case ZeroVerdict::FiniteSuspected: return "FiniteSuspected";
        default: return "GrowingSuspected";
    }
}

}  // namespace

json to_json(const ZeroCensus& c) {
    json j;
    j["radius"] = c.radius;
    j["counts"] = {{"quarter", c.count_quarter}, {"half", c.count_half}, {"full", c.count_full}};
    j["zero_total"] = c.zero_total;
    j["zeros"] = freq_list_json(c.zeros);
    j["undecided_total"] = c.undecided_total;
    j["undecided"] = freq_list_json(c.undecided);
    j["verdict"] = verdict_name(c.verdict);
    return j;
}

json to_json(const Certificate& c) {
    json j;
    j["r"] = fmt17(c.r);
    j["degenerate"] = c.degenerate;
    if (!c.degenerate) {
        j["K"] = fmt17(c.K);
        if (c.K_sq_exact) j["K_sq_exact"] = rat_to_string(*c.K_sq_exact);
        j["argmin"] = freq_json(c.argmin);
        if (c.violator) j["violator"] = freq_json(*c.violator);
    }
    return j;
}

json to_json(const IndexReport& r) {
    json j;
    j["symbol"] = r.symbol_text;
    j["dim"] = r.dim;
    j["order_m"] = fmt17(r.order_m);
    j["radius"] = r.radius;
    j["tail_shells"] = r.tail_shells;
    json shells = json::array();
    for (auto& s : r.shells) {
        json e;
        e["s"] = s.s;
        e["range"] = {std::int64_t{1} << s.s, (std::int64_t{1} << (s.s + 1)) - 1};
        e["count"] = s.count;
        e["max_loss"] = fmt17(s.max_loss);
        e["witness"] = freq_json(s.witness);
        e["witness_abs_p"] = fmt17(s.witness_abs_p);
        e["witness_log_abs_p"] = fmt17(s.witness_log_abs);
        shells.push_back(std::move(e));
    }
    j["shells"] = std::move(shells);
    j["r_hat_gs"] = fmt17(r.r_hat_gs);
    j["r_hat_gh"] = r.gh_infinite_heuristic ? json("inf-heuristic (growing zero count in window)")
                                            : json(fmt17(r.r_hat_gh));
    j["census"] = to_json(r.census);
    if (r.certificate) j["certificate"] = to_json(*r.certificate);
    j["undecided_total"] = r.undecided_total;
    j["degenerate"] = r.degenerate;
    return j;
}

json to_json(const WitnessResult& w) {
    json j;
    switch (w.kind) {
        case WitnessKind::Gh: j["kind"] = "gh"; break;
        case WitnessKind::Gs: j["kind"] = "gs"; break;
        default: j["kind"] = "closed-range"; break;
    }
    j["r"] = fmt17(w.r);
    if (w.kind == WitnessKind::ClosedRange) j["k"] = fmt17(w.k);
    j["zero_mode"] = w.zero_mode;
    j["budget_exhausted"] = w.budget_exhausted;
    j["requested"] = w.requested;
    j["achieved"] = w.xi.size();
    j["frequencies"] = freq_list_json(w.xi);
    json absv = json::array(), bndv = json::array();
    for (double v : w.abs_p) absv.push_back(fmt17(v));
    for (double v : w.bound) bndv.push_back(fmt17(v));
    j["abs_p"] = std::move(absv);
    j["bound"] = std::move(bndv);
    j["u_norm_h0_sq"] = fmt17(w.u_norm_h0_sq);
    j["pu_norm_sq"] = fmt17(w.pu_norm_sq);
    j["proof_bound"] = fmt17(w.proof_bound);
    if (!w.tail_norms_sq.empty()) {
        json t = json::array(), e = json::array();
        for (double v : w.tail_norms_sq) t.push_back(fmt17(v));
        for (double v : w.exact_tails_sq) e.push_back(fmt17(v));
        j["tail_norms_sq"] = std::move(t);
        j["exact_tails_sq"] = std::move(e);
    }
    return j;
}

json to_json(const dio::ContinuedFraction& cf) {
    json j;
    json a = json::array(), p = json::array(), q = json::array();
    for (auto& v : cf.a) a.push_back(v.get_str());
    for (auto& v : cf.p) p.push_back(v.get_str());
    for (auto& v : cf.q) q.push_back(v.get_str());
    j["a"] = std::move(a);
    j["p"] = std::move(p);
    j["q"] = std::move(q);
    j["certified_depth"] = cf.certified_depth;
    switch (cf.status) {
        case dio::CfStatus::Complete: j["status"] = "Complete"; break;
        case dio::CfStatus::Terminated: j["status"] = "Terminated"; break;
        default: j["status"] = "TruncationLimited"; break;
    }
    j["from_truncation"] = cf.from_truncation;
    if (cf.from_truncation) j["truncation_digits"] = cf.truncation_digits;
    return j;
}

json to_json(const dio::MuEstimate& mu) {
    json j;
    j["method"] = mu.method;
    j["depth"] = mu.requested_depth;
    json idx = json::array(), vals = json::array();
    for (int k : mu.index) idx.push_back(k);
    for (double v : mu.mu) vals.push_back(fmt17(v));
    j["k"] = std::move(idx);
    j["mu_k"] = std::move(vals);
    j["mu_hat"] = fmt17(mu.mu_hat);
    j["mu_max"] = fmt17(mu.mu_max);
    j["growth_threshold"] = fmt17(mu.growth_threshold);
    switch (mu.status) {
        case dio::MuStatus::Converged: j["status"] = "Converged"; break;
        case dio::MuStatus::GrowingUnbounded: j["status"] = "GrowingUnbounded (heuristic)"; break;
        default: j["status"] = "TruncationLimited"; break;
    }
    return j;
}

json to_json(const dio::RegistryEntry& e) {
    json j;
    j["class"] = e.cls;
    j["mu_lo"] = fmt17(e.lo);
    j["mu_hi"] = e.hi_text.empty() ? fmt17(e.hi) : e.hi_text;
    j["exact"] = e.exact;
    j["citation"] = e.citation;
    return j;
}

json to_json(const WaveClassification& w) {
    json j;
    j["n"] = w.n;
    j["torus_dim"] = w.n + 1;
    j["eta2"] = rat_to_string(w.eta2);
    j["a"] = w.a;
    j["b"] = w.b;
    switch (w.verdict) {
        case WaveCase::RationalEta: j["case"] = "RationalEta"; break;
        case WaveCase::NoNonzeroZeros: j["case"] = "NoNonzeroZeros"; break;
        default: j["case"] = "InfiniteZeros"; break;
    }
    j["squarefree"] = {{"c", w.sf_c}, {"d", w.sf_d}};
    j["obstruction_prime_in_a"] = w.obstruction_a;
    j["obstruction_prime_in_b"] = w.obstruction_b;
    j["gh_index"] = w.gh_index;
    j["gs_index"] = w.gs_index;
    j["zero_family"] = freq_list_json(w.zero_family);
    j["notes"] = w.notes;
    return j;
}

std::string envelope_csv(const IndexReport& r) {
    std::string out = "l1xi,log_l1xi,abs_p,log_abs_p,loss\n";
    char buf[256];
    for (auto& e : r.envelope) {
        std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(e.l1), e.log_l1, e.abs_p, e.log_abs_p, e.loss);
        out += buf;
    }
    return out;
}

}  // namespace toruslab
