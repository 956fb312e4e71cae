#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "toruslab/gauss.hpp"
#include "toruslab/lattice.hpp"
#include "toruslab/reals.hpp"

namespace toruslab {

enum class ZeroTag : std::uint8_t { NonZero = 0, Zero = 1, Undecided = 2 };

// |p(xi)| with its log; tag Zero/Undecided leaves the numeric fields unset
struct AbsLower {
    ZeroTag tag = ZeroTag::NonZero;
    double abs = 0.0;
    double log_abs = 0.0;
};

struct EvalValue {
    bool exact = false;
    GaussQ exact_value;                // valid when exact
    std::complex<double> approx{0, 0};
    std::optional<RatIv> re_box, im_box;  // enclosures for inexact coefficient classes
};

namespace detail {
class Kernel;
}

// An x-independent multiplier p: Z^n -> C with its declared intrinsic order.
// Immutable and cheap to copy.
class Symbol {
  public:
    static Symbol parse(const std::string& dsl_text, unsigned pmax_bits = kDefaultPmaxBits);

    const std::string& text() const;    // canonical DSL form
    const std::string& family() const;  // "laplacian", "heat", "vf", ...
    int dim() const;
    double order() const;  // intrinsic order m

    bool exact_zero_test() const;  // zero test decided by integer arithmetic
    bool exact_values() const;     // eval returns exact Gaussian rationals

    ZeroTag zero_test(std::span<const Coord> xi) const;
    AbsLower abs_lower(std::span<const Coord> xi) const;
    EvalValue eval(std::span<const Coord> xi, unsigned prec_bits = 64) const;

    GaussQ eval_exact(std::span<const Coord> xi) const;  // throws unless exact_values()

    Symbol transpose() const;  // xi -> p(-xi)
    bool transposed() const { return flip_; }

    // Row scan for window engines: xi = (prefix..., t) for t in [lo, hi].
    // Fills tag[i] and, for NonZero entries, logabs[i] = ln|p|.
    void scan_span(std::span<const Coord> prefix, Coord lo, Coord hi, std::uint8_t* tag,
                   double* logabs) const;

  private:
    Symbol(std::shared_ptr<const detail::Kernel> k, bool flip) : kernel_(std::move(k)), flip_(flip) {}
    std::shared_ptr<const detail::Kernel> kernel_;
    bool flip_ = false;
};

}  // namespace toruslab
