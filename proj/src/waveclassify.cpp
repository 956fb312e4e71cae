#include <sstream>

#include "toruslab/analysis.hpp"
#include "toruslab/ntheory.hpp"

namespace toruslab {

namespace {

Frequency pad_zero_freq(int total_dim, std::vector<Coord> head) {
    head.resize(static_cast<size_t>(total_dim), 0);
    return Frequency{std::move(head)};
}

void verify_zero(const Symbol& sym, const Frequency& xi) {
    GaussQ v = sym.eval_exact(std::span<const Coord>(xi.c));
    if (!v.is_zero()) throw std::logic_error("wave_classify: constructed frequency is not a zero");
}

}  // namespace

WaveClassification wave_classify(int n, const mpq_class& eta2, int family_size) {
    if (n < 1 || n > 14) throw std::domain_error("wave_classify: n out of range");
    if (sgn(eta2) <= 0) throw std::domain_error("wave_classify: eta^2 must be positive");
    if (!eta2.get_num().fits_ulong_p() || !eta2.get_den().fits_ulong_p())
        throw std::domain_error("wave_classify: eta^2 exceeds the supported range");

    WaveClassification cls;
    cls.n = n;
    cls.eta2 = eta2;
    cls.a = eta2.get_num().get_ui();
    cls.b = eta2.get_den().get_ui();

    std::ostringstream symtext;
    symtext << "wave:n=" << n << ",eta2=" << cls.a << "/" << cls.b;
    Symbol sym = Symbol::parse(symtext.str());
    const int dim = n + 1;

    std::uint64_t ra, rb;
    const bool a_sq = nt::is_perfect_square(cls.a, &ra);
    const bool b_sq = nt::is_perfect_square(cls.b, &rb);
    if (a_sq && b_sq) {
        // eta = ra/rb rational: the zero line xi_1 = (ra/rb) xi_2 is infinite
        cls.verdict = WaveCase::RationalEta;
        cls.gh_index = "inf";
        cls.gs_index = n == 1 ? "1" : "[1,2]";
        for (int t = 1; t <= family_size; ++t) {
            Frequency z = pad_zero_freq(dim, {static_cast<Coord>(ra) * t, static_cast<Coord>(rb) * t});
            verify_zero(sym, z);
            cls.zero_family.push_back(std::move(z));
        }
        {
            // small nonzero values along (ra(j+1), rb j): exact magnitudes ra^2 (2j+1)
            std::ostringstream note;
            note << "nonzero values along ((" << ra << "(j+1), " << rb << "j, 0...)): |p| =";
            for (int j = 1; j <= 3; ++j) {
                Frequency w =
                    pad_zero_freq(dim, {static_cast<Coord>(ra) * (j + 1), static_cast<Coord>(rb) * j});
                GaussQ v = sym.eval_exact(std::span<const Coord>(w.c));
                note << " " << rat_to_string(v.re);
            }
            note << " (= a^2 (2j+1) with a = " << ra << "); these drive the solvability index 1";
            cls.notes.push_back(note.str());
        }
        if (n == 1)
            cls.notes.push_back("rational eta on the two-torus: solvable with loss 1, matching the "
                                "measure of a rational coefficient");
        return cls;
    }

    auto [c, d] = nt::squarefree_part(cls.a);
    cls.sf_c = c;
    cls.sf_d = d;
    cls.obstruction_a = nt::has_obstruction_prime(cls.a);
    cls.obstruction_b = nt::has_obstruction_prime(cls.b);

    if (n == 1) {
        // two-torus, eta a quadratic irrational: only the origin vanishes
        cls.verdict = WaveCase::NoNonzeroZeros;
        cls.gh_index = "2";
        cls.gs_index = "2";
        cls.notes.push_back("quadratic irrational eta: loss index 2 on both scales");
        return cls;
    }
    if (n == 2) {
        if (cls.obstruction_a || cls.obstruction_b) {
            cls.verdict = WaveCase::NoNonzeroZeros;
            cls.gh_index = "2";
            cls.gs_index = "2";
            std::ostringstream note;
            note << "obstruction prime (q = 3 mod 4, odd power) in " << (cls.obstruction_a ? "a" : "b")
                 << ": b d j^2 is never a sum of two squares, so no nonzero frequency vanishes";
            cls.notes.push_back(note.str());
        } else {
            cls.verdict = WaveCase::InfiniteZeros;
            cls.gh_index = "inf";
            cls.gs_index = "2";
            for (int j = 1; static_cast<int>(cls.zero_family.size()) < family_size; ++j) {
                std::uint64_t s = cls.b * d * static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(j);
                nt::TwoSquares ts = nt::is_sum_two_squares(s);
                if (!ts.representable) continue;
                Frequency z = pad_zero_freq(dim, {static_cast<Coord>(c * d * static_cast<std::uint64_t>(j)),
                                                  static_cast<Coord>(ts.x), static_cast<Coord>(ts.y)});
                verify_zero(sym, z);
                cls.zero_family.push_back(std::move(z));
            }
        }
        return cls;
    }
    if (n == 3) {
        cls.verdict = WaveCase::InfiniteZeros;
        cls.gh_index = "inf";
        cls.gs_index = "2";
        for (int k = 0; static_cast<int>(cls.zero_family.size()) < family_size; ++k) {
            std::uint64_t j = 2 * (2 * static_cast<std::uint64_t>(k) + 1);
            std::uint64_t s = cls.b * d * j * j;
            nt::ThreeSquares ts = nt::is_sum_three_squares(s);
            if (!ts.representable)
                throw std::logic_error("wave_classify: three-square family unexpectedly empty");
            Frequency z = pad_zero_freq(dim, {static_cast<Coord>(c * d * j), static_cast<Coord>(ts.x),
                                              static_cast<Coord>(ts.y), static_cast<Coord>(ts.z)});
            verify_zero(sym, z);
            cls.zero_family.push_back(std::move(z));
        }
        cls.notes.push_back("zeros built from j = 2(2k+1): b d j^2 avoids the 4^l(8m+7) residue class");
        return cls;
    }
    // n >= 4: four squares always suffice
    cls.verdict = WaveCase::InfiniteZeros;
    cls.gh_index = "inf";
    cls.gs_index = "2";
    for (int t = 1; static_cast<int>(cls.zero_family.size()) < family_size; ++t) {
        std::uint64_t target =
            cls.a * cls.b * static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(t);
        auto ws = nt::four_square_decomposition(target);
        std::vector<Coord> head{static_cast<Coord>(cls.a * static_cast<std::uint64_t>(t)),
                                static_cast<Coord>(ws[0]), static_cast<Coord>(ws[1]),
                                static_cast<Coord>(ws[2]), static_cast<Coord>(ws[3])};
        Frequency z = pad_zero_freq(dim, std::move(head));
        verify_zero(sym, z);
        cls.zero_family.push_back(std::move(z));
    }
    return cls;
}

}  // namespace toruslab
