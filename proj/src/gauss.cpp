#include "toruslab/gauss.hpp"

#include <stdexcept>

namespace toruslab {

std::string rat_to_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class rat_from_string(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            mpq_class r(mpz_class(s));
            return r;
        }
        mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        mpq_class r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::domain_error("bad rational literal: " + s);
    }
}

}  // namespace toruslab
