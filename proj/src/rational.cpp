#include "hicyclo/rational.hpp"

#include <stdexcept>

namespace hicyclo {

Rational rat_parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw std::invalid_argument("bad rational literal: " + s);
    Rational q(s);
    q.canonicalize();
    return q;
}

} // namespace hicyclo
