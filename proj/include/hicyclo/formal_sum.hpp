#pragma once

#include "hicyclo/rational.hpp"

#include <map>
#include <utility>

namespace hicyclo {

// Sparse rational linear combination over any ordered, canonical-form key.
// Zero coefficients are never stored.
template <class G>
class FormalSum {
public:
    using Terms = std::map<G, Rational>;

    FormalSum() = default;
    explicit FormalSum(const G& g, Rational c = Rational(1)) { add(g, c); }

    void add(const G& g, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(g, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    FormalSum& operator+=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms_) add(g, c);
        return *this;
    }
    FormalSum& operator-=(const FormalSum& o) {
        for (const auto& [g, c] : o.terms_) add(g, -c);
        return *this;
    }
    FormalSum& operator*=(const Rational& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [g, v] : terms_) v *= c;
        return *this;
    }

    friend FormalSum operator+(FormalSum a, const FormalSum& b) { a += b; return a; }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) { a -= b; return a; }
    friend FormalSum operator*(FormalSum a, const Rational& c) { a *= c; return a; }

    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    Rational coeff(const G& g) const {
        auto it = terms_.find(g);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

private:
    Terms terms_;
};

} // namespace hicyclo
