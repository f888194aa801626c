#include "hicyclo/derivations.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hicyclo::derivations {

int AssocWord::xcount() const {
    int c = 0;
    for (int l : letters) c += (l > 0);
    return c;
}

WordSum concat(const WordSum& a, const WordSum& b) {
    WordSum out;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) {
            AssocWord w = wa;
            w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
            out.add(w, ca * cb);
        }
    return out;
}

WordSum commutator(const WordSum& a, const WordSum& b) {
    WordSum out = concat(a, b);
    out -= concat(b, a);
    return out;
}

bool Derivation::is_zero() const {
    for (const auto& s : witness)
        if (!s.is_zero()) return false;
    return true;
}

WordSum cyclic_partial(const CyclicWord& c, int letter) {
    WordSum out;
    const int n = static_cast<int>(c.letters.size());
    for (int k = 0; k < n; ++k) {
        if (c.letters[k] != letter) continue;
        AssocWord w;
        w.level = c.level;
        for (int j = 1; j < n; ++j) w.letters.push_back(c.letters[(k + j) % n]);
        out.add(w, Rational(1));
    }
    return out;
}

Derivation kappa(const CyclicWord& c) {
    Derivation d(c.level);
    for (int letter = 0; letter <= c.level; ++letter)
        d.witness[letter] = cyclic_partial(c, letter);
    // a pure power X_i^n has witnesses commuting with every X_i it acts on
    return d;
}

WordSum derivation_value(const Derivation& d, int letter) {
    AssocWord x;
    x.level = d.level;
    x.letters = {letter};
    return commutator(d.witness[letter], WordSum(x));
}

WordSum derivation_apply(const Derivation& d, const WordSum& x) {
    WordSum out;
    for (const auto& [w, c] : x.terms()) {
        for (size_t pos = 0; pos < w.letters.size(); ++pos) {
            WordSum mid = derivation_value(d, w.letters[pos]);
            for (const auto& [vm, cm] : mid.terms()) {
                AssocWord nw;
                nw.level = w.level;
                nw.letters.assign(w.letters.begin(), w.letters.begin() + pos);
                nw.letters.insert(nw.letters.end(), vm.letters.begin(), vm.letters.end());
                nw.letters.insert(nw.letters.end(), w.letters.begin() + pos + 1, w.letters.end());
                out.add(nw, c * cm);
            }
        }
    }
    return out;
}

Derivation derivation_bracket(const Derivation& a, const Derivation& b) {
    if (a.level != b.level) throw std::invalid_argument("derivation_bracket: level mismatch");
    Derivation out(a.level);
    for (int j = 0; j <= a.level; ++j) {
        out.witness[j] = derivation_apply(a, b.witness[j]);
        out.witness[j] -= derivation_apply(b, a.witness[j]);
        out.witness[j] += commutator(b.witness[j], a.witness[j]);
    }
    return out;
}

WordSum special_defect(const Derivation& d) {
    WordSum out;
    for (int j = 0; j <= d.level; ++j) out += derivation_value(d, j);
    // D(X_inf) = -D(Y) - sum_g D(X_g); the defect is the negative of the sum
    out *= Rational(-1);
    return out;
}

CyclicWord relabel(const CyclicWord& c, int h) {
    CyclicWord out = c;
    for (auto& l : out.letters)
        if (l > 0) l = 1 + ((l - 1 + h) % c.level);
    return out;
}

Derivation relabel(const Derivation& d, int h) {
    Derivation out(d.level);
    auto relabel_sum = [&](const WordSum& s) {
        WordSum r;
        for (const auto& [w, c] : s.terms()) {
            AssocWord nw = w;
            for (auto& l : nw.letters)
                if (l > 0) l = 1 + ((l - 1 + h) % d.level);
            r.add(nw, c);
        }
        return r;
    };
    out.witness[0] = relabel_sum(d.witness[0]);
    for (int g = 0; g < d.level; ++g)
        out.witness[1 + ((g + h) % d.level)] = relabel_sum(d.witness[1 + g]);
    return out;
}

namespace {

WordSum truncate_xcount(const WordSum& s, int m) {
    WordSum out;
    for (const auto& [w, c] : s.terms())
        if (w.xcount() == m) out.add(w, c);
    return out;
}

} // namespace

bool gr_equal(const Derivation& a, const Derivation& b, int m) {
    if (a.level != b.level) return false;
    for (int j = 0; j <= a.level; ++j) {
        WordSum va = truncate_xcount(derivation_value(a, j), m);
        WordSum vb = truncate_xcount(derivation_value(b, j), m);
        if (!(va == vb)) return false;
    }
    return true;
}

bool gr_is_zero(const Derivation& a, int m) {
    for (int j = 0; j <= a.level; ++j)
        if (!truncate_xcount(derivation_value(a, j), m).is_zero()) return false;
    return true;
}

std::vector<std::pair<CyclicWord, int>> word_orbits(int level, int w, int m) {
    // enumerate canonical cyclic words of length w with m X-letters
    std::set<std::vector<int>> canon;
    std::vector<int> cur(w, 0);
    for (;;) {
        int xc = 0;
        for (int l : cur) xc += (l > 0);
        if (xc == m) {
            CyclicWord c{level, cur};
            canon.insert(cyclic_canonicalize(c).first.letters);
        }
        int i = w - 1;
        while (i >= 0 && ++cur[i] == level + 1) cur[i--] = 0;
        if (i < 0) break;
    }
    // group into shift orbits, keep the least representative
    std::vector<std::pair<CyclicWord, int>> out;
    std::set<std::vector<int>> seen;
    for (const auto& letters : canon) {
        if (seen.count(letters)) continue;
        CyclicWord rep{level, letters};
        std::vector<int> least = letters;
        for (int h = 0; h < level; ++h) {
            auto shifted = cyclic_canonicalize(relabel(rep, h)).first.letters;
            seen.insert(shifted);
            least = std::min(least, shifted);
        }
        CyclicWord lw{level, least};
        out.push_back({lw, cyclic_canonicalize(lw).second});
    }
    return out;
}

dihedral::DihedralGen word_symbol(const CyclicWord& c) {
    const int n = static_cast<int>(c.letters.size());
    // least rotation starting at an X-letter
    std::vector<int> best;
    for (int r = 0; r < n; ++r) {
        if (c.letters[r] <= 0) continue;
        std::vector<int> rot(n);
        for (int i = 0; i < n; ++i) rot[i] = c.letters[(i + r) % n];
        if (best.empty() || rot < best) best = rot;
    }
    if (best.empty()) throw std::invalid_argument("word_symbol: no X-letter");
    std::vector<int> comp, slots;
    for (int i = 0; i < n; ++i) {
        if (best[i] > 0) {
            slots.push_back(best[i] - 1);
            comp.push_back(1);
        } else {
            ++comp.back();
        }
    }
    slots.push_back(0); // normalized last slot
    return dihedral::make_canonical(c.level, comp, slots);
}

Derivation xi_functional(dihedral::Context& ctx, int w, int m,
                         const std::map<long, Rational>& phi) {
    const int level = ctx.level();
    const auto& q = ctx.quotient(w, m);
    Derivation out(level);
    for (const auto& [rep, aut] : word_orbits(level, w, m)) {
        auto sym = word_symbol(rep);
        auto it = std::lower_bound(q.gens.begin(), q.gens.end(), sym);
        Rational coef = 0;
        for (const auto& [pos, v] : q.classes[it - q.gens.begin()]) {
            auto pit = phi.find(pos);
            if (pit != phi.end()) coef += pit->second * v;
        }
        if (coef == 0) continue;
        coef /= aut;
        // kappa of the G-averaged word
        for (int h = 0; h < level; ++h) {
            Derivation k = kappa(relabel(rep, h));
            for (int j = 0; j <= level; ++j) {
                WordSum s = k.witness[j];
                s *= coef;
                out.witness[j] += s;
            }
        }
    }
    return out;
}

Derivation xi_dual(dihedral::Context& ctx, int w, int m, long basis_pos) {
    return xi_functional(ctx, w, m, {{basis_pos, Rational(1)}});
}

} // namespace hicyclo::derivations
