#include "hicyclo/realization.hpp"

#include <algorithm>
#include <stdexcept>

namespace hicyclo::realization {

Vec canonical_vector(Vec v) {
    for (long x : v) {
        if (x > 0) return v;
        if (x < 0) {
            for (auto& y : v) y = -y;
            return v;
        }
    }
    throw std::invalid_argument("canonical_vector: zero vector");
}

namespace {

// legs of the subtree hanging under a child slot
void collect_legs(const PlaneTree& t, int child, std::vector<int>& out) {
    if (child < 0) {
        out.push_back(-child);
        return;
    }
    collect_legs(t, t.nodes[child][0], out);
    collect_legs(t, t.nodes[child][1], out);
}

void contour_rec(const PlaneTree& t, int node, std::vector<std::vector<int>>& out) {
    for (int side = 0; side < 2; ++side) {
        const int child = t.nodes[node][side];
        std::vector<int> legs;
        collect_legs(t, child, legs);
        out.push_back(std::move(legs));
        if (child >= 0) contour_rec(t, child, out);
    }
}

} // namespace

std::vector<std::vector<int>> contour_edges(const PlaneTree& t) {
    std::vector<std::vector<int>> out;
    // the leg-0 stem first: far side holds all other legs
    std::vector<int> rest;
    for (int i = 1; i < t.num_legs; ++i) rest.push_back(i);
    out.push_back(std::move(rest));
    if (!t.nodes.empty()) contour_rec(t, 0, out);
    return out;
}

Vec edge_vector(const PlaneTree& t, const std::vector<int>& edge_legs,
                const std::vector<Vec>& labels) {
    (void)t;
    Vec s(labels[0].size(), 0);
    for (int leg : edge_legs)
        for (size_t i = 0; i < s.size(); ++i) s[i] += labels[leg][i];
    return canonical_vector(std::move(s));
}

int tree_sign(const PlaneTree& t, const std::vector<int>& enumeration) {
    const auto edges = contour_edges(t);
    if (enumeration.size() != edges.size())
        throw std::invalid_argument("tree_sign: enumeration size");
    // parity of the permutation mapping the contour order to the enumeration
    std::vector<int> perm = enumeration;
    int sign = 1;
    for (size_t i = 0; i < perm.size(); ++i)
        for (size_t j = i + 1; j < perm.size(); ++j)
            if (perm[j] < perm[i]) sign = -sign;
    return sign;
}

namespace {

// Sort vertices, tracking permutation parity; a repeated vertex makes the
// oriented cell degenerate.
bool sorted_cell(std::vector<Vec> verts, VoronoiCell& cell, int& sign) {
    sign = 1;
    for (size_t i = 0; i + 1 < verts.size(); ++i)
        for (size_t j = 0; j + 1 < verts.size() - i; ++j)
            if (verts[j + 1] < verts[j]) {
                std::swap(verts[j], verts[j + 1]);
                sign = -sign;
            }
    for (size_t i = 0; i + 1 < verts.size(); ++i)
        if (verts[i] == verts[i + 1]) return false;
    cell.verts = std::move(verts);
    return true;
}

} // namespace

CellChain psi_top(const std::vector<Vec>& extended_basis) {
    const int m = static_cast<int>(extended_basis.size()) - 1;
    if (m < 1) throw std::invalid_argument("psi_top: need at least two vectors");
    CellChain out;
    if (m == 1) {
        VoronoiCell cell;
        cell.verts = {canonical_vector(extended_basis[0])};
        out.add(cell, Rational(1));
        return out;
    }
    // legs (e_0,..,e_m) = (v_{m+1}, v_1,..,v_m)
    std::vector<Vec> labels(m + 1);
    labels[0] = extended_basis[m];
    for (int i = 1; i <= m; ++i) labels[i] = extended_basis[i - 1];
    for (const auto& t : plane_trivalent_trees(m + 1)) {
        std::vector<Vec> verts;
        for (const auto& legs : contour_edges(t)) verts.push_back(edge_vector(t, legs, labels));
        VoronoiCell cell;
        int sign = 1;
        if (!sorted_cell(std::move(verts), cell, sign)) continue;
        out.add(cell, Rational(sign)); // contour enumeration carries sign +1
    }
    return out;
}

CellChain join(const CellChain& a, const CellChain& b) {
    CellChain out;
    for (const auto& [ca, va] : a.terms())
        for (const auto& [cb, vb] : b.terms()) {
            std::vector<Vec> verts = ca.verts;
            verts.insert(verts.end(), cb.verts.begin(), cb.verts.end());
            VoronoiCell cell;
            int sign = 1;
            if (!sorted_cell(std::move(verts), cell, sign)) continue;
            out.add(cell, va * vb * sign);
        }
    return out;
}

CellChain psi_gen(const modular::ModularGen& g) {
    CellChain acc;
    bool first = true;
    for (const auto& blk : g.blocks) {
        std::vector<Vec> tuple = blk.v;
        Vec s(tuple[0].size(), 0);
        for (const auto& v : tuple)
            for (size_t i = 0; i < s.size(); ++i) s[i] += v[i];
        for (auto& x : s) x = -x;
        tuple.push_back(std::move(s));
        CellChain part = psi_top(tuple);
        if (first) {
            acc = std::move(part);
            first = false;
        } else {
            acc = join(acc, part);
        }
    }
    return acc;
}

CellChain relation_image(const FormalSum<modular::ModularGen>& rel) {
    CellChain out;
    for (const auto& [g, c] : rel.terms()) {
        CellChain part = psi_gen(g);
        part *= c;
        out += part;
    }
    return out;
}

CellChain simplex_boundary(const VoronoiCell& c) {
    CellChain out;
    for (size_t i = 0; i < c.verts.size(); ++i) {
        VoronoiCell facet;
        for (size_t j = 0; j < c.verts.size(); ++j)
            if (j != i) facet.verts.push_back(c.verts[j]);
        out.add(facet, (i % 2 == 0) ? Rational(1) : Rational(-1));
    }
    return out;
}

std::string chain_str(const CellChain& ch) {
    std::string s;
    for (const auto& [cell, c] : ch.terms()) {
        if (sgn(c) > 0) s += '+';
        s += rat_str(c);
        s += " | ";
        for (size_t i = 0; i < cell.verts.size(); ++i) {
            if (i) s += "; ";
            for (size_t j = 0; j < cell.verts[i].size(); ++j) {
                if (j) s += ',';
                s += std::to_string(cell.verts[i][j]);
            }
        }
        s += '\n';
    }
    return s;
}

bool equal_up_to_sign(const CellChain& a, const CellChain& b) {
    if (a == b) return true;
    CellChain neg = b;
    neg *= Rational(-1);
    return a == neg;
}

} // namespace hicyclo::realization
