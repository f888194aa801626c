#include "hicyclo/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace hicyclo {

namespace {

void shuffle_rec(int p, int q, int i, int j, Shuffle& cur, std::vector<Shuffle>& out) {
    if (i == p && j == q) {
        out.push_back(cur);
        return;
    }
    if (i < p) {
        cur.push_back(i);
        shuffle_rec(p, q, i + 1, j, cur, out);
        cur.pop_back();
    }
    if (j < q) {
        cur.push_back(p + j);
        shuffle_rec(p, q, i, j + 1, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Shuffle> shuffles(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("shuffles: negative block size");
    std::vector<Shuffle> out;
    Shuffle cur;
    cur.reserve(p + q);
    shuffle_rec(p, q, 0, 0, cur, out);
    return out;
}

bool is_shuffle(const Shuffle& s, int p, int q) {
    if (static_cast<int>(s.size()) != p + q) return false;
    int last_a = -1, last_b = p - 1;
    std::vector<char> seen(p + q, 0);
    for (int v : s) {
        if (v < 0 || v >= p + q || seen[v]) return false;
        seen[v] = 1;
        if (v < p) {
            if (v <= last_a) return false;
            last_a = v;
        } else {
            if (v <= last_b) return false;
            last_b = v;
        }
    }
    return true;
}

namespace {

void comp_rec(int pos, int rest, int m, std::vector<int>& cur,
              std::vector<std::vector<int>>& out) {
    if (pos == m - 1) {
        cur[pos] = rest;
        out.push_back(cur);
        return;
    }
    for (int v = 1; v <= rest - (m - 1 - pos); ++v) {
        cur[pos] = v;
        comp_rec(pos + 1, rest - v, m, cur, out);
    }
}

} // namespace

std::vector<std::vector<int>> compositions(int w, int m) {
    std::vector<std::vector<int>> out;
    if (m < 1 || w < m) return out;
    std::vector<int> cur(m);
    comp_rec(0, w, m, cur, out);
    return out;
}

namespace {

struct Sub {
    int root; // child encoding: < 0 leaf -root, >= 0 node index
    std::vector<std::array<int, 2>> nodes;
};

// Full binary trees whose in-order leaves are lo..hi.
std::vector<Sub> enumerate_splits(int lo, int hi) {
    std::vector<Sub> out;
    if (lo == hi) {
        out.push_back({-lo, {}});
        return out;
    }
    for (int split = lo; split < hi; ++split) {
        auto lefts = enumerate_splits(lo, split);
        auto rights = enumerate_splits(split + 1, hi);
        for (const auto& L : lefts)
            for (const auto& R : rights) {
                Sub s;
                s.nodes.push_back({0, 0});
                const int loff = 1;
                const int roff = 1 + static_cast<int>(L.nodes.size());
                auto shift = [](int child, int off) { return child < 0 ? child : child + off; };
                for (auto n : L.nodes) s.nodes.push_back({shift(n[0], loff), shift(n[1], loff)});
                for (auto n : R.nodes) s.nodes.push_back({shift(n[0], roff), shift(n[1], roff)});
                s.nodes[0] = {shift(L.root, loff), shift(R.root, roff)};
                s.root = 0;
                out.push_back(std::move(s));
            }
    }
    return out;
}

void serialize_node(const PlaneTree& t, int child, std::string& s) {
    if (child < 0) {
        s += std::to_string(-child);
        return;
    }
    s += '(';
    serialize_node(t, t.nodes[child][0], s);
    s += ' ';
    serialize_node(t, t.nodes[child][1], s);
    s += ')';
}

} // namespace

std::vector<PlaneTree> plane_trivalent_trees(int num_legs) {
    if (num_legs < 3) throw std::invalid_argument("plane_trivalent_trees: need >= 3 legs");
    std::vector<PlaneTree> out;
    for (auto& sub : enumerate_splits(1, num_legs - 1)) {
        PlaneTree t;
        t.num_legs = num_legs;
        t.nodes = std::move(sub.nodes);
        out.push_back(std::move(t));
    }
    return out;
}

std::string PlaneTree::serialize() const {
    std::string s = "(0 ";
    if (nodes.empty()) {
        s += "1";
    } else {
        serialize_node(*this, 0, s);
    }
    s += ')';
    return s;
}

std::pair<CyclicWord, int> cyclic_canonicalize(const CyclicWord& w) {
    if (w.letters.empty()) throw std::invalid_argument("cyclic_canonicalize: empty word");
    const int n = static_cast<int>(w.letters.size());
    CyclicWord best = w;
    int aut = 0;
    for (int r = 0; r < n; ++r) {
        std::vector<int> rot(n);
        for (int i = 0; i < n; ++i) rot[i] = w.letters[(i + r) % n];
        if (rot == w.letters) ++aut;
        if (rot < best.letters) best.letters = rot;
    }
    return {best, aut};
}

unsigned long catalan(int n) {
    if (n < 0) return 0;
    unsigned long c = 1;
    for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
    return c;
}

} // namespace hicyclo
