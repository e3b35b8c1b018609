#pragma once

#include "confcoh/poset.hpp"

#include <memory>

namespace confcoh {

// Functor from a finite poset to cochain complexes, with an optional compatible group action.
struct PosetFunctor {
    FinitePoset carrier;
    std::vector<GradedComplex> values;                // at(x)
    std::function<ChainMap(int, int)> map;            // x <= y : at(x) -> at(y)
    std::function<int(const Permutation&, int)> carrier_action;       // optional
    std::function<ChainMap(const Permutation&, int)> action;          // optional: at(x) -> at(g x)

    const GradedComplex& at(int x) const { return values[x]; }
};

// Checks that every map is a chain map and that maps compose on all triples x < y < z of
// `region` (all carrier elements when empty).
inline void validate_functor(const PosetFunctor& F, const std::vector<char>& region = {}) {
    const auto& P = F.carrier;
    auto in = [&](int x) { return region.empty() || region[x]; };
    std::map<std::pair<int, int>, ChainMap> cache;
    auto get = [&](int x, int y) -> const ChainMap& {
        auto it = cache.find({x, y});
        if (it == cache.end()) {
            it = cache.emplace(std::make_pair(x, y), F.map(x, y)).first;
            validate_chain_map(F.at(x), F.at(y), it->second);
        }
        return it->second;
    };
    for (int x = 0; x < P.size(); ++x) {
        if (!in(x)) continue;
        for (int y : P.strictly_above(x)) {
            if (!in(y)) continue;
            const ChainMap& fxy = get(x, y);
            for (int z : P.strictly_above(y)) {
                if (!in(z)) continue;
                const ChainMap& fyz = get(y, z);
                const ChainMap& fxz = get(x, z);
                const auto& X = F.at(x);
                const auto& Y = F.at(y);
                const auto& Z = F.at(z);
                for (int k = X.lo(); k <= X.hi(); ++k)
                    require(fyz.at(k, Y, Z) * fxy.at(k, X, Y) == fxz.at(k, X, Z),
                            "functor does not compose on " + P.label(x) + " < " + P.label(y) + " < " + P.label(z));
            }
        }
    }
}

enum class BarFlavor { B, Btilde };

struct BarCell {
    int chain = 0;  // index into BarComplex::chains
    int q = 0;      // internal degree in at(max chain)
    int b = 0;      // basis index inside that degree
};

class BarComplex {
public:
    BarFlavor flavor = BarFlavor::B;
    std::shared_ptr<const PosetFunctor> functor;
    std::vector<char> in_U;
    std::vector<std::vector<int>> chains;
    std::vector<int> chain_max;   // the bottom element for the empty chain
    std::vector<int> horizontal;  // horizontal degree per chain
    GradedComplex total;
    std::vector<std::vector<BarCell>> cells;  // per total degree, from total.lo()

    int position(int chain, int q, int b) const {
        auto it = cell_index_.find({chain, q, b});
        return it == cell_index_.end() ? -1 : it->second;
    }
    int chain_id(const std::vector<int>& c) const {
        auto it = chain_index_.find(c);
        return it == chain_index_.end() ? -1 : it->second;
    }

    // The block of the total complex spanned by cells whose chain has the given maximum.
    GradedComplex graded_piece(int top) const {
        std::vector<int> dims;
        std::vector<std::vector<int>> keep;
        for (int k = total.lo(); k <= total.hi(); ++k) {
            std::vector<int> sel;
            const auto& cs = cells[k - total.lo()];
            for (std::size_t i = 0; i < cs.size(); ++i)
                if (chain_max[cs[i].chain] == top) sel.push_back(static_cast<int>(i));
            dims.push_back(static_cast<int>(sel.size()));
            keep.push_back(std::move(sel));
        }
        std::vector<ExactMatrix> diffs;
        for (int k = total.lo(); k <= total.hi(); ++k) {
            int i = k - total.lo();
            ExactMatrix d = total.diff(k);
            std::vector<int> rowmap(d.rows(), -1);
            if (k + 1 <= total.hi())
                for (std::size_t r = 0; r < keep[i + 1].size(); ++r) rowmap[keep[i + 1][r]] = static_cast<int>(r);
            std::vector<SparseVec> cols;
            for (int c : keep[i]) {
                SparseVec v;
                for (const auto& [r, x] : d.column(c))
                    if (rowmap[r] >= 0) v[rowmap[r]] = x;
                cols.push_back(std::move(v));
            }
            int next = k + 1 <= total.hi() ? dims[i + 1] : 0;
            diffs.push_back(ExactMatrix::from_columns(total.ring(), next, cols));
        }
        return GradedComplex(total.ring(), total.lo(), dims, diffs);
    }

    friend BarComplex bar_complex(const std::vector<char>& in_U, std::shared_ptr<const PosetFunctor> F,
                                  BarFlavor flavor, Ring ring);

private:
    std::map<std::tuple<int, int, int>, int> cell_index_;
    std::map<std::vector<int>, int> chain_index_;
};

inline BarComplex bar_complex(const std::vector<char>& in_U, std::shared_ptr<const PosetFunctor> F, BarFlavor flavor,
                              Ring ring) {
    const auto& P = F->carrier;
    require(static_cast<int>(in_U.size()) == P.size(), "subset size mismatch");
    for (int x = 0; x < P.size(); ++x)
        if (in_U[x])
            for (int y : P.strictly_above(x)) require(in_U[y], "subset is not upward closed");
    int bottom = P.bottom();
    require(flavor == BarFlavor::B || bottom >= 0, "the tilde bar complex needs a bottom element");

    BarComplex bar;
    bar.flavor = flavor;
    bar.functor = F;
    bar.in_U = in_U;
    bool any = false;
    for (char c : in_U) any = any || c;
    if (flavor == BarFlavor::Btilde) bar.chains.push_back({});
    if (any)
        for (auto& c : P.chains(in_U)) bar.chains.push_back(std::move(c));
    for (std::size_t i = 0; i < bar.chains.size(); ++i) {
        const auto& c = bar.chains[i];
        bar.chain_index_[c] = static_cast<int>(i);
        bar.chain_max.push_back(c.empty() ? bottom : c.back());
        bar.horizontal.push_back(flavor == BarFlavor::Btilde ? static_cast<int>(c.size()) : static_cast<int>(c.size()) - 1);
    }

    int lo = 0, hi = -1;
    bool first = true;
    for (std::size_t i = 0; i < bar.chains.size(); ++i) {
        const auto& V = F->at(bar.chain_max[i]);
        for (int q = V.lo(); q <= V.hi(); ++q)
            if (V.dim(q) > 0) {
                int t = bar.horizontal[i] + q;
                if (first) lo = hi = t, first = false;
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
    }
    if (first) {
        bar.total = GradedComplex(ring, 0, {}, {});
        return bar;
    }
    bar.cells.assign(hi - lo + 1, {});
    for (std::size_t i = 0; i < bar.chains.size(); ++i) {
        const auto& V = F->at(bar.chain_max[i]);
        for (int q = V.lo(); q <= V.hi(); ++q)
            for (int b = 0; b < V.dim(q); ++b) {
                int t = bar.horizontal[i] + q;
                auto& list = bar.cells[t - lo];
                bar.cell_index_[{static_cast<int>(i), q, b}] = static_cast<int>(list.size());
                list.push_back({static_cast<int>(i), q, b});
            }
    }

    std::map<std::pair<int, int>, ChainMap> map_cache;
    auto map_at = [&](int x, int y, int q) {
        auto it = map_cache.find({x, y});
        if (it == map_cache.end()) it = map_cache.emplace(std::make_pair(x, y), F->map(x, y)).first;
        return it->second.at(q, F->at(x), F->at(y));
    };
    std::map<std::tuple<int, int, int>, ExactMatrix> matrix_cache;
    auto map_matrix = [&](int x, int y, int q) -> const ExactMatrix& {
        auto key = std::make_tuple(x, y, q);
        auto it = matrix_cache.find(key);
        if (it == matrix_cache.end()) it = matrix_cache.emplace(key, map_at(x, y, q)).first;
        return it->second;
    };

    std::vector<int> dims;
    std::vector<ExactMatrix> diffs;
    for (int t = lo; t <= hi; ++t) dims.push_back(static_cast<int>(bar.cells[t - lo].size()));
    for (int t = lo; t <= hi; ++t) {
        const auto& src = bar.cells[t - lo];
        std::vector<SparseVec> cols(src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            const BarCell& cell = src[j];
            const auto& c = bar.chains[cell.chain];
            int mx = bar.chain_max[cell.chain];
            int h = bar.horizontal[cell.chain];
            // horizontal part
            for (int x = 0; x < P.size(); ++x) {
                if (!in_U[x]) continue;
                bool fits = true;
                int pos = 0;
                for (int y : c) {
                    if (y == x || !P.comparable(x, y)) {
                        fits = false;
                        break;
                    }
                    if (P.less(y, x)) ++pos;
                }
                if (!fits) continue;
                std::vector<int> nc = c;
                nc.insert(nc.begin() + pos, x);
                int cid = bar.chain_id(nc);
                if (cid < 0) continue;
                Rational sg(sign_of_power(pos));
                if (pos == static_cast<int>(c.size())) {
                    const ExactMatrix& m = map_matrix(mx, x, cell.q);
                    for (const auto& [b2, v] : m.column(cell.b)) {
                        int row = bar.position(cid, cell.q, b2);
                        add_term(cols[j], row, sg * v);
                    }
                } else {
                    add_term(cols[j], bar.position(cid, cell.q, cell.b), sg);
                }
            }
            // vertical part
            const auto& V = F->at(mx);
            ExactMatrix dv = V.diff(cell.q);
            Rational vs(sign_of_power(h));
            for (const auto& [b2, v] : dv.column(cell.b)) add_term(cols[j], bar.position(cell.chain, cell.q + 1, b2), vs * v);
        }
        int next = t + 1 <= hi ? dims[t + 1 - lo] : 0;
        diffs.push_back(ExactMatrix::from_columns(ring, next, cols));
    }
    bar.total = GradedComplex(ring, lo, dims, diffs);
    return bar;
}

// Chain automorphism of the bar complex induced by g (which must preserve the subset).
inline ChainMap equivariant_action(const Permutation& g, const BarComplex& bar) {
    const PosetFunctor& F = *bar.functor;
    require(static_cast<bool>(F.carrier_action) && static_cast<bool>(F.action), "functor carries no group action");
    const auto& P = F.carrier;
    std::vector<int> perm(P.size());
    for (int x = 0; x < P.size(); ++x) perm[x] = F.carrier_action(g, x);
    for (int x = 0; x < P.size(); ++x) require(bar.in_U[x] == bar.in_U[perm[x]], "group element does not preserve the subset");
    std::map<int, ChainMap> act_cache;
    const auto& T = bar.total;
    ChainMap f{T.lo(), {}};
    for (int t = T.lo(); t <= T.hi(); ++t) {
        const auto& src = bar.cells[t - T.lo()];
        std::vector<SparseVec> cols(src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            const BarCell& cell = src[j];
            std::vector<int> img;
            for (int x : bar.chains[cell.chain]) img.push_back(perm[x]);
            std::sort(img.begin(), img.end(), [&](int a, int b) { return P.less(a, b); });
            int cid = bar.chain_id(img);
            require(cid >= 0, "image chain missing");
            int mx = bar.chain_max[cell.chain];
            auto it = act_cache.find(mx);
            if (it == act_cache.end()) it = act_cache.emplace(mx, F.action(g, mx)).first;
            ExactMatrix m = it->second.at(cell.q, F.at(mx), F.at(perm[mx]));
            for (const auto& [b2, v] : m.column(cell.b)) add_term(cols[j], bar.position(cid, cell.q, b2), v);
        }
        f.maps.push_back(ExactMatrix::from_columns(T.ring(), T.dim(t), cols));
    }
    return f;
}

// Constant functor with value R in degree 0 and identity maps.
inline std::shared_ptr<PosetFunctor> constant_functor(const FinitePoset& P, Ring ring) {
    auto F = std::make_shared<PosetFunctor>();
    F->carrier = P;
    GradedComplex one(ring, 0, {1}, {});
    F->values.assign(P.size(), one);
    F->map = [ring](int, int) { return ChainMap{0, {ExactMatrix::identity(ring, 1)}}; };
    return F;
}

}  // namespace confcoh
