#pragma once

#include "confcoh/complex.hpp"
#include "confcoh/partitions.hpp"

namespace confcoh {

// Finite poset on indices 0..size-1 with an explicit order relation.
class FinitePoset {
public:
    FinitePoset() = default;
    FinitePoset(std::vector<std::string> labels, std::vector<std::vector<char>> le)
        : labels_(std::move(labels)), le_(std::move(le)) {
        int n = size();
        require(static_cast<int>(le_.size()) == n, "order matrix shape mismatch");
        for (int i = 0; i < n; ++i) {
            require(static_cast<int>(le_[i].size()) == n && le_[i][i], "order must be reflexive");
            for (int j = 0; j < n; ++j) {
                if (i != j && le_[i][j]) require(!le_[j][i], "order must be antisymmetric");
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (le_[i][j])
                    for (int k = 0; k < n; ++k)
                        if (le_[j][k]) require(le_[i][k], "order must be transitive");
        build_up_sets();
    }

    static FinitePoset of_partitions(const std::vector<SetPartition>& elems) {
        std::vector<std::string> labels;
        std::vector<std::vector<char>> le(elems.size(), std::vector<char>(elems.size(), 0));
        for (std::size_t i = 0; i < elems.size(); ++i) {
            labels.push_back(elems[i].str());
            for (std::size_t j = 0; j < elems.size(); ++j) le[i][j] = confcoh::leq(elems[i], elems[j]);
        }
        FinitePoset P;
        P.labels_ = std::move(labels);
        P.le_ = std::move(le);
        P.build_up_sets();
        return P;
    }

    static FinitePoset product(const FinitePoset& P, const FinitePoset& Q) {
        std::vector<std::string> labels;
        int n = P.size() * Q.size();
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int a = 0; a < P.size(); ++a)
            for (int b = 0; b < Q.size(); ++b) labels.push_back("(" + P.label(a) + "," + Q.label(b) + ")");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                le[i][j] = P.leq(i / Q.size(), j / Q.size()) && Q.leq(i % Q.size(), j % Q.size());
        return FinitePoset(labels, le);
    }

    static FinitePoset chain_poset(int n) {
        std::vector<std::string> labels;
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i) {
            labels.push_back(std::to_string(i));
            for (int j = i; j < n; ++j) le[i][j] = 1;
        }
        return FinitePoset(labels, le);
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_[i]; }
    bool leq(int i, int j) const { return le_[i][j]; }
    bool less(int i, int j) const { return i != j && le_[i][j]; }
    bool comparable(int i, int j) const { return le_[i][j] || le_[j][i]; }

    int bottom() const {
        for (int i = 0; i < size(); ++i) {
            bool ok = true;
            for (int j = 0; j < size() && ok; ++j) ok = le_[i][j];
            if (ok) return i;
        }
        return -1;
    }
    int top() const {
        for (int i = 0; i < size(); ++i) {
            bool ok = true;
            for (int j = 0; j < size() && ok; ++j) ok = le_[j][i];
            if (ok) return i;
        }
        return -1;
    }

    FinitePoset subposet(const std::vector<int>& idx) const {
        std::vector<std::string> labels;
        std::vector<std::vector<char>> le(idx.size(), std::vector<char>(idx.size(), 0));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            labels.push_back(labels_[idx[i]]);
            for (std::size_t j = 0; j < idx.size(); ++j) le[i][j] = le_[idx[i]][idx[j]];
        }
        FinitePoset P;
        P.labels_ = std::move(labels);
        P.le_ = std::move(le);
        P.build_up_sets();
        return P;
    }

    // Strictly increasing chains (bottom to top), restricted to `allowed` when non-empty,
    // ordered by (length, element sequence).
    std::vector<std::vector<int>> chains(const std::vector<char>& allowed = {}) const {
        std::vector<std::vector<int>> out;
        std::vector<int> cur;
        auto ok = [&](int x) { return allowed.empty() || allowed[x]; };
        std::function<void()> extend = [&]() {
            out.push_back(cur);
            for (int y : above_[cur.back()])
                if (ok(y)) {
                    cur.push_back(y);
                    extend();
                    cur.pop_back();
                }
        };
        for (int x = 0; x < size(); ++x)
            if (ok(x)) {
                cur = {x};
                extend();
            }
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        return out;
    }

    const std::vector<int>& strictly_above(int x) const { return above_[x]; }

private:
    void build_up_sets() {
        above_.assign(size(), {});
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j)
                if (less(i, j)) above_[i].push_back(j);
    }

    std::vector<std::string> labels_;
    std::vector<std::vector<char>> le_;
    std::vector<std::vector<int>> above_;
};

enum class OrderVariant { Plain, Hat, Check, HatCheck };

inline OrderVariant parse_variant(const std::string& s) {
    if (s == "plain") return OrderVariant::Plain;
    if (s == "hat") return OrderVariant::Hat;
    if (s == "check") return OrderVariant::Check;
    if (s == "hatcheck") return OrderVariant::HatCheck;
    throw ValidationError("unknown order-complex variant: " + s);
}

struct OrderComplex {
    GradedComplex complex;
    std::vector<std::vector<std::vector<int>>> chains;  // per degree, from complex.lo()
    std::vector<std::map<std::vector<int>, int>> index;

    ChainMap induced(const FinitePoset& P, const std::vector<int>& perm) const;
};

// Reduced cochain complex of the order complex (plain) or of the collapsed quotients.
inline OrderComplex order_complex(const FinitePoset& P, OrderVariant v, Ring ring = Ring::Z) {
    int top = P.top(), bot = P.bottom();
    bool need_top = v == OrderVariant::Hat || v == OrderVariant::HatCheck;
    bool need_bot = v == OrderVariant::Check || v == OrderVariant::HatCheck;
    require(!need_top || top >= 0, "order complex variant needs a top element");
    require(!need_bot || bot >= 0, "order complex variant needs a bottom element");
    auto all = P.chains();
    std::vector<std::vector<int>> kept;
    if (v == OrderVariant::Plain) kept.push_back({});
    for (auto& c : all) {
        if (need_top && c.back() != top) continue;
        if (need_bot && c.front() != bot) continue;
        kept.push_back(std::move(c));
    }
    int lo = v == OrderVariant::Plain ? -1 : 0;
    int maxlen = 0;
    for (const auto& c : kept) maxlen = std::max<int>(maxlen, c.size());
    int hi = maxlen - 1;
    OrderComplex oc;
    if (kept.empty()) {
        oc.complex = GradedComplex(ring, 0, {}, {});
        return oc;
    }
    lo = std::min(lo, hi);
    oc.chains.assign(hi - lo + 1, {});
    oc.index.assign(hi - lo + 1, {});
    for (auto& c : kept) {
        int deg = static_cast<int>(c.size()) - 1;
        oc.index[deg - lo].emplace(c, static_cast<int>(oc.chains[deg - lo].size()));
        oc.chains[deg - lo].push_back(c);
    }
    std::vector<int> dims;
    std::vector<ExactMatrix> diffs;
    std::vector<std::vector<std::string>> labels;
    for (int k = lo; k <= hi; ++k) {
        const auto& src = oc.chains[k - lo];
        dims.push_back(static_cast<int>(src.size()));
        std::vector<std::string> lab;
        for (const auto& c : src) {
            std::string s = "[";
            for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "<" : "") + P.label(c[i]);
            lab.push_back(s + "]");
        }
        labels.push_back(std::move(lab));
        int next_dim = k + 1 <= hi ? static_cast<int>(oc.chains[k + 1 - lo].size()) : 0;
        std::vector<SparseVec> cols(src.size());
        if (k + 1 <= hi) {
            const auto& idx = oc.index[k + 1 - lo];
            for (std::size_t j = 0; j < src.size(); ++j) {
                const auto& c = src[j];
                for (int x = 0; x < P.size(); ++x) {
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
                    auto it = idx.find(nc);
                    if (it == idx.end()) continue;
                    add_term(cols[j], it->second, Rational(sign_of_power(pos)));
                }
            }
        }
        diffs.push_back(ExactMatrix::from_columns(ring, next_dim, cols));
    }
    oc.complex = GradedComplex(ring, lo, dims, diffs, labels);
    return oc;
}

// Chain automorphism induced by an order automorphism of the poset (perm[i] = image of i).
inline ChainMap OrderComplex::induced(const FinitePoset& P, const std::vector<int>& perm) const {
    for (int i = 0; i < P.size(); ++i)
        for (int j = 0; j < P.size(); ++j)
            require(P.leq(i, j) == P.leq(perm[i], perm[j]), "map is not an order automorphism");
    ChainMap f{complex.lo(), {}};
    for (int k = complex.lo(); k <= complex.hi(); ++k) {
        const auto& src = chains[k - complex.lo()];
        std::vector<SparseVec> cols(src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            std::vector<int> img;
            for (int x : src[j]) img.push_back(perm[x]);
            std::sort(img.begin(), img.end(), [&](int a, int b) { return P.less(a, b); });
            auto it = index[k - complex.lo()].find(img);
            require(it != index[k - complex.lo()].end(), "image chain missing from the complex");
            cols[j][it->second] = 1;
        }
        f.maps.push_back(ExactMatrix::from_columns(complex.ring(), complex.dim(k), cols));
    }
    return f;
}

// Reduced cohomology of the collapsed product equals the Kuenneth product of the factors (over Q).
inline bool smash_check(const FinitePoset& P, const FinitePoset& Q) {
    auto lhs = cohomology(order_complex(FinitePoset::product(P, Q), OrderVariant::HatCheck, Ring::Q).complex);
    auto hp = cohomology(order_complex(P, OrderVariant::HatCheck, Ring::Q).complex);
    auto hq = cohomology(order_complex(Q, OrderVariant::HatCheck, Ring::Q).complex);
    CohomologySummary rhs{Ring::Q, {}};
    for (const auto& a : hp.groups)
        for (const auto& b : hq.groups) add_group(rhs, a.degree + b.degree, a.free_rank * b.free_rank, {});
    return lhs == rhs;
}

}  // namespace confcoh
