#pragma once

#include "confcoh/cfcd.hpp"

namespace confcoh {

inline constexpr int kDefaultCeBound = 5;

// Binary bracket tree with labelled leaves.
struct LieWord {
    int label = -1;
    std::shared_ptr<const LieWord> left, right;

    static LieWord leaf(int x) { return LieWord{x, nullptr, nullptr}; }
    static LieWord bracket(const LieWord& a, const LieWord& b) {
        return LieWord{-1, std::make_shared<LieWord>(a), std::make_shared<LieWord>(b)};
    }
    bool is_leaf() const { return !left; }
    void collect(std::vector<int>& out) const {
        if (is_leaf()) {
            out.push_back(label);
        } else {
            left->collect(out);
            right->collect(out);
        }
    }
};

using AssocPoly = std::map<std::vector<int>, Rational>;
// Combination of left-normed words [[..[[m, a2], a3]..], ak] keyed by (m, a2, ..., ak), m the smallest label.
using LieElem = std::map<std::vector<int>, Rational>;

namespace detail {

inline AssocPoly assoc_mul(const AssocPoly& a, const AssocPoly& b) {
    AssocPoly r;
    for (const auto& [u, x] : a)
        for (const auto& [v, y] : b) {
            auto w = u;
            w.insert(w.end(), v.begin(), v.end());
            auto& c = r[w];
            c += x * y;
            if (c == 0) r.erase(w);
        }
    return r;
}

inline AssocPoly assoc_commutator(const AssocPoly& a, const AssocPoly& b) {
    AssocPoly r = assoc_mul(a, b);
    for (const auto& [w, x] : assoc_mul(b, a)) {
        auto& c = r[w];
        c -= x;
        if (c == 0) r.erase(w);
    }
    return r;
}

inline AssocPoly expand(const LieWord& w) {
    if (w.is_leaf()) return {{{w.label}, Rational(1)}};
    return assoc_commutator(expand(*w.left), expand(*w.right));
}

inline AssocPoly expand_left_normed(const std::vector<int>& w) {
    AssocPoly p{{{w.front()}, Rational(1)}};
    for (std::size_t i = 1; i < w.size(); ++i) p = assoc_commutator(p, {{{w[i]}, Rational(1)}});
    return p;
}

inline AssocPoly expand(const LieElem& e) {
    AssocPoly r;
    for (const auto& [w, x] : e)
        for (const auto& [m, y] : expand_left_normed(w)) {
            auto& c = r[m];
            c += x * y;
            if (c == 0) r.erase(m);
        }
    return r;
}

// A multilinear Lie polynomial is determined by its monomials starting with the smallest label.
inline LieElem project(const AssocPoly& p) {
    LieElem r;
    if (p.empty()) return r;
    int m = *std::min_element(p.begin()->first.begin(), p.begin()->first.end());
    for (const auto& [w, x] : p)
        if (w.front() == m) r[w] = x;
    return r;
}

}  // namespace detail

inline LieElem normalize(const LieWord& w) {
    std::vector<int> labels;
    w.collect(labels);
    std::set<int> seen(labels.begin(), labels.end());
    require(seen.size() == labels.size(), "duplicate labels in Lie word");
    return detail::project(detail::expand(w));
}

// Left-normed basis words on the given labels (sorted), smallest label first, lexicographic.
inline std::vector<std::vector<int>> lie_basis(const std::vector<int>& labels) {
    require(!labels.empty(), "empty label set");
    std::vector<int> rest(labels.begin() + 1, labels.end());
    std::sort(rest.begin(), rest.end());
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> w{labels.front()};
        w.insert(w.end(), rest.begin(), rest.end());
        out.push_back(w);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

inline LieElem lie_bracket(const LieElem& a, const LieElem& b) {
    return detail::project(detail::assoc_commutator(detail::expand(a), detail::expand(b)));
}

// Relabel leaves by g (0-based labels) and normalize.
inline LieElem lie_action(const Permutation& g, const std::vector<int>& word) {
    std::vector<int> w;
    for (int x : word) w.push_back(g(x));
    return detail::project(detail::expand_left_normed(w));
}

// The twisted Lie algebra A (x)_H Lie on subsets of {0..n-1} given by bitmasks.
class TwistedLie {
public:
    TwistedLie(std::shared_ptr<const FiniteTcdga> A, int n) : A_(std::move(A)), n_(n) {
        require(n_ <= A_->max_arity(), "arity exceeds the max arity of the algebra");
        require(n_ <= 20, "arity too large");
        for (std::uint32_t S = 1; S < (1u << n_); ++S) {
            Comp c;
            auto labels = detail::bits_of(S);
            c.words = lie_basis(labels);
            for (std::size_t i = 0; i < c.words.size(); ++i) c.word_index[c.words[i]] = static_cast<int>(i);
            comps_.emplace(S, std::move(c));
        }
    }

    const FiniteTcdga& algebra() const { return *A_; }
    int n() const { return n_; }
    int dim(std::uint32_t S) const { return A_->component(std::popcount(S)).dim() * words(S); }
    int words(std::uint32_t S) const { return static_cast<int>(comps_.at(S).words.size()); }
    const std::vector<int>& word(std::uint32_t S, int i) const { return comps_.at(S).words[i]; }
    // basis element index = a * words + w
    int degree(std::uint32_t S, int i) const { return A_->degree(std::popcount(S), i / words(S)); }
    std::string label(std::uint32_t S, int i) const {
        const auto& c = A_->component(std::popcount(S));
        std::string s = c.basis[i / words(S)].name + "[";
        for (int x : word(S, i % words(S))) s += std::to_string(x + 1);
        return s + "]";
    }

    SparseVec differential(std::uint32_t S, int i) const {
        int W = words(S);
        SparseVec out;
        for (const auto& [r, v] : A_->component(std::popcount(S)).d.column(i / W)) add_term(out, r * W + i % W, v);
        return out;
    }

    SparseVec bracket(std::uint32_t S, int i, std::uint32_t T, int j) const {
        require((S & T) == 0, "bracket of overlapping label sets");
        std::uint32_t U = S | T;
        int WS = words(S), WT = words(T), WU = words(U);
        SparseVec prod = A_->product(std::popcount(S), std::popcount(T), detail::relative_mask(S, U), i / WS, j / WT);
        if (prod.empty()) return {};
        LieElem lb = lie_bracket({{word(S, i % WS), Rational(1)}}, {{word(T, j % WT), Rational(1)}});
        const auto& idx = comps_.at(U).word_index;
        SparseVec out;
        for (const auto& [r, x] : prod)
            for (const auto& [w, y] : lb) add_term(out, r * WU + idx.at(w), x * y);
        return out;
    }

    // g . (a (x) u): a transported along the order-preserving identification, u relabelled.
    SparseVec action(const Permutation& g, std::uint32_t S, int i) const {
        std::uint32_t gS = 0;
        for (int p : detail::bits_of(S)) gS |= 1u << g(p);
        auto bs = detail::bits_of(S), gbs = detail::bits_of(gS);
        std::vector<int> tau(bs.size());
        for (std::size_t p = 0; p < bs.size(); ++p)
            tau[p] = static_cast<int>(std::lower_bound(gbs.begin(), gbs.end(), g(bs[p])) - gbs.begin());
        int W = words(S);
        SparseVec img = A_->action(tau).apply({{i / W, Rational(1)}});
        LieElem lw = lie_action(g, word(S, i % W));
        const auto& idx = comps_.at(gS).word_index;
        SparseVec out;
        for (const auto& [r, x] : img)
            for (const auto& [w, y] : lw) add_term(out, r * W + idx.at(w), x * y);
        return out;
    }

    static std::uint32_t image(const Permutation& g, std::uint32_t S) {
        std::uint32_t gS = 0;
        for (int p : detail::bits_of(S)) gS |= 1u << g(p);
        return gS;
    }

private:
    struct Comp {
        std::vector<std::vector<int>> words;
        std::map<std::vector<int>, int> word_index;
    };
    std::shared_ptr<const FiniteTcdga> A_;
    int n_;
    std::map<std::uint32_t, Comp> comps_;
};

// Input is the suspension of A.
inline TwistedLie twisted_lie(const FiniteTcdga& A, int n) {
    return TwistedLie(std::make_shared<FiniteTcdga>(suspension(A)), n);
}

// Chevalley-Eilenberg chains of a twisted Lie algebra in arity n, graded cohomologically:
// a cell is a partition with one element of g(block)[1] per block, degree sum(|x_i| - 1).
class CeComplex {
public:
    CeComplex(std::shared_ptr<const TwistedLie> g, int bound = kDefaultCeBound) : g_(std::move(g)) {
        int n = g_->n();
        if (n > bound) throw ScaleError("arity " + std::to_string(n) + " exceeds the CE bound " + std::to_string(bound));
        parts_ = enumerate_partitions(n);
        for (std::size_t t = 0; t < parts_.size(); ++t) {
            auto masks = parts_[t].block_masks();
            std::size_t k = masks.size();
            std::vector<int> dims(k), cur(k, 0);
            std::size_t total = 1;
            for (std::size_t i = 0; i < k; ++i) {
                dims[i] = g_->dim(masks[i]);
                total *= dims[i];
            }
            for (std::size_t c = 0; c < total; ++c) {
                Cell cell{static_cast<int>(t), cur};
                int deg = 0;
                for (std::size_t i = 0; i < k; ++i) deg += g_->degree(masks[i], cur[i]) - 1;
                auto& list = by_degree_[deg];
                index_[{masks, cur}] = {deg, static_cast<int>(list.size())};
                list.push_back(cell);
                for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
                    if (++cur[i] < dims[i]) break;
                    cur[i] = 0;
                }
            }
        }
        build();
    }

    const GradedComplex& complex() const { return complex_; }
    const TwistedLie& algebra() const { return *g_; }

    ChainMap action(const Permutation& g) const {
        ChainMap f{complex_.lo(), {}};
        for (int q = complex_.lo(); q <= complex_.hi(); ++q) {
            const auto& cells = cells_at(q);
            std::vector<SparseVec> cols(cells.size());
            for (std::size_t j = 0; j < cells.size(); ++j) {
                auto masks = parts_[cells[j].part].block_masks();
                std::vector<Term> terms{{Rational(1), {}, {}}};
                for (std::size_t b = 0; b < masks.size(); ++b) {
                    std::uint32_t gm = TwistedLie::image(g, masks[b]);
                    std::vector<Term> next;
                    for (const auto& [r, v] : g_->action(g, masks[b], cells[j].idx[b]))
                        for (const auto& t : terms) {
                            auto nt = t;
                            nt.coef *= v;
                            nt.masks.push_back(gm);
                            nt.idx.push_back(r);
                            next.push_back(std::move(nt));
                        }
                    terms = std::move(next);
                }
                for (auto& t : terms) {
                    sort_terms(t);
                    add_term(cols[j], index_.at({t.masks, t.idx}).second, t.coef);
                }
            }
            f.maps.push_back(ExactMatrix::from_columns(Ring::Q, complex_.dim(q), cols));
        }
        return f;
    }

private:
    struct Cell {
        int part;
        std::vector<int> idx;
    };
    struct Term {
        Rational coef;
        std::vector<std::uint32_t> masks;
        std::vector<int> idx;
    };

    const std::vector<Cell>& cells_at(int q) const {
        static const std::vector<Cell> none;
        auto it = by_degree_.find(q);
        return it == by_degree_.end() ? none : it->second;
    }

    int sdeg(std::uint32_t m, int i) const { return g_->degree(m, i) - 1; }

    void sort_terms(Term& t) const {
        std::size_t k = t.masks.size();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j + 1 < k - i; ++j)
                if (std::countr_zero(t.masks[j]) > std::countr_zero(t.masks[j + 1])) {
                    if (sdeg(t.masks[j], t.idx[j]) % 2 != 0 && sdeg(t.masks[j + 1], t.idx[j + 1]) % 2 != 0) t.coef = -t.coef;
                    std::swap(t.masks[j], t.masks[j + 1]);
                    std::swap(t.idx[j], t.idx[j + 1]);
                }
    }

    void build() {
        if (by_degree_.empty()) {
            complex_ = GradedComplex(Ring::Q, 0, {}, {});
            return;
        }
        int lo = by_degree_.begin()->first, hi = by_degree_.rbegin()->first;
        std::vector<int> dims;
        for (int q = lo; q <= hi; ++q) dims.push_back(static_cast<int>(cells_at(q).size()));
        std::vector<ExactMatrix> diffs;
        for (int q = lo; q <= hi; ++q) {
            const auto& cells = cells_at(q);
            std::vector<SparseVec> cols(cells.size());
            for (std::size_t c = 0; c < cells.size(); ++c) {
                auto masks = parts_[cells[c].part].block_masks();
                const auto& idx = cells[c].idx;
                std::size_t k = masks.size();
                // internal part: sx -> -s dx, as a derivation
                int before = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    for (const auto& [r, v] : g_->differential(masks[i], idx[i])) {
                        auto ni = idx;
                        ni[i] = r;
                        add_term(cols[c], index_.at({masks, ni}).second, -v * sign_of_power(before));
                    }
                    before += sdeg(masks[i], idx[i]);
                }
                // bracket part: sx sy -> (-1)^{|x|} s[x, y] after moving the pair to the front
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = i + 1; j < k; ++j) {
                        int di = sdeg(masks[i], idx[i]), dj = sdeg(masks[j], idx[j]);
                        long e = 0;
                        for (std::size_t l = 0; l < i; ++l) e += long(di) * sdeg(masks[l], idx[l]);
                        for (std::size_t l = 0; l < j; ++l)
                            if (l != i) e += long(dj) * sdeg(masks[l], idx[l]);
                        e += di + 1;  // (-1)^{|x|} with |x| = di + 1
                        auto br = g_->bracket(masks[i], idx[i], masks[j], idx[j]);
                        for (const auto& [r, v] : br) {
                            Term t{v * sign_of_power(e), {masks[i] | masks[j]}, {r}};
                            for (std::size_t l = 0; l < k; ++l)
                                if (l != i && l != j) {
                                    t.masks.push_back(masks[l]);
                                    t.idx.push_back(idx[l]);
                                }
                            sort_terms(t);
                            add_term(cols[c], index_.at({t.masks, t.idx}).second, t.coef);
                        }
                    }
            }
            int next = q < hi ? dims[q + 1 - lo] : 0;
            diffs.push_back(ExactMatrix::from_columns(Ring::Q, next, cols));
        }
        complex_ = GradedComplex(Ring::Q, lo, dims, diffs);
    }

    std::shared_ptr<const TwistedLie> g_;
    std::vector<SetPartition> parts_;
    std::map<int, std::vector<Cell>> by_degree_;
    std::map<std::pair<std::vector<std::uint32_t>, std::vector<int>>, std::pair<int, int>> index_;
    GradedComplex complex_;
};

inline CeComplex ce_complex(const FiniteTcdga& A, int n, int bound = kDefaultCeBound) {
    return CeComplex(std::make_shared<TwistedLie>(twisted_lie(A, n)), bound);
}

inline CohomologySummary ce_homology(const CeComplex& ce) { return cohomology(ce.complex()); }

struct CompareReport {
    int n = 0;
    CohomologySummary cf, ce;
    CharacterTableResult cf_characters, ce_characters;
    bool with_characters = false;
    bool dims_match = false;
    bool characters_match = true;
    bool match() const { return dims_match && characters_match; }
};

// CF(Pi_n minus bottom, A) against CE chains of SA (x)_H Lie in arity n, over Q.
inline CompareReport compare_cf_ce(std::shared_ptr<const FiniteTcdga> A, int n, int ce_bound = kDefaultCeBound) {
    CompareReport rep;
    rep.n = n;
    auto AQ = A;
    if (A->ring() != Ring::Q) {
        // same tables read over Q
        std::vector<TcdgaComponent> comps(A->max_arity() + 1);
        for (int k = 1; k <= A->max_arity(); ++k) {
            comps[k] = A->component(k);
            comps[k].d = comps[k].d.as_ring(Ring::Q);
            for (auto& s : comps[k].s) s = s.as_ring(Ring::Q);
        }
        AQ = std::make_shared<FiniteTcdga>(Ring::Q, A->max_arity(), A->mode(), comps, A->tables());
    }
    auto cf = cf_complex(UpSet::full(n), AQ);
    auto ce = ce_complex(*AQ, n, ce_bound);
    rep.cf = total_cohomology(cf, Ring::Q);
    rep.ce = ce_homology(ce);
    rep.dims_match = rep.cf == rep.ce;
    if (AQ->mode() == TcdgaMode::Twisted) {
        rep.with_characters = true;
        rep.cf_characters = characters(cf);
        rep.ce_characters = characters_of(ce.complex(), n, [&](const Permutation& g) { return ce.action(g); });
        rep.characters_match = rep.cf_characters == rep.ce_characters;
    }
    return rep;
}

}  // namespace confcoh
