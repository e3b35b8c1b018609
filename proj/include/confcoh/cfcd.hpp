#pragma once

#include "confcoh/bar.hpp"
#include "confcoh/tcdga.hpp"

#include <bit>

namespace confcoh {

namespace detail {

// A pure tensor: coefficient times factors (block mask, arity, basis index), listed in order.
struct TensorTerm {
    Rational coef;
    std::vector<std::uint32_t> masks;
    std::vector<int> idx;
};

inline int min_element_of(std::uint32_t mask) { return std::countr_zero(mask); }

}  // namespace detail

// Phi_A on a set of partitions of {1..n}: tensor products of A over blocks.
class PhiA {
public:
    PhiA(std::shared_ptr<const FiniteTcdga> A, int n, std::vector<SetPartition> elems)
        : A_(std::move(A)), n_(n), elems_(std::move(elems)) {
        require(n_ <= A_->max_arity(), "n exceeds the max arity of the algebra");
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            require(elems_[i].n() == n_, "partition on wrong ground set");
            lookup_[elems_[i]] = static_cast<int>(i);
        }
        for (const auto& T : elems_) build(T);
    }

    int n() const { return n_; }
    const FiniteTcdga& algebra() const { return *A_; }
    const std::vector<SetPartition>& elements() const { return elems_; }
    int index_of(const SetPartition& T) const {
        auto it = lookup_.find(T);
        require(it != lookup_.end(), "partition not in the carrier");
        return it->second;
    }
    const GradedComplex& at(int i) const { return data_[i].complex; }

    // Tuple of basis indices (one per block) for the cell at (degree q, position b) of at(i).
    const std::vector<int>& tuple(int i, int q, int b) const { return data_[i].by_degree.at(q)[b]; }

    ChainMap map(int s, int t) const {
        const auto& S = elems_[s];
        const auto& T = elems_[t];
        require(leq(S, T), "coarsening map needs S <= T");
        const auto& src = data_[s];
        const auto& tgt = data_[t];
        auto tmasks = T.block_masks();
        ChainMap f{src.complex.lo(), {}};
        for (int q = src.complex.lo(); q <= src.complex.hi(); ++q) {
            const auto& tuples = src.by_degree.count(q) ? src.by_degree.at(q) : empty_;
            std::vector<SparseVec> cols(tuples.size());
            for (std::size_t j = 0; j < tuples.size(); ++j) {
                detail::TensorTerm start{Rational(1), src.masks, tuples[j]};
                for (const auto& term : merge_into(start, tmasks)) {
                    int pos = tgt.position.at(term.idx).second;
                    add_term(cols[j], pos, term.coef);
                }
            }
            f.maps.push_back(ExactMatrix::from_columns(A_->ring(), tgt.complex.dim(q), cols));
        }
        return f;
    }

    // at(T) -> at(g T)
    ChainMap action(const Permutation& g, int t) const {
        const auto& T = elems_[t];
        int gt = index_of(act(g, T));
        const auto& src = data_[t];
        const auto& tgt = data_[gt];
        ChainMap f{src.complex.lo(), {}};
        for (int q = src.complex.lo(); q <= src.complex.hi(); ++q) {
            const auto& tuples = src.by_degree.count(q) ? src.by_degree.at(q) : empty_;
            std::vector<SparseVec> cols(tuples.size());
            for (std::size_t j = 0; j < tuples.size(); ++j) {
                std::vector<detail::TensorTerm> terms{{Rational(1), {}, {}}};
                for (std::size_t k = 0; k < src.masks.size(); ++k) {
                    std::uint32_t B = src.masks[k];
                    std::uint32_t gB = 0;
                    for (int p : detail::bits_of(B)) gB |= 1u << g(p);
                    auto bs = detail::bits_of(B), gbs = detail::bits_of(gB);
                    std::vector<int> tau(bs.size());
                    for (std::size_t p = 0; p < bs.size(); ++p)
                        tau[p] = static_cast<int>(std::lower_bound(gbs.begin(), gbs.end(), g(bs[p])) - gbs.begin());
                    SparseVec img = A_->action(tau).apply({{tuples[j][k], Rational(1)}});
                    std::vector<detail::TensorTerm> next;
                    for (const auto& tm : terms)
                        for (const auto& [b2, v] : img) {
                            auto nt = tm;
                            nt.coef *= v;
                            nt.masks.push_back(gB);
                            nt.idx.push_back(b2);
                            next.push_back(std::move(nt));
                        }
                    terms = std::move(next);
                }
                for (auto& tm : terms) {
                    sort_factors(tm);
                    add_term(cols[j], tgt.position.at(tm.idx).second, tm.coef);
                }
            }
            f.maps.push_back(ExactMatrix::from_columns(A_->ring(), tgt.complex.dim(q), cols));
        }
        return f;
    }

private:
    struct Data {
        GradedComplex complex;
        std::vector<std::uint32_t> masks;
        std::vector<int> arities;
        std::map<int, std::vector<std::vector<int>>> by_degree;
        std::map<std::vector<int>, std::pair<int, int>> position;  // tuple -> (degree, index)
    };

    int deg(std::uint32_t mask, int idx) const { return A_->degree(std::popcount(mask), idx); }

    void build(const SetPartition& T) {
        Data d;
        d.masks = T.block_masks();
        for (auto m : d.masks) d.arities.push_back(std::popcount(m));
        std::size_t k = d.masks.size();
        std::vector<int> dims(k);
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i) {
            dims[i] = A_->component(d.arities[i]).dim();
            total *= dims[i];
        }
        if (total > 2000000) throw ScaleError("tensor product too large");
        std::vector<int> cur(k, 0);
        for (std::size_t count = 0; count < total; ++count) {
            int q = 0;
            for (std::size_t i = 0; i < k; ++i) q += A_->degree(d.arities[i], cur[i]);
            auto& list = d.by_degree[q];
            d.position[cur] = {q, static_cast<int>(list.size())};
            list.push_back(cur);
            for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
                if (++cur[i] < dims[i]) break;
                cur[i] = 0;
            }
        }
        if (d.by_degree.empty()) {
            d.complex = GradedComplex(A_->ring(), 0, {}, {});
            data_.push_back(std::move(d));
            return;
        }
        int lo = d.by_degree.begin()->first, hi = d.by_degree.rbegin()->first;
        std::vector<int> cdims;
        for (int q = lo; q <= hi; ++q) cdims.push_back(d.by_degree.count(q) ? static_cast<int>(d.by_degree[q].size()) : 0);
        std::vector<ExactMatrix> diffs;
        for (int q = lo; q <= hi; ++q) {
            std::vector<SparseVec> cols(cdims[q - lo]);
            if (d.by_degree.count(q)) {
                const auto& tuples = d.by_degree[q];
                for (std::size_t j = 0; j < tuples.size(); ++j) {
                    int before = 0;
                    for (std::size_t i = 0; i < k; ++i) {
                        const auto& comp = A_->component(d.arities[i]);
                        Rational sg(sign_of_power(before));
                        for (const auto& [r, v] : comp.d.column(tuples[j][i])) {
                            auto t = tuples[j];
                            t[i] = r;
                            add_term(cols[j], d.position.at(t).second, sg * v);
                        }
                        before += comp.basis[tuples[j][i]].degree;
                    }
                }
            }
            int next = q < hi ? cdims[q + 1 - lo] : 0;
            diffs.push_back(ExactMatrix::from_columns(A_->ring(), next, cols));
        }
        d.complex = GradedComplex(A_->ring(), lo, cdims, diffs);
        data_.push_back(std::move(d));
    }

    // Bubble the factors into order of block minima with Koszul signs.
    void sort_factors(detail::TensorTerm& t) const {
        std::size_t k = t.masks.size();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j + 1 < k - i; ++j)
                if (detail::min_element_of(t.masks[j]) > detail::min_element_of(t.masks[j + 1])) {
                    if (deg(t.masks[j], t.idx[j]) % 2 != 0 && deg(t.masks[j + 1], t.idx[j + 1]) % 2 != 0) t.coef = -t.coef;
                    std::swap(t.masks[j], t.masks[j + 1]);
                    std::swap(t.idx[j], t.idx[j + 1]);
                }
    }

    // Merge factors lying in the same target block until each factor is a target block.
    std::vector<detail::TensorTerm> merge_into(const detail::TensorTerm& start,
                                               const std::vector<std::uint32_t>& tmasks) const {
        auto target_of = [&](std::uint32_t m) {
            for (std::size_t b = 0; b < tmasks.size(); ++b)
                if ((m & tmasks[b]) == m) return static_cast<int>(b);
            require(false, "block not contained in a target block");
            return -1;
        };
        std::vector<detail::TensorTerm> done, work{start};
        while (!work.empty()) {
            auto t = std::move(work.back());
            work.pop_back();
            std::size_t k = t.masks.size();
            int i = -1, j = -1;
            for (std::size_t a = 0; a < k && i < 0; ++a)
                for (std::size_t b = a + 1; b < k; ++b)
                    if (target_of(t.masks[a]) == target_of(t.masks[b])) {
                        i = static_cast<int>(a);
                        j = static_cast<int>(b);
                        break;
                    }
            if (i < 0) {
                sort_factors(t);
                done.push_back(std::move(t));
                continue;
            }
            // move factor j next to factor i
            int dj = deg(t.masks[j], t.idx[j]);
            int between = 0;
            for (int l = i + 1; l < j; ++l) between += deg(t.masks[l], t.idx[l]);
            Rational coef = t.coef * sign_of_power(long(dj) * between);
            std::uint32_t mi = t.masks[i], mj = t.masks[j];
            std::uint32_t merged = mi | mj;
            int ni = std::popcount(mi), nj = std::popcount(mj);
            SparseVec prod = A_->product(ni, nj, detail::relative_mask(mi, merged), t.idx[i], t.idx[j]);
            for (const auto& [r, v] : prod) {
                detail::TensorTerm nt;
                nt.coef = coef * v;
                for (std::size_t l = 0; l < k; ++l) {
                    if (static_cast<int>(l) == j) continue;
                    if (static_cast<int>(l) == i) {
                        nt.masks.push_back(merged);
                        nt.idx.push_back(r);
                    } else {
                        nt.masks.push_back(t.masks[l]);
                        nt.idx.push_back(t.idx[l]);
                    }
                }
                work.push_back(std::move(nt));
            }
        }
        return done;
    }

    std::shared_ptr<const FiniteTcdga> A_;
    int n_;
    std::vector<SetPartition> elems_;
    std::map<SetPartition, int> lookup_;
    std::vector<Data> data_;
    static inline const std::vector<std::vector<int>> empty_{};
};

// Poset functor on all of Pi_n (carrier in lexicographic rgs order).
inline std::shared_ptr<PosetFunctor> phi_functor(std::shared_ptr<const FiniteTcdga> A, int n,
                                                 int bound = kDefaultPartitionBound) {
    auto elems = enumerate_partitions(n, bound);
    auto phi = std::make_shared<PhiA>(A, n, elems);
    auto F = std::make_shared<PosetFunctor>();
    F->carrier = FinitePoset::of_partitions(elems);
    for (std::size_t i = 0; i < elems.size(); ++i) F->values.push_back(phi->at(static_cast<int>(i)));
    F->map = [phi](int x, int y) { return phi->map(x, y); };
    if (A->mode() == TcdgaMode::Twisted) {
        F->carrier_action = [phi](const Permutation& g, int x) { return phi->index_of(act(g, phi->elements()[x])); };
        F->action = [phi](const Permutation& g, int x) { return phi->action(g, x); };
    }
    return F;
}

enum class BarMode { CF, CD };

inline std::string mode_name(BarMode m) { return m == BarMode::CF ? "CF" : "CD"; }

struct CfcdOptions {
    int partition_bound = kDefaultPartitionBound;
    bool validate_functor = true;
};

struct CfcdComplex {
    UpSet U;
    BarMode mode = BarMode::CF;
    std::shared_ptr<const FiniteTcdga> A;
    std::shared_ptr<PosetFunctor> functor;
    std::vector<SetPartition> elements;  // carrier elements
    BarComplex bar;
};

inline CfcdComplex build_cfcd(const UpSet& U, std::shared_ptr<const FiniteTcdga> A, BarMode mode,
                              const CfcdOptions& opt = {}) {
    int n = U.n();
    CfcdComplex out;
    out.U = U;
    out.mode = mode;
    out.A = A;
    out.functor = phi_functor(A, n, opt.partition_bound);
    out.elements = enumerate_partitions(n, opt.partition_bound);
    std::vector<char> in_U(out.elements.size());
    for (std::size_t i = 0; i < out.elements.size(); ++i) in_U[i] = U.contains(out.elements[i]);
    if (opt.validate_functor) {
        std::vector<char> region = in_U;
        region[out.functor->carrier.bottom()] = 1;
        validate_functor(*out.functor, region);
    }
    out.bar = bar_complex(in_U, out.functor, mode == BarMode::CF ? BarFlavor::Btilde : BarFlavor::B, A->ring());
    return out;
}

inline CfcdComplex cf_complex(const UpSet& U, std::shared_ptr<const FiniteTcdga> A, const CfcdOptions& opt = {}) {
    return build_cfcd(U, std::move(A), BarMode::CF, opt);
}

inline CfcdComplex cd_complex(const UpSet& U, std::shared_ptr<const FiniteTcdga> A, const CfcdOptions& opt = {}) {
    return build_cfcd(U, std::move(A), BarMode::CD, opt);
}

inline CohomologySummary total_cohomology(const CfcdComplex& c, Ring ring) {
    return cohomology(c.bar.total.with_ring(ring));
}

// ---------------------------------------------------------------- characters

using CycleType = std::vector<int>;

inline std::vector<CycleType> integer_partitions(int n) {
    std::vector<CycleType> out;
    CycleType cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

inline std::string cycle_type_key(const CycleType& c) {
    std::string s = "[";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + "]";
}

inline Integer factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Size of the centralizer of an element of the given cycle type.
inline Integer centralizer_order(const CycleType& c) {
    std::map<int, int> mult;
    for (int p : c) ++mult[p];
    Integer z = 1;
    for (const auto& [p, m] : mult) {
        for (int i = 0; i < m; ++i) z *= p;
        z *= factorial(m);
    }
    return z;
}

struct CharacterTableResult {
    int n = 0;
    std::map<int, std::map<CycleType, Rational>> by_degree;  // degree -> cycle type -> trace

    Rational value(int degree, const CycleType& c) const {
        auto it = by_degree.find(degree);
        if (it == by_degree.end()) return 0;
        auto jt = it->second.find(c);
        return jt == it->second.end() ? Rational(0) : jt->second;
    }
    friend bool operator==(const CharacterTableResult& a, const CharacterTableResult& b) {
        return a.n == b.n && a.by_degree == b.by_degree;
    }
};

inline void drop_zero_degrees(CharacterTableResult& r) {
    for (auto it = r.by_degree.begin(); it != r.by_degree.end();) {
        bool zero = true;
        for (const auto& [c, v] : it->second) zero = zero && v == 0;
        it = zero ? r.by_degree.erase(it) : std::next(it);
    }
}

// Traces of one permutation per cycle type on the cohomology of a complex with an S_n action.
inline CharacterTableResult characters_of(const GradedComplex& C, int n,
                                          const std::function<ChainMap(const Permutation&)>& action) {
    CharacterTableResult res;
    res.n = n;
    GradedComplex CQ = C.with_ring(Ring::Q);
    auto types = integer_partitions(n);
    std::vector<std::vector<Rational>> traces(types.size());
    parallel_for(static_cast<int>(types.size()), [&](int i) {
        Permutation g = Permutation::of_cycle_type(types[i]);
        traces[i] = cyclic_trace(CQ, action(g), g.order());
    });
    for (std::size_t i = 0; i < types.size(); ++i)
        for (int k = C.lo(); k <= C.hi(); ++k) res.by_degree[k][types[i]] = traces[i][k - C.lo()];
    drop_zero_degrees(res);
    return res;
}

inline CharacterTableResult characters(const CfcdComplex& c) {
    require(c.A->mode() == TcdgaMode::Twisted, "characters need a twisted (equivariant) algebra");
    return characters_of(c.bar.total, c.U.n(), [&](const Permutation& g) { return equivariant_action(g, c.bar); });
}

// Dimension of the invariants per degree: (1/n!) sum over classes of |class| * chi.
inline std::map<int, Rational> invariants_dims(const CharacterTableResult& r) {
    std::map<int, Rational> out;
    Integer nf = factorial(r.n);
    for (const auto& [deg, row] : r.by_degree) {
        Rational s = 0;
        for (const auto& [type, chi] : row) s += Rational(nf / centralizer_order(type)) * chi;
        out[deg] = s / Rational(nf);
    }
    return out;
}

// Characters of S_n on the order complex of an S_n-stable set of partitions.
inline CharacterTableResult poset_characters(const std::vector<SetPartition>& elems, OrderVariant v) {
    require(!elems.empty(), "empty poset");
    int n = elems.front().n();
    auto P = FinitePoset::of_partitions(elems);
    auto oc = order_complex(P, v, Ring::Q);
    std::map<SetPartition, int> where;
    for (std::size_t i = 0; i < elems.size(); ++i) where[elems[i]] = static_cast<int>(i);
    return characters_of(oc.complex, n, [&](const Permutation& g) {
        std::vector<int> perm(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i) {
            auto it = where.find(act(g, elems[i]));
            require(it != where.end(), "poset is not stable under the group");
            perm[i] = it->second;
        }
        return oc.induced(P, perm);
    });
}

// ---------------------------------------------------------------- E1 page

struct E1Entry {
    SetPartition T;
    int p = 0;                    // n - |T|
    CohomologySummary graded;     // from the associated graded piece
    CohomologySummary closed;     // interval cohomology tensor H(Phi(T)) over Q
    bool in_J = true;
};

struct E1Page {
    BarMode mode = BarMode::CF;
    std::vector<E1Entry> entries;

    // Sum over p of dim E1 in total degree k.
    int total_rank(int k) const {
        int s = 0;
        for (const auto& e : entries) s += e.graded.rank(k);
        return s;
    }
};

inline OrderComplex interval_complex(const std::vector<SetPartition>& S, const SetPartition& T, BarMode mode, Ring ring) {
    auto iv = lower_interval(S, T);
    auto P = FinitePoset::of_partitions(iv);
    return order_complex(P, mode == BarMode::CF ? OrderVariant::HatCheck : OrderVariant::Hat, ring);
}

inline CohomologySummary tensor_ranks(const CohomologySummary& a, const CohomologySummary& b) {
    CohomologySummary s{Ring::Q, {}};
    for (const auto& x : a.groups)
        for (const auto& y : b.groups) add_group(s, x.degree + y.degree, x.free_rank * y.free_rank, {});
    return s;
}

inline E1Page e1_page(const CfcdComplex& c, Ring ring) {
    E1Page page;
    page.mode = c.mode;
    const int n = c.U.n();
    auto J = join_closure(c.U, c.mode == BarMode::CF);
    std::set<SetPartition> Jset(J.begin(), J.end());
    const auto& P = c.functor->carrier;
    std::vector<int> tops;
    for (int x = 0; x < P.size(); ++x)
        if (c.bar.in_U[x] || (c.mode == BarMode::CF && x == P.bottom())) tops.push_back(x);
    for (int x : tops) {
        E1Entry e;
        e.T = c.elements[x];
        e.p = n - e.T.block_count();
        e.in_J = Jset.count(e.T) > 0;
        e.graded = cohomology(c.bar.graded_piece(x).with_ring(ring));
        if (e.in_J) {
            auto iv = cohomology(interval_complex(J, e.T, c.mode, Ring::Q).complex);
            auto phi = cohomology(c.functor->at(x).with_ring(Ring::Q));
            e.closed = tensor_ranks(iv, phi);
        }
        if (e.in_J || !e.graded.groups.empty()) page.entries.push_back(std::move(e));
    }
    std::sort(page.entries.begin(), page.entries.end(), [](const E1Entry& a, const E1Entry& b) {
        return a.p != b.p ? a.p < b.p : a.T < b.T;
    });
    return page;
}

// ---------------------------------------------------------------- i-acyclic closed form

struct ClosedFormResult {
    CohomologySummary cohomology;
    CharacterTableResult characters;  // filled over Q when requested
};

// Degree -> rank of H^{tensor k}.
inline std::map<int, long> tensor_power_ranks(const GradedModule& H, int k) {
    std::map<int, long> acc{{0, 1}};
    for (int i = 0; i < k; ++i) {
        std::map<int, long> next;
        for (const auto& [d1, r1] : acc)
            for (const auto& [d2, r2] : H.ranks) next[d1 + d2] += r1 * r2;
        acc = std::move(next);
    }
    return acc;
}

// Sum over T in J_{U0} of reduced cohomology of the collapsed interval below T tensored with H^{tensor |T|}.
inline ClosedFormResult iacyclic_closed_form(const GradedModule& H, const UpSet& U, Ring ring, bool with_characters,
                                             int bound = kDefaultPartitionBound) {
    check_bound(U.n(), bound);
    ClosedFormResult res;
    res.cohomology.ring = ring;
    const int n = U.n();
    auto J = join_closure(U, true);
    std::map<SetPartition, OrderComplex> intervals;
    std::map<int, std::vector<Integer>> torsion_acc;
    for (const auto& T : J) {
        auto oc = interval_complex(J, T, BarMode::CF, ring);
        auto h = cohomology(oc.complex);
        auto hp = tensor_power_ranks(H, T.block_count());
        for (const auto& g : h.groups)
            for (const auto& [q, r] : hp) {
                if (r == 0) continue;
                add_group(res.cohomology, g.degree + q, static_cast<int>(g.free_rank * r), {});
                for (long i = 0; i < r; ++i)
                    torsion_acc[g.degree + q].insert(torsion_acc[g.degree + q].end(), g.torsion.begin(), g.torsion.end());
            }
        intervals.emplace(T, std::move(oc));
    }
    for (auto& [deg, t] : torsion_acc) {
        auto f = invariant_factors(t);
        if (!f.empty()) add_group(res.cohomology, deg, 0, f);
    }
    if (!with_characters) return res;

    auto A = std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{Ring::Q, H.ranks}, n));
    PhiA phi(A, n, J);
    res.characters.n = n;
    for (const auto& type : integer_partitions(n)) {
        Permutation g = Permutation::of_cycle_type(type);
        std::map<int, Rational> row;
        for (const auto& T : J) {
            if (!(act(g, T) == T)) continue;
            const auto& oc = intervals.at(T);
            auto iv = lower_interval(J, T);
            std::map<SetPartition, int> where;
            for (std::size_t i = 0; i < iv.size(); ++i) where[iv[i]] = static_cast<int>(i);
            std::vector<int> perm(iv.size());
            for (std::size_t i = 0; i < iv.size(); ++i) perm[i] = where.at(act(g, iv[i]));
            auto P = FinitePoset::of_partitions(iv);
            GradedComplex CQ = oc.complex.with_ring(Ring::Q);
            auto tr_iv = cyclic_trace(CQ, oc.induced(P, perm), g.order());
            int ti = phi.index_of(T);
            const auto& PC = phi.at(ti);
            ChainMap gphi = phi.action(g, ti);
            for (int a = CQ.lo(); a <= CQ.hi(); ++a) {
                if (tr_iv[a - CQ.lo()] == 0) continue;
                for (int q = PC.lo(); q <= PC.hi(); ++q) {
                    ExactMatrix m = gphi.at(q, PC, PC);
                    Rational tr = 0;
                    for (int i = 0; i < m.cols(); ++i) tr += m.at(i, i);
                    if (tr != 0) row[a + q] += tr_iv[a - CQ.lo()] * tr;
                }
            }
        }
        for (const auto& [deg, v] : row) res.characters.by_degree[deg][type] = v;
    }
    for (auto& [deg, row] : res.characters.by_degree)
        for (const auto& type : integer_partitions(n)) row.emplace(type, Rational(0));
    drop_zero_degrees(res.characters);
    return res;
}

}  // namespace confcoh
