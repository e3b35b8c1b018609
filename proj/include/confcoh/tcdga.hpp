#pragma once

#include "confcoh/complex.hpp"
#include "confcoh/partitions.hpp"

#include <bit>
#include <memory>
#include <mutex>

namespace confcoh {

struct BasisElement {
    std::string name;
    int degree = 0;
    friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// Finitely supported graded free module: degree -> rank.
struct GradedModule {
    Ring ring = Ring::Q;
    std::map<int, int> ranks;

    int total_rank() const {
        int s = 0;
        for (const auto& [d, r] : ranks) s += r;
        return s;
    }
};

struct ValidationReport {
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void fail(const std::string& what) {
        if (failures.size() < 50) failures.push_back(what);
    }
};

inline std::string describe(const SparseVec& v) {
    std::string s = "{";
    bool first = true;
    for (const auto& [i, x] : v) {
        s += (first ? "" : ", ") + std::to_string(i) + ":" + x.get_str();
        first = false;
    }
    return s + "}";
}

// Graded-commutative, associative, possibly non-unital dg algebra with a named basis.
struct FiniteCdga {
    Ring ring = Ring::Q;
    std::vector<BasisElement> basis;
    ExactMatrix d;                          // dim x dim, d(e_j) = column j
    std::vector<std::vector<SparseVec>> mult;  // mult[a][b]

    int dim() const { return static_cast<int>(basis.size()); }

    ValidationReport validate(bool commutative = true) const {
        ValidationReport r;
        int n = dim();
        if (d.rows() != n || d.cols() != n) {
            r.fail("differential shape");
            return r;
        }
        if (static_cast<int>(mult.size()) != n) {
            r.fail("multiplication table shape");
            return r;
        }
        for (int j = 0; j < n; ++j)
            for (const auto& [i, x] : d.column(j))
                if (basis[i].degree != basis[j].degree + 1) r.fail("d does not raise degree by one on " + basis[j].name);
        if (!(d * d).is_zero()) r.fail("d^2 != 0");
        auto mul = [&](const SparseVec& x, const SparseVec& y) {
            SparseVec out;
            for (const auto& [a, ca] : x)
                for (const auto& [b, cb] : y) axpy(out, ca * cb, mult[a][b]);
            return out;
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const SparseVec& ab = mult[a][b];
                for (const auto& [c, x] : ab)
                    if (basis[c].degree != basis[a].degree + basis[b].degree)
                        r.fail("product " + basis[a].name + "*" + basis[b].name + " not homogeneous");
                SparseVec lhs = d.apply(ab);
                SparseVec rhs = mul(d.column_vec(a), {{b, Rational(1)}});
                axpy(rhs, Rational(sign_of_power(basis[a].degree)), mul({{a, Rational(1)}}, d.column_vec(b)));
                if (lhs != rhs) r.fail("Leibniz fails on " + basis[a].name + "," + basis[b].name);
                if (commutative) {
                    SparseVec ba = mult[b][a];
                    SparseVec sw;
                    axpy(sw, Rational(sign_of_power(long(basis[a].degree) * basis[b].degree)), ab);
                    if (sw != ba) r.fail("graded commutativity fails on " + basis[a].name + "," + basis[b].name);
                }
                for (int c = 0; c < n; ++c) {
                    SparseVec l = mul(ab, {{c, Rational(1)}});
                    SparseVec rr = mul({{a, Rational(1)}}, mult[b][c]);
                    if (l != rr)
                        r.fail("associativity fails on " + basis[a].name + "," + basis[b].name + "," + basis[c].name);
                }
            }
        return r;
    }
};

enum class TcdgaMode { Twisted, Shuffle };

struct TcdgaComponent {
    std::vector<BasisElement> basis;
    ExactMatrix d;                  // whole-basis matrix
    std::vector<ExactMatrix> s;     // s[i] acts as the transposition (i+1 i+2); empty in shuffle mode

    int dim() const { return static_cast<int>(basis.size()); }
};

inline std::uint32_t concat_mask(int n) { return (n >= 32) ? ~0u : ((1u << n) - 1u); }

// Twisted commutative dg algebra truncated at max_arity. Products are stored in tables
// keyed by (n, m, mask): mask marks, in the merged ordered set of size n+m, the positions
// carried by the first factor. Twisted mode stores only the concatenation masks and
// derives the others from the symmetric-group action.
class FiniteTcdga {
public:
    using Table = std::vector<SparseVec>;  // index a * dim(m) + b
    using Key = std::tuple<int, int, std::uint32_t>;

    FiniteTcdga() = default;
    FiniteTcdga(Ring ring, int max_arity, TcdgaMode mode, std::vector<TcdgaComponent> comps,
                std::map<Key, Table> tables)
        : ring_(ring), max_arity_(max_arity), mode_(mode), comps_(std::move(comps)), tables_(std::move(tables)),
          memo_(std::make_shared<Memo>()) {
        require(max_arity_ >= 1, "max_arity must be positive");
        require(static_cast<int>(comps_.size()) == max_arity_ + 1, "one component per arity expected");
        for (int n = 1; n <= max_arity_; ++n) {
            auto& c = comps_[n];
            require(c.d.rows() == c.dim() && c.d.cols() == c.dim(), "differential shape in arity " + std::to_string(n));
            if (mode_ == TcdgaMode::Twisted) {
                require(static_cast<int>(c.s.size()) == n - 1, "need n-1 transposition matrices in arity " + std::to_string(n));
                for (const auto& m : c.s) require(m.rows() == c.dim() && m.cols() == c.dim(), "action shape");
            }
        }
        for (const auto& [key, table] : tables_) {
            auto [n, m, mask] = key;
            require(n >= 1 && m >= 1 && n + m <= max_arity_, "product arity out of range");
            require(std::popcount(mask) == n && mask < (1u << (n + m)), "bad product mask");
            require(mode_ == TcdgaMode::Shuffle || mask == concat_mask(n), "twisted mode stores concatenation products only");
            require(static_cast<int>(table.size()) == comps_[n].dim() * comps_[m].dim(), "product table size");
        }
    }

    Ring ring() const { return ring_; }
    int max_arity() const { return max_arity_; }
    TcdgaMode mode() const { return mode_; }
    const TcdgaComponent& component(int n) const {
        require(n >= 1 && n <= max_arity_, "arity " + std::to_string(n) + " exceeds max arity");
        return comps_[n];
    }
    const std::map<Key, Table>& tables() const { return tables_; }

    int degree(int n, int b) const { return component(n).basis[b].degree; }

    // A(n) as a cochain complex grouped by degree; order within a degree follows the basis.
    GradedComplex as_complex(int n, std::vector<std::pair<int, int>>* position = nullptr) const {
        const auto& c = component(n);
        std::map<int, std::vector<int>> by_deg;
        for (int i = 0; i < c.dim(); ++i) by_deg[c.basis[i].degree].push_back(i);
        std::vector<std::pair<int, int>> pos(c.dim());
        if (by_deg.empty()) {
            if (position) *position = pos;
            return GradedComplex(ring_, 0, {}, {});
        }
        int lo = by_deg.begin()->first, hi = by_deg.rbegin()->first;
        std::vector<int> dims;
        std::vector<std::vector<std::string>> labels;
        for (int k = lo; k <= hi; ++k) {
            auto it = by_deg.find(k);
            std::vector<std::string> lab;
            int cnt = 0;
            if (it != by_deg.end())
                for (int i : it->second) {
                    pos[i] = {k, cnt++};
                    lab.push_back(c.basis[i].name);
                }
            dims.push_back(cnt);
            labels.push_back(lab);
        }
        std::vector<ExactMatrix> diffs;
        for (int k = lo; k <= hi; ++k) {
            std::vector<SparseVec> cols(dims[k - lo]);
            auto it = by_deg.find(k);
            if (it != by_deg.end())
                for (int i : it->second)
                    for (const auto& [r, x] : c.d.column(i)) cols[pos[i].second][pos[r].second] = x;
            int next = k < hi ? dims[k + 1 - lo] : 0;
            diffs.push_back(ExactMatrix::from_columns(ring_, next, cols));
        }
        if (position) *position = pos;
        return GradedComplex(ring_, lo, dims, diffs, labels);
    }

    // A(tau) on the whole basis of A(n), n = tau.size(); tau[p] = image of p (0-based).
    ExactMatrix action(const std::vector<int>& tau) const {
        int n = static_cast<int>(tau.size());
        const auto& c = component(n);
        bool ident = true;
        for (int p = 0; p < n; ++p) ident = ident && tau[p] == p;
        if (ident) return ExactMatrix::identity(ring_, c.dim());
        require(mode_ == TcdgaMode::Twisted, "symmetric-group action unavailable in shuffle mode");
        {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto it = memo_->actions.find(tau);
            if (it != memo_->actions.end()) return it->second;
        }
        // tau = s_i * (s_i tau), where s_i tau has one inversion fewer
        std::vector<int> pos(n);
        for (int p = 0; p < n; ++p) pos[tau[p]] = p;
        int i = 0;
        while (!(pos[i + 1] < pos[i])) ++i;
        std::vector<int> shorter = tau;
        std::swap(shorter[pos[i]], shorter[pos[i + 1]]);
        ExactMatrix result = c.s[i] * action(shorter);
        std::lock_guard<std::mutex> lock(memo_->mu);
        memo_->actions.emplace(tau, result);
        return result;
    }

    // mu for the given mask, as a vector in A(n+m).
    SparseVec product(int n, int m, std::uint32_t mask, int a, int b) const {
        return table(n, m, mask)[a * component(m).dim() + b];
    }

    const Table& table(int n, int m, std::uint32_t mask) const {
        require(n + m <= max_arity_, "product arity exceeds max arity");
        static const Table empty_table;
        Key key{n, m, mask};
        auto it = tables_.find(key);
        if (it != tables_.end()) return it->second;
        if (mode_ == TcdgaMode::Shuffle || mask == concat_mask(n)) {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto& z = memo_->zero_tables[key];
            if (z.empty()) z.assign(component(n).dim() * component(m).dim(), SparseVec{});
            return z;
        }
        {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto jt = memo_->derived.find(key);
            if (jt != memo_->derived.end()) return jt->second;
        }
        // sigma(p) = rank in the merged set of the p-th element in concatenation order
        std::vector<int> sigma;
        for (int p = 0; p < n + m; ++p)
            if (mask >> p & 1u) sigma.push_back(p);
        for (int p = 0; p < n + m; ++p)
            if (!(mask >> p & 1u)) sigma.push_back(p);
        ExactMatrix act = action(sigma);
        const Table& base = table(n, m, concat_mask(n));
        Table t(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) t[i] = act.apply(base[i]);
        std::lock_guard<std::mutex> lock(memo_->mu);
        return memo_->derived.emplace(key, std::move(t)).first->second;
    }

    ValidationReport validate() const;

private:
    struct Memo {
        std::mutex mu;
        std::map<std::vector<int>, ExactMatrix> actions;
        std::map<Key, Table> derived;
        std::map<Key, Table> zero_tables;
    };

    Ring ring_ = Ring::Q;
    int max_arity_ = 0;
    TcdgaMode mode_ = TcdgaMode::Twisted;
    std::vector<TcdgaComponent> comps_;
    std::map<Key, Table> tables_;
    std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

namespace detail {

// Positions (0-based) of the set bits of mask, ascending.
inline std::vector<int> bits_of(std::uint32_t mask) {
    std::vector<int> v;
    for (int p = 0; mask >> p; ++p)
        if (mask >> p & 1u) v.push_back(p);
    return v;
}

// Compress `sub` (a subset of `within`) to a mask relative to the ordered set `within`.
inline std::uint32_t relative_mask(std::uint32_t sub, std::uint32_t within) {
    std::uint32_t out = 0;
    int idx = 0;
    for (int p : bits_of(within)) {
        if (sub >> p & 1u) out |= 1u << idx;
        ++idx;
    }
    return out;
}

inline std::vector<std::uint32_t> masks_with_popcount(int total, int k) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t m = 0; m < (1u << total); ++m)
        if (std::popcount(m) == k) out.push_back(m);
    return out;
}

}  // namespace detail

inline ValidationReport FiniteTcdga::validate() const {
    ValidationReport r;
    const int N = max_arity_;
    auto unit = [](int i) { return SparseVec{{i, Rational(1)}}; };
    for (int n = 1; n <= N; ++n) {
        const auto& c = comps_[n];
        std::string tag = " in arity " + std::to_string(n);
        for (int j = 0; j < c.dim(); ++j)
            for (const auto& [i, x] : c.d.column(j))
                if (c.basis[i].degree != c.basis[j].degree + 1) r.fail("d does not raise degree on " + c.basis[j].name + tag);
        if (!(c.d * c.d).is_zero()) r.fail("d^2 != 0" + tag);
        if (ring_ == Ring::Z) {
            for (int j = 0; j < c.dim(); ++j)
                for (const auto& e : c.d.column(j))
                    if (!is_integral(e.second)) r.fail("non-integral differential" + tag);
        }
        if (mode_ != TcdgaMode::Twisted) continue;
        auto id = ExactMatrix::identity(Ring::Q, c.dim());
        for (int i = 0; i + 1 < n; ++i) {
            const auto& s = c.s[i];
            for (int j = 0; j < c.dim(); ++j)
                for (const auto& [k, x] : s.column(j))
                    if (c.basis[k].degree != c.basis[j].degree) r.fail("action does not preserve degree" + tag);
            if (!(s * s == id)) r.fail("s" + std::to_string(i + 1) + " is not an involution" + tag);
            if (!(s * c.d == c.d * s)) r.fail("s" + std::to_string(i + 1) + " does not commute with d" + tag);
            if (i + 2 < n) {
                const auto& t = c.s[i + 1];
                if (!(s * t * s == t * s * t)) r.fail("braid relation fails for s" + std::to_string(i + 1) + tag);
            }
            for (int j = i + 2; j + 1 < n; ++j)
                if (!(s * c.s[j] == c.s[j] * s))
                    r.fail("s" + std::to_string(i + 1) + " and s" + std::to_string(j + 1) + " do not commute" + tag);
        }
    }
    for (int total = 2; total <= N; ++total)
        for (int n = 1; n < total; ++n) {
            int m = total - n;
            const auto& A = comps_[n];
            const auto& B = comps_[m];
            const auto& C = comps_[total];
            std::vector<std::uint32_t> masks;
            if (mode_ == TcdgaMode::Twisted) masks = {concat_mask(n)};
            else masks = detail::masks_with_popcount(total, n);
            for (auto mask : masks) {
                std::string tag = " (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ", mask=" + std::to_string(mask) + ")";
                for (int a = 0; a < A.dim(); ++a)
                    for (int b = 0; b < B.dim(); ++b) {
                        SparseVec ab = product(n, m, mask, a, b);
                        for (const auto& [k, x] : ab)
                            if (C.basis[k].degree != A.basis[a].degree + B.basis[b].degree)
                                r.fail("product not homogeneous on " + A.basis[a].name + "," + B.basis[b].name + tag);
                        SparseVec lhs = C.d.apply(ab);
                        SparseVec rhs;
                        for (const auto& [a2, x] : A.d.column(a)) axpy(rhs, x, product(n, m, mask, a2, b));
                        Rational sg(sign_of_power(A.basis[a].degree));
                        for (const auto& [b2, x] : B.d.column(b)) axpy(rhs, sg * x, product(n, m, mask, a, b2));
                        if (lhs != rhs) r.fail("Leibniz fails on " + A.basis[a].name + "," + B.basis[b].name + tag);
                        // commutativity
                        Rational ks(sign_of_power(long(A.basis[a].degree) * B.basis[b].degree));
                        SparseVec other;
                        if (mode_ == TcdgaMode::Twisted) {
                            std::vector<int> beta(total);
                            for (int p = 0; p < n; ++p) beta[p] = p + m;
                            for (int p = n; p < total; ++p) beta[p] = p - n;
                            SparseVec lhs2 = action(beta).apply(ab);
                            SparseVec rhs2;
                            axpy(rhs2, ks, product(m, n, concat_mask(m), b, a));
                            if (lhs2 != rhs2)
                                r.fail("twisted commutativity fails on " + A.basis[a].name + "," + B.basis[b].name + tag);
                            for (int i = 0; i + 1 < n; ++i) {
                                SparseVec l3 = C.s.empty() ? SparseVec{} : C.s[i].apply(ab);
                                SparseVec r3;
                                for (const auto& [a2, x] : A.s[i].column(a)) axpy(r3, x, product(n, m, mask, a2, b));
                                if (l3 != r3) r.fail("equivariance (left factor) fails" + tag);
                            }
                            for (int j = 0; j + 1 < m; ++j) {
                                SparseVec l3 = C.s[n + j].apply(ab);
                                SparseVec r3;
                                for (const auto& [b2, x] : B.s[j].column(b)) axpy(r3, x, product(n, m, mask, a, b2));
                                if (l3 != r3) r.fail("equivariance (right factor) fails" + tag);
                            }
                        } else {
                            std::uint32_t comp = concat_mask(total) & ~mask;
                            SparseVec rhs2;
                            axpy(rhs2, ks, product(m, n, comp, b, a));
                            if (ab != rhs2)
                                r.fail("shuffle commutativity fails on " + A.basis[a].name + "," + B.basis[b].name + tag);
                        }
                        (void)unit;
                    }
            }
        }
    // associativity over all ordered decompositions into three nonempty parts
    for (int total = 3; total <= N; ++total) {
        std::vector<int> color(total, 0);
        std::function<void(int)> rec = [&](int p) {
            if (p < total) {
                for (int c = 0; c < 3; ++c) {
                    color[p] = c;
                    rec(p + 1);
                }
                return;
            }
            std::uint32_t mk[3] = {0, 0, 0};
            for (int q = 0; q < total; ++q) mk[color[q]] |= 1u << q;
            int sz[3];
            for (int c = 0; c < 3; ++c) sz[c] = std::popcount(mk[c]);
            if (!sz[0] || !sz[1] || !sz[2]) return;
            if (mode_ == TcdgaMode::Twisted) {
                // contiguous blocks in order suffice in twisted mode
                for (int q = 0; q + 1 < total; ++q)
                    if (color[q] > color[q + 1]) return;
            }
            std::uint32_t ab = mk[0] | mk[1], bc = mk[1] | mk[2];
            std::uint32_t m_ab = detail::relative_mask(mk[0], ab);
            std::uint32_t m_abc = ab;  // AB within everything
            std::uint32_t m_bc = detail::relative_mask(mk[1], bc);
            std::uint32_t m_a = mk[0];
            int n = sz[0], m = sz[1], q = sz[2];
            for (int a = 0; a < comps_[n].dim(); ++a)
                for (int b = 0; b < comps_[m].dim(); ++b)
                    for (int c = 0; c < comps_[q].dim(); ++c) {
                        SparseVec left, right;
                        for (const auto& [x, cx] : product(n, m, m_ab, a, b))
                            axpy(left, cx, product(n + m, q, m_abc, x, c));
                        for (const auto& [y, cy] : product(m, q, m_bc, b, c))
                            axpy(right, cy, product(n, m + q, m_a, a, y));
                        if (left != right)
                            r.fail("associativity fails on " + comps_[n].basis[a].name + "," + comps_[m].basis[b].name +
                                   "," + comps_[q].basis[c].name + " (total " + std::to_string(total) + ")");
                    }
        };
        rec(0);
    }
    return r;
}

// A(n) = Omega for every n; bijections act trivially; products are those of Omega.
inline FiniteTcdga constant_tcdga(const FiniteCdga& omega, int N) {
    auto rep = omega.validate();
    require(rep.ok(), "invalid cdga: " + (rep.failures.empty() ? std::string() : rep.failures.front()));
    std::vector<TcdgaComponent> comps(N + 1);
    for (int n = 1; n <= N; ++n) {
        comps[n].basis = omega.basis;
        comps[n].d = omega.d;
        for (int i = 0; i + 1 < n; ++i) comps[n].s.push_back(ExactMatrix::identity(omega.ring, omega.dim()));
    }
    std::map<FiniteTcdga::Key, FiniteTcdga::Table> tables;
    for (int total = 2; total <= N; ++total)
        for (int n = 1; n < total; ++n) {
            FiniteTcdga::Table t;
            for (int a = 0; a < omega.dim(); ++a)
                for (int b = 0; b < omega.dim(); ++b) t.push_back(omega.mult[a][b]);
            tables[{n, total - n, concat_mask(n)}] = std::move(t);
        }
    return FiniteTcdga(omega.ring, N, TcdgaMode::Twisted, std::move(comps), std::move(tables));
}

inline std::vector<BasisElement> basis_of_module(const GradedModule& H) {
    std::vector<BasisElement> b;
    for (const auto& [deg, rk] : H.ranks) {
        require(rk >= 0, "negative rank");
        for (int i = 0; i < rk; ++i) b.push_back({"h" + std::to_string(deg) + "_" + std::to_string(i), deg});
    }
    return b;
}

// A(n) = H for every n with zero differential, zero products and trivial action.
inline FiniteTcdga formal_tcdga(const GradedModule& H, int N) {
    auto basis = basis_of_module(H);
    int dim = static_cast<int>(basis.size());
    std::vector<TcdgaComponent> comps(N + 1);
    for (int n = 1; n <= N; ++n) {
        comps[n].basis = basis;
        comps[n].d = ExactMatrix(H.ring, dim, dim);
        for (int i = 0; i + 1 < n; ++i) comps[n].s.push_back(ExactMatrix::identity(H.ring, dim));
    }
    return FiniteTcdga(H.ring, N, TcdgaMode::Twisted, std::move(comps), {});
}

// SA(n) = A(n) shifted up by n, action twisted by the sign, d scaled by (-1)^n,
// and mu(a, b) scaled by (-1)^{m |a|} for b in arity m (times the shuffle sign off the concatenation).
inline FiniteTcdga suspension(const FiniteTcdga& A) {
    auto rep = A.validate();
    require(rep.ok(), "suspension of an invalid tcdga: " + (rep.failures.empty() ? std::string() : rep.failures.front()));
    std::vector<TcdgaComponent> comps(A.max_arity() + 1);
    for (int n = 1; n <= A.max_arity(); ++n) {
        const auto& c = A.component(n);
        comps[n].basis = c.basis;
        for (auto& b : comps[n].basis) b.degree += n;
        comps[n].d = c.d.scaled(Rational(sign_of_power(n)));
        for (const auto& s : c.s) comps[n].s.push_back(s.scaled(Rational(-1)));
    }
    std::map<FiniteTcdga::Key, FiniteTcdga::Table> tables;
    for (const auto& [key, t] : A.tables()) {
        auto [n, m, mask] = key;
        FiniteTcdga::Table nt = t;
        int dm = A.component(m).dim();
        // in shuffle mode the sign twist shows up as the sign of the shuffle
        long inversions = 0;
        for (int p = 0; p < n + m; ++p)
            if (mask >> p & 1u) inversions += p - std::popcount(mask & ((1u << p) - 1u));
        for (std::size_t i = 0; i < nt.size(); ++i) {
            int a = static_cast<int>(i) / dm;
            if (sign_of_power(long(m) * A.degree(n, a) + inversions) < 0)
                for (auto& [k, x] : nt[i]) x = -x;
        }
        tables[key] = std::move(nt);
    }
    return FiniteTcdga(A.ring(), A.max_arity(), A.mode(), std::move(comps), std::move(tables));
}

// Forget the symmetric-group actions, keeping products for every ordered decomposition.
inline FiniteTcdga shuffle_forget(const FiniteTcdga& A) {
    if (A.mode() == TcdgaMode::Shuffle) return A;
    std::vector<TcdgaComponent> comps(A.max_arity() + 1);
    for (int n = 1; n <= A.max_arity(); ++n) {
        comps[n].basis = A.component(n).basis;
        comps[n].d = A.component(n).d;
    }
    std::map<FiniteTcdga::Key, FiniteTcdga::Table> tables;
    for (int total = 2; total <= A.max_arity(); ++total)
        for (int n = 1; n < total; ++n)
            for (auto mask : detail::masks_with_popcount(total, n)) {
                const auto& t = A.table(n, total - n, mask);
                bool nonzero = false;
                for (const auto& v : t) nonzero = nonzero || !v.empty();
                if (nonzero) tables[{n, total - n, mask}] = t;
            }
    return FiniteTcdga(A.ring(), A.max_arity(), TcdgaMode::Shuffle, std::move(comps), std::move(tables));
}

// Unit 1 and c in degree 0, w in degree 1, dc = w, c^2 = cw = w^2 = 0.
inline FiniteCdga three_dim_cdga() {
    FiniteCdga o;
    o.ring = Ring::Q;
    o.basis = {{"1", 0}, {"c", 0}, {"w", 1}};
    o.d = ExactMatrix::from_triplets(Ring::Q, 3, 3, {{2, 1, Rational(1)}});
    o.mult.assign(3, std::vector<SparseVec>(3));
    for (int x = 0; x < 3; ++x) {
        o.mult[0][x] = {{x, Rational(1)}};
        o.mult[x][0] = {{x, Rational(1)}};
    }
    return o;
}

// One-dimensional idempotent algebra in degree 0: e * e = e.
inline FiniteCdga point_cdga(Ring ring = Ring::Q) {
    FiniteCdga o;
    o.ring = ring;
    o.basis = {{"e", 0}};
    o.d = ExactMatrix(ring, 1, 1);
    o.mult = {{SparseVec{{0, Rational(1)}}}};
    return o;
}

}  // namespace confcoh
