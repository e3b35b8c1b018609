#pragma once

#include "confcoh/dense.hpp"
#include "confcoh/smith.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace confcoh {

// Process-wide worker cap; 1 means run inline.
inline std::atomic<int>& worker_cap() {
    static std::atomic<int> cap{1};
    return cap;
}

inline void set_workers(int jobs) { worker_cap() = std::max(1, jobs); }

// Runs f(0..count-1) on up to worker_cap() threads; the first exception is rethrown.
template <class F>
void parallel_for(int count, F&& f) {
    int workers = std::min(worker_cap().load(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Cochain complex concentrated in degrees lo .. lo + dims.size() - 1.
// diffs[i] maps degree lo+i to lo+i+1 (dims[i+1] rows, dims[i] columns).
class GradedComplex {
public:
    GradedComplex() = default;

    GradedComplex(Ring ring, int lo, std::vector<int> dims, std::vector<ExactMatrix> diffs,
                  std::vector<std::vector<std::string>> labels = {}, bool validate = true)
        : ring_(ring), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)), labels_(std::move(labels)) {
        if (diffs_.empty())
            for (std::size_t i = 0; i < dims_.size(); ++i) {
                int next = i + 1 < dims_.size() ? dims_[i + 1] : 0;
                diffs_.emplace_back(ring_, next, dims_[i]);
            }
        require(diffs_.size() == dims_.size(), "one differential per degree expected");
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            int next = i + 1 < dims_.size() ? dims_[i + 1] : 0;
            require(diffs_[i].cols() == dims_[i] && diffs_[i].rows() == next, "differential shape mismatch");
            if (ring_ == Ring::Z) diffs_[i] = diffs_[i].as_ring(Ring::Z);
        }
        if (!labels_.empty()) {
            require(labels_.size() == dims_.size(), "label degrees mismatch");
            for (std::size_t i = 0; i < dims_.size(); ++i)
                require(static_cast<int>(labels_[i].size()) == dims_[i], "label count mismatch");
        }
        if (validate)
            for (std::size_t i = 0; i + 1 < dims_.size(); ++i)
                require((diffs_[i + 1] * diffs_[i]).is_zero(),
                        "d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(i)));
    }

    Ring ring() const { return ring_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool empty_range() const { return dims_.empty(); }

    int dim(int k) const {
        if (k < lo_ || k > hi()) return 0;
        return dims_[k - lo_];
    }

    // Differential out of degree k; a zero matrix of the right shape outside the range.
    ExactMatrix diff(int k) const {
        if (k >= lo_ && k <= hi()) return diffs_[k - lo_];
        return ExactMatrix(ring_, dim(k + 1), dim(k));
    }

    const std::vector<std::string>* labels(int k) const {
        if (labels_.empty() || k < lo_ || k > hi()) return nullptr;
        return &labels_[k - lo_];
    }

    long euler_characteristic() const {
        long e = 0;
        for (int k = lo_; k <= hi(); ++k) e += sign_of_power(k) * dim(k);
        return e;
    }

    GradedComplex with_ring(Ring r) const {
        GradedComplex c = *this;
        c.ring_ = r;
        for (auto& d : c.diffs_) d = d.as_ring(r);
        return c;
    }

private:
    Ring ring_ = Ring::Q;
    int lo_ = 0;
    std::vector<int> dims_;
    std::vector<ExactMatrix> diffs_;
    std::vector<std::vector<std::string>> labels_;
};

struct CohomologyGroup {
    int degree = 0;
    int free_rank = 0;
    std::vector<Integer> torsion;
    friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

struct CohomologySummary {
    Ring ring = Ring::Q;
    std::vector<CohomologyGroup> groups;  // only nonzero groups, ascending degree

    int rank(int k) const {
        for (const auto& g : groups)
            if (g.degree == k) return g.free_rank;
        return 0;
    }
    std::vector<Integer> torsion(int k) const {
        for (const auto& g : groups)
            if (g.degree == k) return g.torsion;
        return {};
    }
    bool has_torsion() const {
        for (const auto& g : groups)
            if (!g.torsion.empty()) return true;
        return false;
    }
    long euler_characteristic() const {
        long e = 0;
        for (const auto& g : groups) e += sign_of_power(g.degree) * g.free_rank;
        return e;
    }
    int total_rank() const {
        int s = 0;
        for (const auto& g : groups) s += g.free_rank;
        return s;
    }
    CohomologySummary rationalized() const {
        CohomologySummary s{Ring::Q, {}};
        for (const auto& g : groups)
            if (g.free_rank) s.groups.push_back({g.degree, g.free_rank, {}});
        return s;
    }
    friend bool operator==(const CohomologySummary& a, const CohomologySummary& b) {
        return a.groups == b.groups;
    }
};

inline void add_group(CohomologySummary& s, int degree, int free_rank, std::vector<Integer> torsion) {
    if (free_rank == 0 && torsion.empty()) return;
    for (auto& g : s.groups)
        if (g.degree == degree) {
            g.free_rank += free_rank;
            g.torsion.insert(g.torsion.end(), torsion.begin(), torsion.end());
            return;
        }
    s.groups.push_back({degree, free_rank, std::move(torsion)});
    std::sort(s.groups.begin(), s.groups.end(),
              [](const CohomologyGroup& a, const CohomologyGroup& b) { return a.degree < b.degree; });
}

// Torsion lists coming from different summands need re-normalizing into invariant factors.
inline std::vector<Integer> invariant_factors(const std::vector<Integer>& cyclic_orders) {
    if (cyclic_orders.empty()) return {};
    DenseZ D(cyclic_orders.size(), std::vector<Integer>(cyclic_orders.size(), 0));
    for (std::size_t i = 0; i < cyclic_orders.size(); ++i) D[i][i] = cyclic_orders[i];
    std::vector<Integer> out;
    for (const auto& d : detail::smith_in_place(D, nullptr, nullptr))
        if (d != 1) out.push_back(d);
    return out;
}

inline CohomologySummary cohomology(const GradedComplex& C) {
    CohomologySummary s{C.ring(), {}};
    if (C.empty_range()) return s;
    bool z = C.ring() == Ring::Z;
    std::vector<detail::EliminationResult> el;
    for (int k = C.lo(); k <= C.hi(); ++k) el.push_back(eliminate(C.diff(k), z));
    for (int k = C.lo(); k <= C.hi(); ++k) {
        int rk = el[k - C.lo()].rank;
        int rprev = k > C.lo() ? el[k - 1 - C.lo()].rank : 0;
        std::vector<Integer> tors;
        if (z && k > C.lo()) tors = el[k - 1 - C.lo()].divisors;
        add_group(s, k, C.dim(k) - rk - rprev, tors);
    }
    return s;
}

// Chain map between two complexes; maps[k - lo] acts in degree k.
struct ChainMap {
    int lo = 0;
    std::vector<ExactMatrix> maps;

    ExactMatrix at(int k, const GradedComplex& src, const GradedComplex& tgt) const {
        if (k >= lo && k < lo + static_cast<int>(maps.size())) return maps[k - lo];
        return ExactMatrix(Ring::Q, tgt.dim(k), src.dim(k));
    }
};

inline ChainMap identity_map(const GradedComplex& C) {
    ChainMap f{C.lo(), {}};
    for (int k = C.lo(); k <= C.hi(); ++k) f.maps.push_back(ExactMatrix::identity(C.ring(), C.dim(k)));
    return f;
}

inline void validate_chain_map(const GradedComplex& src, const GradedComplex& tgt, const ChainMap& f) {
    int lo = std::min(src.lo(), tgt.lo());
    int hi = std::max(src.hi(), tgt.hi());
    for (int k = lo; k <= hi; ++k) {
        ExactMatrix fk = f.at(k, src, tgt);
        require(fk.rows() == tgt.dim(k) && fk.cols() == src.dim(k), "chain map shape mismatch");
    }
    for (int k = lo; k <= hi; ++k) {
        ExactMatrix lhs = f.at(k + 1, src, tgt) * src.diff(k);
        ExactMatrix rhs = tgt.diff(k) * f.at(k, src, tgt);
        require(lhs == rhs, "not a chain map at degree " + std::to_string(k));
    }
}

namespace detail {

struct CohomologyBasis {
    std::vector<std::vector<Rational>> boundaries;  // spanning set for B^k
    std::vector<std::vector<Rational>> reps;        // cocycles completing B^k to Z^k
};

inline CohomologyBasis cohomology_basis(const GradedComplex& C, int k) {
    int n = C.dim(k);
    CohomologyBasis cb;
    if (n == 0) return cb;
    auto Z = nullspace(C.diff(k).to_dense(), n);
    DenseQ dprev = C.diff(k - 1).to_dense();
    std::vector<std::vector<Rational>> candidates;
    for (int c = 0; c < C.dim(k - 1); ++c) {
        std::vector<Rational> col(n);
        for (int r = 0; r < n; ++r) col[r] = dprev[r][c];
        candidates.push_back(col);
    }
    std::size_t nb = candidates.size();
    candidates.insert(candidates.end(), Z.begin(), Z.end());
    DenseQ M(n, std::vector<Rational>(candidates.size()));
    for (std::size_t j = 0; j < candidates.size(); ++j)
        for (int r = 0; r < n; ++r) M[r][j] = candidates[j][r];
    auto piv = rref(M, static_cast<int>(candidates.size()));
    for (int p : piv) {
        if (static_cast<std::size_t>(p) < nb) cb.boundaries.push_back(candidates[p]);
        else cb.reps.push_back(candidates[p]);
    }
    return cb;
}

// Coordinates of a cocycle v on the reps of cb, modulo boundaries.
inline std::vector<Rational> class_coordinates(const CohomologyBasis& cb, const std::vector<Rational>& v) {
    std::size_t nb = cb.boundaries.size(), nr = cb.reps.size();
    std::size_t n = v.size();
    DenseQ M(n, std::vector<Rational>(nb + nr + 1));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t j = 0; j < nb; ++j) M[r][j] = cb.boundaries[j][r];
        for (std::size_t j = 0; j < nr; ++j) M[r][nb + j] = cb.reps[j][r];
        M[r][nb + nr] = v[r];
    }
    auto piv = rref(M, static_cast<int>(nb + nr + 1));
    require(piv.empty() || piv.back() != static_cast<int>(nb + nr), "vector is not a cocycle");
    std::vector<Rational> out(nr);
    for (std::size_t i = 0; i < piv.size(); ++i)
        if (piv[i] >= static_cast<int>(nb)) out[piv[i] - nb] = M[i][nb + nr];
    return out;
}

}  // namespace detail

// Matrix (dense, over Q) of the induced map in each degree of the source range.
inline std::vector<DenseQ> induced_map_on_cohomology(const GradedComplex& src, const GradedComplex& tgt,
                                                     const ChainMap& f) {
    validate_chain_map(src, tgt, f);
    std::vector<DenseQ> out;
    for (int k = src.lo(); k <= src.hi(); ++k) {
        auto sb = detail::cohomology_basis(src, k);
        auto tb = detail::cohomology_basis(tgt, k);
        DenseQ fk = f.at(k, src, tgt).to_dense();
        DenseQ mat(tb.reps.size(), std::vector<Rational>(sb.reps.size()));
        for (std::size_t j = 0; j < sb.reps.size(); ++j) {
            std::vector<Rational> img(tgt.dim(k));
            for (int r = 0; r < tgt.dim(k); ++r)
                for (int c = 0; c < src.dim(k); ++c)
                    if (fk[r][c] != 0) img[r] += fk[r][c] * sb.reps[j][c];
            auto coords = detail::class_coordinates(tb, img);
            for (std::size_t i = 0; i < coords.size(); ++i) mat[i][j] = coords[i];
        }
        out.push_back(std::move(mat));
    }
    return out;
}

// Trace per degree (indexed from C.lo()) of a self-map on cohomology.
inline std::vector<Rational> trace_on_cohomology(const GradedComplex& C, const ChainMap& f) {
    std::vector<Rational> tr;
    for (const auto& m : induced_map_on_cohomology(C, C, f)) {
        Rational t = 0;
        for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
        tr.push_back(t);
    }
    return tr;
}

namespace detail {

inline int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

inline std::vector<int> divisors(int m) {
    std::vector<int> d;
    for (int e = 1; e <= m; ++e)
        if (m % e == 0) d.push_back(e);
    return d;
}

inline ExactMatrix matrix_power(const ExactMatrix& g, int e) {
    ExactMatrix r = ExactMatrix::identity(g.ring(), g.cols());
    for (int i = 0; i < e; ++i) r = g * r;
    return r;
}

// Columns of P with duplicates and zeros removed; same column span.
inline ExactMatrix dedupe_columns(const ExactMatrix& P) {
    std::vector<int> keep;
    std::map<ExactMatrix::Column, int> seen;
    for (int c = 0; c < P.cols(); ++c) {
        const auto& col = P.column(c);
        if (col.empty()) continue;
        ExactMatrix::Column normalized = col;
        Rational lead = normalized.front().second;
        for (auto& e : normalized) e.second /= lead;
        if (seen.emplace(normalized, c).second) keep.push_back(c);
    }
    return P.select_columns(keep);
}

// dim H^k of the subcomplex fixed by the cyclic group generated by h (of order m), per degree.
inline std::vector<int> fixed_subcomplex_dims(const GradedComplex& C, const std::vector<ExactMatrix>& h, int m) {
    std::vector<ExactMatrix> P;
    for (int k = C.lo(); k <= C.hi(); ++k) {
        const ExactMatrix& hk = h[k - C.lo()];
        ExactMatrix acc(Ring::Q, hk.rows(), hk.cols());
        ExactMatrix power = ExactMatrix::identity(Ring::Q, hk.cols());
        for (int j = 0; j < m; ++j) {
            acc = acc + power;
            power = hk * power;
        }
        P.push_back(dedupe_columns(acc));
    }
    std::vector<int> rP, rdP;
    for (int k = C.lo(); k <= C.hi(); ++k) {
        const ExactMatrix& Pk = P[k - C.lo()];
        rP.push_back(rank(Pk));
        rdP.push_back(rank(C.diff(k).as_ring(Ring::Q) * Pk));
    }
    std::vector<int> out;
    for (int k = C.lo(); k <= C.hi(); ++k) {
        int i = k - C.lo();
        out.push_back(rP[i] - rdP[i] - (i > 0 ? rdP[i - 1] : 0));
    }
    return out;
}

}  // namespace detail

// Trace of a chain automorphism g of finite order m on H^k(C; Q), per degree.
// Uses dimensions of fixed subcomplexes of the powers of g and Moebius inversion
// over the divisors of m; valid because characters of Q-representations are rational.
inline std::vector<Rational> cyclic_trace(const GradedComplex& C, const ChainMap& g, int m) {
    std::vector<Rational> tr;
    if (C.empty_range()) return tr;
    std::vector<ExactMatrix> gk;
    for (int k = C.lo(); k <= C.hi(); ++k) gk.push_back(g.at(k, C, C).as_ring(Ring::Q));
    auto divs = detail::divisors(m);
    // fixed[e] = dims of H of the subcomplex fixed by g^e.
    std::map<int, std::vector<int>> fixed;
    for (int e : divs) {
        std::vector<ExactMatrix> he;
        for (const auto& x : gk) he.push_back(detail::matrix_power(x, e));
        fixed[e] = detail::fixed_subcomplex_dims(C, he, m / e);
    }
    auto Hdims = cohomology(C.with_ring(Ring::Q));
    for (int k = C.lo(); k <= C.hi(); ++k) {
        int i = k - C.lo();
        // f(e) = trace of g^e. sum_{j < m/e} f(e j) = (m/e) dim fixed(e); traces of g^e depend only on gcd(e j, m).
        std::map<int, Rational> f;
        for (auto it = divs.rbegin(); it != divs.rend(); ++it) {
            int e = *it;
            int q = m / e;
            if (e == m) {
                f[e] = Hdims.rank(k);
                continue;
            }
            Rational s = Rational(q) * fixed[e][i];
            for (int t : detail::divisors(q))
                if (t > 1) s -= Rational(detail::euler_phi(q / t)) * f[e * t];
            f[e] = s / detail::euler_phi(q);
        }
        tr.push_back(f[1]);
    }
    return tr;
}

}  // namespace confcoh
