#pragma once

#include "confcoh/tcdga.hpp"

#include <random>

namespace confcoh {

// Finite dg algebra: the FiniteCdga data without the commutativity requirement.
using FiniteDga = FiniteCdga;

struct IdealData {
    std::vector<int> basis;  // indices into the algebra basis spanning I
};

namespace detail {

inline SparseVec dga_mul(const FiniteDga& A, const SparseVec& x, const SparseVec& y) {
    SparseVec out;
    for (const auto& [a, s] : x)
        for (const auto& [b, t] : y) axpy(out, s * t, A.mult[a][b]);
    return out;
}

inline int vec_degree(const FiniteDga& A, const SparseVec& v) {
    require(!v.empty(), "degree of the zero vector");
    return A.basis[v.begin()->first].degree;
}

// Cochain complex on the span of `subset` (all of A when empty), graded by basis degree.
inline GradedComplex dga_complex(const FiniteDga& A, const std::vector<int>& subset, std::vector<std::pair<int, int>>* where) {
    std::vector<int> idx = subset;
    if (idx.empty())
        for (int i = 0; i < A.dim(); ++i) idx.push_back(i);
    if (idx.empty()) return GradedComplex(Ring::Q, 0, {}, {});
    int lo = INT32_MAX, hi = INT32_MIN;
    for (int i : idx) {
        lo = std::min(lo, A.basis[i].degree);
        hi = std::max(hi, A.basis[i].degree);
    }
    std::vector<std::vector<int>> by(hi - lo + 1);
    std::map<int, std::pair<int, int>> pos;
    for (int i : idx) {
        int k = A.basis[i].degree - lo;
        pos[i] = {A.basis[i].degree, static_cast<int>(by[k].size())};
        by[k].push_back(i);
    }
    if (where) {
        where->assign(A.dim(), {0, -1});
        for (const auto& [i, p] : pos) (*where)[i] = p;
    }
    std::vector<int> dims;
    std::vector<ExactMatrix> diffs;
    for (int k = 0; k <= hi - lo; ++k) dims.push_back(static_cast<int>(by[k].size()));
    for (int k = 0; k <= hi - lo; ++k) {
        std::vector<SparseVec> cols;
        for (int i : by[k]) {
            SparseVec c;
            for (const auto& [r, v] : A.d.column(i)) {
                auto it = pos.find(r);
                require(it != pos.end(), "differential leaves the subspace");
                c[it->second.second] = v;
            }
            cols.push_back(std::move(c));
        }
        diffs.push_back(ExactMatrix::from_columns(Ring::Q, k < hi - lo ? dims[k + 1] : 0, cols));
    }
    return GradedComplex(Ring::Q, lo, dims, diffs);
}

}  // namespace detail

inline ValidationReport validate_ideal(const FiniteDga& A, const IdealData& I) {
    ValidationReport r;
    std::set<int> in(I.basis.begin(), I.basis.end());
    for (int i : I.basis)
        if (i < 0 || i >= A.dim()) {
            r.fail("ideal index out of range");
            return r;
        }
    auto inside = [&](const SparseVec& v) {
        for (const auto& [k, x] : v)
            if (!in.count(k)) return false;
        return true;
    };
    for (int i : I.basis) {
        if (!inside(A.d.column_vec(i))) r.fail("d(I) not contained in I at " + A.basis[i].name);
        for (int a = 0; a < A.dim(); ++a) {
            if (!inside(A.mult[a][i])) r.fail("A*I not contained in I at " + A.basis[a].name + "*" + A.basis[i].name);
            if (!inside(A.mult[i][a])) r.fail("I*A not contained in I at " + A.basis[i].name + "*" + A.basis[a].name);
        }
    }
    return r;
}

struct HypothesisReport {
    CohomologySummary ideal, algebra;
    bool map_zero = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// H(I) -> H(A) must vanish; over the integers H(I) must also be free.
inline HypothesisReport hypothesis_check(const FiniteDga& A, const IdealData& I) {
    HypothesisReport rep;
    auto v = A.validate(false);
    for (const auto& f : v.failures) rep.failures.push_back("algebra: " + f);
    auto vi = validate_ideal(A, I);
    for (const auto& f : vi.failures) rep.failures.push_back("ideal: " + f);
    if (!rep.ok()) return rep;
    if (A.ring == Ring::Z) {
        std::vector<std::pair<int, int>> w;
        auto CZ = detail::dga_complex(A, I.basis, &w).with_ring(Ring::Z);
        if (cohomology(CZ).has_torsion()) rep.failures.push_back("H(I) is not free");
    }
    std::vector<std::pair<int, int>> wi, wa;
    auto CI = detail::dga_complex(A, I.basis, &wi);
    auto CA = detail::dga_complex(A, {}, &wa);
    rep.ideal = cohomology(CI);
    rep.algebra = cohomology(CA);
    rep.map_zero = true;
    for (int k = CI.lo(); k <= CI.hi(); ++k) {
        auto cb = detail::cohomology_basis(CI, k);
        auto ca = detail::cohomology_basis(CA, k);
        for (const auto& z : cb.reps) {
            std::vector<Rational> img(CA.dim(k));
            for (int i : I.basis)
                if (wi[i].first == k && z[wi[i].second] != 0) img[wa[i].second] = z[wi[i].second];
            for (const auto& c : detail::class_coordinates(ca, img))
                if (c != 0) rep.map_zero = false;
        }
    }
    if (!rep.map_zero) rep.failures.push_back("H(I) -> H(A) is not zero");
    return rep;
}

// f_n(x_1..x_n) = c_n f(x_1) g(x_2) ... g(x_n), c_n = (-1)^{sum_m (n-m)|x_m|}.
struct AInftyMorphism {
    FiniteDga algebra;
    IdealData ideal;
    std::vector<int> class_degree;  // degree of each basis class of H(I)
    std::vector<SparseVec> f;       // cocycle representatives in A
    std::vector<SparseVec> g;       // d g = -f

    SparseVec eval(const std::vector<int>& xs) const {
        require(!xs.empty(), "f_n needs n >= 1");
        int n = static_cast<int>(xs.size());
        long e = 0;
        for (int m = 0; m < n; ++m) e += long(n - 1 - m) * class_degree[xs[m]];
        SparseVec out = f[xs[0]];
        for (int m = 1; m < n && !out.empty(); ++m) out = detail::dga_mul(algebra, out, g[xs[m]]);
        if (sign_of_power(e) < 0)
            for (auto& [k, v] : out) v = -v;
        return out;
    }
};

inline AInftyMorphism build_morphism(const FiniteDga& A, const IdealData& I) {
    auto rep = hypothesis_check(A, I);
    require(rep.ok(), "hypotheses fail: " + (rep.failures.empty() ? std::string() : rep.failures.front()));
    AInftyMorphism m;
    m.algebra = A;
    m.ideal = I;
    std::vector<std::pair<int, int>> wi, wa;
    auto CI = detail::dga_complex(A, I.basis, &wi);
    auto CA = detail::dga_complex(A, {}, &wa);
    std::vector<std::vector<int>> ideal_at(CI.hi() - CI.lo() + 1), all_at(CA.hi() - CA.lo() + 1);
    for (int i : I.basis) ideal_at[wi[i].first - CI.lo()].push_back(i);
    for (int i = 0; i < A.dim(); ++i) all_at[wa[i].first - CA.lo()].push_back(i);
    for (int k = CI.lo(); k <= CI.hi(); ++k) {
        auto cb = detail::cohomology_basis(CI, k);
        for (const auto& z : cb.reps) {
            SparseVec fx;
            for (int i : ideal_at[k - CI.lo()])
                if (z[wi[i].second] != 0) fx[i] = z[wi[i].second];
            // solve d y = -f(x) in degree k - 1 of A
            DenseQ D = CA.diff(k - 1).to_dense();
            int ncols = CA.dim(k - 1), nrows = CA.dim(k);
            DenseQ M(nrows, std::vector<Rational>(ncols + 1));
            for (int r = 0; r < nrows; ++r)
                for (int c = 0; c < ncols; ++c) M[r][c] = D[r][c];
            for (const auto& [i, v] : fx) M[wa[i].second][ncols] = -v;
            auto piv = rref(M, ncols + 1);
            require(piv.empty() || piv.back() != ncols, "d g = -f has no solution");
            SparseVec gx;
            for (std::size_t r = 0; r < piv.size(); ++r)
                if (M[r][ncols] != 0) gx[all_at[k - 1 - CA.lo()][piv[r]]] = M[r][ncols];
            m.class_degree.push_back(k);
            m.f.push_back(std::move(fx));
            m.g.push_back(std::move(gx));
        }
    }
    return m;
}

struct AInftyReport {
    bool ok = true;
    int failed_arity = 0;
    std::vector<int> witness;
    std::string message;
};

// d f_n(x) = sum_{i+j=n} (-1)^i (-1)^{(1-j) S_i} f_i(x_1..x_i) f_j(x_{i+1}..x_n), S_i = |x_1| + .. + |x_i|.
inline AInftyReport verify(const AInftyMorphism& m, int N) {
    AInftyReport rep;
    int h = static_cast<int>(m.f.size());
    for (int n = 1; n <= N && h > 0; ++n) {
        std::vector<int> xs(n, 0);
        while (true) {
            SparseVec lhs = m.algebra.d.apply(m.eval(xs));
            SparseVec rhs;
            long S = 0;
            for (int i = 1; i < n; ++i) {
                S += m.class_degree[xs[i - 1]];
                int j = n - i;
                auto left = m.eval({xs.begin(), xs.begin() + i});
                if (left.empty()) continue;
                auto right = m.eval({xs.begin() + i, xs.end()});
                axpy(rhs, Rational(sign_of_power(i + (1 - j) * S)), detail::dga_mul(m.algebra, left, right));
            }
            if (lhs != rhs) {
                rep.ok = false;
                rep.failed_arity = n;
                rep.witness = xs;
                rep.message = "relation fails in arity " + std::to_string(n) + ": d f_n = " + describe(lhs) +
                              ", expected " + describe(rhs);
                return rep;
            }
            int p = n - 1;
            while (p >= 0 && ++xs[p] == h) xs[p--] = 0;
            if (p < 0) break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- fixtures

struct AInftyFixture {
    std::string name;
    FiniteDga algebra;
    IdealData ideal;
};

// The unit/c/w algebra with I = span(w).
inline AInftyFixture ainfty_three_dim() { return {"three-dim", three_dim_cdga(), IdealData{{2}}}; }

// u (0), z (1), v (1), w (2); du = z, dv = w; zz = w, uz = v, zu = -v; I = span(z, v, w).
inline AInftyFixture ainfty_sign_fixture() {
    FiniteDga A;
    A.ring = Ring::Q;
    A.basis = {{"u", 0}, {"z", 1}, {"v", 1}, {"w", 2}};
    A.d = ExactMatrix::from_triplets(Ring::Q, 4, 4, {{1, 0, Rational(1)}, {3, 2, Rational(1)}});
    A.mult.assign(4, std::vector<SparseVec>(4));
    A.mult[1][1] = {{3, Rational(1)}};
    A.mult[0][1] = {{2, Rational(1)}};
    A.mult[1][0] = {{2, Rational(-1)}};
    return {"sign", A, IdealData{{1, 2, 3}}};
}

// Same as build_morphism but with g replaced by -g.
inline AInftyMorphism corrupt_g(AInftyMorphism m) {
    for (auto& v : m.g)
        for (auto& [k, x] : v) x = -x;
    return m;
}

// Truncated tensor algebra on acyclic pairs (u_i, z_i = c_i^{-1} du_i) modulo words longer than L,
// with I spanned by words containing a letter from a d-closed set, in a randomly sheared basis.
inline AInftyFixture random_ainfty_fixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    int pairs = 1 + static_cast<int>(rng() % 4 == 0);
    int L = pairs == 1 ? 2 + static_cast<int>(rng() % 3 == 0) : 2;
    std::vector<std::string> lname;
    std::vector<int> ldeg;
    std::vector<Rational> coef;
    const int cs[] = {1, 2, -1, -3};
    for (int i = 0; i < pairs; ++i) {
        int d = static_cast<int>(rng() % 3) - 1;
        lname.push_back("u" + std::to_string(i + 1));
        ldeg.push_back(d);
        lname.push_back("z" + std::to_string(i + 1));
        ldeg.push_back(d + 1);
        coef.push_back(cs[rng() % 4]);
    }
    int letters = 2 * pairs;
    std::vector<char> gen(letters, 0);
    // per pair: z alone (classes in H(I)), both letters, or neither
    while (std::count(gen.begin(), gen.end(), 1) == 0)
        for (int i = 0; i < pairs; ++i) {
            int r = static_cast<int>(rng() % 4);
            gen[2 * i] = r == 2;
            gen[2 * i + 1] = r <= 2;
        }
    std::vector<std::vector<int>> words;
    std::map<std::vector<int>, int> windex;
    std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& w) {
        if (!w.empty()) {
            windex[w] = static_cast<int>(words.size());
            words.push_back(w);
        }
        if (static_cast<int>(w.size()) == L) return;
        for (int a = 0; a < letters; ++a) {
            w.push_back(a);
            rec(w);
            w.pop_back();
        }
    };
    std::vector<int> empty;
    rec(empty);
    int dim = static_cast<int>(words.size());
    FiniteDga A;
    A.ring = Ring::Q;
    IdealData I;
    for (int k = 0; k < dim; ++k) {
        std::string nm;
        int deg = 0;
        bool in = false;
        for (int a : words[k]) {
            nm += lname[a];
            deg += ldeg[a];
            in = in || gen[a];
        }
        A.basis.push_back({nm, deg});
        if (in) I.basis.push_back(k);
    }
    // d on words: Leibniz over letters, d u_i = c_i z_i
    std::vector<SparseVec> dcols(dim);
    for (int k = 0; k < dim; ++k) {
        int before = 0;
        for (std::size_t p = 0; p < words[k].size(); ++p) {
            int a = words[k][p];
            if (a % 2 == 0) {
                auto w = words[k];
                w[p] = a + 1;
                add_term(dcols[k], windex.at(w), coef[a / 2] * sign_of_power(before));
            }
            before += ldeg[a];
        }
    }
    A.d = ExactMatrix::from_columns(Ring::Q, dim, dcols);
    A.mult.assign(dim, std::vector<SparseVec>(dim));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            if (static_cast<int>(words[a].size() + words[b].size()) > L) continue;
            auto w = words[a];
            w.insert(w.end(), words[b].begin(), words[b].end());
            A.mult[a][b] = {{windex.at(w), Rational(1)}};
        }
    // shear: e_j -> e_j + sum_{k > j, same degree, k in I if j in I} r e_k
    std::set<int> inI(I.basis.begin(), I.basis.end());
    DenseQ P(dim, std::vector<Rational>(dim));
    for (int j = 0; j < dim; ++j) {
        P[j][j] = 1;
        for (int k = j + 1; k < dim; ++k)
            if (A.basis[k].degree == A.basis[j].degree && (!inI.count(j) || inI.count(k)) && rng() % 3 == 0)
            {
                P[k][j] = Rational(static_cast<int>(rng() % 5) - 2, 1 + static_cast<int>(rng() % 2));
                P[k][j].canonicalize();
            }
    }
    DenseQ aug(dim, std::vector<Rational>(2 * dim));
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) aug[r][c] = P[r][c];
        aug[r][dim + r] = 1;
    }
    rref(aug, 2 * dim);
    auto col_of = [&](const DenseQ& M, int c) {
        SparseVec v;
        for (int r = 0; r < dim; ++r)
            if (M[r][c] != 0) v[r] = M[r][c];
        return v;
    };
    DenseQ Pinv(dim, std::vector<Rational>(dim));
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) Pinv[r][c] = aug[r][dim + c];
    auto pinv = [&](const SparseVec& v) {
        SparseVec out;
        for (const auto& [k, x] : v) axpy(out, x, col_of(Pinv, k));
        return out;
    };
    FiniteDga B = A;
    std::vector<SparseVec> nd(dim);
    for (int j = 0; j < dim; ++j) nd[j] = pinv(A.d.apply(col_of(P, j)));
    B.d = ExactMatrix::from_columns(Ring::Q, dim, nd);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) B.mult[a][b] = pinv(detail::dga_mul(A, col_of(P, a), col_of(P, b)));
    return {"random-" + std::to_string(seed), B, I};
}

}  // namespace confcoh
