#pragma once

#include "confcoh/json_io.hpp"

#include <chrono>
#include <ostream>

namespace confcoh {

namespace selftest {

// Collects failures; keeps the first few messages.
struct Check {
    int checked = 0;
    int failed = 0;
    std::vector<std::string> messages;

    bool expect(bool cond, const std::string& what) {
        ++checked;
        if (!cond) {
            ++failed;
            if (messages.size() < 5) messages.push_back(what);
        }
        return cond;
    }
    bool ok() const { return failed == 0; }
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    int checked = 0;
    std::string detail;
    double seconds = 0;
};

inline std::string summary_str(const CohomologySummary& s) {
    std::string out;
    for (const auto& g : s.groups) {
        out += (out.empty() ? "" : " ") + std::to_string(g.degree) + ":" + std::to_string(g.free_rank);
        for (const auto& t : g.torsion) out += "+Z/" + t.get_str();
    }
    return out.empty() ? "0" : out;
}

inline std::vector<SetPartition> partitions_of_type(int n, std::vector<int> type) {
    std::sort(type.rbegin(), type.rend());
    std::vector<SetPartition> out;
    for (const auto& x : enumerate_partitions(n)) {
        std::vector<int> sizes;
        for (const auto& b : x.blocks()) sizes.push_back(static_cast<int>(b.size()));
        std::sort(sizes.rbegin(), sizes.rend());
        if (sizes == type) out.push_back(x);
    }
    return out;
}

// S_n-stable upset generated by all partitions of one or two random block types.
inline UpSet random_stable_upset(std::mt19937_64& rng, int n) {
    std::vector<CycleType> types;
    for (auto& t : integer_partitions(n))
        if (t.front() >= 2) types.push_back(t);
    std::vector<SetPartition> gens;
    int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
        auto more = partitions_of_type(n, types[rng() % types.size()]);
        gens.insert(gens.end(), more.begin(), more.end());
    }
    return UpSet(n, gens);
}

inline GradedModule random_module(std::mt19937_64& rng, Ring ring) {
    GradedModule H;
    H.ring = ring;
    int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) H.ranks[static_cast<int>(rng() % 4)] = 1;
    return H;
}

struct ClosedFormFixture {
    int n;
    GradedModule H;
    UpSet U;
};

inline std::vector<ClosedFormFixture> closed_form_fixtures() {
    std::mt19937_64 rng(4004);
    std::vector<ClosedFormFixture> out;
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 4;
        auto H = random_module(rng, Ring::Q);
        out.push_back({n, H, random_stable_upset(rng, n)});
    }
    return out;
}

inline std::string fixture_str(const ClosedFormFixture& f) {
    std::string s = "n=" + std::to_string(f.n) + " H={";
    for (const auto& [d, r] : f.H.ranks) s += std::to_string(d) + ":" + std::to_string(r) + ",";
    s += "} U=";
    for (const auto& g : f.U.generators()) s += g.str() + ";";
    return s;
}

// ---------------------------------------------------------------- criteria

inline void partition_complex_ranks(Check& c) {
    long fact = 1;
    for (int n = 2; n <= 6; ++n) {
        fact *= n - 1;
        auto oc = order_complex(FinitePoset::of_partitions(enumerate_partitions(n)), OrderVariant::HatCheck, Ring::Z);
        auto h = cohomology(oc.complex);
        bool ok = h.groups.size() == 1 && h.groups[0].degree == n - 1 && h.groups[0].free_rank == fact &&
                  h.groups[0].torsion.empty();
        c.expect(ok, "n=" + std::to_string(n) + ": got " + summary_str(h));
    }
}

inline SymFunc poset_pi_k(int k, int N) {
    SymFunc out(N);
    for (int n = 1; n <= N; ++n) {
        if (n > 1 && n < k) continue;
        std::vector<SetPartition> elems = n == 1 ? std::vector<SetPartition>{SetPartition::bottom(1)}
                                                 : join_closure(UpSet::k_equals(n, k), true);
        out = out + frobenius(n, poset_characters(elems, OrderVariant::HatCheck).by_degree, N);
    }
    return out;
}

inline void pi_k_cross_check(Check& c) {
    for (auto [k, N] : {std::pair{2, 6}, std::pair{3, 7}}) {
        auto formula = pi_k_char(k, N), direct = poset_pi_k(k, N);
        for (int n = 1; n <= N; ++n)
            c.expect(formula.arity(n) == direct.arity(n), "k=" + std::to_string(k) + " " + render_arity(formula, n) +
                                                               " vs " + render_arity(direct, n));
    }
}

inline void arnold(Check& c) {
    for (int n = 2; n <= 5; ++n) {
        std::vector<Integer> poly{1};
        for (int i = 1; i < n; ++i) {
            std::vector<Integer> next(poly.size() + 1, 0);
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j] += poly[j];
                next[j + 1] += poly[j] * i;
            }
            poly = next;
        }
        auto A = std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{Ring::Q, {{2, 1}}}, n));
        auto h = total_cohomology(cf_complex(UpSet::full(n), A), Ring::Q);
        CohomologySummary expect{Ring::Q, {}};
        for (std::size_t j = 0; j < poly.size(); ++j)
            add_group(expect, 2 * n - static_cast<int>(j), static_cast<int>(poly[j].get_si()), {});
        c.expect(h == expect, "n=" + std::to_string(n) + ": got " + summary_str(h) + ", want " + summary_str(expect));
    }
}

inline void closed_form(Check& c) {
    for (const auto& f : closed_form_fixtures()) {
        auto A = std::make_shared<FiniteTcdga>(formal_tcdga(f.H, f.n));
        auto cf = cf_complex(f.U, A);
        auto direct = total_cohomology(cf, Ring::Q);
        auto closed = iacyclic_closed_form(f.H, f.U, Ring::Q, true);
        c.expect(direct == closed.cohomology,
                 fixture_str(f) + " Q: " + summary_str(direct) + " vs " + summary_str(closed.cohomology));
        c.expect(characters(cf) == closed.characters, fixture_str(f) + " characters differ");
        GradedModule HZ{Ring::Z, f.H.ranks};
        auto AZ = std::make_shared<FiniteTcdga>(formal_tcdga(HZ, f.n));
        auto directZ = total_cohomology(cf_complex(f.U, AZ), Ring::Z);
        auto closedZ = iacyclic_closed_form(HZ, f.U, Ring::Z, false);
        c.expect(directZ == closedZ.cohomology,
                 fixture_str(f) + " Z: " + summary_str(directZ) + " vs " + summary_str(closedZ.cohomology));
    }
}

inline void degeneration(Check& c) {
    for (const auto& f : closed_form_fixtures()) {
        auto A = std::make_shared<FiniteTcdga>(formal_tcdga(f.H, f.n));
        auto cf = cf_complex(f.U, A);
        auto h = total_cohomology(cf, Ring::Q);
        auto page = e1_page(cf, Ring::Q);
        std::set<int> degrees;
        for (const auto& g : h.groups) degrees.insert(g.degree);
        for (const auto& e : page.entries)
            for (const auto& g : e.graded.groups) degrees.insert(g.degree);
        for (int q : degrees)
            c.expect(page.total_rank(q) == h.rank(q), fixture_str(f) + " q=" + std::to_string(q) + ": E1 " +
                                                          std::to_string(page.total_rank(q)) + " vs " +
                                                          std::to_string(h.rank(q)));
    }
}

inline void cf_ce(Check& c) {
    struct Input {
        std::string name;
        std::function<FiniteTcdga(int)> make;
    };
    std::vector<Input> inputs = {
        {"formal Q deg 2", [](int n) { return formal_tcdga(GradedModule{Ring::Q, {{2, 1}}}, n); }},
        {"formal degs 1,2", [](int n) { return formal_tcdga(GradedModule{Ring::Q, {{1, 1}, {2, 1}}}, n); }},
        {"formal deg 0 rank 2", [](int n) { return formal_tcdga(GradedModule{Ring::Q, {{0, 2}}}, n); }},
        {"constant 3-dim", [](int n) { return constant_tcdga(three_dim_cdga(), n); }},
    };
    for (const auto& in : inputs)
        for (int n = 2; n <= 4; ++n) {
            auto rep = compare_cf_ce(std::make_shared<FiniteTcdga>(in.make(n)), n);
            c.expect(rep.with_characters && rep.match(), in.name + " n=" + std::to_string(n) + ": CF " +
                                                             summary_str(rep.cf) + " CE " + summary_str(rep.ce));
        }
}

inline void ainfty_relations(Check& c) {
    auto three = ainfty_three_dim();
    auto m = build_morphism(three.algebra, three.ideal);
    auto v = verify(m, 6);
    c.expect(v.ok, "three-dim: " + v.message);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto fx = random_ainfty_fixture(seed);
        auto rep = hypothesis_check(fx.algebra, fx.ideal);
        if (!c.expect(rep.ok(), fx.name + ": hypotheses fail")) continue;
        auto r = verify(build_morphism(fx.algebra, fx.ideal), 6);
        c.expect(r.ok, fx.name + ": " + r.message);
    }
    auto sign = ainfty_sign_fixture();
    auto bad = verify(corrupt_g(build_morphism(sign.algebra, sign.ideal)), 6);
    c.expect(!bad.ok && bad.failed_arity == 2, "corrupted g: failed arity " + std::to_string(bad.failed_arity));
}

inline void series_vs_complex(Check& c) {
    const int N = 5;
    for (auto [P, deg] : {std::pair{std::string("-t"), 1}, std::pair{std::string("t^2"), 2}}) {
        auto A = std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{Ring::Q, {{deg, 1}}}, N));
        for (int k = 2; k <= 3; ++k) {
            auto series = kequals_series(parse_laurent(P), k, N);
            for (int n = 1; n <= N; ++n) {
                auto ch = characters(cf_complex(n >= k ? UpSet::k_equals(n, k) : UpSet(n, {}), A));
                auto direct = frobenius(n, ch.by_degree, N);
                c.expect(series.arity(n) == direct, "P=" + P + " k=" + std::to_string(k) + " " +
                                                        render_arity(series, n) + " vs " + render_arity(direct, n));
            }
        }
    }
}

inline void torsion_free(Check& c) {
    for (int deg = 0; deg <= 2; ++deg)
        for (int n = 2; n <= 5; ++n) {
            auto A = std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{Ring::Z, {{deg, 1}}}, n));
            for (int k = 2; k <= n; ++k) {
                auto h = total_cohomology(cf_complex(UpSet::k_equals(n, k), A), Ring::Z);
                c.expect(!h.has_torsion(), "deg=" + std::to_string(deg) + " n=" + std::to_string(n) +
                                               " k=" + std::to_string(k) + ": " + summary_str(h));
            }
        }
}

// ---------------------------------------------------------------- invariant suites

inline SetPartition random_partition(std::mt19937_64& rng, int n) {
    std::vector<int> lab(n);
    for (auto& x : lab) x = static_cast<int>(rng() % n);
    return SetPartition::from_labels(lab);
}

inline Permutation random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::shuffle(im.begin(), im.end(), rng);
    return Permutation(im);
}

inline LieWord random_word(std::mt19937_64& rng, std::vector<int> labels) {
    if (labels.size() == 1) return LieWord::leaf(labels[0]);
    std::shuffle(labels.begin(), labels.end(), rng);
    std::size_t cut = 1 + rng() % (labels.size() - 1);
    return LieWord::bracket(random_word(rng, {labels.begin(), labels.begin() + cut}),
                            random_word(rng, {labels.begin() + cut, labels.end()}));
}

inline LieElem lie_add(LieElem a, const LieElem& b, const Rational& s = 1) {
    for (const auto& [w, x] : b) {
        auto& c = a[w];
        c += s * x;
        if (c == 0) a.erase(w);
    }
    return a;
}

inline SymFunc random_sym(std::mt19937_64& rng, int N, int from) {
    SymFunc f(N);
    for (int n = from; n <= N; ++n)
        for (const auto& mu : partitions_of(n))
            if (rng() % 2)
                f.add(mu, LaurentPoly::monomial(static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 4) - 1));
    return f;
}

inline Integer det(DenseZ m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline DenseZ product(const DenseZ& a, const DenseZ& b) {
    std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    DenseZ c(n, std::vector<Integer>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t l = 0; l < k; ++l) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline void lattice_axioms(Check& c) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + trial % 7;
        auto a = random_partition(rng, n), b = random_partition(rng, n), d = random_partition(rng, n);
        auto g = random_permutation(rng, n);
        bool ok = join(a, b) == join(b, a) && meet(a, b) == meet(b, a) &&
                  join(join(a, b), d) == join(a, join(b, d)) && meet(meet(a, b), d) == meet(a, meet(b, d)) &&
                  join(a, meet(a, b)) == a && meet(a, join(a, b)) == a && leq(a, b) == (join(a, b) == b) &&
                  act(g, join(a, b)) == join(act(g, a), act(g, b));
        c.expect(ok, "lattice axioms at " + a.str() + ", " + b.str() + ", " + d.str());
    }
    for (int n = 1; n <= 6; ++n) {
        auto U = random_stable_upset(rng, std::max(n, 2));
        auto mins = U.minimal_elements();
        for (const auto& x : mins)
            for (const auto& y : mins) c.expect(x == y || !leq(x, y), "minimal elements not an antichain");
        for (const auto& x : U.members())
            for (const auto& y : enumerate_partitions(U.n()))
                if (leq(x, y)) c.expect(U.contains(y), "upset not upward closed");
    }
}

inline void smith_contracts(Check& c) {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + trial % 6, cols = 1 + (trial * 5) % 7;
        std::vector<std::tuple<int, int, Rational>> t;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < cols; ++j)
                if (rng() % 10 < 6) t.emplace_back(i, j, Rational(static_cast<int>(rng() % 13) - 6));
        auto m = ExactMatrix::from_triplets(Ring::Z, r, cols, t);
        auto s = smith_normal_form(m);
        DenseZ M(r, std::vector<Integer>(cols, 0));
        for (int j = 0; j < cols; ++j)
            for (const auto& [i, v] : m.column(j)) M[i][j] = v.get_num();
        bool ok = product(product(s.U, M), s.V) == s.S && abs(det(s.U)) == 1 && abs(det(s.V)) == 1;
        for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) ok = ok && s.diagonal[i + 1] % s.diagonal[i] == 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j) ok = ok && s.S[i][j] == 0;
        ok = ok && rank(m.as_ring(Ring::Q)) == static_cast<int>(s.diagonal.size());
        c.expect(ok, "Smith contract, trial " + std::to_string(trial));
    }
}

inline void bar_differentials(Check& c) {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 8; ++trial) {
        int n = 2 + trial % 3;
        auto U = random_stable_upset(rng, n);
        auto A = std::make_shared<FiniteTcdga>(constant_tcdga(three_dim_cdga(), n));
        for (auto mode : {BarMode::CF, BarMode::CD}) {
            auto cx = build_cfcd(U, A, mode);
            const auto& T = cx.bar.total;
            for (int k = T.lo(); k < T.hi(); ++k)
                c.expect((T.diff(k + 1) * T.diff(k)).is_zero(), "D^2 != 0 at degree " + std::to_string(k));
            // Euler characteristic of chains equals that of cohomology
            c.expect(T.euler_characteristic() == total_cohomology(cx, Ring::Q).euler_characteristic(),
                     "Euler characteristic mismatch");
        }
        c.expect(A->validate().ok() && suspension(*A).validate().ok(), "tcdga validation");
    }
}

inline void plethysm_axioms(Check& c) {
    std::mt19937_64 rng(404);
    const int N = 5;
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_sym(rng, N, 0), h = random_sym(rng, N, 0), g = random_sym(rng, N, 1), g2 = random_sym(rng, N, 1);
        bool ok = plethysm(f * h, g) == plethysm(f, g) * plethysm(h, g) &&
                  plethysm(f + h, g) == plethysm(f, g) + plethysm(h, g);
        for (int d = 1; d <= 3; ++d) {
            auto pd = SymFunc::p({d}, N);
            ok = ok && plethysm(pd, g * g2) == plethysm(pd, g) * plethysm(pd, g2) &&
                 plethysm(pd, SymFunc::p({2}, N)) == SymFunc::p({2 * d}, N);
        }
        SymFunc back(N);
        for (const auto& [lambda, x] : to_schur(f)) back = back + x * schur(lambda, N);
        c.expect(ok && back == f, "plethysm axioms, trial " + std::to_string(trial));
    }
}

inline void lie_axioms(Check& c) {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + trial % 4;
        std::vector<int> labels(n);
        std::iota(labels.begin(), labels.end(), 1);
        std::shuffle(labels.begin(), labels.end(), rng);
        std::size_t c1 = 1 + rng() % (n - 2), c2 = c1 + 1 + rng() % (n - 1 - c1);
        auto x = random_word(rng, {labels.begin(), labels.begin() + c1});
        auto y = random_word(rng, {labels.begin() + c1, labels.begin() + c2});
        auto z = random_word(rng, {labels.begin() + c2, labels.end()});
        using W = LieWord;
        auto jac = lie_add(lie_add(normalize(W::bracket(x, W::bracket(y, z))), normalize(W::bracket(y, W::bracket(z, x)))),
                           normalize(W::bracket(z, W::bracket(x, y))));
        bool anti = normalize(W::bracket(y, x)) == lie_add({}, normalize(W::bracket(x, y)), -1);
        c.expect(jac.empty() && anti, "Jacobi/antisymmetry, trial " + std::to_string(trial));
    }
}

inline void class_functions(Check& c) {
    std::mt19937_64 rng(606);
    struct Case {
        UpSet U;
        std::shared_ptr<const FiniteTcdga> A;
    };
    std::vector<Case> cases = {
        {UpSet::full(3), std::make_shared<FiniteTcdga>(constant_tcdga(three_dim_cdga(), 3))},
        {UpSet::k_equals(4, 3), std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{Ring::Q, {{1, 1}}}, 4))},
        {UpSet::full(4), std::make_shared<FiniteTcdga>(formal_tcdga(GradedModule{Ring::Q, {{2, 1}}}, 4))},
    };
    for (const auto& cs : cases) {
        auto cf = cf_complex(cs.U, cs.A);
        auto ch = characters(cf);
        auto h = total_cohomology(cf, Ring::Q);
        int n = cs.U.n();
        for (const auto& g : h.groups)
            c.expect(ch.value(g.degree, CycleType(n, 1)) == g.free_rank, "identity trace is not the dimension");
        for (int trial = 0; trial < 6; ++trial) {
            auto g = random_permutation(rng, n);
            auto tr = cyclic_trace(cf.bar.total, equivariant_action(g, cf.bar), g.order());
            for (int k = cf.bar.total.lo(); k <= cf.bar.total.hi(); ++k)
                c.expect(tr[k - cf.bar.total.lo()] == ch.value(k, g.cycle_type()), "character not a class function");
        }
        for (const auto& [deg, dim] : invariants_dims(ch)) c.expect(is_integral(dim) && dim >= 0, "invariants not a dimension");
    }
}

inline void invariant_suites(Check& c) {
    lattice_axioms(c);
    smith_contracts(c);
    bar_differentials(c);
    plethysm_axioms(c);
    lie_axioms(c);
    class_functions(c);
}

struct Criterion {
    int id;
    std::string title;
    std::function<void(Check&)> run;
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "partition complex ranks over Z, n=2..6", partition_complex_ranks},
        {2, "pi_k formula vs poset characters, k=2 n<=6, k=3 n<=7", pi_k_cross_check},
        {3, "Arnold dimensions for formal Q in degree 2, n=2..5", arnold},
        {4, "closed form vs complex on 20 random (H,U), Q with characters and Z", closed_form},
        {5, "E1 degeneration on the closed-form fixtures", degeneration},
        {6, "CF vs CE dims and characters, n=2..4", cf_ce},
        {7, "A-infinity relations up to N=6, corrupted g fails at n=2", ainfty_relations},
        {8, "k-equals series vs CF characters, n<=5", series_vs_complex},
        {9, "torsion-free k-equals cohomology over Z, n<=5", torsion_free},
        {10, "invariant suites with fixed seeds", invariant_suites},
    };
    return all;
}

inline CriterionResult run_criterion(const Criterion& cr) {
    CriterionResult res;
    res.id = cr.id;
    res.title = cr.title;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        cr.run(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    res.pass = c.ok() && c.checked > 0;
    res.checked = c.checked;
    for (const auto& m : c.messages) res.detail += (res.detail.empty() ? "" : "; ") + m;
    return res;
}

inline std::string format_line(const CriterionResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2fs", r.seconds);
    std::string line = std::string(r.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + ": " + r.title +
                       " [" + std::to_string(r.checked) + " checks, " + secs + "]";
    if (!r.pass) line += " -- " + r.detail;
    return line;
}

// Runs the selected criteria (all when empty), printing one line each; true iff all pass.
inline bool run_all(const std::set<int>& only, std::ostream& out, std::vector<CriterionResult>* results = nullptr) {
    bool all = true;
    for (const auto& cr : criteria()) {
        if (!only.empty() && !only.count(cr.id)) continue;
        auto r = run_criterion(cr);
        out << format_line(r) << std::endl;
        all = all && r.pass;
        if (results) results->push_back(std::move(r));
    }
    return all;
}

}  // namespace selftest

}  // namespace confcoh
