#pragma once

#include "confcoh/ainfty.hpp"
#include "confcoh/celie.hpp"
#include "confcoh/cfcd.hpp"
#include "confcoh/symfunc.hpp"

#include <json.hpp>

namespace confcoh {

using json = nlohmann::json;

// ---------------------------------------------------------------- scalars

// Coefficients are JSON integers or strings like "-3/2".
inline Rational json_rational(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ValidationError("coefficient must be an integer or a rational string, got " + j.dump());
}

inline json rational_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

inline json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline const json& field(const json& j, const char* key) {
    require(j.is_object(), "expected a JSON object");
    auto it = j.find(key);
    require(it != j.end(), std::string("missing field \"") + key + "\"");
    return *it;
}

inline int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    require(v.is_number_integer(), std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

inline Ring ring_field(const json& j, Ring fallback = Ring::Q) {
    auto it = j.find("ring");
    if (it == j.end()) return fallback;
    require(it->is_string(), "ring must be \"Z\" or \"Q\"");
    try {
        return parse_ring(it->get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

// ---------------------------------------------------------------- partitions and upsets

inline SetPartition partition_from_json(int n, const json& j) {
    require(j.is_array(), "a partition is a list of blocks");
    std::vector<std::vector<int>> blocks;
    for (const auto& b : j) {
        require(b.is_array() && !b.empty(), "a block is a nonempty list of elements");
        std::vector<int> blk;
        for (const auto& x : b) {
            require(x.is_number_integer(), "block elements are integers");
            blk.push_back(x.get<int>());
        }
        blocks.push_back(std::move(blk));
    }
    return SetPartition::from_blocks(n, blocks);
}

inline json partition_json(const SetPartition& p) { return p.blocks(); }

// {"n":4,"generators":[[[1,2,3],[4]]]} or {"named":"k_equals","k":3,"n":4} or {"named":"full","n":4}.
inline UpSet upset_from_json(const json& j, int bound = kDefaultPartitionBound) {
    int n = int_field(j, "n");
    require(n >= 1, "n must be positive");
    check_bound(n, bound);
    if (j.contains("named")) {
        std::string name = field(j, "named").get<std::string>();
        if (name == "full") return UpSet::full(n);
        if (name == "k_equals") return UpSet::k_equals(n, int_field(j, "k"));
        throw ValidationError("unknown named upset: " + name);
    }
    const json& g = field(j, "generators");
    require(g.is_array() && !g.empty(), "generators must be a nonempty list");
    std::vector<SetPartition> gens;
    for (const auto& x : g) gens.push_back(partition_from_json(n, x));
    return UpSet(n, gens);
}

inline json upset_json(const UpSet& U) {
    json g = json::array();
    for (const auto& x : U.generators()) g.push_back(partition_json(x));
    return {{"n", U.n()}, {"generators", g}};
}

// ---------------------------------------------------------------- algebras

namespace detail {

inline std::vector<BasisElement> basis_from_json(const json& j) {
    require(j.is_array(), "basis must be a list");
    std::vector<BasisElement> out;
    std::set<std::string> seen;
    for (const auto& e : j) {
        BasisElement b;
        b.name = field(e, "name").get<std::string>();
        b.degree = int_field(e, "degree");
        require(seen.insert(b.name).second, "duplicate basis name " + b.name);
        out.push_back(std::move(b));
    }
    return out;
}

inline std::map<std::string, int> name_index(const std::vector<BasisElement>& basis) {
    std::map<std::string, int> m;
    for (std::size_t i = 0; i < basis.size(); ++i) m[basis[i].name] = static_cast<int>(i);
    return m;
}

inline int lookup(const std::map<std::string, int>& idx, const json& name, const std::string& where) {
    require(name.is_string(), where + ": basis names are strings");
    auto it = idx.find(name.get<std::string>());
    require(it != idx.end(), where + ": unknown basis element " + name.get<std::string>());
    return it->second;
}

// [[src, tgt, coeff], ...]: d(src) has coefficient coeff on tgt.
inline ExactMatrix differential_from_json(Ring ring, const std::vector<BasisElement>& basis, const json& j) {
    auto idx = name_index(basis);
    int dim = static_cast<int>(basis.size());
    std::vector<std::tuple<int, int, Rational>> trips;
    if (!j.is_null()) {
        require(j.is_array(), "d must be a list of [source, target, coeff]");
        for (const auto& t : j) {
            require(t.is_array() && t.size() == 3, "d entries are [source, target, coeff]");
            int src = lookup(idx, t[0], "d"), tgt = lookup(idx, t[1], "d");
            trips.emplace_back(tgt, src, json_rational(t[2]));
        }
    }
    return ExactMatrix::from_triplets(ring, dim, dim, trips);
}

// [[a, b, [[c, coeff], ...]], ...]
inline void product_table_from_json(const json& j, const std::map<std::string, int>& left,
                                    const std::map<std::string, int>& right, const std::map<std::string, int>& target,
                                    const std::function<SparseVec&(int, int)>& slot) {
    require(j.is_array(), "product table must be a list");
    for (const auto& row : j) {
        require(row.is_array() && row.size() == 3 && row[2].is_array(), "product entries are [a, b, [[c, coeff], ...]]");
        int a = lookup(left, row[0], "mult"), b = lookup(right, row[1], "mult");
        SparseVec& out = slot(a, b);
        for (const auto& term : row[2]) {
            require(term.is_array() && term.size() == 2, "product terms are [c, coeff]");
            add_term(out, lookup(target, term[0], "mult"), json_rational(term[1]));
        }
    }
}

inline ExactMatrix dense_matrix_from_json(Ring ring, int dim, const json& j, const std::string& what) {
    require(j.is_array() && static_cast<int>(j.size()) == dim, what + ": expected " + std::to_string(dim) + " rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& r : j) {
        require(r.is_array() && static_cast<int>(r.size()) == dim, what + ": rows have " + std::to_string(dim) + " entries");
        std::vector<Rational> row;
        for (const auto& x : r) row.push_back(json_rational(x));
        rows.push_back(std::move(row));
    }
    return ExactMatrix::from_dense(ring, rows, dim);
}

}  // namespace detail

// {"ring":"Q","basis":[{"name":..,"degree":..}],"d":[[src,tgt,coeff]],"mult":[[a,b,[[c,coeff]]]]}
inline FiniteCdga cdga_from_json(const json& j) {
    FiniteCdga A;
    A.ring = ring_field(j);
    A.basis = detail::basis_from_json(field(j, "basis"));
    A.d = detail::differential_from_json(A.ring, A.basis, j.value("d", json()));
    A.mult.assign(A.dim(), std::vector<SparseVec>(A.dim()));
    auto idx = detail::name_index(A.basis);
    if (j.contains("mult"))
        detail::product_table_from_json(j["mult"], idx, idx, idx, [&](int a, int b) -> SparseVec& { return A.mult[a][b]; });
    if (A.ring == Ring::Z)
        for (const auto& row : A.mult)
            for (const auto& v : row)
                for (const auto& [k, x] : v) require(is_integral(x), "non-integral structure constant over Z");
    return A;
}

inline json cdga_json(const FiniteCdga& A) {
    json basis = json::array(), d = json::array(), mult = json::array();
    for (const auto& b : A.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}});
    for (int j = 0; j < A.dim(); ++j)
        for (const auto& [i, x] : A.d.column(j)) d.push_back({A.basis[j].name, A.basis[i].name, rational_json(x)});
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b) {
            if (A.mult[a][b].empty()) continue;
            json terms = json::array();
            for (const auto& [c, x] : A.mult[a][b]) terms.push_back({A.basis[c].name, rational_json(x)});
            mult.push_back({A.basis[a].name, A.basis[b].name, terms});
        }
    return {{"ring", ring_name(A.ring)}, {"basis", basis}, {"d", d}, {"mult", mult}};
}

// {"ring":"Q","ranks":{"2":1}}: the formal model with zero products.
inline GradedModule module_from_json(const json& j) {
    GradedModule H;
    H.ring = ring_field(j);
    const json& r = field(j, "ranks");
    require(r.is_object(), "ranks must map degrees to ranks");
    for (const auto& [k, v] : r.items()) {
        int deg = 0;
        try {
            std::size_t used = 0;
            deg = std::stoi(k, &used);
            require(used == k.size(), "");
        } catch (...) {
            throw ValidationError("bad degree key \"" + k + "\"");
        }
        require(v.is_number_integer() && v.get<int>() >= 0, "ranks are nonnegative integers");
        if (v.get<int>() > 0) H.ranks[deg] = v.get<int>();
    }
    return H;
}

// {"ring","max_arity","mode":"twisted|shuffle","components":[{"arity","basis","d","action":{"s1":[[..]]}}],
//  "mult":[{"n","m","mask"?,"table":[[a,b,[[c,coeff]]]]}]}. Missing arities are zero.
inline FiniteTcdga tcdga_from_json(const json& j) {
    Ring ring = ring_field(j);
    int N = int_field(j, "max_arity");
    require(N >= 1 && N <= 31, "max_arity out of range");
    TcdgaMode mode = TcdgaMode::Twisted;
    if (j.contains("mode")) {
        std::string m = j["mode"].get<std::string>();
        require(m == "twisted" || m == "shuffle", "mode must be twisted or shuffle");
        mode = m == "twisted" ? TcdgaMode::Twisted : TcdgaMode::Shuffle;
    }
    std::vector<TcdgaComponent> comps(N + 1);
    std::vector<char> given(N + 1, 0);
    for (const auto& c : field(j, "components")) {
        int n = int_field(c, "arity");
        require(n >= 1 && n <= N, "component arity out of range");
        require(!given[n], "arity " + std::to_string(n) + " given twice");
        given[n] = 1;
        auto& comp = comps[n];
        comp.basis = detail::basis_from_json(field(c, "basis"));
        comp.d = detail::differential_from_json(ring, comp.basis, c.value("d", json()));
        if (mode == TcdgaMode::Twisted) {
            json act = c.value("action", json::object());
            for (int i = 1; i < n; ++i) {
                std::string key = "s" + std::to_string(i);
                if (act.contains(key))
                    comp.s.push_back(detail::dense_matrix_from_json(ring, comp.dim(), act[key], "action " + key));
                else
                    comp.s.push_back(ExactMatrix::identity(ring, comp.dim()));
            }
        }
    }
    for (int n = 1; n <= N; ++n) {
        if (given[n]) continue;
        comps[n].d = ExactMatrix(ring, 0, 0);
        if (mode == TcdgaMode::Twisted)
            for (int i = 1; i < n; ++i) comps[n].s.push_back(ExactMatrix(ring, 0, 0));
    }
    std::map<FiniteTcdga::Key, FiniteTcdga::Table> tables;
    for (const auto& t : j.value("mult", json::array())) {
        int n = int_field(t, "n"), m = int_field(t, "m");
        require(n >= 1 && m >= 1 && n + m <= N, "product arity out of range");
        std::uint32_t mask = concat_mask(n);
        if (t.contains("mask")) {
            // list of 1-based positions carried by the first factor
            mask = 0;
            for (const auto& p : t["mask"]) {
                require(p.is_number_integer() && p.get<int>() >= 1 && p.get<int>() <= n + m, "mask positions in 1..n+m");
                mask |= 1u << (p.get<int>() - 1);
            }
        }
        FiniteTcdga::Key key{n, m, mask};
        require(!tables.count(key), "product table given twice");
        auto& table = tables[key];
        int dm = comps[m].dim();
        table.assign(comps[n].dim() * dm, SparseVec{});
        detail::product_table_from_json(field(t, "table"), detail::name_index(comps[n].basis),
                                        detail::name_index(comps[m].basis), detail::name_index(comps[n + m].basis),
                                        [&](int a, int b) -> SparseVec& { return table[a * dm + b]; });
    }
    return FiniteTcdga(ring, N, mode, std::move(comps), std::move(tables));
}

// Any of the three algebra inputs, read as a tcdga truncated at arity N.
inline std::shared_ptr<const FiniteTcdga> algebra_from_json(const json& j, int N) {
    if (j.contains("components")) {
        auto A = std::make_shared<FiniteTcdga>(tcdga_from_json(j));
        require(A->max_arity() >= N, "algebra max_arity is below n");
        auto rep = A->validate();
        require(rep.ok(), "invalid tcdga: " + (rep.failures.empty() ? std::string() : rep.failures.front()));
        return A;
    }
    if (j.contains("ranks")) return std::make_shared<FiniteTcdga>(formal_tcdga(module_from_json(j), N));
    if (j.contains("basis")) return std::make_shared<FiniteTcdga>(constant_tcdga(cdga_from_json(j), N));
    throw ValidationError("input is neither a tcdga, a cdga nor a graded module");
}

inline json tcdga_json(const FiniteTcdga& A) {
    json comps = json::array(), mult = json::array();
    for (int n = 1; n <= A.max_arity(); ++n) {
        const auto& c = A.component(n);
        json basis = json::array(), d = json::array(), act = json::object();
        for (const auto& b : c.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}});
        for (int j = 0; j < c.dim(); ++j)
            for (const auto& [i, x] : c.d.column(j)) d.push_back({c.basis[j].name, c.basis[i].name, rational_json(x)});
        for (std::size_t i = 0; i < c.s.size(); ++i) {
            json rows = json::array();
            auto D = c.s[i].to_dense();
            for (const auto& r : D) {
                json row = json::array();
                for (const auto& x : r) row.push_back(rational_json(x));
                rows.push_back(row);
            }
            act["s" + std::to_string(i + 1)] = rows;
        }
        comps.push_back({{"arity", n}, {"basis", basis}, {"d", d}, {"action", act}});
    }
    for (const auto& [key, table] : A.tables()) {
        auto [n, m, mask] = key;
        const auto &cn = A.component(n), &cm = A.component(m), &cnm = A.component(n + m);
        json rows = json::array();
        for (int a = 0; a < cn.dim(); ++a)
            for (int b = 0; b < cm.dim(); ++b) {
                const auto& v = table[a * cm.dim() + b];
                if (v.empty()) continue;
                json terms = json::array();
                for (const auto& [k, x] : v) terms.push_back({cnm.basis[k].name, rational_json(x)});
                rows.push_back({cn.basis[a].name, cm.basis[b].name, terms});
            }
        json entry = {{"n", n}, {"m", m}, {"table", rows}};
        if (A.mode() == TcdgaMode::Shuffle) {
            json pos = json::array();
            for (int p : detail::bits_of(mask)) pos.push_back(p + 1);
            entry["mask"] = pos;
        }
        mult.push_back(entry);
    }
    return {{"ring", ring_name(A.ring())},
            {"max_arity", A.max_arity()},
            {"mode", A.mode() == TcdgaMode::Twisted ? "twisted" : "shuffle"},
            {"components", comps},
            {"mult", mult}};
}

// {"algebra": <cdga schema, products need not commute>, "ideal": [names]}
inline std::pair<FiniteDga, IdealData> dga_ideal_from_json(const json& j) {
    FiniteDga A = cdga_from_json(field(j, "algebra"));
    IdealData I;
    auto idx = detail::name_index(A.basis);
    for (const auto& x : field(j, "ideal")) I.basis.push_back(detail::lookup(idx, x, "ideal"));
    std::sort(I.basis.begin(), I.basis.end());
    I.basis.erase(std::unique(I.basis.begin(), I.basis.end()), I.basis.end());
    return {A, I};
}

// ---------------------------------------------------------------- results

inline json cohomology_json(const CohomologySummary& s) {
    json out = json::array();
    for (const auto& g : s.groups) {
        json t = json::array();
        for (const auto& z : g.torsion) t.push_back(integer_json(z));
        out.push_back({{"degree", g.degree}, {"free_rank", g.free_rank}, {"torsion", t}});
    }
    return out;
}

inline json characters_json(const CharacterTableResult& r) {
    json out = json::array();
    for (const auto& [deg, row] : r.by_degree) {
        json by = json::object();
        for (const auto& [type, v] : row) by[cycle_type_key(type)] = rational_json(v);
        out.push_back({{"degree", deg}, {"by_cycle_type", by}});
    }
    return out;
}

inline json invariants_json(const CharacterTableResult& r) {
    json out = json::array();
    for (const auto& [deg, v] : invariants_dims(r)) out.push_back({{"degree", deg}, {"dim", rational_json(v)}});
    return out;
}

inline json e1_json(const E1Page& page) {
    json out = json::array();
    for (const auto& e : page.entries) {
        json x = {{"T", partition_json(e.T)}, {"p", e.p}, {"in_J", e.in_J}, {"entries", cohomology_json(e.graded)}};
        if (e.in_J) x["closed_form"] = cohomology_json(e.closed);
        out.push_back(std::move(x));
    }
    return out;
}

// Per-degree basis labels and sparse differential triples [row, col, coeff].
inline json complex_json(const GradedComplex& C) {
    json out = {{"ring", ring_name(C.ring())}, {"lo", C.lo()}, {"degrees", json::array()}};
    for (int k = C.lo(); k <= C.hi(); ++k) {
        json deg = {{"degree", k}, {"dim", C.dim(k)}};
        if (const auto* lab = C.labels(k)) deg["labels"] = *lab;
        json d = json::array();
        ExactMatrix D = C.diff(k);
        for (int c = 0; c < D.cols(); ++c)
            for (const auto& [r, v] : D.column(c)) d.push_back({r, c, rational_json(v)});
        deg["d"] = d;
        out["degrees"].push_back(std::move(deg));
    }
    return out;
}

inline json laurent_json(const LaurentPoly& p) {
    json out = json::object();
    for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = rational_json(c);
    return out;
}

inline json series_json(const SymFunc& f, int from = 1) {
    json out = json::array();
    for (int n = from; n <= f.truncation(); ++n) {
        json terms = json::array();
        auto sch = to_schur(f.arity(n));
        for (auto it = sch.rbegin(); it != sch.rend(); ++it) {
            if (it->second.is_zero()) continue;
            terms.push_back({{"partition", it->first}, {"coeff", laurent_json(it->second)}, {"text", it->second.str()}});
        }
        out.push_back({{"arity", n}, {"schur", terms}, {"text", render_arity(f, n)}});
    }
    return out;
}

inline json compare_json(const CompareReport& r) {
    json out = {{"n", r.n},
                {"cf", cohomology_json(r.cf)},
                {"ce", cohomology_json(r.ce)},
                {"dims_match", r.dims_match},
                {"match", r.match()}};
    if (r.with_characters) {
        out["cf_characters"] = characters_json(r.cf_characters);
        out["ce_characters"] = characters_json(r.ce_characters);
        out["characters_match"] = r.characters_match;
    }
    return out;
}

}  // namespace confcoh
