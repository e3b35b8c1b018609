// confcoh: command-line front end. JSON in, JSON out; exit 0 ok, 1 invalid input or failed check, 2 scale bound.
#include "confcoh/selftest.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <unistd.h>

using namespace confcoh;

namespace {

struct Limits {
    int partition_bound = kDefaultPartitionBound;
    int ce_bound = kDefaultCeBound;
    int series_bound = 12;
    int jobs = 1;
};

// Hard ceilings reachable with --allow-large.
constexpr Limits kLarge{12, 7, 24, 1};

struct Options {
    std::string input, output, upset = "full", ring, mode = "CF", variant = "hatcheck", poly, fixture;
    int n = 0, k = 0, max_arity = 0, jobs = 0;
    bool characters = false, invariants = false, e1 = false, dump = false, allow_large = false;
    std::vector<int> only;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
}

Limits load_limits(const Options& o) {
    Limits lim;
    if (const char* path = std::getenv("CONFCOH_CONFIG")) {
        json cfg = read_json_file(path);
        require(cfg.is_object(), "config must be a JSON object");
        lim.partition_bound = cfg.value("partition_bound", lim.partition_bound);
        lim.ce_bound = cfg.value("ce_bound", lim.ce_bound);
        lim.series_bound = cfg.value("series_bound", lim.series_bound);
        lim.jobs = cfg.value("jobs", lim.jobs);
    }
    if (o.allow_large) {
        lim.partition_bound = std::max(lim.partition_bound, kLarge.partition_bound);
        lim.ce_bound = std::max(lim.ce_bound, kLarge.ce_bound);
        lim.series_bound = std::max(lim.series_bound, kLarge.series_bound);
    }
    lim.partition_bound = std::min(lim.partition_bound, kLarge.partition_bound);
    if (o.jobs > 0) lim.jobs = o.jobs;
    require(lim.jobs >= 1, "jobs must be positive");
    return lim;
}

// Writes to a temporary next to the target, then renames over it.
void write_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot write " + tmp.string());
        out << text;
        out.close();
        require(out.good(), "write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ValidationError("cannot rename into " + path + ": " + ec.message());
    }
}

void emit(const Options& o, const json& j) {
    std::string text = j.dump(2) + "\n";
    if (o.output.empty())
        std::cout << text;
    else
        write_atomic(o.output, text);
}

UpSet parse_upset(const Options& o, const Limits& lim) {
    if (o.upset.rfind("file:", 0) == 0) {
        UpSet U = upset_from_json(read_json_file(o.upset.substr(5)), lim.partition_bound);
        require(o.n == 0 || o.n == U.n(), "--n disagrees with the upset file");
        return U;
    }
    require(o.n >= 1, "--n is required");
    check_bound(o.n, lim.partition_bound);
    if (o.upset == "full") return UpSet::full(o.n);
    if (o.upset.rfind("k-equals:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(o.upset.substr(9));
        } catch (...) {
            throw ValidationError("bad upset " + o.upset);
        }
        return UpSet::k_equals(o.n, k);
    }
    throw ValidationError("upset must be full, k-equals:K or file:PATH");
}

BarMode parse_mode(const std::string& m) {
    if (m == "CF") return BarMode::CF;
    if (m == "CD") return BarMode::CD;
    throw ValidationError("mode must be CF or CD");
}

Ring parse_ring_flag(const std::string& r) {
    require(r == "Z" || r == "Q", "ring must be Z or Q");
    return parse_ring(r);
}

int cmd_cohomology(const Options& o, const Limits& lim, bool with_e1) {
    require(!o.input.empty(), "--input is required");
    json in = read_json_file(o.input);
    UpSet U = parse_upset(o, lim);
    int n = U.n();
    BarMode mode = parse_mode(o.mode);
    auto A = algebra_from_json(in, n);
    Ring ring = o.ring.empty() ? A->ring() : parse_ring_flag(o.ring);
    require(!(ring == Ring::Z && A->ring() == Ring::Q), "integral cohomology needs an algebra over Z");
    if (o.characters || o.invariants)
        require(A->mode() == TcdgaMode::Twisted, "characters need a twisted (equivariant) algebra");
    CfcdOptions opt;
    opt.partition_bound = lim.partition_bound;
    auto cx = build_cfcd(U, A, mode, opt);
    json out = {{"n", n}, {"upset", upset_json(U)}, {"mode", mode_name(mode)}, {"ring", ring_name(ring)}};
    out["cohomology"] = cohomology_json(total_cohomology(cx, ring));
    if (o.characters || o.invariants) {
        auto ch = characters(cx);
        if (o.characters) out["characters"] = characters_json(ch);
        if (o.invariants) out["invariants"] = invariants_json(ch);
    }
    if (with_e1 || o.e1) out["e1"] = e1_json(e1_page(cx, ring));
    if (o.dump) out["complex"] = complex_json(cx.bar.total);
    emit(o, out);
    return 0;
}

int cmd_poset(const Options& o, const Limits& lim) {
    UpSet U = parse_upset(o, lim);
    OrderVariant v = parse_variant(o.variant);
    Ring ring = o.ring.empty() ? Ring::Z : parse_ring_flag(o.ring);
    auto elems = join_closure(U, true);
    auto oc = order_complex(FinitePoset::of_partitions(elems), v, ring);
    json out = {{"n", U.n()}, {"upset", upset_json(U)}, {"variant", o.variant}, {"ring", ring_name(ring)},
                {"elements", elems.size()}, {"cohomology", cohomology_json(cohomology(oc.complex))}};
    if (o.characters || o.invariants) {
        bool stable = true;
        for (int i = 0; i + 1 < U.n(); ++i) stable = stable && U.preserved_by(Permutation::transposition(U.n(), i + 1, i + 2));
        require(stable, "characters need an S_n-stable upset");
        auto ch = poset_characters(elems, v);
        if (o.characters) out["characters"] = characters_json(ch);
        if (o.invariants) out["invariants"] = invariants_json(ch);
    }
    emit(o, out);
    return 0;
}

int cmd_series(const Options& o, const Limits& lim) {
    require(o.k >= 2, "--k must be at least 2");
    require(o.max_arity >= 1, "--max-arity is required");
    if (o.max_arity > lim.series_bound)
        throw ScaleError("max arity " + std::to_string(o.max_arity) + " exceeds the series bound " +
                         std::to_string(lim.series_bound));
    LaurentPoly P = parse_laurent(o.poly);
    auto f = kequals_series(P, o.k, o.max_arity);
    std::cout << render(f, 1);
    if (!o.output.empty())
        write_atomic(o.output, json({{"P", P.str()}, {"k", o.k}, {"max_arity", o.max_arity}, {"series", series_json(f)}})
                                       .dump(2) + "\n");
    return 0;
}

int cmd_ce_compare(const Options& o, const Limits& lim) {
    require(!o.input.empty(), "--input is required");
    require(o.n >= 1, "--n is required");
    check_bound(o.n, lim.partition_bound);
    auto A = algebra_from_json(read_json_file(o.input), o.n);
    auto rep = compare_cf_ce(A, o.n, lim.ce_bound);
    emit(o, compare_json(rep));
    return rep.match() ? 0 : 1;
}

AInftyFixture ainfty_input(const Options& o) {
    if (!o.input.empty()) {
        auto [A, I] = dga_ideal_from_json(read_json_file(o.input));
        return {o.input, A, I};
    }
    if (o.fixture == "three-dim") return ainfty_three_dim();
    if (o.fixture == "sign") return ainfty_sign_fixture();
    if (o.fixture.rfind("random:", 0) == 0) {
        std::uint64_t seed = 0;
        try {
            seed = std::stoull(o.fixture.substr(7));
        } catch (...) {
            throw ValidationError("bad fixture seed in " + o.fixture);
        }
        return random_ainfty_fixture(seed);
    }
    throw ValidationError("give --input or --fixture {three-dim,sign,random:SEED}");
}

int cmd_ainfty(const Options& o) {
    auto fx = ainfty_input(o);
    require(fx.algebra.ring == Ring::Q, "A-infinity checks run over Q");
    int N = o.max_arity > 0 ? o.max_arity : 6;
    auto hyp = hypothesis_check(fx.algebra, fx.ideal);
    json out = {{"fixture", fx.name}, {"max_arity", N}};
    out["hypotheses"] = {{"ok", hyp.ok()},
                         {"failures", hyp.failures},
                         {"map_zero", hyp.map_zero},
                         {"ideal_cohomology", cohomology_json(hyp.ideal)},
                         {"algebra_cohomology", cohomology_json(hyp.algebra)}};
    if (!hyp.ok()) {
        emit(o, out);
        return 1;
    }
    auto m = build_morphism(fx.algebra, fx.ideal);
    auto rep = verify(m, N);
    json f = json::array();
    for (std::size_t i = 0; i < m.f.size(); ++i) {
        json fi = json::object(), gi = json::object();
        for (const auto& [k, x] : m.f[i]) fi[fx.algebra.basis[k].name] = rational_json(x);
        for (const auto& [k, x] : m.g[i]) gi[fx.algebra.basis[k].name] = rational_json(x);
        f.push_back({{"degree", m.class_degree[i]}, {"f", fi}, {"g", gi}});
    }
    out["classes"] = f;
    out["verify"] = {{"ok", rep.ok}, {"failed_arity", rep.failed_arity}, {"witness", rep.witness}, {"message", rep.message}};
    emit(o, out);
    return rep.ok ? 0 : 1;
}

int cmd_selftest(const Options& o) {
    std::set<int> only(o.only.begin(), o.only.end());
    std::vector<selftest::CriterionResult> results;
    bool ok = selftest::run_all(only, std::cout, &results);
    if (!o.output.empty()) {
        json arr = json::array();
        for (const auto& r : results)
            arr.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"checks", r.checked}, {"detail", r.detail}});
        write_atomic(o.output, json({{"pass", ok}, {"criteria", arr}}).dump(2) + "\n");
    }
    return ok ? 0 : 1;
}

int fail(int code, const std::string& kind, const std::string& msg) {
    std::cerr << json({{"error", {{"kind", kind}, {"message", msg}, {"exit_code", code}}}}).dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compactly supported cohomology of generalized configuration spaces"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--output", o.output, "Output JSON path (default stdout)");
        s->add_option("--jobs", o.jobs, "Worker cap")->check(CLI::PositiveNumber);
        s->add_flag("--allow-large", o.allow_large, "Lift the configured scale bounds to their hard ceilings");
    };
    auto complex_opts = [&](CLI::App* s) {
        s->add_option("--input", o.input, "tcdga, cdga or graded-module JSON");
        s->add_option("--n", o.n, "Arity");
        s->add_option("--upset", o.upset, "full, k-equals:K or file:PATH");
        s->add_option("--mode", o.mode, "CF or CD");
        s->add_option("--ring", o.ring, "Z or Q (default: the algebra's ring)");
        s->add_flag("--characters", o.characters, "S_n characters per degree");
        s->add_flag("--invariants", o.invariants, "Dimensions of the S_n-invariants");
        s->add_flag("--dump-complex", o.dump, "Include the total complex");
        common(s);
    };

    auto* coh = app.add_subcommand("cohomology", "Total cohomology of CF(U,A) or CD(U,A)");
    complex_opts(coh);
    coh->add_flag("--e1", o.e1, "Include the E1 page");
    auto* e1 = app.add_subcommand("e1", "E1 page of the filtration by chain maxima");
    complex_opts(e1);

    auto* poset = app.add_subcommand("poset", "Order complex of the join closure of U with a bottom element");
    poset->add_option("--n", o.n, "Arity");
    poset->add_option("--upset", o.upset, "full, k-equals:K or file:PATH");
    poset->add_option("--variant", o.variant, "plain, hat, check or hatcheck");
    poset->add_option("--ring", o.ring, "Z or Q (default Z)");
    poset->add_flag("--characters", o.characters, "S_n characters per degree");
    poset->add_flag("--invariants", o.invariants, "Dimensions of the S_n-invariants");
    common(poset);

    auto* series = app.add_subcommand("series", "k-equals generating function in the Schur basis");
    series->add_option("--poly,-P", o.poly, "Laurent polynomial P(t), e.g. \"-t + t^3\"")->required();
    series->add_option("--k", o.k, "k")->required();
    series->add_option("--max-arity", o.max_arity, "Truncation arity N")->required();
    common(series);

    auto* ce = app.add_subcommand("ce-compare", "Compare CF(full) with the Chevalley-Eilenberg complex");
    ce->add_option("--input", o.input, "tcdga, cdga or graded-module JSON");
    ce->add_option("--n", o.n, "Arity");
    common(ce);

    auto* ai = app.add_subcommand("ainfty-check", "Build and verify the A-infinity morphism H(I) -> A");
    ai->add_option("--input", o.input, "{\"algebra\": dga, \"ideal\": [names]}");
    ai->add_option("--fixture", o.fixture, "three-dim, sign or random:SEED");
    ai->add_option("--max-arity", o.max_arity, "Check relations up to this arity (default 6)");
    common(ai);

    auto* st = app.add_subcommand("selftest", "Run the acceptance criteria and invariant suites");
    st->add_option("--only", o.only, "Criterion ids");
    common(st);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(1, "usage", e.what());
    }

    try {
        Limits lim = load_limits(o);
        set_workers(lim.jobs);
        if (coh->parsed()) return cmd_cohomology(o, lim, false);
        if (e1->parsed()) return cmd_cohomology(o, lim, true);
        if (poset->parsed()) return cmd_poset(o, lim);
        if (series->parsed()) return cmd_series(o, lim);
        if (ce->parsed()) return cmd_ce_compare(o, lim);
        if (ai->parsed()) return cmd_ainfty(o);
        if (st->parsed()) return cmd_selftest(o);
    } catch (const ScaleError& e) {
        return fail(2, "scale", e.what());
    } catch (const ValidationError& e) {
        return fail(1, "validation", e.what());
    } catch (const json::exception& e) {
        return fail(1, "validation", e.what());
    } catch (const std::exception& e) {
        return fail(1, "internal", e.what());
    }
    return 1;
}
