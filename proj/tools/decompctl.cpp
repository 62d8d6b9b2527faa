// decompctl: command-line driver for the decomp library.
//
// Exit codes: 0 ok / decomposable, 1 usage, 2 bad input, 3 not decomposable,
// 4 invariant breach, 5 search budget exhausted.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <decomp/decomp.hpp>
#include <decomp/io.hpp>

namespace fs = std::filesystem;
using namespace decomp;
using io::Json;

namespace {

enum Exit : int { ok = 0, usage = 1, bad_input = 2, not_decomposable = 3, invariant = 4, exhausted = 5 };

struct Common {
    unsigned threads = 1;
    std::string out_dir;
};

// Where a complex comes from: a JSON file or Δ(a,b).
struct Source {
    std::string file;
    int a = 0;
    int b = 0;

    void add_to(CLI::App* app)
    {
        app->add_option("--complex", file, "complex JSON file");
        app->add_option("--a", a, "Δ(a,b) parameter a");
        app->add_option("--b", b, "Δ(a,b) parameter b");
    }

    [[nodiscard]] bool is_delta() const { return file.empty(); }

    [[nodiscard]] SimplicialComplex load() const
    {
        if (!file.empty()) return io::complex_from_json(io::read_json_file(file));
        require_input(a > 0 && b > 0, "give --complex FILE or both --a and --b");
        return delta_complex(a, b).complex;
    }
};

std::vector<Rational> parse_list(const std::string& text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

void emit(const Common& c, const std::string& name, const Json& j)
{
    std::cout << j.dump(2) << "\n";
    if (!c.out_dir.empty()) {
        fs::create_directories(c.out_dir);
        io::write_json_file((fs::path(c.out_dir) / name).string(), j);
    }
}

Json load_json_arg(const std::string& text)
{
    if (!text.empty() && text.front() == '@') return io::read_json_file(text.substr(1));
    return io::parse_json_text(text);
}

int outcome_exit(Outcome o)
{
    switch (o) {
    case Outcome::decomposable: return ok;
    case Outcome::not_decomposable: return not_decomposable;
    case Outcome::budget_exhausted: return exhausted;
    }
    return invariant;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- report ----------------------------------------------------------------

struct ReportArgs {
    int a = 2;
    int b = 2;
    int kmax = 0;
    std::optional<std::int64_t> max_states;
};

int run_report(const Common& c, const ReportArgs& r)
{
    Json summary;
    summary["command"] = "report";
    summary["a"] = r.a;
    summary["b"] = r.b;
    summary["kmax"] = r.kmax;
    Json artifacts = Json::array();
    auto save = [&](const std::string& name, const Json& j) {
        if (c.out_dir.empty()) return;
        fs::create_directories(c.out_dir);
        io::write_json_file((fs::path(c.out_dir) / name).string(), j);
        artifacts.push_back(name);
    };
    auto t0 = std::chrono::steady_clock::now();

    auto delta = delta_complex(r.a, r.b);
    auto polar = delta_complex_via_polar(r.a, r.b);
    save("delta.json", io::complex_to_json(delta.complex));
    save("polar.json", io::complex_to_json(polar.complex));
    auto cv = cross_validate(r.a, r.b);
    Json cvj{{"equal", cv.equal}, {"direct_facets", cv.direct_facets}, {"polar_facets", cv.polar_facets},
             {"formula", cv.formula}, {"ok", cv.ok()}};
    save("cross_validation.json", cvj);
    summary["cross_validation"] = cvj;
    std::cout << "construction: " << cv.direct_facets << " facets directly, " << cv.polar_facets
              << " via polar, formula " << cv.formula << " -> " << (cv.ok() ? "match" : "MISMATCH") << "\n";

    const auto params = delta_polytope_params(r.a, r.b);
    auto hirsch = bound_report(delta.complex, 0, BoundKind::hirsch, params, c.threads);
    auto transport = bound_report(delta.complex, 0, BoundKind::brightwell_et_al, params, c.threads);
    Json bj{{"hirsch", io::bound_to_json(hirsch)}, {"transportation", io::bound_to_json(transport)}};
    save("diameter.json", bj);
    summary["diameter"] = hirsch.diameter;
    summary["bounds"] = bj;
    std::cout << "diameter: " << hirsch.diameter << " (Hirsch bound " << hirsch.bound_value
              << (hirsch.satisfied ? " holds" : " FAILS") << "; 8(m+n-1) = " << transport.bound_value << ")\n";

    Json verdicts = Json::array();
    std::optional<std::vector<Face>> dead_end;
    int worst = ok;
    for (int k = 0; k <= r.kmax; ++k) {
        SearchOptions opts;
        opts.max_states = r.max_states;
        opts.on_dead_end = [&](const std::vector<Face>& path) {
            if (!dead_end) dead_end = path;
        };
        auto v = find_weak_decomposition(delta.complex, k, opts);
        Json vj = io::verdict_to_json(v, Mode::weak, k);
        if (v.certificate) {
            auto check = verify_certificate(delta.complex, *v.certificate);
            require_invariant(check.ok, "certificate failed replay: " + check.reason);
        }
        const std::string name = "weak_k" + std::to_string(k) + ".json";
        save(name, vj);
        verdicts.push_back(Json{{"k", k}, {"outcome", to_string(v.outcome)}, {"states", v.states_explored}});
        std::cout << "weak " << k << "-decomposable: " << to_string(v.outcome) << " (" << v.states_explored
                  << " states)\n";
        if (v.outcome == Outcome::budget_exhausted) worst = exhausted;
    }
    summary["weak_decomposability"] = verdicts;

    const std::vector<Face> audit_seq = dead_end.value_or(std::vector<Face>{});
    auto phi_rep = audit_phi_properties(delta, audit_seq);
    Json pj = io::phi_audit_to_json(phi_rep, delta.complex);
    pj["sequence"] = io::sequence_to_json(audit_seq, delta.complex)["faces"];
    save("phi_audit.json", pj);
    summary["phi_audit_ok"] = phi_rep.ok();
    std::cout << "phi audit over " << audit_seq.size() << " shed(s): " << (phi_rep.ok() ? "all properties hold" : "VIOLATIONS")
              << "\n";

    if (9 <= 4 * std::min(r.a, r.b)) {
        auto seq = complete_to_simplex(delta, audit_seq);
        auto th = audit_sequence_against_theorem(r.a, r.b, 0, seq);
        Json tj = io::theorem_audit_to_json(th, delta, 0);
        tj["sequence"] = io::sequence_to_json(seq, delta.complex)["faces"];
        save("theorem_audit_k0.json", tj);
        summary["theorem_audit_k0"] = tj["result"];
        std::cout << "obstruction replay (k=0): " << tj["result"].get<std::string>() << "\n";
    }

    summary["artifacts"] = artifacts;
    save("report.json", summary);
    std::cout << "elapsed: " << seconds_since(t0) << " s\n";
    if (!phi_rep.ok() || !cv.ok()) return invariant;
    return worst;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decomposability, diameter and obstruction tools for simplicial complexes"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "worker threads for diameter computations")
        ->envname("DECOMP_THREADS")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", common.out_dir, "directory for JSON artifacts");

    // construct
    auto* construct = app.add_subcommand("construct", "build Δ(a,b) or a transportation polytope");
    std::string what;
    int ca = 1, cb = 1;
    std::string via = "direct", row, col;
    construct->add_option("what", what, "delta | transportation")->required()->check(CLI::IsMember({"delta", "transportation"}));
    construct->add_option("--a", ca, "Δ parameter a");
    construct->add_option("--b", cb, "Δ parameter b");
    construct->add_option("--via", via, "direct | polar | both")->check(CLI::IsMember({"direct", "polar", "both"}));
    construct->add_option("--row", row, "row margins, comma separated rationals");
    construct->add_option("--col", col, "column margins, comma separated rationals");

    // check
    auto* check = app.add_subcommand("check", "decomposability search or certificate replay");
    std::string check_what;
    Source check_src;
    bool weak = false, strong = false, use_symmetry = false;
    int check_k = 0;
    std::optional<std::int64_t> max_states;
    std::string cert_file;
    check->add_option("what", check_what, "decomp | certificate")->required()->check(CLI::IsMember({"decomp", "certificate"}));
    check_src.add_to(check);
    auto* weak_flag = check->add_flag("--weak", weak, "weak k-decomposability");
    check->add_flag("--strong", strong, "strong k-decomposability")->excludes(weak_flag);
    check->add_option("--k", check_k, "maximal shed dimension")->check(CLI::NonNegativeNumber);
    check->add_option("--max-states", max_states, "state budget; exit 5 when exhausted");
    check->add_flag("--symmetry", use_symmetry, "reduce by the automorphisms of Δ(a,b)");
    check->add_option("--certificate", cert_file, "certificate JSON to replay");

    // diameter
    auto* diam = app.add_subcommand("diameter", "facet-ridge graph diameter");
    Source diam_src;
    bool dot = false;
    diam_src.add_to(diam);
    diam->add_flag("--dot", dot, "print the facet-ridge graph in DOT instead");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "diameter against Hirsch, Provan-Billera and transportation bounds");
    Source bounds_src;
    int bounds_k = 0;
    PolytopeParams pp;
    bounds_src.add_to(bounds);
    bounds->add_option("--k", bounds_k, "face dimension for the f_k bounds")->check(CLI::NonNegativeNumber);
    bounds->add_option("--facets", pp.facets, "facet count n of the simple polytope");
    bounds->add_option("--dim", pp.dim, "dimension d of the simple polytope");
    bounds->add_option("--rows", pp.rows, "rows m of the transportation table");
    bounds->add_option("--cols", pp.cols, "columns of the transportation table");

    // audit
    auto* audit = app.add_subcommand("audit", "corank audit or obstruction replay on Δ(a,b)");
    std::string audit_what, seq_file;
    int aa = 0, ab = 0, ak = 0;
    bool full = false, complete = false;
    audit->add_option("what", audit_what, "phi | theorem")->required()->check(CLI::IsMember({"phi", "theorem"}));
    audit->add_option("--a", aa, "Δ parameter a")->required();
    audit->add_option("--b", ab, "Δ parameter b")->required();
    audit->add_option("--k", ak, "k for the theorem replay")->check(CLI::NonNegativeNumber);
    audit->add_option("--sequence", seq_file, "shedding sequence JSON {\"faces\": [...]}");
    audit->add_flag("--full", full, "track phi over the whole domain instead of shed-face unions");
    audit->add_flag("--complete", complete, "extend the sequence to a single simplex before the replay");

    // hitting-set
    auto* hs = app.add_subcommand("hitting-set", "minimal empty-intersection sub-collection");
    int hs_k = 0;
    std::string collection;
    bool tight = false;
    hs->add_option("--k", hs_k, "set size bound is k+1")->required()->check(CLI::NonNegativeNumber);
    hs->add_option("--collection", collection, "JSON list of integer lists, or @FILE");
    hs->add_flag("--tight", tight, "use the tight family for k");

    // report
    auto* report = app.add_subcommand("report", "construct, cross-check, measure and search Δ(a,b)");
    ReportArgs ra;
    report->add_option("--a", ra.a, "Δ parameter a")->required();
    report->add_option("--b", ra.b, "Δ parameter b")->required();
    report->add_option("--kmax", ra.kmax, "largest k searched")->check(CLI::NonNegativeNumber);
    report->add_option("--max-states", ra.max_states, "state budget per search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*construct) {
            if (what == "delta") {
                if (via == "both") {
                    auto d = delta_complex(ca, cb);
                    auto p = delta_complex_via_polar(ca, cb);
                    Json j{{"direct", io::complex_to_json(d.complex)},
                           {"polar", io::complex_to_json(p.complex)},
                           {"equal", d.complex == p.complex}};
                    emit(common, "construct.json", j);
                    return d.complex == p.complex ? ok : invariant;
                }
                auto d = via == "polar" ? delta_complex_via_polar(ca, cb) : delta_complex(ca, cb);
                emit(common, "construct.json", io::complex_to_json(d.complex));
                return ok;
            }
            Margins mg;
            if (row.empty() && col.empty()) mg = delta_margins(ca, cb);
            else mg = Margins{parse_list(row), parse_list(col)};
            check_margins(mg);
            Json j;
            j["margins"] = io::margins_to_json(mg);
            j["feasible"] = is_feasible(mg);
            if (!is_feasible(mg)) {
                emit(common, "construct.json", j);
                return bad_input;
            }
            if (auto w = degeneracy_witness(mg)) {
                std::vector<int> r1, c1;
                for (int r : w->rows) r1.push_back(r + 1);
                for (int cc : w->cols) c1.push_back(cc + 1);
                j["nondegenerate"] = false;
                j["witness"] = Json{{"rows", r1}, {"cols", c1}};
                emit(common, "construct.json", j);
                return bad_input;
            }
            j["nondegenerate"] = true;
            j["dimension"] = polytope_dimension(mg);
            j["vertices"] = io::vertices_to_json(enumerate_vertices(mg));
            Json facets = Json::array();
            for (Cell cell : enumerate_facets(mg)) facets.push_back(Json::array({cell.row + 1, cell.col + 1}));
            j["facets"] = facets;
            j["polar_boundary"] = io::complex_to_json(polar_boundary_complex(mg));
            emit(common, "construct.json", j);
            return ok;
        }

        if (*check) {
            auto cx = check_src.load();
            if (check_what == "certificate") {
                require_input(!cert_file.empty(), "check certificate needs --certificate FILE");
                auto cert = io::certificate_from_json(io::read_json_file(cert_file));
                auto r = verify_certificate(cx, cert);
                Json j{{"ok", r.ok}, {"step", r.step}, {"reason", r.reason}};
                if (r.ok) j["bound"] = io::bound_to_json(certificate_bound(cx, cert));
                emit(common, "verify.json", j);
                return r.ok ? ok : bad_input;
            }
            require_input(weak || strong, "check decomp needs --weak or --strong");
            SearchOptions opts;
            opts.max_states = max_states;
            if (use_symmetry) {
                require_input(check_src.is_delta(), "--symmetry is available for Δ(a,b) only");
                opts.symmetry = delta_symmetry_group(check_src.a, check_src.b);
            }
            const Mode mode = strong ? Mode::strong : Mode::weak;
            auto v = mode == Mode::strong ? find_strong_decomposition(cx, check_k, opts)
                                          : find_weak_decomposition(cx, check_k, opts);
            Json j = io::verdict_to_json(v, mode, check_k);
            if (v.certificate) {
                auto r = verify_certificate(cx, *v.certificate);
                require_invariant(r.ok, "certificate failed replay: " + r.reason);
                auto g = facet_ridge_graph(cx);
                auto dist = bfs_distances(g, 0);
                if (std::find(dist.begin(), dist.end(), -1) == dist.end())
                    j["bound"] = io::bound_to_json(certificate_bound(cx, *v.certificate));
            }
            emit(common, "check.json", j);
            std::cerr << to_string(mode) << " " << check_k << "-decomposable: " << to_string(v.outcome) << " ("
                      << v.states_explored << " states)\n";
            return outcome_exit(v.outcome);
        }

        if (*diam) {
            auto cx = diam_src.load();
            auto g = facet_ridge_graph(cx);
            if (dot) {
                std::cout << to_dot(g, cx);
                return ok;
            }
            Json j{{"facets", g.size()}, {"dimension", cx.dim()}, {"diameter", diameter(g, common.threads)}};
            emit(common, "diameter.json", j);
            return ok;
        }

        if (*bounds) {
            auto cx = bounds_src.load();
            std::optional<PolytopeParams> params;
            if (bounds_src.is_delta()) params = delta_polytope_params(bounds_src.a, bounds_src.b);
            if (pp.facets > 0 || pp.dim > 0 || pp.rows > 0 || pp.cols > 0) params = pp;
            Json arr = Json::array();
            arr.push_back(io::bound_to_json(bound_report(cx, bounds_k, BoundKind::provan_billera_strong, params, common.threads)));
            arr.push_back(io::bound_to_json(bound_report(cx, bounds_k, BoundKind::provan_billera_weak, params, common.threads)));
            if (params && params->facets > 0)
                arr.push_back(io::bound_to_json(bound_report(cx, bounds_k, BoundKind::hirsch, params, common.threads)));
            if (params && params->rows > 0 && params->cols > 0)
                arr.push_back(io::bound_to_json(bound_report(cx, bounds_k, BoundKind::brightwell_et_al, params, common.threads)));
            Json j{{"k", bounds_k}, {"f_k", f_count(cx, bounds_k)}, {"bounds", arr}};
            emit(common, "bounds.json", j);
            return ok;
        }

        if (*audit) {
            auto delta = delta_complex(aa, ab);
            std::vector<Face> seq;
            if (!seq_file.empty()) seq = io::sequence_from_json(io::read_json_file(seq_file), delta.complex);
            if (complete) seq = complete_to_simplex(delta, seq);
            if (audit_what == "phi") {
                auto rep = audit_phi_properties(delta, seq);
                emit(common, "phi_audit.json", io::phi_audit_to_json(rep, delta.complex));
                if (rep.illegal_step) return bad_input;
                return rep.ok() ? ok : invariant;
            }
            auto th = audit_sequence_against_theorem(aa, ab, ak, seq, full ? PhiTracking::full : PhiTracking::lazy);
            Json j = io::theorem_audit_to_json(th, delta, ak);
            emit(common, "theorem_audit.json", j);
            if (th.witness) {
                const int cap = th.witness->side == FaceSide::u ? ab : aa;
                return th.witness->replay_checks_pass(ak, cap) ? ok : invariant;
            }
            return ok;
        }

        if (*hs) {
            SetCollection coll;
            coll.k = hs_k;
            if (tight) {
                coll = tight_family(hs_k);
            } else {
                require_input(!collection.empty(), "hitting-set needs --collection or --tight");
                Json j = load_json_arg(collection);
                try {
                    for (const auto& s : j) coll.sets.push_back(normalized(s.get<ElementSet>()));
                } catch (const Json::exception& e) {
                    throw InputError(std::string("collection: ") + e.what());
                }
            }
            auto ex = minimal_empty_intersection(coll);
            Json j = io::extraction_to_json(ex, hs_k);
            j["within_square_bound"] = within_square_bound(ex.union_size, hs_k);
            emit(common, "hitting_set.json", j);
            return ok;
        }

        if (*report) return run_report(common, ra);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    } catch (const InvariantError& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return invariant;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return invariant;
    }
    return usage;
}
