#include "crjet/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "crjet/dsl.hpp"
#include "crjet/odejets.hpp"
#include "crjet/series_io.hpp"

namespace crjet::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
    return os.str();
}

void write_atomically(const std::string& path, const std::string& text) {
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << text;
        os.flush();
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
}

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Input {
    std::string path;
    std::string text;
};

Input read_input(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InputError(path + ": cannot read file");
    std::ostringstream os;
    os << is.rdbuf();
    return {path, os.str()};
}

json input_entry(const Input& in) { return json{{"path", in.path}, {"sha256", sha256_hex(in.text)}}; }

Document parse_input(const Input& in, const Options& opt, DocumentKind expected) {
    Document doc;
    try {
        doc = parse_document(in.text, opt.order);
    } catch (const ParseError& e) {
        throw InputError(in.path + ":" + e.what());
    }
    if (doc.kind != expected)
        throw InputError(in.path + ": expected a " + to_string(expected) + " document, found a " + to_string(doc.kind) +
                         " document");
    return doc;
}

json diagnostics(const Input& in, const Document& doc) {
    json out = json::array();
    for (const auto& d : doc.warnings) out.push_back(in.path + ":" + format(d));
    return out;
}

NormalFormSurface surface_of(const Input& in, const Document& doc) {
    try {
        if (doc.has("phi")) return from_real_graph(RealGraph{doc.at("phi")});
        return NormalFormSurface{doc.at("Q")};
    } catch (const SurfaceError& e) {
        throw InputError(in.path + ": " + e.what());
    }
}

// Surface that every map command relies on: normal and real.
NormalFormSurface checked_surface(const Input& in, const Options& opt, json& warnings) {
    const Document doc = parse_input(in, opt, DocumentKind::Surface);
    for (auto& w : diagnostics(in, doc)) warnings.push_back(w);
    NormalFormSurface s = surface_of(in, doc);
    const auto normal = check_normal(s);
    if (!normal.pass) throw InputError(in.path + ": Q is not normal: " + normal.violations.front());
    const auto real = check_reality(s);
    if (!real.pass) throw InputError(in.path + ": Q fails the reality identity");
    return s;
}

MapGerm checked_map(const Input& in, const Options& opt, json& warnings) {
    const Document doc = parse_input(in, opt, DocumentKind::Map);
    for (auto& w : diagnostics(in, doc)) warnings.push_back(w);
    return MapGerm{doc.at("F"), doc.at("G")};
}

json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
json opt_str(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::string lowest_term(const TruncatedSeries& s) {
    if (s.is_zero()) return "0";
    const auto& [m, c] = *s.terms().begin();
    return to_dsl(c) + " at " + monomial_to_dsl(s.variables(), m);
}

json options_json(const Options& opt) {
    return json{{"order", opt_int(opt.order)},
                {"backend", opt.backend == Backend::Exact ? "exact" : "float"},
                {"tolerance", opt.tolerance}};
}

json skeleton(const std::string& command, const Options& opt) {
    json r;
    r["command"] = command;
    r["inputs"] = json::array();
    r["options"] = options_json(opt);
    return r;
}

void require_exact(const Options& opt, const std::string& command) {
    if (opt.backend != Backend::Exact) throw InputError(command + " supports only the exact backend");
}

// Runs `body`, turning the error taxonomy into exit codes.
template <typename Body>
Outcome guarded(json report, Body&& body) {
    Outcome out;
    try {
        out.exit_code = body(report);
    } catch (const InputError& e) {
        report["error"] = e.what();
        out.exit_code = kInputError;
    } catch (const ParseError& e) {
        report["error"] = e.what();
        out.exit_code = kInputError;
    } catch (const MapJetError& e) {
        report["error"] = e.what();
        switch (e.code()) {
            case MapJetErrc::DivisibilityObstruction:
            case MapJetErrc::InconsistentJet: out.exit_code = kFailure; break;
            case MapJetErrc::LeviFlatInput: out.exit_code = kUnknown; break;
            default: out.exit_code = kInputError;
        }
    } catch (const OdeError& e) {
        report["error"] = e.what();
        out.exit_code = e.code() == OdeErrc::InconsistentSeed ? kFailure : kInputError;
    } catch (const SeriesError& e) {
        report["error"] = e.what();
        out.exit_code = kInputError;
    } catch (const std::invalid_argument& e) {
        report["error"] = e.what();
        out.exit_code = kInputError;
    }
    out.report = std::move(report);
    return out;
}

json analyze_one(const Input& in, const Options& opt, int& code) {
    json r;
    r["path"] = in.path;
    r["sha256"] = sha256_hex(in.text);
    try {
        const Document doc = parse_input(in, opt, DocumentKind::Surface);
        const NormalFormSurface s = surface_of(in, doc);
        const auto inv = compute_invariants(s);
        const auto normal = check_normal(s);
        const auto real = check_reality(s);
        r["invariants"] = json{{"m0", opt_int(inv.m0)},
                               {"alpha0", opt_int(inv.alpha0)},
                               {"mu0", opt_int(inv.mu0)},
                               {"l", opt_int(inv.l)},
                               {"beta0", opt_int(inv.beta0)},
                               {"finite_type", inv.finite_type},
                               {"levi_flat_unknown", inv.levi_flat_unknown},
                               {"summary", describe(inv)}};
        r["verdicts"] = json{{"normal", normal.pass}, {"real", real.pass}};
        json witness = json::object();
        if (!normal.pass) witness["normal"] = normal.violations;
        if (!real.pass) witness["real"] = lowest_term(real.residual);
        r["witness"] = witness.empty() ? json(nullptr) : witness;
        r["Q"] = to_dsl(s.Q);
        r["certified_order"] = std::min({inv.certified_order, normal.certified_order, real.certified_order});
        json warnings = diagnostics(in, doc);
        for (const auto& w : inv.warnings) warnings.push_back(w);
        r["warnings"] = warnings;
        code = !(normal.pass && real.pass) ? kFailure : inv.levi_flat_unknown ? kUnknown : kPass;
    } catch (const InputError& e) {
        r["error"] = e.what();
        code = kInputError;
    }
    return r;
}

int combine(const std::vector<int>& codes) {
    for (int c : {kInputError, kFailure, kUnknown})
        if (std::find(codes.begin(), codes.end(), c) != codes.end()) return c;
    return kPass;
}

std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) {
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<std::string> files;
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && entry.path().extension() == ".surf") files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

json series_list(const std::vector<RealSeries>& s) {
    json out = json::array();
    for (const auto& c : s) out.push_back(to_dsl(c));
    return out;
}

json matrix_json(const RationalMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_dsl(m(i, j)));
        out.push_back(row);
    }
    return out;
}

// y_i(x) = sum_s a_s[i] x^s as series in x.
std::vector<RealSeries> solution_series(const JetRecursionResult& r) {
    std::vector<RealSeries> out;
    for (int i = 0; i < r.n; ++i) {
        RealSeries s(Variables{"x"}, r.N);
        for (int k = 0; k <= r.N; ++k) s.set(MultiIndex{k}, r.coefficients[k][i]);
        out.push_back(std::move(s));
    }
    return out;
}

std::string undetermined(int N) { return "Undetermined(" + std::to_string(N) + ")"; }

}  // namespace

Outcome cmd_analyze(const std::vector<std::string>& paths, const Options& opt) {
    return guarded(skeleton("analyze", opt), [&](json& r) {
        require_exact(opt, "analyze");
        const auto files = expand_paths(paths);
        if (files.empty()) throw InputError("no surface files given");
        std::vector<Input> inputs;
        for (const auto& f : files) inputs.push_back(read_input(f));
        for (const auto& in : inputs) r["inputs"].push_back(input_entry(in));

        std::vector<json> results(inputs.size());
        std::vector<int> codes(inputs.size(), kPass);
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t k = next++; k < inputs.size(); k = next++) results[k] = analyze_one(inputs[k], opt, codes[k]);
        };
        const int jobs = std::clamp(opt.jobs, 1, static_cast<int>(inputs.size()));
        std::vector<std::thread> pool;
        for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();

        r["results"] = results;
        int certified = -1;
        for (const auto& res : results)
            if (res.contains("certified_order"))
                certified = certified < 0 ? res["certified_order"].get<int>() : std::min(certified, res["certified_order"].get<int>());
        r["certified_order"] = certified < 0 ? json(nullptr) : json(certified);
        return combine(codes);
    });
}

Outcome cmd_verify(const std::string& surface, const std::string& surface2, const std::string& map, const Options& opt) {
    return guarded(skeleton("verify", opt), [&](json& r) {
        require_exact(opt, "verify");
        const Input a = read_input(surface), b = read_input(surface2), h = read_input(map);
        for (const auto* in : {&a, &b, &h}) r["inputs"].push_back(input_entry(*in));
        json warnings = json::array();
        const auto m = checked_surface(a, opt, warnings);
        const auto m2 = checked_surface(b, opt, warnings);
        const auto H = checked_map(h, opt, warnings);
        const auto res = verify_mapping(m, m2, H);
        const auto np = normal_preservation_checks(H, res.zero);
        r["verdicts"] = json{{"mapping_identity", res.zero},
                             {"segre_preserved", np.segre_preserved},
                             {"triangular", np.triangular},
                             {"biholomorphic", np.biholomorphic},
                             {"gw_real", np.gw_real ? json(*np.gw_real) : json(nullptr)}};
        json witness = json::object();
        if (res.witness) witness["mapping_identity"] = *res.witness;
        if (np.segre_witness) witness["segre_preserved"] = *np.segre_witness;
        const auto inv = invariance_check(m, m2, H);
        r["verdicts"]["invariants_agree"] = inv.agree;
        r["verdicts"]["beta_identity"] = inv.beta_identity ? json(*inv.beta_identity) : json(nullptr);
        if (!inv.mismatches.empty()) witness["invariants"] = inv.mismatches;
        if (inv.witness) witness["invariants_contradiction"] = *inv.witness;
        r["witness"] = witness.empty() ? json(nullptr) : witness;
        r["G_w(0)"] = to_dsl(np.gw);
        r["certified_order"] = res.certified_order;
        r["warnings"] = warnings;
        return res.zero && np.pass() && inv.pass() ? kPass : kFailure;
    });
}

Outcome cmd_segre(const std::string& surface, const std::string& surface2, const std::string& map, int k,
                  const Options& opt) {
    return guarded(skeleton("segre", opt), [&](json& r) {
        if (k < 0) throw InputError("k must be nonnegative");
        const Input a = read_input(surface), b = read_input(surface2), h = read_input(map);
        for (const auto* in : {&a, &b, &h}) r["inputs"].push_back(input_entry(*in));
        json warnings = json::array();
        const auto m = checked_surface(a, opt, warnings);
        const auto m2 = checked_surface(b, opt, warnings);
        const auto H = checked_map(h, opt, warnings);
        const MapJet jet = jet_of(H, k + 1);
        const auto direct = segre_restriction_direct(H, k);
        r["k"] = k;
        r["mapping_verified"] = verify_mapping(m, m2, H).zero;
        bool match = false;
        json witness = nullptr;
        int certified = 0;
        auto side = [](const auto& f, const auto& g) {
            return json{{"F_wk", to_dsl(f)}, {"G_wk", to_dsl(g)}, {"order", std::min(f.order(), g.order())}};
        };
        if (opt.backend == Backend::Exact) {
            const auto rec = segre_jet_reconstruct(m, m2, jet, k);
            certified = std::min({rec.result.F_wk.order(), rec.result.G_wk.order(), direct.F_wk.order(), direct.G_wk.order()});
            const TruncatedSeries df = rec.result.F_wk.truncated(certified) - direct.F_wk.truncated(certified);
            const TruncatedSeries dg = rec.result.G_wk.truncated(certified) - direct.G_wk.truncated(certified);
            match = df.is_zero() && dg.is_zero();
            if (!match) witness = df.is_zero() ? "G differs by " + lowest_term(dg) : "F differs by " + lowest_term(df);
            r["reconstructed"] = side(rec.result.F_wk, rec.result.G_wk);
            r["nu"] = rec.nu;
            for (const auto& w : rec.warnings) warnings.push_back(w);
        } else {
            ReconstructOptions ro;
            ro.tolerance = opt.tolerance;
            const auto rec = segre_jet_reconstruct_float(m, m2, jet, k, ro);
            certified = std::min({rec.result.F_wk.order(), rec.result.G_wk.order(), direct.F_wk.order(), direct.G_wk.order()});
            const FloatSeries df = to_float(direct.F_wk.truncated(certified));
            const FloatSeries dg = to_float(direct.G_wk.truncated(certified));
            double scale = 1;
            for (const auto* s : {&df, &dg})
                for (const auto& [mi, c] : s->terms()) scale = std::max(scale, std::abs(c));
            const double dist = std::max(max_coefficient_distance(rec.result.F_wk.truncated(certified), df),
                                         max_coefficient_distance(rec.result.G_wk.truncated(certified), dg));
            match = dist <= opt.tolerance * scale;
            r["max_relative_distance"] = dist / scale;
            if (!match) witness = "relative coefficient distance " + std::to_string(dist / scale);
            r["reconstructed"] = side(rec.result.F_wk, rec.result.G_wk);
            r["nu"] = rec.nu;
            for (const auto& w : rec.warnings) warnings.push_back(w);
        }
        r["direct"] = side(direct.F_wk, direct.G_wk);
        r["verdicts"] = json{{"match", match}};
        r["witness"] = witness;
        r["certified_order"] = certified;
        r["warnings"] = warnings;
        return match ? kPass : kFailure;
    });
}

Outcome cmd_determine(const std::string& surface, const std::string& map, const std::string& map2, int k,
                      const Options& opt) {
    return guarded(skeleton("determine", opt), [&](json& r) {
        require_exact(opt, "determine");
        if (k < 0) throw InputError("k must be nonnegative");
        const Input a = read_input(surface), h1 = read_input(map), h2 = read_input(map2);
        for (const auto* in : {&a, &h1, &h2}) r["inputs"].push_back(input_entry(*in));
        json warnings = json::array();
        const auto m = checked_surface(a, opt, warnings);
        const auto H1 = checked_map(h1, opt, warnings);
        const auto H2 = checked_map(h2, opt, warnings);
        const auto v = determination_experiment(m, H1, H2, k);
        r["k"] = k;
        r["verdicts"] = json{{"jets_equal", v.jets_equal}, {"maps_equal", v.maps_equal}, {"vacuous", v.vacuous()},
                             {"pass", v.pass()}};
        r["witness"] = opt_str(v.first_disagreement);
        r["certified_order"] = v.compared_order;
        r["warnings"] = warnings;
        return v.pass() ? kPass : kFailure;
    });
}

Outcome cmd_dynamics(const std::string& surface, const std::string& map, const Options& opt) {
    return guarded(skeleton("dynamics", opt), [&](json& r) {
        require_exact(opt, "dynamics");
        const Input a = read_input(surface), h = read_input(map);
        for (const auto* in : {&a, &h}) r["inputs"].push_back(input_entry(*in));
        json warnings = json::array();
        const auto m = checked_surface(a, opt, warnings);
        const auto H = checked_map(h, opt, warnings);
        const auto d = dynamics_check(m, H);
        r["verdicts"] = json{{"precondition", d.precondition_ok},
                             {"reconstructed_identity", d.reconstructed_identity},
                             {"stored_identity", d.stored_identity}};
        r["skipped_reason"] = d.precondition_ok ? json(nullptr) : json(d.skipped_reason);
        r["witness"] = opt_str(d.witness);
        r["certified_order"] = std::min(m.order(), H.order());
        r["warnings"] = warnings;
        if (!d.precondition_ok) return kUnknown;
        return d.pass() ? kPass : kFailure;
    });
}

Outcome cmd_ode(const std::string& path, const std::string& mode, int r_max, const Options& opt) {
    return guarded(skeleton("ode", opt), [&](json& r) {
        require_exact(opt, "ode");
        if (mode != "solve" && mode != "determine" && mode != "chain")
            throw InputError("unknown mode '" + mode + "' (expected solve, determine or chain)");
        const Input in = read_input(path);
        r["inputs"].push_back(input_entry(in));
        const Document doc = parse_input(in, opt, DocumentKind::Ode);
        const SingularODE ode = ode_from_document(doc);
        const int N = doc.order;
        json theta = json::array();
        for (const auto& t : ode.theta) theta.push_back(to_dsl(t));
        r["mode"] = mode;
        r["ode"] = json{{"gamma", ode.gamma}, {"n", ode.n}, {"N", N}, {"theta", theta}};
        r["warnings"] = diagnostics(in, doc);
        const JetRecursionResult base = formal_coefficients(ode, {}, N);

        if (mode == "solve") {
            json ledger = json::array();
            for (const auto& e : base.ledger)
                ledger.push_back(json{{"order", e.order},
                                      {"frontier_rank", e.frontier_rank},
                                      {"kernel_dimension", e.kernel_dimension},
                                      {"status", to_string(e.status)}});
            const int check = N - ode.gamma - 1;
            bool zero = true;
            json witness = nullptr;
            for (const auto& e : ode_residual(ode, base.coefficients, N)) {
                const RealSeries cut = e.truncated(std::max(check, 0));
                if (!cut.is_zero() && zero) {
                    zero = false;
                    witness = "residual " + to_dsl(cut);
                }
            }
            r["solution"] = series_list(solution_series(base));
            r["ledger"] = ledger;
            r["free_orders"] = base.orders_with(CoefficientStatus::Free);
            const auto d = determination_order(ode, base, N);
            r["determination_order"] = d.k ? json(*d.k) : json(undetermined(N));
            if (ode.gamma == 0) r["resonances"] = resonance_set(ode, N);
            r["verdicts"] = json{{"residual_zero", zero}};
            r["witness"] = witness;
            r["certified_order"] = check;
            return zero ? kPass : kFailure;
        }
        if (mode == "determine") {
            const auto d = determination_order(ode, base, N);
            json failures = json::array();
            for (const auto& [k, s] : d.failures) failures.push_back(json{{"seed_order", k}, {"first_free_order", s}});
            r["determination_order"] = d.k ? json(*d.k) : json(undetermined(N));
            r["failures"] = failures;
            r["verdicts"] = json{{"determined", d.k.has_value()}};
            r["witness"] = nullptr;
            r["certified_order"] = N;
            return d.k ? kPass : kUnknown;
        }
        const auto chain = kernel_chain_diagnostic(ode, base, r_max);
        json rows = json::array();
        for (const auto& row : chain.rows)
            rows.push_back(json{{"r", row.r}, {"dims", row.dims}, {"terminated_at", opt_int(row.terminated_at)}});
        r["q0"] = matrix_json(chain.q0);
        r["bound"] = chain.bound;
        r["rows"] = rows;
        r["verdicts"] = json{{"within_bound", chain.within_bound()}};
        r["witness"] = nullptr;
        r["certified_order"] = N;
        return chain.within_bound() ? kPass : kUnknown;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Jet determination experiments for real hypersurfaces in C^2 and singular ODEs", "crjet"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    int order = -1;
    std::string backend = "exact";
    std::string out_path;
    app.add_option("--order", order, "Truncation order overriding the documents")->check(CLI::Range(0, kMaxExponent));
    app.add_option("--backend", backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--tolerance", opt.tolerance, "Zero test and comparison tolerance for the float backend")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--jobs", opt.jobs, "Worker threads for directory inputs")->check(CLI::Range(1, 256));
    app.add_option("--out", out_path, "Write the report here (atomically) instead of stdout");

    std::vector<std::string> analyze_paths;
    auto* analyze = app.add_subcommand("analyze", "Invariants and normal-form checks of surfaces");
    analyze->add_option("surfaces", analyze_paths, "Surface files or directories of .surf files")->required();

    std::string s1, s2, m1, m2, ode_path, mode = "solve";
    int k = 0, r_max = 6;
    auto* verify = app.add_subcommand("verify", "Check that a map sends one surface into another");
    verify->add_option("surface", s1)->required();
    verify->add_option("surface2", s2)->required();
    verify->add_option("map", m1)->required();

    auto* segre = app.add_subcommand("segre", "Reconstruct H_{w^k}(z,0) from the (k+1)-jet and compare");
    segre->add_option("surface", s1)->required();
    segre->add_option("surface2", s2)->required();
    segre->add_option("map", m1)->required();
    segre->add_option("k", k)->required();

    auto* determine = app.add_subcommand("determine", "Compare two maps sharing a k-jet");
    determine->add_option("surface", s1)->required();
    determine->add_option("map", m1)->required();
    determine->add_option("map2", m2)->required();
    determine->add_option("k", k)->required();

    auto* dynamics = app.add_subcommand("dynamics", "Self-map tangent to the identity fixes the Segre curve");
    dynamics->add_option("surface", s1)->required();
    dynamics->add_option("map", m1)->required();

    auto* ode = app.add_subcommand("ode", "Formal solutions of x^(gamma+1) y' = p/q");
    ode->add_option("ode", ode_path)->required();
    ode->add_option("--mode", mode, "solve, determine or chain")->check(CLI::IsMember({"solve", "determine", "chain"}));
    ode->add_option("--rmax", r_max, "Largest block index for the chain diagnostic")->check(CLI::Range(1, 64));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kPass : kInputError;
    }
    if (order >= 0) opt.order = order;
    opt.backend = backend == "float" ? Backend::Float : Backend::Exact;
    if (!out_path.empty()) opt.out = out_path;

    Outcome result;
    if (*analyze) result = cmd_analyze(analyze_paths, opt);
    else if (*verify) result = cmd_verify(s1, s2, m1, opt);
    else if (*segre) result = cmd_segre(s1, s2, m1, k, opt);
    else if (*determine) result = cmd_determine(s1, m1, m2, k, opt);
    else if (*dynamics) result = cmd_dynamics(s1, m1, opt);
    else result = cmd_ode(ode_path, mode, r_max, opt);

    const std::string text = result.report.dump(2) + "\n";
    if (result.report.contains("error")) err << "crjet: " << result.report["error"].get<std::string>() << "\n";
    try {
        if (opt.out)
            write_atomically(*opt.out, text);
        else
            out << text;
    } catch (const std::exception& e) {
        err << "crjet: " << e.what() << "\n";
        return kInputError;
    }
    return result.exit_code;
}

}  // namespace crjet::cli
