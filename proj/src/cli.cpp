#include "odholo/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "odholo/interferometer.hpp"
#include "odholo/models.hpp"

namespace odholo::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

void require_keys(const Json& j, const std::string& path, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ConfigError(path + "." + key + ": unknown key");
    }
    for (const std::string& key : required) {
        if (!j.contains(key)) throw ConfigError(path + "." + key + ": missing");
    }
}

struct Common {
    std::string scenario;
    std::uint64_t seed = 0;
    std::size_t grid = 200;
    double tolerance = 0.0;  // 0 = scenario default
    fs::path out = ".";
    std::string hash;
};

Common parse_common(const Json& config, const Overrides& ov) {
    Common c;
    if (!config.contains("schema_version") || config.at("schema_version").get<int>() != 1) {
        throw ConfigError("config.schema_version: must be 1");
    }
    c.scenario = config.at("scenario").get<std::string>();
    if (config.contains("seed")) c.seed = config.at("seed").get<std::uint64_t>();
    if (config.contains("grid")) c.grid = config.at("grid").get<std::size_t>();
    if (config.contains("tolerance")) {
        c.tolerance = config.at("tolerance").get<double>();
        if (!(c.tolerance > 0.0)) throw ConfigError("config.tolerance: must be positive");
    }
    if (config.contains("out")) c.out = config.at("out").get<std::string>();
    if (ov.seed) c.seed = *ov.seed;
    if (ov.grid) c.grid = *ov.grid;
    if (ov.tolerance) {
        if (!(*ov.tolerance > 0.0)) throw ConfigError("--tolerance must be positive");
        c.tolerance = *ov.tolerance;
    }
    if (ov.out) c.out = *ov.out;
    if (c.grid < 2) throw ConfigError("config.grid: need at least 2 segments");
    c.hash = config_hash(config);
    return c;
}

std::ofstream open_csv(const fs::path& dir, const std::string& name, const Common& c) {
    fs::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out) throw ConfigError("cannot write " + (dir / name).string());
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    out << "# odholo " << c.scenario << " config_hash=" << c.hash << " seed=" << c.seed
        << " generated=" << now << "\n";
    return out;
}

TripodPath parse_path(const Json& j, const std::string& where) {
    require_keys(j, where, {"type", "theta", "phi", "omega"}, {"type", "theta", "phi"});
    const std::string type = j.at("type").get<std::string>();
    double omega = j.contains("omega") ? j.at("omega").get<double>() : 1.0;
    if (type == "linear") {
        return TripodPath::linear(j.at("theta").get<double>(), j.at("phi").get<double>(), omega);
    }
    if (type == "fourier") {
        return TripodPath::fourier(j.at("theta").get<std::vector<double>>(),
                                   j.at("phi").get<std::vector<double>>(), omega);
    }
    throw ConfigError(where + ".type: expected \"linear\" or \"fourier\"");
}

CurveFamily parse_curve(const Json& j, const Common& c, const std::string& where) {
    require_keys(j, where, {"type", "path", "dims", "cyclic"}, {"type"});
    const std::string type = j.at("type").get<std::string>();
    if (type == "tripod") {
        if (!j.contains("path")) throw ConfigError(where + ".path: missing");
        return tripod_curve(parse_path(j.at("path"), where + ".path"), uniform_grid(c.grid));
    }
    if (type == "file") {
        if (!j.contains("path")) throw ConfigError(where + ".path: missing");
        const std::string file = j.at("path").get<std::string>();
        if (!fs::exists(file)) throw ConfigError(where + ".path: no such file " + file);
        return curve_from_json(load_json_file(file));
    }
    if (type == "random") {
        if (!j.contains("dims")) throw ConfigError(where + ".dims: missing");
        const bool cyclic = j.contains("cyclic") && j.at("cyclic").get<bool>();
        return random_unitary_curve(j.at("dims").get<std::vector<std::size_t>>(),
                                    uniform_grid(c.grid), c.seed, cyclic);
    }
    throw ConfigError(where + ".type: expected \"tripod\", \"file\" or \"random\"");
}

std::vector<std::size_t> seq_from_json(const Json& j, std::size_t eta, const std::string& where) {
    std::vector<std::size_t> seq;
    for (const Json& e : j) {
        const auto label = e.get<std::size_t>();
        if (label < 1 || label > eta) {
            throw ConfigError(where + ": subspace labels are 1.." + std::to_string(eta));
        }
        seq.push_back(label - 1);
    }
    if (seq.empty()) throw ConfigError(where + ": empty sequence");
    return seq;
}

Json seq_to_json(const std::vector<std::size_t>& seq) {
    Json j = Json::array();
    for (std::size_t l : seq) j.push_back(l + 1);
    return j;
}

/// Fixed-size worker pool; results land in input order.
template <typename R, typename F>
std::vector<R> parallel_map(std::size_t count, F&& fn) {
    std::vector<R> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
    }
    return results;
}

// ---------------------------------------------------------------- holonomy

int scenario_holonomy(const Json& config, const Common& c, std::ostream& log) {
    require_keys(config, "config",
                 {"schema_version", "scenario", "seed", "grid", "tolerance", "out", "curve",
                  "sequences"},
                 {"curve"});
    CurveFamily curve = parse_curve(config.at("curve"), c, "config.curve");
    SigmaTable table = build_sigma_table(curve);

    std::vector<std::vector<std::size_t>> seqs;
    if (config.contains("sequences")) {
        for (const Json& s : config.at("sequences")) {
            seqs.push_back(seq_from_json(s, curve.eta(), "config.sequences"));
        }
    } else {
        for (std::size_t l = 0; l < curve.eta(); ++l) seqs.push_back({l});
        for (std::size_t kappa = 2; kappa <= curve.eta(); ++kappa) {
            for (auto& s : enumerate_strict_sequences(curve.eta(), kappa)) {
                seqs.push_back(std::move(s));
            }
        }
    }

    HolonomyTolerance tol;
    if (c.tolerance > 0.0) tol.zero_abs = c.tolerance;

    Json records = Json::array();
    std::ofstream csv = open_csv(c.out, "summary.csv", c);
    csv << "config_hash,seq,rank,status,singular_value_max\n";
    for (const auto& seq : seqs) {
        HolonomyResult r = holonomy_of_order(table, seq, tol);
        Json rec = holonomy_result_to_json(r);
        rec["config_hash"] = c.hash;
        records.push_back(std::move(rec));
        std::string seq_str;
        for (std::size_t l : seq) seq_str += std::to_string(l + 1);
        csv << c.hash << "," << seq_str << "," << r.rank << "," << to_string(r.status) << ","
            << fmt(r.singular_values.empty() ? 0.0 : r.singular_values.front()) << "\n";
    }
    Json doc;
    doc["config_hash"] = c.hash;
    doc["seed"] = c.seed;
    doc["unitarity_defect"] = table.unitarity_defect();
    doc["results"] = std::move(records);
    save_json_file((c.out / "results.json").string(), doc);
    log << "holonomy: wrote " << seqs.size() << " records to " << (c.out / "results.json").string()
        << "\n";
    return kExitOk;
}

// ------------------------------------------------------------- diagnostics

int scenario_diagnostics(const Json& config, const Common& c, std::ostream& log) {
    require_keys(config, "config",
                 {"schema_version", "scenario", "seed", "grid", "tolerance", "out", "curve",
                  "sigma_table", "check_reductio"},
                 {});
    const double tol = c.tolerance > 0.0 ? c.tolerance : 1e-8;

    SigmaTable table = [&]() {
        if (config.contains("sigma_table")) {
            const Json& st = config.at("sigma_table");
            require_keys(st, "config.sigma_table", {"type", "path", "dims", "blocks"}, {"type"});
            const std::string type = st.at("type").get<std::string>();
            if (type == "file") {
                return sigma_table_from_json(load_json_file(st.at("path").get<std::string>()));
            }
            if (type == "inline") {
                return sigma_table_from_json(st);
            }
            throw ConfigError("config.sigma_table.type: expected \"file\" or \"inline\"");
        }
        if (!config.contains("curve")) {
            throw ConfigError("config: diagnostics needs \"curve\" or \"sigma_table\"");
        }
        return build_sigma_table(parse_curve(config.at("curve"), c, "config.curve"));
    }();

    RankBudgetReport rep = rank_budget_report(table);
    const double udef = table.unitarity_defect();

    bool ok = rep.all_bounds_ok() && udef <= tol;
    for (const TraceDiagnostic& t : rep.traces) ok = ok && t.deviation <= tol;

    Json doc;
    doc["config_hash"] = c.hash;
    doc["seed"] = c.seed;
    doc["unitarity_defect"] = udef;
    Json entries = Json::array();
    std::ofstream csv = open_csv(c.out, "report.csv", c);
    csv << "config_hash,subspace,dim,diag_rank,deficiency,offdiag_col_rank_sum,"
           "offdiag_row_rank_sum,col_bound_ok,row_bound_ok\n";
    for (const RankBudgetEntry& e : rep.entries) {
        Json je;
        je["subspace"] = e.subspace + 1;
        je["dim"] = e.dim;
        je["diag_rank"] = e.diag_rank;
        je["deficiency"] = e.deficiency;
        je["offdiag_col_rank_sum"] = e.offdiag_col_rank_sum;
        je["offdiag_row_rank_sum"] = e.offdiag_row_rank_sum;
        je["col_bound_ok"] = e.col_bound_ok;
        je["row_bound_ok"] = e.row_bound_ok;
        entries.push_back(std::move(je));
        csv << c.hash << "," << (e.subspace + 1) << "," << e.dim << "," << e.diag_rank << ","
            << e.deficiency << "," << e.offdiag_col_rank_sum << "," << e.offdiag_row_rank_sum
            << "," << e.col_bound_ok << "," << e.row_bound_ok << "\n";
    }
    doc["rank_budget"] = std::move(entries);
    Json traces = Json::array();
    for (const TraceDiagnostic& t : rep.traces) {
        Json jt;
        jt["power"] = t.power;
        jt["trace_s_tot"] = {t.trace_s_tot.real(), t.trace_s_tot.imag()};
        jt["gamma_trace_sum"] = {t.gamma_trace_sum.real(), t.gamma_trace_sum.imag()};
        jt["deviation"] = t.deviation;
        traces.push_back(std::move(jt));
    }
    doc["trace_identity"] = std::move(traces);

    bool want_reductio = config.contains("check_reductio") && config.at("check_reductio").get<bool>();
    if (want_reductio) {
        doc["reductio_sequence"] = seq_to_json(nonzero_existence_check(table));
    }

    // strictly off-diagonal gamma norms (informational)
    Json offdiag = Json::array();
    for (std::size_t kappa = 2; kappa <= table.eta(); ++kappa) {
        for (const auto& seq : enumerate_strict_sequences(table.eta(), kappa)) {
            Json e;
            e["seq"] = seq_to_json(seq);
            e["gamma_norm"] = max_abs(gamma_product(table, seq));
            offdiag.push_back(std::move(e));
        }
    }
    doc["offdiagonal_gamma_norms"] = std::move(offdiag);

    save_json_file((c.out / "diagnostics.json").string(), doc);
    log << "diagnostics: unitarity defect " << udef << ", bounds "
        << (rep.all_bounds_ok() ? "ok" : "VIOLATED") << "\n";
    return ok ? kExitOk : kExitNumeric;
}

// ------------------------------------------------------------ tripod sweep

int scenario_tripod(const Json& config, const Common& c, std::ostream& log) {
    require_keys(config, "config",
                 {"schema_version", "scenario", "seed", "grid", "tolerance", "out", "path",
                  "sweep"},
                 {"path", "sweep"});
    const Json& sw = config.at("sweep");
    require_keys(sw, "config.sweep", {"parameter", "from", "to", "steps"},
                 {"parameter", "from", "to", "steps"});
    const std::string parameter = sw.at("parameter").get<std::string>();
    if (parameter != "theta1" && parameter != "phi1") {
        throw ConfigError("config.sweep.parameter: expected \"theta1\" or \"phi1\"");
    }
    const double from = sw.at("from").get<double>();
    const double to = sw.at("to").get<double>();
    const std::size_t steps = sw.at("steps").get<std::size_t>();
    if (steps < 1) throw ConfigError("config.sweep.steps: need >= 1");
    const double comparison_tol = c.tolerance > 0.0 ? c.tolerance : 1e-4;

    TripodPath base = parse_path(config.at("path"), "config.path");

    struct Row {
        double theta1, phi1, z;
        std::vector<std::string> status;
        std::vector<std::size_t> rank;
        std::vector<double> deviation;
        std::vector<bool> status_match;
    };

    auto rows = parallel_map<Row>(steps + 1, [&](std::size_t i) {
        const double value = from + (to - from) * static_cast<double>(i) /
                                        static_cast<double>(std::max<std::size_t>(steps, 1));
        std::vector<double> tc = base.theta_coeffs();
        std::vector<double> pc = base.phi_coeffs();
        if (parameter == "theta1") tc[0] = value; else pc[0] = value;
        TripodPath path = TripodPath::fourier(tc, pc, base.omega());
        TripodOracle oracle = tripod_oracle(path);
        CurveFamily curve = tripod_curve(path, uniform_grid(c.grid));
        SigmaTable table = build_sigma_table(curve);
        Row row;
        row.theta1 = path.theta1();
        row.phi1 = path.phi1();
        row.z = oracle.z;
        for (const TripodOracleEntry& e : oracle.entries) {
            HolonomyResult r = holonomy_of_order(table, e.seq, HolonomyTolerance{1e-6, 1e-6});
            row.status.push_back(to_string(r.status));
            row.rank.push_back(r.rank);
            row.deviation.push_back(max_abs(ComplexMatrix(r.holonomy - e.holonomy)));
            row.status_match.push_back(r.status == e.status && r.rank == e.rank);
        }
        return row;
    });

    TripodOracle labels = tripod_oracle(base);
    std::ofstream csv = open_csv(c.out, "sweep.csv", c);
    csv << "config_hash,theta1,phi1,Z";
    for (const TripodOracleEntry& e : labels.entries) {
        csv << "," << e.label << "_status," << e.label << "_rank," << e.label << "_dev";
    }
    csv << "\n";
    bool ok = true;
    for (const Row& row : rows) {
        csv << c.hash << "," << fmt(row.theta1) << "," << fmt(row.phi1) << "," << fmt(row.z);
        for (std::size_t k = 0; k < row.status.size(); ++k) {
            csv << "," << row.status[k] << "," << row.rank[k] << "," << fmt(row.deviation[k]);
            if (!row.status_match[k] || (row.status_match[k] && row.deviation[k] > comparison_tol)) {
                ok = false;
            }
        }
        csv << "\n";
    }
    log << "tripod: " << rows.size() << " sweep points, engine-vs-oracle "
        << (ok ? "consistent" : "INCONSISTENT") << "\n";
    return ok ? kExitOk : kExitNumeric;
}

// ------------------------------------------------------------ oracle check

int scenario_oracle_check(const Json& config, const Common& c, std::ostream& log) {
    require_keys(config, "config",
                 {"schema_version", "scenario", "seed", "grid", "tolerance", "out", "paths",
                  "random_family", "sequences"},
                 {});
    const double tol = c.tolerance > 0.0 ? c.tolerance : 1e-5;

    std::vector<TripodPath> paths;
    if (config.contains("paths")) {
        for (const Json& p : config.at("paths")) {
            paths.push_back(parse_path(p, "config.paths[]"));
        }
    }
    if (config.contains("random_family")) {
        const Json& rf = config.at("random_family");
        require_keys(rf, "config.random_family", {"count", "seed"}, {"count"});
        const std::size_t count = rf.at("count").get<std::size_t>();
        const std::uint64_t seed = rf.contains("seed") ? rf.at("seed").get<std::uint64_t>() : c.seed;
        for (std::size_t i = 0; i < count; ++i) {
            paths.push_back(TripodPath::random_smooth(seed + i));
        }
    }

    std::optional<std::set<std::string>> wanted;
    if (config.contains("sequences")) {
        wanted.emplace();
        for (const Json& s : config.at("sequences")) wanted->insert(s.get<std::string>());
    }

    struct Report {
        double theta1, phi1, z;
        std::vector<std::string> labels;
        std::vector<double> deviations;
        std::vector<bool> status_match;
    };
    auto reports = parallel_map<Report>(paths.size(), [&](std::size_t i) {
        const TripodPath& path = paths[i];
        TripodOracle oracle = tripod_oracle(path);
        CurveFamily curve = tripod_curve(path, uniform_grid(c.grid));
        SigmaTable table = build_sigma_table(curve);
        Report rep;
        rep.theta1 = path.theta1();
        rep.phi1 = path.phi1();
        rep.z = oracle.z;
        for (const TripodOracleEntry& e : oracle.entries) {
            if (wanted && !wanted->count(e.label)) continue;
            HolonomyResult r = holonomy_of_order(table, e.seq, HolonomyTolerance{1e-6, 1e-6});
            rep.labels.push_back(e.label);
            rep.deviations.push_back(max_abs(ComplexMatrix(r.holonomy - e.holonomy)));
            rep.status_match.push_back(r.status == e.status && r.rank == e.rank);
        }
        return rep;
    });

    std::ofstream csv = open_csv(c.out, "oracle_report.csv", c);
    csv << "config_hash,path,theta1,phi1,Z,label,deviation,status_match\n";
    bool ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const Report& rep = reports[i];
        for (std::size_t k = 0; k < rep.labels.size(); ++k) {
            csv << c.hash << "," << i << "," << fmt(rep.theta1) << "," << fmt(rep.phi1) << ","
                << fmt(rep.z) << "," << rep.labels[k] << "," << fmt(rep.deviations[k]) << ","
                << rep.status_match[k] << "\n";
            worst = std::max(worst, rep.deviations[k]);
            if (!rep.status_match[k] || rep.deviations[k] > tol) ok = false;
        }
    }
    log << "oracle-check: " << paths.size() << " paths, max deviation " << worst << ", "
        << (ok ? "within" : "EXCEEDS") << " tolerance " << tol << "\n";
    return ok ? kExitOk : kExitNumeric;
}

// ---------------------------------------------------------- interferometer

int scenario_interferometer(const Json& config, const Common& c, std::ostream& log) {
    require_keys(config, "config",
                 {"schema_version", "scenario", "seed", "grid", "tolerance", "out", "path",
                  "seq", "strategies", "filtering_segments", "v"},
                 {"path", "seq"});
    TripodPath path = parse_path(config.at("path"), "config.path");
    CurveFamily curve = tripod_curve(path, uniform_grid(c.grid));
    std::vector<std::size_t> seq = seq_from_json(config.at("seq"), curve.eta(), "config.seq");

    std::vector<std::string> strategies = {"adiabatic", "filtering", "nonadiabatic"};
    if (config.contains("strategies")) {
        strategies = config.at("strategies").get<std::vector<std::string>>();
    }
    std::size_t mf = 100;
    if (config.contains("filtering_segments")) {
        mf = config.at("filtering_segments").get<std::size_t>();
    }
    std::string v_mode = "optimal";
    if (config.contains("v")) v_mode = config.at("v").get<std::string>();
    if (v_mode != "optimal" && v_mode != "identity" && v_mode != "random") {
        throw ConfigError("config.v: expected \"optimal\", \"identity\" or \"random\"");
    }

    auto energies = [&path](std::size_t l, double) {
        if (l == kBrightPlus) return path.omega();
        if (l == kBrightMinus) return -path.omega();
        return 0.0;
    };
    auto hamiltonian = [path](double s) { return tripod_hamiltonian(path, s); };

    Json runs = Json::array();
    std::ofstream csv = open_csv(c.out, "summary.csv", c);
    csv << "config_hash,strategy,seq,p,p_closed_form,p_ideal,p_max,post_selection_weight,"
           "holonomy_undefined\n";
    std::string seq_str;
    for (std::size_t l : seq) seq_str += std::to_string(l + 1);

    for (const std::string& name : strategies) {
        ProtocolSpec spec;
        spec.seq = seq;
        spec.energies = energies;
        if (name == "adiabatic") {
            spec.strategy = Strategy::adiabatic;
            spec.curve = curve;
        } else if (name == "filtering") {
            spec.strategy = Strategy::filtering;
            spec.curve = curve;
            spec.filtering_segments = mf;
        } else if (name == "nonadiabatic") {
            spec.strategy = Strategy::nonadiabatic;
            spec.hamiltonian = hamiltonian;
            spec.curve = CurveFamily::from_schrodinger_evolution(hamiltonian, tripod_frames(path, 0.0),
                                                                 uniform_grid(c.grid));
        } else {
            throw ConfigError("config.strategies: unknown strategy " + name);
        }

        ExtractResult ex = extract_holonomy(spec);
        if (v_mode == "optimal") {
            spec.v = ex.v_star;
        } else if (v_mode == "identity") {
            spec.v = ComplexMatrix::Identity(curve.ambient_dim(), curve.ambient_dim());
        } else {
            spec.v = random_admissible_v(spec.curve.front(), c.seed);
        }
        ProtocolResult r = run_protocol(spec);

        Json rec;
        rec["config_hash"] = c.hash;
        rec["strategy"] = name;
        rec["seq"] = seq_to_json(seq);
        rec["p"] = r.p;
        rec["p_closed_form"] = r.p_closed_form;
        rec["p_ideal"] = r.p_ideal;
        rec["p_max"] = ex.p_max;
        rec["post_selection_weight"] = r.post_selection_weight;
        rec["v_star"] = matrix_to_json(ex.v_star_block);
        rec["dynamical_phase"] = ex.dynamical_phase;
        rec["flags"] = Json::object({{"holonomy_undefined", ex.holonomy_undefined},
                                     {"unique_on_support", ex.unique_on_support}});
        runs.push_back(std::move(rec));
        csv << c.hash << "," << name << "," << seq_str << "," << fmt(r.p) << ","
            << fmt(r.p_closed_form) << "," << fmt(r.p_ideal) << "," << fmt(ex.p_max) << ","
            << fmt(r.post_selection_weight) << "," << ex.holonomy_undefined << "\n";
        log << "interferometer[" << name << "]: p=" << r.p << " p_max=" << ex.p_max << "\n";
    }
    Json doc;
    doc["config_hash"] = c.hash;
    doc["seed"] = c.seed;
    doc["runs"] = std::move(runs);
    save_json_file((c.out / "runs.json").string(), doc);
    return kExitOk;
}

}  // namespace

std::string config_hash(const Json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

int run_scenario(const Json& config, const std::string& expected_scenario, const Overrides& ov,
                 std::ostream& log) {
    try {
        Common c = parse_common(config, ov);
        if (c.scenario != expected_scenario) {
            throw ConfigError("config.scenario: is \"" + c.scenario + "\" but the subcommand is \"" +
                              expected_scenario + "\"");
        }
        if (c.scenario == "holonomy") return scenario_holonomy(config, c, log);
        if (c.scenario == "diagnostics") return scenario_diagnostics(config, c, log);
        if (c.scenario == "tripod-sweep") return scenario_tripod(config, c, log);
        if (c.scenario == "interferometer") return scenario_interferometer(config, c, log);
        if (c.scenario == "oracle-check") return scenario_oracle_check(config, c, log);
        throw ConfigError("config.scenario: unknown scenario \"" + c.scenario + "\"");
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        log << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}

int run_scenario_file(const std::string& config_path, const std::string& expected_scenario,
                      const Overrides& ov, std::ostream& log) {
    Json config;
    try {
        config = load_json_file(config_path);
    } catch (const Error& e) {
        log << "config error: " << e.what() << "\n";
        return kExitUsage;
    }
    return run_scenario(config, expected_scenario, ov, log);
}

}  // namespace odholo::cli
