#include <hypergiant/cli.hpp>
#include <hypergiant/continuum.hpp>
#include <hypergiant/coupling.hpp>
#include <hypergiant/estimators.hpp>
#include <hypergiant/invariants.hpp>
#include <hypergiant/io.hpp>
#include <hypergiant/kpkvb.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace hypergiant {

namespace {

enum class Kind { real, integer, seed, text, flag, int_list };

struct OptionSpec {
    std::string name;
    Kind kind;
    std::string help;
    std::optional<Json> fallback;
};

class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<OptionSpec>& common_options() {
    static const std::vector<OptionSpec> opts{
        {"seed", Kind::seed, "64-bit master seed", Json(1)},
        {"format", Kind::text, "csv, json or svg", Json("csv")},
        {"out", Kind::text, "output path (default: stdout)", std::nullopt},
    };
    return opts;
}

const std::map<std::string, std::vector<OptionSpec>>& command_options() {
    static const std::map<std::string, std::vector<OptionSpec>> table{
        {"generate",
         {{"model", Kind::text, "disk or continuum", Json("disk")},
          {"n", Kind::integer, "number of vertices N", std::nullopt},
          {"alpha", Kind::real, "alpha", std::nullopt},
          {"nu", Kind::real, "nu", std::nullopt},
          {"lambda", Kind::real, "continuum intensity lambda", std::nullopt},
          {"halfwidth", Kind::real, "continuum window half width", std::nullopt},
          {"height", Kind::real, "continuum window height", std::nullopt},
          {"poissonized", Kind::flag, "Poisson(N) vertices", Json(false)},
          {"edges", Kind::flag, "write the edge list (csv)", Json(false)},
          {"strip", Kind::flag, "write strip images x,y (csv)", Json(false)}}},
        {"components",
         {{"n", Kind::integer, "number of vertices N", std::nullopt},
          {"alpha", Kind::real, "alpha", std::nullopt},
          {"nu", Kind::real, "nu", std::nullopt},
          {"poissonized", Kind::flag, "Poisson(N) vertices", Json(false)}}},
        {"theta",
         {{"alpha", Kind::real, "alpha", std::nullopt},
          {"lambda", Kind::real, "lambda (or give nu)", std::nullopt},
          {"nu", Kind::real, "nu, converted to lambda = nu alpha / pi", std::nullopt},
          {"y", Kind::real, "height of the planted point", Json(0.0)},
          {"h", Kind::real, "event height h", Json(10.0)},
          {"w", Kind::real, "event width w (0: calibrate)", Json(2.0)},
          {"ubound", Kind::real, "size bound n of the containment event", Json(10.0)},
          {"replicas", Kind::integer, "replicas", Json(500)}}},
        {"cvalue",
         {{"alpha", Kind::real, "alpha", std::nullopt},
          {"nu", Kind::real, "nu", std::nullopt},
          {"nodes", Kind::integer, "quadrature nodes", Json(16)},
          {"budget", Kind::real, "error budget", Json(0.1)},
          {"h", Kind::real, "event height h", Json(10.0)},
          {"w", Kind::real, "event width w", Json(2.0)},
          {"ubound", Kind::real, "size bound n of the containment event", Json(10.0)},
          {"replicas", Kind::integer, "replicas per node", Json(100)}}},
        {"lambdac",
         {{"h", Kind::real, "crossing height h", Json(5.0)},
          {"w", Kind::real, "crossing width w", Json(2.0)},
          {"replicas", Kind::integer, "replicas", Json(201)},
          {"tol", Kind::real, "bracket width", Json(0.25)},
          {"lo", Kind::real, "initial lower end", Json(0.1)},
          {"hi", Kind::real, "initial upper end", Json(11.0)}}},
        {"lln",
         {{"alpha", Kind::real, "alpha", std::nullopt},
          {"nu", Kind::real, "nu", std::nullopt},
          {"nlist", Kind::int_list, "comma-separated increasing N values", std::nullopt},
          {"replicas", Kind::integer, "replicas per N", Json(20)}}},
        {"couple-check",
         {{"n", Kind::integer, "number of vertices N", std::nullopt},
          {"alpha", Kind::real, "alpha", std::nullopt},
          {"nu", Kind::real, "nu", std::nullopt}}},
        {"selftest", {}},
    };
    return table;
}

const OptionSpec* find_spec(const std::string& command, const std::string& key) {
    for (const auto& o : common_options())
        if (o.name == key) return &o;
    for (const auto& o : command_options().at(command))
        if (o.name == key) return &o;
    return nullptr;
}

double parse_real(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("--" + key + ": expected a number, got '" + s + "'");
    }
}

std::int64_t parse_integer(const std::string& key, const std::string& s) {
    const double v = parse_real(key, s);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) throw UsageError("--" + key + ": expected an integer, got '" + s + "'");
    return static_cast<std::int64_t>(v);
}

Json typed_from_string(const OptionSpec& spec, const std::string& s) {
    switch (spec.kind) {
        case Kind::real: return parse_real(spec.name, s);
        case Kind::integer: return parse_integer(spec.name, s);
        case Kind::seed:
            try {
                std::size_t used = 0;
                const auto v = std::stoull(s, &used);
                if (used != s.size() || s.empty() || s[0] == '-') throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw UsageError("--seed: expected an unsigned 64-bit integer, got '" + s + "'");
            }
        case Kind::text: return s;
        case Kind::flag:
            if (s == "true" || s == "1") return true;
            if (s == "false" || s == "0") return false;
            throw UsageError("--" + spec.name + ": expected true or false");
        case Kind::int_list: {
            Json list = Json::array();
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) list.push_back(parse_integer(spec.name, item));
            if (list.empty()) throw UsageError("--" + spec.name + ": empty list");
            return list;
        }
    }
    throw UsageError("unreachable");
}

Json typed_from_json(const OptionSpec& spec, const Json& v) {
    const std::string where = "config key '" + spec.name + "'";
    switch (spec.kind) {
        case Kind::real:
            if (!v.is_number()) throw UsageError(where + ": expected a number");
            return v.get<double>();
        case Kind::integer:
            if (v.is_number_integer()) return v.get<std::int64_t>();
            if (v.is_number()) return typed_from_string(spec, v.dump());
            throw UsageError(where + ": expected an integer");
        case Kind::seed:
            if (v.is_number_unsigned()) return v.get<std::uint64_t>();
            if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
            if (v.is_string()) return typed_from_string(spec, v.get<std::string>());
            throw UsageError(where + ": expected an unsigned integer");
        case Kind::text:
            if (!v.is_string()) throw UsageError(where + ": expected a string");
            return v;
        case Kind::flag:
            if (!v.is_boolean()) throw UsageError(where + ": expected true or false");
            return v;
        case Kind::int_list:
            if (v.is_string()) return typed_from_string(spec, v.get<std::string>());
            if (v.is_array() && !v.empty()) {
                Json list = Json::array();
                for (const auto& e : v) {
                    if (!e.is_number_integer()) throw UsageError(where + ": expected integers");
                    list.push_back(e.get<std::int64_t>());
                }
                return list;
            }
            throw UsageError(where + ": expected a list of integers");
    }
    throw UsageError("unreachable");
}

class Params {
public:
    explicit Params(const RunConfig& c) : config_(c) {}

    bool has(const std::string& key) const { return config_.parameters.count(key) > 0; }

    const Json& at(const std::string& key) const {
        auto it = config_.parameters.find(key);
        if (it == config_.parameters.end())
            throw UsageError(config_.command + ": missing required --" + key);
        return it->second;
    }
    double real(const std::string& key) const { return at(key).get<double>(); }
    std::int64_t integer(const std::string& key) const { return at(key).get<std::int64_t>(); }
    std::size_t count(const std::string& key) const {
        const auto v = integer(key);
        if (v < 0) throw UsageError("--" + key + " must be non-negative");
        return static_cast<std::size_t>(v);
    }
    bool flag(const std::string& key) const { return has(key) && at(key).get<bool>(); }
    std::string text(const std::string& key) const { return at(key).get<std::string>(); }

private:
    const RunConfig& config_;
};

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
    if (config.output_path.empty()) {
        out << content;
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + config.output_path);
    file << content;
    if (!file) throw std::runtime_error("failed writing " + config.output_path);
}

std::string json_document(Json body, const Json& provenance) {
    body["config"] = provenance;
    return body.dump(2) + "\n";
}

void forbid_svg(const RunConfig& config) {
    if (config.format == OutputFormat::svg)
        throw UsageError(config.command + ": svg output is only available for the disk layout of generate");
}

int run_generate(const RunConfig& config, std::ostream& out) {
    const Params p(config);
    const Json prov = config.provenance();
    const std::string model = p.text("model");
    if (model == "continuum") {
        forbid_svg(config);
        const ContinuumParams params(p.real("alpha"), p.real("lambda"));
        const Window window(p.real("halfwidth"), p.real("height"));
        const auto sample = sample_continuum(params, window, config.seed);
        if (config.format == OutputFormat::json) {
            Json pts = Json::array();
            for (const auto& q : sample.points) pts.push_back({q.x, q.y});
            emit(config, json_document({{"points", pts}, {"point_count", sample.points.size()}}, prov), out);
        } else {
            emit(config, points_csv(sample.points, prov), out);
        }
        return 0;
    }
    if (model != "disk") throw UsageError("generate: --model must be disk or continuum");
    const KpkvbParams params(p.integer("n"), p.real("alpha"), p.real("nu"));
    const auto vertices = p.flag("poissonized") ? sample_vertices_poissonized(params, config.seed)
                                                : sample_vertices(params, config.seed);
    const auto graph = build_graph(vertices);
    switch (config.format) {
        case OutputFormat::svg: emit(config, disk_svg(vertices, graph, prov), out); break;
        case OutputFormat::json: {
            Json pts = Json::array();
            for (const auto& v : vertices.points) pts.push_back({v.r, v.theta});
            Json edges = Json::array();
            for (const auto& [a, b] : graph.edges()) edges.push_back({a, b});
            emit(config,
                 json_document({{"radius", params.radius()},
                                {"vertex_count", vertices.points.size()},
                                {"edge_count", graph.edge_count()},
                                {"vertices", pts},
                                {"edges", edges}},
                               prov),
                 out);
            break;
        }
        case OutputFormat::csv:
            if (p.flag("edges"))
                emit(config, edge_list(graph, prov), out);
            else if (p.flag("strip"))
                emit(config, points_csv(strip_images(vertices), prov), out);
            else
                emit(config, vertices_csv(vertices, prov), out);
            break;
    }
    return 0;
}

int run_components(const RunConfig& config, std::ostream& out) {
    forbid_svg(config);
    const Params p(config);
    const KpkvbParams params(p.integer("n"), p.real("alpha"), p.real("nu"));
    const auto vertices = p.flag("poissonized") ? sample_vertices_poissonized(params, config.seed)
                                                : sample_vertices(params, config.seed);
    const auto summary = components(build_graph(vertices));
    if (config.format == OutputFormat::json) {
        emit(config, json_document(to_json(summary), config.provenance()), out);
    } else {
        std::vector<std::vector<std::string>> rows;
        const double n = static_cast<double>(std::max<std::size_t>(1, summary.vertex_count));
        for (std::size_t i = 0; i < summary.sizes.size(); ++i) {
            rows.push_back({std::to_string(i + 1), std::to_string(summary.sizes[i]),
                            csv_number(static_cast<double>(summary.sizes[i]) / n)});
        }
        emit(config, csv_document(config.provenance(), {"rank", "size", "fraction"}, rows), out);
    }
    return 0;
}

int run_theta(const RunConfig& config, std::ostream& out) {
    forbid_svg(config);
    const Params p(config);
    const double alpha = p.real("alpha");
    double lambda;
    if (p.has("lambda") == p.has("nu")) throw UsageError("theta: give exactly one of --lambda and --nu");
    lambda = p.has("lambda") ? p.real("lambda") : p.real("nu") * alpha / kPi;
    ThetaConfig tc;
    tc.h = p.real("h");
    tc.w = p.real("w");
    tc.n = p.real("ubound");
    tc.replicas = p.count("replicas");
    const auto est = estimate_theta(p.real("y"), ContinuumParams(alpha, lambda), tc, config.seed);
    if (config.format == OutputFormat::json) {
        emit(config, json_document({{"estimate", to_json(est)}}, config.provenance()), out);
    } else {
        emit(config,
             csv_document(config.provenance(), {"y", "alpha", "lambda", "lower", "upper", "ci_half_width", "replicas"},
                          {{csv_number(est.y), csv_number(alpha), csv_number(lambda), csv_number(est.lower),
                            csv_number(est.upper), csv_number(est.ci_half_width), std::to_string(est.replicas)}}),
             out);
    }
    return 0;
}

int run_cvalue(const RunConfig& config, std::ostream& out) {
    forbid_svg(config);
    const Params p(config);
    CConfig cc;
    cc.nodes = p.count("nodes");
    cc.error_budget = p.real("budget");
    cc.theta.h = p.real("h");
    cc.theta.w = p.real("w");
    cc.theta.n = p.real("ubound");
    cc.theta.replicas = p.count("replicas");
    const auto est = c_of(p.real("alpha"), p.real("nu"), cc, config.seed);
    if (config.format == OutputFormat::json) {
        emit(config, json_document({{"estimate", to_json(est)}}, config.provenance()), out);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [y, t] : est.grid) {
            rows.push_back({csv_number(est.alpha), csv_number(est.nu), csv_number(est.value),
                            csv_number(est.uncertainty), csv_number(y), csv_number(t)});
        }
        if (rows.empty()) {
            rows.push_back({csv_number(est.alpha), csv_number(est.nu), csv_number(est.value),
                            csv_number(est.uncertainty), "", ""});
        }
        emit(config,
             csv_document(config.provenance(), {"alpha", "nu", "value", "uncertainty", "y", "theta_mid"}, rows),
             out);
    }
    return 0;
}

int run_lambdac(const RunConfig& config, std::ostream& out, std::ostream& err) {
    forbid_svg(config);
    const Params p(config);
    BracketConfig bc;
    bc.h = p.real("h");
    bc.w = p.real("w");
    bc.replicas = p.count("replicas");
    bc.tol = p.real("tol");
    bc.initial_lo = p.real("lo");
    bc.initial_hi = p.real("hi");
    const auto bracket = bracket_lambda_c(bc, config.seed);
    for (const auto& w : bracket.warnings) err << "warning: " << w << "\n";
    if (config.format == OutputFormat::json) {
        emit(config, json_document({{"bracket", to_json(bracket)}}, config.provenance()), out);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [l, pr] : bracket.crossing_probs) {
            rows.push_back({csv_number(bracket.lo), csv_number(bracket.hi), csv_number(bracket.nu_mid()),
                            csv_number(l), csv_number(pr)});
        }
        emit(config, csv_document(config.provenance(), {"lo", "hi", "nu_mid", "lambda", "p_cross"}, rows), out);
    }
    return 0;
}

int run_lln(const RunConfig& config, std::ostream& out) {
    forbid_svg(config);
    const Params p(config);
    const auto n_list = p.at("nlist").get<std::vector<std::int64_t>>();
    const auto rows = lln_experiment(p.real("alpha"), p.real("nu"), n_list, p.count("replicas"), config.seed);
    if (config.format == OutputFormat::json) {
        Json table = Json::array();
        for (const auto& r : rows) table.push_back(to_json(r));
        emit(config, json_document({{"rows", table}}, config.provenance()), out);
    } else {
        std::vector<std::vector<std::string>> cells;
        for (const auto& r : rows) {
            cells.push_back({std::to_string(r.n), std::to_string(r.replicas), csv_number(r.g_c1_mean),
                             csv_number(r.g_c1_sd), csv_number(r.g_c2_mean), csv_number(r.g_c2_sd),
                             csv_number(r.po_c1_mean), csv_number(r.po_c1_sd), csv_number(r.po_c2_mean),
                             csv_number(r.po_c2_sd)});
        }
        emit(config,
             csv_document(config.provenance(),
                          {"n", "replicas", "g_c1_mean", "g_c1_sd", "g_c2_mean", "g_c2_sd", "po_c1_mean",
                           "po_c1_sd", "po_c2_mean", "po_c2_sd"},
                          cells),
             out);
    }
    return 0;
}

int run_couple_check(const RunConfig& config, std::ostream& out) {
    forbid_svg(config);
    const Params p(config);
    const KpkvbParams params(p.integer("n"), p.real("alpha"), p.real("nu"));
    const auto report = edge_agreement(sample_vertices_poissonized(params, config.seed));
    if (config.format == OutputFormat::json) {
        emit(config, json_document({{"report", to_json(report)}}, config.provenance()), out);
    } else {
        emit(config,
             csv_document(config.provenance(),
                          {"total_pairs", "agreements", "gamma_only", "g_only_outer", "g_only_inner",
                           "gamma_only_rate"},
                          {{std::to_string(report.total_pairs), std::to_string(report.agreements),
                            std::to_string(report.gamma_only), std::to_string(report.g_only_outer),
                            std::to_string(report.g_only_inner), csv_number(report.gamma_only_rate())}}),
             out);
    }
    return 0;
}

int run_selftest_command(const RunConfig& config, std::ostream& out) {
    forbid_svg(config);
    const auto results = run_selftest(config.seed);
    bool ok = true;
    if (config.format == OutputFormat::json) {
        Json arr = Json::array();
        for (const auto& r : results) {
            ok = ok && r.passed();
            arr.push_back({{"name", r.name}, {"trials", r.trials}, {"violations", r.violations}, {"pass", r.passed()}});
        }
        emit(config, json_document({{"checks", arr}, {"pass", ok}}, config.provenance()), out);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : results) {
            ok = ok && r.passed();
            rows.push_back({r.passed() ? "PASS" : "FAIL", "\"" + r.name + "\"", std::to_string(r.trials),
                            std::to_string(r.violations)});
        }
        emit(config, csv_document(config.provenance(), {"status", "check", "trials", "violations"}, rows), out);
    }
    return ok ? 0 : 1;
}

}  // namespace

Json RunConfig::provenance() const {
    Json params = Json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    const char* fmt = format == OutputFormat::csv ? "csv" : format == OutputFormat::json ? "json" : "svg";
    return Json{{"command", command}, {"seed", seed}, {"format", fmt}, {"parameters", params}};
}

RunConfig parse_run_config(const std::vector<std::string>& args) {
    CLI::App app{"hypergiant: giant components of hyperbolic random graphs"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "Print this help message and exit");
    std::map<std::string, std::map<std::string, std::string>> text_values;
    std::map<std::string, std::map<std::string, bool>> flag_values;
    std::map<std::string, std::string> config_paths;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, options] : command_options()) {
        auto* sub = app.add_subcommand(name);
        subs[name] = sub;
        sub->set_help_flag("--help", "Print this help message and exit");
        auto add = [&](const OptionSpec& o) {
            if (o.kind == Kind::flag)
                sub->add_flag("--" + o.name, flag_values[name][o.name], o.help);
            else
                sub->add_option("--" + o.name, text_values[name][o.name], o.help);
        };
        for (const auto& o : options) add(o);
        for (const auto& o : common_options()) add(o);
        sub->add_option("--config", config_paths[name], "JSON config file; flags override it");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig config;
    CLI::App* chosen = app.get_subcommands().front();
    config.command = chosen->get_name();
    std::map<std::string, Json> values;

    if (chosen->count("--config") > 0) {
        const std::string& path = config_paths[config.command];
        std::ifstream file(path);
        if (!file) throw UsageError("cannot read config file " + path);
        Json doc;
        try {
            doc = Json::parse(file);
        } catch (const Json::parse_error& e) {
            throw UsageError("config file " + path + ": " + e.what());
        }
        if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
        for (const auto& [key, v] : doc.items()) {
            if (key == "command") {
                if (v != config.command) throw UsageError("config file is for command " + v.dump());
                continue;
            }
            const OptionSpec* spec = find_spec(config.command, key);
            if (!spec) throw UsageError("unknown config key '" + key + "' for command " + config.command);
            values[key] = typed_from_json(*spec, v);
        }
    }
    auto consider = [&](const OptionSpec& o) {
        if (chosen->count("--" + o.name) == 0) return;
        values[o.name] = o.kind == Kind::flag ? Json(flag_values[config.command][o.name])
                                              : typed_from_string(o, text_values[config.command][o.name]);
    };
    for (const auto& o : command_options().at(config.command)) consider(o);
    for (const auto& o : common_options()) consider(o);
    for (const auto& o : command_options().at(config.command)) {
        if (!values.count(o.name) && o.fallback) values[o.name] = *o.fallback;
    }

    config.seed = values.count("seed") ? values["seed"].get<std::uint64_t>() : 1;
    const std::string format = values.count("format") ? values["format"].get<std::string>() : "csv";
    if (format == "csv")
        config.format = OutputFormat::csv;
    else if (format == "json")
        config.format = OutputFormat::json;
    else if (format == "svg")
        config.format = OutputFormat::svg;
    else
        throw UsageError("--format must be csv, json or svg");
    if (values.count("out")) config.output_path = values["out"].get<std::string>();
    values.erase("seed");
    values.erase("format");
    values.erase("out");
    config.parameters = std::move(values);
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.command == "generate") return run_generate(config, out);
        if (config.command == "components") return run_components(config, out);
        if (config.command == "theta") return run_theta(config, out);
        if (config.command == "cvalue") return run_cvalue(config, out);
        if (config.command == "lambdac") return run_lambdac(config, out, err);
        if (config.command == "lln") return run_lln(config, out);
        if (config.command == "couple-check") return run_couple_check(config, out);
        if (config.command == "selftest") return run_selftest_command(config, out);
        throw UsageError("unknown command " + config.command);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_run_config(args);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    return run(config, out, err);
}

}  // namespace hypergiant
