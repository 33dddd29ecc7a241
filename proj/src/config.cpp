#include "gogrow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace gogrow {

using nlohmann::json;

namespace {

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void check_keys(const json& obj, const std::string& ctx,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
    if (!obj.is_object()) throw ConfigError(ctx + ": expected an object");
    for (const char* key : required)
        if (!obj.contains(key)) throw ConfigError(ctx + ": missing required key '" + key + "'");
    std::set<std::string> allowed;
    for (const char* key : required) allowed.insert(key);
    for (const char* key : optional) allowed.insert(key);
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw ConfigError(ctx + ": unknown key '" + item.key() + "'");
}

double get_number(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(ctx + "." + key + ": expected a number");
    return v.get<double>();
}

int get_integer(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(ctx + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string get_string(const json& obj, const char* key, const std::string& ctx) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(ctx + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> get_number_array(const json& v, const std::string& ctx) {
    if (!v.is_array()) throw ConfigError(ctx + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(ctx + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Grid1D grid_from_json(const json& j, const std::string& ctx) {
    check_keys(j, ctx, {"length", "n_cells"}, {});
    return Grid1D::make(get_number(j, "length", ctx), get_integer(j, "n_cells", ctx));
}

InitialCondition initial_from_json(const json& j, const std::string& ctx, ModelKind model) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError(ctx + ": expected an object with a 'kind' key");
    const auto kind = get_string(j, "kind", ctx);
    if (kind == "step") {
        check_keys(j, ctx, {"kind", "level", "x_step"}, {});
        return StepInitial{get_number(j, "level", ctx), get_number(j, "x_step", ctx)};
    }
    if (kind == "custom") {
        if (model == ModelKind::Full) {
            check_keys(j, ctx, {"kind", "rho1", "rho2"}, {});
            return CustomInitial{get_number_array(j.at("rho1"), ctx + ".rho1"),
                                 get_number_array(j.at("rho2"), ctx + ".rho2")};
        }
        check_keys(j, ctx, {"kind", "rho"}, {});
        return CustomInitial{get_number_array(j.at("rho"), ctx + ".rho"), {}};
    }
    throw ConfigError(ctx + ".kind: expected 'step' or 'custom', got '" + kind + "'");
}

ModelKind model_from_json(const json& obj, const std::string& ctx) {
    const auto s = get_string(obj, "model", ctx);
    if (s == "full") return ModelKind::Full;
    if (s == "reduced") return ModelKind::Reduced;
    throw ConfigError(ctx + ".model: expected 'full' or 'reduced', got '" + s + "'");
}

TimeScheme scheme_from_json(const json& obj, const std::string& ctx) {
    if (!obj.contains("scheme")) return TimeScheme::Explicit;
    const auto s = get_string(obj, "scheme", ctx);
    if (s == "explicit") return TimeScheme::Explicit;
    if (s == "strang") return TimeScheme::Strang;
    throw ConfigError(ctx + ".scheme: expected 'explicit' or 'strang', got '" + s + "'");
}

// t_end, optional dt ("auto" or a number), and either an explicit list of
// output times or a count of equispaced ones.
void apply_time(const json& j, const std::string& ctx, SimulationConfig& cfg) {
    check_keys(j, ctx, {"t_end"}, {"dt", "output_times", "output_count"});
    cfg.t_end = get_number(j, "t_end", ctx);
    if (j.contains("dt")) {
        const auto& dt = j.at("dt");
        if (dt.is_string()) {
            if (dt.get<std::string>() != "auto")
                throw ConfigError(ctx + ".dt: expected a number or 'auto'");
        } else if (dt.is_number()) {
            cfg.dt = dt.get<double>();
        } else {
            throw ConfigError(ctx + ".dt: expected a number or 'auto'");
        }
    }
    if (j.contains("output_times") && j.contains("output_count"))
        throw ConfigError(ctx + ": give output_times or output_count, not both");
    if (j.contains("output_times")) {
        cfg.output_times = get_number_array(j.at("output_times"), ctx + ".output_times");
    } else if (j.contains("output_count")) {
        const auto& v = j.at("output_count");
        if (!v.is_number_integer() || v.get<int>() < 1)
            throw ConfigError(ctx + ".output_count: expected a positive integer");
        const int count = v.get<int>();
        for (int k = 1; k <= count; ++k)
            cfg.output_times.push_back(cfg.t_end * static_cast<double>(k) / count);
    }
}

// Escalate a desk-scale run to the paper-scale domain: L = 7000, t_end = 6500,
// cell count chosen to preserve dx, output times re-spread with the same count.
void apply_paper_scale(SimulationConfig& cfg) {
    const double dx = cfg.grid.dx;
    cfg.grid = Grid1D::make(7000.0, std::max(1, static_cast<int>(std::lround(7000.0 / dx))));
    const std::size_t count = cfg.output_times.empty() ? 1 : cfg.output_times.size();
    cfg.t_end = 6500.0;
    cfg.output_times.clear();
    for (std::size_t k = 1; k <= count; ++k)
        cfg.output_times.push_back(6500.0 * static_cast<double>(k) / static_cast<double>(count));
}

std::string job_name(const json& obj, const std::filesystem::path& path, const std::string& ctx) {
    if (obj.contains("name")) return get_string(obj, "name", ctx);
    return path.stem().string();
}

std::string output_name(const json& obj, const char* key, const std::string& ctx,
                        const std::string& fallback) {
    if (!obj.contains("output")) return fallback;
    const auto& out = obj.at("output");
    check_keys(out, ctx + ".output", {}, {"trajectory", "summary", "table"});
    if (!out.contains(key)) return fallback;
    return get_string(out, key, ctx + ".output");
}

SimulationConfig base_config_from_json(const json& obj, const std::string& ctx,
                                       const SwitchingPair& pair, bool paper_scale) {
    SimulationConfig cfg{pair, grid_from_json(obj.at("grid"), ctx + ".grid")};
    cfg.model = model_from_json(obj, ctx);
    apply_time(obj.at("time"), ctx + ".time", cfg);
    cfg.initial = initial_from_json(obj.at("initial"), ctx + ".initial", cfg.model);
    cfg.scheme = scheme_from_json(obj, ctx);
    if (obj.contains("table_samples")) {
        const int samples = get_integer(obj, "table_samples", ctx);
        if (samples < 2) throw ConfigError(ctx + ".table_samples: expected an integer >= 2");
        cfg.table_samples = static_cast<std::size_t>(samples);
    }
    if (paper_scale) apply_paper_scale(cfg);
    return cfg;
}

}  // namespace

SwitchingFunction switching_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError(ctx + ": expected an object with a 'family' key");
    const auto family = get_string(j, "family", ctx);
    try {
        if (family == "constant") {
            check_keys(j, ctx, {"family", "a"}, {});
            return SwitchingFunction::constant(get_number(j, "a", ctx));
        }
        if (family == "linear") {
            check_keys(j, ctx, {"family", "b"}, {});
            return SwitchingFunction::linear(get_number(j, "b", ctx));
        }
        if (family == "linear_decay") {
            check_keys(j, ctx, {"family", "a"}, {});
            return SwitchingFunction::linear_decay(get_number(j, "a", ctx));
        }
        if (family == "hill") {
            check_keys(j, ctx, {"family", "b", "K", "n"}, {});
            return SwitchingFunction::hill(get_number(j, "b", ctx), get_number(j, "K", ctx),
                                           get_number(j, "n", ctx));
        }
        if (family == "hill_decay") {
            check_keys(j, ctx, {"family", "a", "K", "n"}, {});
            return SwitchingFunction::hill_decay(get_number(j, "a", ctx), get_number(j, "K", ctx),
                                                 get_number(j, "n", ctx));
        }
        if (family == "table") {
            check_keys(j, ctx, {"family", "rho", "gamma"}, {});
            return SwitchingFunction::tabulated(get_number_array(j.at("rho"), ctx + ".rho"),
                                                get_number_array(j.at("gamma"), ctx + ".gamma"));
        }
    } catch (const DomainError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
    throw ConfigError(ctx + ".family: unknown family '" + family + "'");
}

json switching_to_json(const SwitchingFunction& f) {
    json j;
    std::visit(
        [&j](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, ConstantRate>) {
                j = {{"family", "constant"}, {"a", fam.a}};
            } else if constexpr (std::is_same_v<T, LinearRate>) {
                j = {{"family", "linear"}, {"b", fam.b}};
            } else if constexpr (std::is_same_v<T, LinearDecayRate>) {
                j = {{"family", "linear_decay"}, {"a", fam.a}};
            } else if constexpr (std::is_same_v<T, HillRate>) {
                j = {{"family", "hill"}, {"b", fam.b}, {"K", fam.K}, {"n", fam.n}};
            } else if constexpr (std::is_same_v<T, HillDecayRate>) {
                j = {{"family", "hill_decay"}, {"a", fam.a}, {"K", fam.K}, {"n", fam.n}};
            } else {
                j = {{"family", "table"}, {"rho", fam.rho}, {"gamma", fam.gamma}};
            }
        },
        f.family());
    return j;
}

SwitchingPair pair_from_json(const json& j, const std::string& ctx) {
    check_keys(j, ctx, {"gamma1", "gamma2"}, {"epsilon"});
    double eps = 1.0;
    if (j.contains("epsilon")) eps = get_number(j, "epsilon", ctx);
    try {
        return SwitchingPair(switching_from_json(j.at("gamma1"), ctx + ".gamma1"),
                             switching_from_json(j.at("gamma2"), ctx + ".gamma2"), eps);
    } catch (const DomainError& e) {
        throw ConfigError(ctx + ": " + e.what());
    }
}

json pair_to_json(const SwitchingPair& pair) {
    return {{"gamma1", switching_to_json(pair.gamma1)},
            {"gamma2", switching_to_json(pair.gamma2)},
            {"epsilon", pair.epsilon}};
}

SimulateJob load_simulate_job(const std::filesystem::path& path, bool paper_scale) {
    const json root = parse_file(path);
    const std::string ctx = path.filename().string();
    check_keys(root, ctx, {"model", "pair", "grid", "time", "initial"},
               {"name", "scheme", "output", "table_samples"});

    const std::string name = job_name(root, path, ctx);
    const auto pair = pair_from_json(root.at("pair"), ctx + ".pair");
    return SimulateJob{name, base_config_from_json(root, ctx, pair, paper_scale),
                       output_name(root, "trajectory", ctx, name + "_trajectory.csv"),
                       output_name(root, "summary", ctx, name + "_summary.json")};
}

SweepJob load_sweep_job(const std::filesystem::path& path, bool paper_scale) {
    const json root = parse_file(path);
    const std::string ctx = path.filename().string();
    check_keys(root, ctx, {"model", "grid", "time", "initial", "sweep"},
               {"name", "scheme", "output", "table_samples"});

    const std::string name = job_name(root, path, ctx);

    const auto& sw = root.at("sweep");
    const std::string swctx = ctx + ".sweep";
    const auto kind_str = get_string(sw, "kind", swctx);
    SweepKind kind;
    std::vector<double> second_values;
    double hill_K = 0.5, hill_n = 2.0;
    if (kind_str == "constant") {
        check_keys(sw, swctx, {"kind", "gamma1", "gamma2"}, {});
        kind = SweepKind::Constant;
        second_values = get_number_array(sw.at("gamma2"), swctx + ".gamma2");
    } else if (kind_str == "linear") {
        check_keys(sw, swctx, {"kind", "gamma1", "beta"}, {});
        kind = SweepKind::Linear;
        second_values = get_number_array(sw.at("beta"), swctx + ".beta");
    } else if (kind_str == "hill") {
        check_keys(sw, swctx, {"kind", "gamma1", "beta"}, {"K", "n"});
        kind = SweepKind::Hill;
        second_values = get_number_array(sw.at("beta"), swctx + ".beta");
        if (sw.contains("K")) hill_K = get_number(sw, "K", swctx);
        if (sw.contains("n")) hill_n = get_number(sw, "n", swctx);
    } else {
        throw ConfigError(swctx + ".kind: expected 'constant', 'linear' or 'hill'");
    }
    const auto gamma1_values = get_number_array(sw.at("gamma1"), swctx + ".gamma1");
    if (gamma1_values.empty() || second_values.empty())
        throw ConfigError(swctx + ": sweep grids must be nonempty");

    SweepJob job{name,
                 kind,
                 gamma1_values,
                 second_values,
                 hill_K,
                 hill_n,
                 base_config_from_json(root, ctx,
                                       make_sweep_pair(kind, hill_K, hill_n, gamma1_values.front(),
                                                       second_values.front()),
                                       paper_scale),
                 output_name(root, "table", ctx, name + "_sweep.csv")};
    if (job.base.model != ModelKind::Full)
        throw ConfigError(ctx + ": sweeps measure the full two-population model; set model = 'full'");
    return job;
}

CompareLimitJob load_compare_limit_job(const std::filesystem::path& path, bool paper_scale) {
    const json root = parse_file(path);
    const std::string ctx = path.filename().string();
    check_keys(root, ctx, {"pair", "grid", "time", "initial", "epsilons"},
               {"name", "scheme", "output", "table_samples"});

    const std::string name = job_name(root, path, ctx);
    const auto pair = pair_from_json(root.at("pair"), ctx + ".pair");

    // the comparison fixes the model kinds itself; config supplies grid/time/initial
    json shim = root;
    shim["model"] = "full";
    shim.erase("pair");
    shim.erase("epsilons");
    return CompareLimitJob{name, get_number_array(root.at("epsilons"), ctx + ".epsilons"),
                           base_config_from_json(shim, ctx, pair, paper_scale),
                           output_name(root, "table", ctx, name + "_limit.csv")};
}

SwitchingPair load_pair_only(const std::filesystem::path& path) {
    const json root = parse_file(path);
    const std::string ctx = path.filename().string();
    if (!root.is_object() || !root.contains("pair"))
        throw ConfigError(ctx + ": expected a config file with a 'pair' record");
    check_keys(root, ctx, {"pair"},
               {"name", "model", "grid", "time", "initial", "scheme", "output",
                "table_samples", "epsilons", "sweep"});
    return pair_from_json(root.at("pair"), ctx + ".pair");
}

SwitchingPair make_sweep_pair(SweepKind kind, double hill_K, double hill_n, double gamma1,
                              double second) {
    switch (kind) {
        case SweepKind::Constant:
            return {SwitchingFunction::constant(gamma1), SwitchingFunction::constant(second)};
        case SweepKind::Linear:
            return {SwitchingFunction::constant(gamma1), SwitchingFunction::linear(second)};
        case SweepKind::Hill:
        default:
            return {SwitchingFunction::hill_decay(gamma1, hill_K, hill_n),
                    SwitchingFunction::hill(second, hill_K, hill_n)};
    }
}

SwitchingPair make_sweep_pair(const SweepJob& job, double gamma1, double second) {
    return make_sweep_pair(job.kind, job.hill_K, job.hill_n, gamma1, second);
}

}  // namespace gogrow
