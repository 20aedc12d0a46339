// nullsurf: analysis configuration (flat key = value format) and its
// realization as catalog objects
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nullsurf/catalog.hpp"
#include "nullsurf/expr.hpp"
#include "nullsurf/hypersurface.hpp"
#include "nullsurf/normalization.hpp"

namespace nullsurf {

enum class OutputKind { shape, invariants, sectional, screens, foci, connection };

inline const char* to_string(OutputKind k) {
    switch (k) {
        case OutputKind::shape: return "shape";
        case OutputKind::invariants: return "invariants";
        case OutputKind::sectional: return "sectional";
        case OutputKind::screens: return "screens";
        case OutputKind::foci: return "foci";
        case OutputKind::connection: return "connection";
    }
    return "unknown";
}

struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;
};

// Parsed analysis configuration. `canonical` carries the normalized key =
// value text that the provenance hash is computed from.
struct AnalysisConfig {
    std::string metric_name = "minkowski";
    int dim = 4;
    std::map<std::string, double> metric_params;

    std::string surface_name = "light_cone";
    std::map<std::string, double> surface_params;
    std::vector<std::string> custom_exprs;  // coordinate expressions for custom patches

    std::vector<GridAxis> grid;
    std::set<OutputKind> outputs;

    std::uint64_t gauge_seed = 1;
    int gauge_samples = 3;
    int gauge_points = 2;
    int sectional_samples = 4;

    ClassifyTolerances classify_tol;
    NormalizationTolerances norm_tol;

    std::string canonical;
};

namespace detail {

inline std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (detail::trim(value.substr(used)).empty()) return v;
    } catch (...) {
    }
    throw ConfigError(key + ": expected a number, got '" + value + "'");
}

inline int parse_int(const std::string& key, const std::string& value) {
    double v = parse_double(key, value);
    int i = static_cast<int>(v);
    if (i != v) throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return i;
}

inline GridAxis parse_grid_axis(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    std::string lo, hi, count;
    if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':') || !std::getline(in, count))
        throw ConfigError(key + ": expected min:max:count, got '" + value + "'");
    GridAxis axis{parse_double(key, trim(lo)), parse_double(key, trim(hi)),
                  parse_int(key, trim(count))};
    if (axis.count < 2) throw ConfigError(key + ": sample count must be >= 2");
    if (!(axis.lo < axis.hi)) throw ConfigError(key + ": need min < max");
    return axis;
}

}  // namespace detail

// Parses the flat key = value format ('#' comments, blank lines ignored).
// Unknown keys are configuration errors carrying the field path.
inline AnalysisConfig parse_config(const std::string& text) {
    AnalysisConfig cfg;
    std::map<std::string, std::string> kv;
    std::vector<std::string> order;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!kv.count(key)) order.push_back(key);
        kv[key] = value;
    }

    std::set<std::string> consumed;
    auto take = [&](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        if (it == kv.end()) return nullptr;
        consumed.insert(key);
        return &it->second;
    };

    if (const auto* v = take("metric.name")) cfg.metric_name = *v;
    if (const auto* v = take("metric.dim")) cfg.dim = detail::parse_int("metric.dim", *v);
    if (cfg.dim < 3) throw ConfigError("metric.dim: must be >= 3");
    for (const char* p : {"K", "m"})
        if (const auto* v = take(std::string("metric.") + p))
            cfg.metric_params[p] = detail::parse_double(std::string("metric.") + p, *v);

    if (const auto* v = take("hypersurface.name")) cfg.surface_name = *v;
    for (const char* p : {"a", "b", "c", "m", "v0"})
        if (const auto* v = take(std::string("hypersurface.") + p))
            cfg.surface_params[p] = detail::parse_double(std::string("hypersurface.") + p, *v);
    for (int i = 0; i < cfg.dim; ++i) {
        std::string key = "hypersurface.custom.x" + std::to_string(i);
        if (const auto* v = take(key)) {
            cfg.custom_exprs.resize(cfg.dim);
            cfg.custom_exprs[i] = *v;
        }
    }

    cfg.grid.resize(cfg.dim - 1);
    bool any_grid = false;
    for (int k = 1; k < cfg.dim; ++k) {
        std::string key = "grid.u" + std::to_string(k);
        if (const auto* v = take(key)) {
            cfg.grid[k - 1] = detail::parse_grid_axis(key, *v);
            any_grid = true;
        }
    }
    if (!any_grid) cfg.grid.clear();  // defaults filled against the patch later

    if (const auto* v = take("outputs")) {
        std::istringstream items(*v);
        std::string item;
        while (std::getline(items, item, ',')) {
            item = detail::trim(item);
            if (item == "shape") cfg.outputs.insert(OutputKind::shape);
            else if (item == "invariants") cfg.outputs.insert(OutputKind::invariants);
            else if (item == "sectional") cfg.outputs.insert(OutputKind::sectional);
            else if (item == "screens") cfg.outputs.insert(OutputKind::screens);
            else if (item == "foci") cfg.outputs.insert(OutputKind::foci);
            else if (item == "connection") cfg.outputs.insert(OutputKind::connection);
            else throw ConfigError("outputs: unknown output '" + item + "'");
        }
    } else {
        cfg.outputs = {OutputKind::shape, OutputKind::invariants, OutputKind::foci};
    }

    if (const auto* v = take("gauge_seed"))
        cfg.gauge_seed = static_cast<std::uint64_t>(detail::parse_double("gauge_seed", *v));
    if (const auto* v = take("gauge.samples"))
        cfg.gauge_samples = detail::parse_int("gauge.samples", *v);
    if (const auto* v = take("gauge.points"))
        cfg.gauge_points = detail::parse_int("gauge.points", *v);
    if (const auto* v = take("sectional.samples"))
        cfg.sectional_samples = detail::parse_int("sectional.samples", *v);

    if (const auto* v = take("tolerances.classify_abs"))
        cfg.classify_tol.abs_scale = detail::parse_double("tolerances.classify_abs", *v);
    if (const auto* v = take("tolerances.classify_rel"))
        cfg.classify_tol.rel = detail::parse_double("tolerances.classify_rel", *v);
    if (const auto* v = take("tolerances.integrable"))
        cfg.norm_tol.integrable = detail::parse_double("tolerances.integrable", *v);
    if (const auto* v = take("tolerances.proportionality"))
        cfg.norm_tol.proportionality = detail::parse_double("tolerances.proportionality", *v);
    if (const auto* v = take("tolerances.transversal_abs"))
        cfg.norm_tol.transversal_abs = detail::parse_double("tolerances.transversal_abs", *v);

    for (const auto& [key, value] : kv)
        if (!consumed.count(key)) throw ConfigError(key + ": unknown configuration key");

    // canonical text: consumed keys in first-seen order
    std::ostringstream canon;
    for (const auto& key : order) canon << key << " = " << kv[key] << "\n";
    cfg.canonical = canon.str();

    if ((cfg.outputs.count(OutputKind::screens) || cfg.outputs.count(OutputKind::connection)) &&
        cfg.dim != 4)
        throw ConfigError("outputs: screens/connection require metric.dim = 4");
    if (cfg.outputs.count(OutputKind::connection) && !cfg.outputs.count(OutputKind::screens))
        throw ConfigError("outputs: connection requires screens");
    return cfg;
}

inline AnalysisConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline MetricField make_metric(const AnalysisConfig& cfg) {
    if (cfg.metric_name == "minkowski") return minkowski_metric(cfg.dim);
    if (cfg.metric_name == "de_sitter")
        return de_sitter_metric(cfg.dim, param_or(cfg.metric_params, "K", 1.0));
    if (cfg.metric_name == "anti_de_sitter")
        return anti_de_sitter_metric(cfg.dim, param_or(cfg.metric_params, "K", -1.0));
    if (cfg.metric_name == "eddington_finkelstein") {
        if (cfg.dim != 4)
            throw ConfigError("metric.dim: eddington_finkelstein requires dim = 4");
        return eddington_finkelstein_metric(param_or(cfg.metric_params, "m", 1.0));
    }
    throw ConfigError("metric.name: unknown metric '" + cfg.metric_name + "'");
}

inline HypersurfacePatch make_patch(const AnalysisConfig& cfg) {
    const auto& p = cfg.surface_params;
    if (cfg.surface_name == "null_hyperplane") return null_hyperplane_patch(cfg.dim);
    if (cfg.surface_name == "light_cone") return light_cone_patch(cfg.dim);
    if (cfg.surface_name == "ellipsoid_null_congruence") {
        if (cfg.dim != 4)
            throw ConfigError("hypersurface.name: ellipsoid_null_congruence requires dim = 4");
        return ellipsoid_congruence_patch(param_or(p, "a", 1.0), param_or(p, "b", 1.3),
                                          param_or(p, "c", 1.7));
    }
    if (cfg.surface_name == "schwarzschild_horizon") {
        if (cfg.dim != 4)
            throw ConfigError("hypersurface.name: schwarzschild_horizon requires dim = 4");
        return schwarzschild_horizon_patch(param_or(p, "m", 1.0));
    }
    if (cfg.surface_name == "ef_ingoing_cone") {
        if (cfg.dim != 4) throw ConfigError("hypersurface.name: ef_ingoing_cone requires dim = 4");
        return ef_ingoing_cone_patch(param_or(p, "v0", 0.0));
    }
    if (cfg.surface_name == "custom") {
        if (static_cast<int>(cfg.custom_exprs.size()) != cfg.dim)
            throw ConfigError("hypersurface.custom: need expressions x0..x" +
                              std::to_string(cfg.dim - 1));
        std::vector<Expression> exprs;
        for (const auto& text : cfg.custom_exprs) {
            if (text.empty()) throw ConfigError("hypersurface.custom: missing coordinate");
            exprs.push_back(Expression::parse(text));
        }
        int dim = cfg.dim;
        auto map = [exprs, dim](const Vec& u) {
            std::map<std::string, double> vars;
            for (int k = 0; k < dim - 1; ++k) vars["u" + std::to_string(k + 1)] = u[k];
            Vec x(dim);
            for (int i = 0; i < dim; ++i) x[i] = exprs[i].eval(vars);
            return x;
        };
        std::vector<std::pair<double, double>> bounds;
        if (cfg.grid.empty())
            throw ConfigError("grid: custom hypersurfaces need explicit grid ranges");
        for (const auto& axis : cfg.grid) {
            double pad = 0.05 * (axis.hi - axis.lo);
            bounds.push_back({axis.lo - pad, axis.hi + pad});
        }
        return HypersurfacePatch(cfg.dim, map, bounds, "custom");
    }
    throw ConfigError("hypersurface.name: unknown hypersurface '" + cfg.surface_name + "'");
}

// Fills missing grid axes from the patch bounds (interior fifth to four
// fifths, three samples) and validates ranges against the bounds.
inline std::vector<GridAxis> resolve_grid(const AnalysisConfig& cfg,
                                          const HypersurfacePatch& patch) {
    std::vector<GridAxis> grid = cfg.grid;
    if (grid.empty()) {
        grid.resize(patch.param_dim());
        for (int k = 0; k < patch.param_dim(); ++k) {
            auto [lo, hi] = patch.param_bounds()[k];
            grid[k] = {lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo), 3};
        }
    }
    if (static_cast<int>(grid.size()) != patch.param_dim())
        throw ConfigError("grid: expected " + std::to_string(patch.param_dim()) + " axes");
    for (int k = 0; k < patch.param_dim(); ++k) {
        if (grid[k].count == 0) {
            auto [lo, hi] = patch.param_bounds()[k];
            grid[k] = {lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo), 3};
        }
        auto [lo, hi] = patch.param_bounds()[k];
        if (grid[k].lo < lo || grid[k].hi > hi)
            throw ConfigError("grid.u" + std::to_string(k + 1) + ": range outside patch bounds");
    }
    return grid;
}

}  // namespace nullsurf
