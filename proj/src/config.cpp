#include "frontier/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string resolve_relative(const std::string& base_config, const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (p.is_absolute()) return path;
    return (fs::path(base_config).parent_path() / p).string();
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    RunConfig cfg;
    cfg.config_path = path;
    cfg.config_bytes = read_file(path);

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(cfg.config_bytes);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    try {
        cfg.data_path = resolve_relative(path, doc.at("data").get<std::string>());
        cfg.catalog_path = resolve_relative(path, doc.at("catalog").get<std::string>());
        if (doc.contains("monthly_counts"))
            cfg.monthly_counts_path =
                resolve_relative(path, doc.at("monthly_counts").get<std::string>());
        if (doc.contains("year")) cfg.year = doc.at("year").get<int>();
        if (doc.contains("missing_policy")) {
            const auto p = doc.at("missing_policy").get<std::string>();
            if (p == "drop_row") cfg.missing_policy = MissingPolicy::DropRow;
            else if (p == "fail") cfg.missing_policy = MissingPolicy::Fail;
            else throw ConfigError("unknown missing_policy: " + p);
        }
        if (doc.contains("productivity")) {
            const auto& pj = doc.at("productivity");
            ProductivityRequest pr;
            pr.numerator = pj.at("numerator").get<std::string>();
            pr.denominator = pj.at("denominator").get<std::string>();
            pr.name = pj.value("name", std::string("PROD"));
            cfg.productivity = std::move(pr);
        }
        if (doc.contains("descriptive_stats"))
            cfg.stats_vars = doc.at("descriptive_stats").get<std::vector<std::string>>();
        if (doc.contains("correlation"))
            cfg.correlation_vars = doc.at("correlation").get<std::vector<std::string>>();

        if (doc.contains("dea_models")) {
            for (const auto& mj : doc.at("dea_models")) {
                DeaModelSpec m;
                m.name = mj.at("name").get<std::string>();
                m.inputs = mj.at("inputs").get<std::vector<std::string>>();
                m.outputs = mj.at("outputs").get<std::vector<std::string>>();
                const auto rts = mj.value("rts", std::string("CRS"));
                if (rts == "CRS") m.rts = ReturnsToScale::CRS;
                else if (rts == "VRS") m.rts = ReturnsToScale::VRS;
                else throw ConfigError("DEA model " + m.name + ": unknown rts: " + rts);
                const auto ori = mj.value("orientation", std::string("input"));
                if (ori == "input") m.orientation = Orientation::Input;
                else if (ori == "output") m.orientation = Orientation::Output;
                else throw ConfigError("DEA model " + m.name + ": unknown orientation: " + ori);
                if (mj.contains("exclude"))
                    m.excluded_dmus = mj.at("exclude").get<std::vector<std::string>>();
                if (m.inputs.empty() || m.outputs.empty())
                    throw ConfigError("DEA model " + m.name + ": inputs and outputs required");
                cfg.dea_models.push_back(std::move(m));
            }
        }

        std::set<std::string> labels;
        if (doc.contains("regressions")) {
            for (const auto& rj : doc.at("regressions")) {
                RegressionRequest req;
                req.spec.dependent = rj.at("dependent").get<std::string>();
                req.spec.regressors = rj.at("regressors").get<std::vector<std::string>>();
                req.spec.intercept = rj.value("intercept", true);
                req.spec.method = method_from_string(rj.value("method", std::string("OLS")));
                if (rj.contains("lower") && !rj.at("lower").is_null())
                    req.spec.lower_bound = rj.at("lower").get<double>();
                if (rj.contains("upper") && !rj.at("upper").is_null())
                    req.spec.upper_bound = rj.at("upper").get<double>();
                req.spec.label = rj.value(
                    "label", std::string(to_string(req.spec.method)) + " " + req.spec.dependent);
                req.backward_eliminate = rj.value("backward_eliminate", false);
                req.staged = rj.value("staged", false);
                if (!labels.insert(req.spec.label).second)
                    throw ConfigError("duplicate regression label: " + req.spec.label);
                cfg.regressions.push_back(std::move(req));
            }
        }

        if (doc.contains("comparisons")) {
            for (const auto& cj : doc.at("comparisons")) {
                ComparisonRequest cr;
                cr.label = cj.at("label").get<std::string>();
                cr.results = cj.at("results").get<std::vector<std::string>>();
                if (cr.results.size() < 2)
                    throw ConfigError("comparison " + cr.label + ": needs at least 2 results");
                for (const auto& r : cr.results)
                    if (!labels.count(r))
                        throw ConfigError("comparison " + cr.label +
                                          ": unknown regression label: " + r);
                cfg.comparisons.push_back(std::move(cr));
            }
        }

        if (doc.contains("selection")) {
            const auto& sj = doc.at("selection");
            cfg.selection.threshold = sj.value("threshold", 0.33);
            cfg.selection.vif_threshold = sj.value("vif_threshold", 10.0);
            if (sj.contains("dummies"))
                cfg.selection.groups.dummies = sj.at("dummies").get<std::vector<std::string>>();
            if (sj.contains("airspace"))
                cfg.selection.groups.airspace = sj.at("airspace").get<std::vector<std::string>>();
            if (sj.contains("demand"))
                cfg.selection.groups.demand = sj.at("demand").get<std::vector<std::string>>();
            if (!(cfg.selection.threshold > 0.0 && cfg.selection.threshold < 1.0))
                throw ConfigError("selection.threshold must lie in (0,1)");
        }

        if (doc.contains("output_dir"))
            cfg.output_dir = resolve_relative(path, doc.at("output_dir").get<std::string>());
        if (doc.contains("render")) {
            const auto& rj = doc.at("render");
            cfg.render.decimals = rj.value("decimals", 3);
            const auto sep = rj.value("decimal_separator", std::string("."));
            if (sep != "." && sep != ",")
                throw ConfigError("render.decimal_separator must be '.' or ','");
            cfg.render.decimal_separator = sep[0];
            if (cfg.render.decimals < 0 || cfg.render.decimals > 12)
                throw ConfigError("render.decimals must lie in [0,12]");
        }
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }

    if (cfg.dea_models.empty() && cfg.regressions.empty())
        throw ConfigError("config requests no analysis (neither dea_models nor regressions)");
    return cfg;
}

void validate_files(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    auto require = [](const std::string& p, const char* what) {
        if (!fs::exists(p)) throw IoError(std::string(what) + " not found: " + p);
    };
    require(cfg.data_path, "data file");
    require(cfg.catalog_path, "catalog file");
    if (cfg.monthly_counts_path) require(*cfg.monthly_counts_path, "monthly counts file");
}

} // namespace frontier
