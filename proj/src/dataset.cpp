#include "frontier/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "frontier/errors.hpp"

namespace frontier {

const char* to_string(VariableCategory c) {
    switch (c) {
        case VariableCategory::Endogenous: return "endogenous";
        case VariableCategory::PartlyExogenous: return "partly_exogenous";
        case VariableCategory::Exogenous: return "exogenous";
    }
    return "exogenous";
}

const char* to_string(ExpectedSign s) {
    switch (s) {
        case ExpectedSign::Positive: return "positive";
        case ExpectedSign::Negative: return "negative";
        case ExpectedSign::Ambiguous: return "ambiguous";
    }
    return "ambiguous";
}

VariableCategory category_from_string(const std::string& s) {
    if (s == "endogenous") return VariableCategory::Endogenous;
    if (s == "partly_exogenous") return VariableCategory::PartlyExogenous;
    if (s == "exogenous") return VariableCategory::Exogenous;
    throw ConfigError("unknown variable category: " + s);
}

ExpectedSign sign_from_string(const std::string& s) {
    if (s == "positive" || s == "+") return ExpectedSign::Positive;
    if (s == "negative" || s == "-") return ExpectedSign::Negative;
    if (s == "ambiguous" || s == "?") return ExpectedSign::Ambiguous;
    throw ConfigError("unknown expected sign: " + s);
}

VariableCatalog::VariableCatalog(std::vector<VariableSpec> specs) {
    for (auto& s : specs) add(std::move(s));
}

void VariableCatalog::add(VariableSpec spec) {
    if (spec.log_scale && spec.is_dummy)
        throw ConfigError("variable " + spec.name + ": log_scale and is_dummy are mutually exclusive");
    if (index_.count(spec.name))
        throw ConfigError("duplicate catalog variable: " + spec.name);
    index_[spec.name] = specs_.size();
    specs_.push_back(std::move(spec));
}

const VariableSpec* VariableCatalog::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &specs_[it->second];
}

std::size_t VariableCatalog::order_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? specs_.size() : it->second;
}

VariableCatalog builtin_catalog() {
    using C = VariableCategory;
    using S = ExpectedSign;
    std::vector<VariableSpec> v = {
        {"TIME", C::Endogenous, "h", false, true, S::Positive},
        {"NONA", C::Endogenous, "%", false, false, S::Negative},
        {"DELATM", C::Endogenous, "0/1", true, false, S::Ambiguous},
        {"MET", C::Endogenous, "0/1", true, false, S::Positive},
        {"AIRP", C::Endogenous, "0/1", true, false, S::Positive},
        {"JSC", C::Endogenous, "0/1", true, false, S::Positive},
        {"STATE", C::Endogenous, "0/1", true, false, S::Negative},
        {"SIZE", C::PartlyExogenous, "km2", false, true, S::Positive},
        {"OCEAN", C::PartlyExogenous, "0/1", true, false, S::Ambiguous},
        {"COORD", C::PartlyExogenous, "Nb", false, false, S::Negative},
        {"L_AIRP", C::PartlyExogenous, "Nb", false, false, S::Negative},
        {"NOFAB", C::PartlyExogenous, "0/1", true, false, S::Ambiguous},
        {"OVER", C::PartlyExogenous, "%", false, false, S::Positive},
        {"DOM", C::PartlyExogenous, "%", false, false, S::Negative},
        {"GINI", C::PartlyExogenous, "%", false, false, S::Negative},
        {"DENS", C::PartlyExogenous, "score", false, false, S::Negative},
        {"VI", C::PartlyExogenous, "score", false, false, S::Negative},
        {"HI", C::PartlyExogenous, "score", false, false, S::Negative},
        {"SI", C::PartlyExogenous, "score", false, false, S::Negative},
        {"COSTS", C::Exogenous, "EUR", false, false, S::Positive},
        {"RES", C::Exogenous, "Nb", false, false, S::Positive},
        {"WEALTH", C::Exogenous, "EUR", false, true, S::Positive},
    };
    return VariableCatalog(std::move(v));
}

VariableCatalog load_catalog_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open catalog file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError("catalog " + path + ": " + e.what());
    }
    if (!doc.is_array()) throw ConfigError("catalog " + path + ": expected a JSON array");
    VariableCatalog cat;
    for (const auto& item : doc) {
        VariableSpec s;
        s.name = item.at("name").get<std::string>();
        s.category = category_from_string(item.at("category").get<std::string>());
        s.metric = item.value("metric", std::string{});
        s.is_dummy = item.value("is_dummy", false);
        s.log_scale = item.value("log_scale", false);
        s.expected_sign = sign_from_string(item.value("expected_sign", std::string("ambiguous")));
        cat.add(std::move(s));
    }
    return cat;
}

void save_catalog_json(const VariableCatalog& catalog, const std::string& path) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : catalog.specs()) {
        nlohmann::ordered_json item;
        item["name"] = s.name;
        item["category"] = to_string(s.category);
        item["metric"] = s.metric;
        item["is_dummy"] = s.is_dummy;
        item["log_scale"] = s.log_scale;
        item["expected_sign"] = to_string(s.expected_sign);
        doc.push_back(std::move(item));
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write catalog file: " + path);
    out << doc.dump(2) << '\n';
}

bool Dataset::has_column(const std::string& name) const {
    return column_index_.count(name) != 0;
}

const std::vector<double>& Dataset::column(const std::string& name) const {
    auto it = column_index_.find(name);
    if (it == column_index_.end()) throw AnalysisError("unknown column: " + name);
    return columns_[it->second];
}

void Dataset::set_dmu_ids(std::vector<std::string> ids) {
    std::set<std::string> seen;
    for (const auto& id : ids)
        if (!seen.insert(id).second) throw AnalysisError("duplicate dmu_id: " + id);
    dmu_ids_ = std::move(ids);
}

void Dataset::add_column(const std::string& name, std::vector<double> values) {
    if (column_index_.count(name)) throw AnalysisError("column already exists: " + name);
    if (values.size() != dmu_ids_.size())
        throw AnalysisError("column " + name + " has wrong length");
    for (double v : values)
        if (!std::isfinite(v)) throw AnalysisError("column " + name + " contains a non-finite value");
    column_index_[name] = columns_.size();
    column_names_.push_back(name);
    columns_.push_back(std::move(values));
}

void Dataset::replace_column(const std::string& name, std::vector<double> values) {
    auto it = column_index_.find(name);
    if (it == column_index_.end()) {
        add_column(name, std::move(values));
        return;
    }
    if (values.size() != dmu_ids_.size())
        throw AnalysisError("column " + name + " has wrong length");
    for (double v : values)
        if (!std::isfinite(v)) throw AnalysisError("column " + name + " contains a non-finite value");
    columns_[it->second] = std::move(values);
}

Dataset Dataset::filter_rows(const std::vector<std::string>& keep_ids) const {
    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < dmu_ids_.size(); ++i) row_of[dmu_ids_[i]] = i;
    std::vector<std::size_t> rows;
    rows.reserve(keep_ids.size());
    for (const auto& id : keep_ids) {
        auto it = row_of.find(id);
        if (it == row_of.end()) throw AnalysisError("unknown dmu_id: " + id);
        rows.push_back(it->second);
    }
    Dataset out;
    out.set_dmu_ids(keep_ids);
    out.set_year(year_);
    out.set_provenance(provenance_);
    out.set_transformed(transformed_);
    for (std::size_t c = 0; c < column_names_.size(); ++c) {
        std::vector<double> vals;
        vals.reserve(rows.size());
        for (std::size_t r : rows) vals.push_back(columns_[c][r]);
        out.add_column(column_names_[c], std::move(vals));
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + s.size() && s.size() > 0 && std::isfinite(out);
}

std::string format_full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

Dataset load_csv(const std::string& path, const VariableCatalog& catalog,
                 MissingPolicy policy, std::optional<int> select_year) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open data file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw AnalysisError(path + ": empty file");
    const auto headers = split_csv_line(line);
    if (headers.empty() || headers[0] != "dmu_id")
        throw AnalysisError(path + ": first column header must be dmu_id");

    int year_col = -1;
    std::vector<std::string> var_names;
    std::vector<std::size_t> var_cols;
    for (std::size_t c = 1; c < headers.size(); ++c) {
        if (headers[c] == "year") {
            if (year_col >= 0) throw AnalysisError(path + ": duplicate year column");
            year_col = static_cast<int>(c);
            continue;
        }
        if (!catalog.find(headers[c]))
            throw AnalysisError(path + ": unknown column: " + headers[c]);
        var_names.push_back(headers[c]);
        var_cols.push_back(c);
    }

    std::vector<std::string> ids;
    std::vector<int> years;
    std::vector<std::vector<double>> cols(var_names.size());
    std::size_t dropped = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != headers.size())
            throw AnalysisError(path + ":" + std::to_string(lineno) + ": malformed row (expected " +
                                std::to_string(headers.size()) + " fields, got " +
                                std::to_string(fields.size()) + ")");
        bool missing = false;
        for (std::size_t c = 1; c < fields.size(); ++c)
            if (fields[c].empty()) missing = true;
        if (missing) {
            if (policy == MissingPolicy::Fail)
                throw AnalysisError(path + ":" + std::to_string(lineno) + ": missing cell");
            ++dropped;
            continue;
        }
        ids.push_back(fields[0]);
        if (year_col >= 0) {
            double y;
            if (!parse_double(fields[static_cast<std::size_t>(year_col)], y) ||
                y != std::floor(y))
                throw AnalysisError(path + ":" + std::to_string(lineno) + ": non-integer year");
            years.push_back(static_cast<int>(y));
        }
        for (std::size_t v = 0; v < var_cols.size(); ++v) {
            double value;
            const std::string& cell = fields[var_cols[v]];
            if (!parse_double(cell, value))
                throw AnalysisError(path + ":" + std::to_string(lineno) + ": non-numeric cell '" +
                                    cell + "' in column " + var_names[v]);
            cols[v].push_back(value);
        }
    }

    // Single-cross-section rule: multi-year files need an explicit selection.
    int year = 0;
    if (!years.empty()) {
        std::set<int> distinct(years.begin(), years.end());
        if (select_year) {
            if (!distinct.count(*select_year))
                throw AnalysisError(path + ": selected year " + std::to_string(*select_year) +
                                    " not present");
            std::vector<std::string> keep_ids;
            std::vector<std::vector<double>> keep_cols(cols.size());
            for (std::size_t r = 0; r < ids.size(); ++r) {
                if (years[r] != *select_year) continue;
                keep_ids.push_back(ids[r]);
                for (std::size_t v = 0; v < cols.size(); ++v) keep_cols[v].push_back(cols[v][r]);
            }
            ids = std::move(keep_ids);
            cols = std::move(keep_cols);
            year = *select_year;
        } else if (distinct.size() > 1) {
            throw AnalysisError(path + ": multiple years present; select one at load");
        } else {
            year = *distinct.begin();
        }
    } else if (select_year) {
        year = *select_year;
    }

    if (ids.empty()) throw AnalysisError(path + ": no observations after ingestion");

    Dataset ds;
    ds.set_dmu_ids(std::move(ids));
    ds.set_year(year);
    ds.set_provenance(path);
    ds.set_dropped_rows(dropped);
    for (std::size_t v = 0; v < var_names.size(); ++v) {
        const VariableSpec* spec = catalog.find(var_names[v]);
        if (spec->is_dummy) {
            for (double x : cols[v])
                if (x != 0.0 && x != 1.0)
                    throw AnalysisError(path + ": dummy column " + var_names[v] +
                                        " contains a value outside {0,1}");
        }
        if (spec->log_scale) {
            for (double x : cols[v])
                if (x <= 0.0)
                    throw AnalysisError(path + ": log-scale column " + var_names[v] +
                                        " contains a non-positive value");
        }
        ds.add_column(var_names[v], std::move(cols[v]));
    }
    return ds;
}

void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write data file: " + path);
    out << "dmu_id";
    if (ds.year() != 0) out << ",year";
    for (const auto& name : ds.column_names()) out << ',' << name;
    out << '\n';
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        out << ds.dmu_ids()[r];
        if (ds.year() != 0) out << ',' << ds.year();
        for (const auto& name : ds.column_names())
            out << ',' << format_full_precision(ds.column(name)[r]);
        out << '\n';
    }
}

Dataset apply_transforms(const Dataset& ds, const VariableCatalog& catalog) {
    if (ds.transformed())
        throw AnalysisError("dataset already transformed; refusing to apply log scaling twice");
    Dataset out;
    out.set_dmu_ids(ds.dmu_ids());
    out.set_year(ds.year());
    out.set_provenance(ds.provenance());
    out.set_dropped_rows(ds.dropped_rows());
    for (const auto& name : ds.column_names()) {
        const VariableSpec* spec = catalog.find(name);
        const auto& values = ds.column(name);
        if (spec && spec->log_scale) {
            std::vector<double> logged;
            logged.reserve(values.size());
            for (double v : values) {
                if (v <= 0.0)
                    throw AnalysisError("log-scale column " + name +
                                        " contains a non-positive value");
                logged.push_back(std::log(v));
            }
            out.add_column(name, std::move(logged));
        } else {
            out.add_column(name, values);
        }
    }
    out.set_transformed(true);
    return out;
}

std::vector<StatsRow> descriptive_stats(const Dataset& ds,
                                        const std::vector<std::string>& vars) {
    if (vars.empty()) throw AnalysisError("descriptive_stats: empty variable list");
    std::vector<StatsRow> rows;
    rows.reserve(vars.size());
    for (const auto& name : vars) {
        std::vector<double> v = ds.column(name); // throws on unknown name
        std::sort(v.begin(), v.end());
        StatsRow row;
        row.variable = name;
        row.min = v.front();
        row.max = v.back();
        const std::size_t n = v.size();
        row.median = (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        rows.push_back(std::move(row));
    }
    return rows;
}

MonthlyCounts load_monthly_counts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open monthly counts file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw AnalysisError(path + ": empty file");
    const auto headers = split_csv_line(line);
    if (headers.empty() || headers[0] != "dmu_id")
        throw AnalysisError(path + ": first column header must be dmu_id");
    if (headers.size() < 2) throw AnalysisError(path + ": no period columns");

    MonthlyCounts mc;
    mc.periods = headers.size() - 1;
    std::size_t lineno = 1;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != headers.size())
            throw AnalysisError(path + ":" + std::to_string(lineno) + ": malformed row");
        if (!seen.insert(fields[0]).second)
            throw AnalysisError(path + ": duplicate dmu_id: " + fields[0]);
        std::vector<double> row;
        row.reserve(mc.periods);
        for (std::size_t c = 1; c < fields.size(); ++c) {
            double v;
            if (!parse_double(fields[c], v))
                throw AnalysisError(path + ":" + std::to_string(lineno) + ": non-numeric cell");
            row.push_back(v);
        }
        mc.dmu_ids.push_back(fields[0]);
        mc.counts.push_back(std::move(row));
    }
    return mc;
}

} // namespace frontier
