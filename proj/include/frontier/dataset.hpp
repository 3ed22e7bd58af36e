#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace frontier {

enum class VariableCategory { Endogenous, PartlyExogenous, Exogenous };
enum class ExpectedSign { Positive, Negative, Ambiguous };

const char* to_string(VariableCategory c);
const char* to_string(ExpectedSign s);
VariableCategory category_from_string(const std::string& s);
ExpectedSign sign_from_string(const std::string& s);

// One row of the factor catalog: what a variable is, how it enters the
// analysis, and which coefficient sign is expected.
struct VariableSpec {
    std::string name;
    VariableCategory category = VariableCategory::Exogenous;
    std::string metric;
    bool is_dummy = false;
    bool log_scale = false;
    ExpectedSign expected_sign = ExpectedSign::Ambiguous;
};

class VariableCatalog {
public:
    VariableCatalog() = default;
    explicit VariableCatalog(std::vector<VariableSpec> specs);

    void add(VariableSpec spec);
    const VariableSpec* find(const std::string& name) const;
    // Position in the catalog; names not present sort after all catalog names.
    std::size_t order_index(const std::string& name) const;
    const std::vector<VariableSpec>& specs() const { return specs_; }

private:
    std::vector<VariableSpec> specs_;
    std::unordered_map<std::string, std::size_t> index_;
};

// The 22-variable factor catalog the toolkit ships with (user-extensible via
// the JSON catalog file).
VariableCatalog builtin_catalog();

VariableCatalog load_catalog_json(const std::string& path);
void save_catalog_json(const VariableCatalog& catalog, const std::string& path);

// Immutable after construction; one cross-section of observations.
class Dataset {
public:
    Dataset() = default;

    std::size_t n_rows() const { return dmu_ids_.size(); }
    const std::vector<std::string>& dmu_ids() const { return dmu_ids_; }
    int year() const { return year_; }
    const std::string& provenance() const { return provenance_; }
    bool transformed() const { return transformed_; }
    std::size_t dropped_rows() const { return dropped_rows_; }

    const std::vector<std::string>& column_names() const { return column_names_; }
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;

    // Builders; validation of lengths and duplicates happens here.
    void set_dmu_ids(std::vector<std::string> ids);
    void set_year(int year) { year_ = year; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }
    void set_transformed(bool t) { transformed_ = t; }
    void set_dropped_rows(std::size_t n) { dropped_rows_ = n; }
    void add_column(const std::string& name, std::vector<double> values);
    void replace_column(const std::string& name, std::vector<double> values);

    // Row subset in the given id order; ids must exist.
    Dataset filter_rows(const std::vector<std::string>& keep_ids) const;

private:
    std::vector<std::string> dmu_ids_;
    int year_ = 0;
    std::string provenance_;
    bool transformed_ = false;
    std::size_t dropped_rows_ = 0;
    std::vector<std::string> column_names_;
    std::vector<std::vector<double>> columns_;
    std::unordered_map<std::string, std::size_t> column_index_;
};

enum class MissingPolicy { DropRow, Fail };

// CSV ingestion. First header must be `dmu_id`, an optional `year` column is
// recognized, all remaining headers must resolve in the catalog. Dummy and
// log-scale constraints from the catalog are enforced on the observed values.
Dataset load_csv(const std::string& path, const VariableCatalog& catalog,
                 MissingPolicy policy = MissingPolicy::DropRow,
                 std::optional<int> select_year = std::nullopt);

// Values rendered with 17 significant digits so a reload is bit-identical.
void write_csv(const Dataset& ds, const std::string& path);

// Natural log applied to every catalog column flagged log_scale. Guarded
// against double application.
Dataset apply_transforms(const Dataset& ds, const VariableCatalog& catalog);

struct StatsRow {
    std::string variable;
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};

std::vector<StatsRow> descriptive_stats(const Dataset& ds,
                                        const std::vector<std::string>& vars);

// Per-DMU period counts (dmu_id + one column per period), the input for the
// traffic-variability Gini. Header names of the period columns are free-form.
struct MonthlyCounts {
    std::vector<std::string> dmu_ids;
    std::vector<std::vector<double>> counts; // row-aligned with dmu_ids
    std::size_t periods = 0;
};

MonthlyCounts load_monthly_counts(const std::string& path);

} // namespace frontier
