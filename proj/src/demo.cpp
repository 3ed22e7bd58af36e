#include "frontier/demo.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/errors.hpp"

namespace frontier {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double gauss(std::mt19937_64& rng, double sd) {
    return std::normal_distribution<double>(0.0, sd)(rng);
}

// Bernoulli column with both values guaranteed present.
std::vector<double> dummy_column(std::mt19937_64& rng, std::size_t n, double p) {
    std::vector<double> v(n, 0.0);
    for (auto& x : v) x = (uniform(rng, 0.0, 1.0) < p) ? 1.0 : 0.0;
    bool any0 = false, any1 = false;
    for (double x : v) (x == 0.0 ? any0 : any1) = true;
    if (!any0) v[0] = 0.0;
    if (!any1) v[0] = 1.0;
    return v;
}

} // namespace

std::string write_demo(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create demo directory: " + dir);

    constexpr std::size_t kDmus = 38;
    std::mt19937_64 rng(20160538ULL);

    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= kDmus; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "ANSP%02zu", i);
        ids.emplace_back(buf);
    }

    // Factor ranges follow the published 2016 cross-section descriptives.
    std::vector<double> time_h(kDmus), nona(kDmus), size_km2(kDmus), coord(kDmus),
        l_airp(kDmus), over(kDmus), dom(kDmus), dens(kDmus), vi(kDmus), hi(kDmus), si(kDmus),
        costs(kDmus), res(kDmus), wealth(kDmus);
    for (std::size_t i = 0; i < kDmus; ++i) {
        time_h[i] = uniform(rng, 934.0, 1990.0);
        nona[i] = uniform(rng, 0.38, 0.87);
        size_km2[i] = std::exp(uniform(rng, std::log(20400.0), std::log(2190000.0)));
        coord[i] = std::floor(uniform(rng, 2.0, 11.99));
        l_airp[i] = std::floor(uniform(rng, 0.0, 3.99));
        over[i] = uniform(rng, 0.10, 1.00);
        dom[i] = uniform(rng, 0.0, 0.50);
        dens[i] = uniform(rng, 0.69, 11.47);
        vi[i] = uniform(rng, 0.04, 0.38);
        hi[i] = uniform(rng, 0.27, 0.63);
        si[i] = uniform(rng, 0.04, 0.45);
        costs[i] = uniform(rng, 11.0, 225.0);
        res[i] = std::exp(uniform(rng, std::log(0.26), std::log(95.76)));
        // Wealth tracks the technology proxy closely so the staged run's
        // VIF check has a collinear pair to catch.
        const double res_z = (std::log(res[i]) - std::log(5.0)) / 1.5;
        wealth[i] = 30000.0 * std::exp(0.9 * res_z + gauss(rng, 0.18));
        wealth[i] = std::min(std::max(wealth[i], 2074.0), 181647.0);
    }

    const auto delatm = dummy_column(rng, kDmus, 0.3);
    const auto met = dummy_column(rng, kDmus, 0.5);
    const auto airp = dummy_column(rng, kDmus, 0.25);
    const auto jsc = dummy_column(rng, kDmus, 0.4);
    const auto state = dummy_column(rng, kDmus, 0.5);
    const auto ocean = dummy_column(rng, kDmus, 0.2);
    const auto nofab = dummy_column(rng, kDmus, 0.15);

    // Monthly movements with a DMU-specific seasonal amplitude; their Gini
    // lands roughly in the published 2.5%..25.5% band.
    std::vector<std::vector<double>> monthly(kDmus, std::vector<double>(12, 0.0));
    std::vector<double> gini_like(kDmus);
    for (std::size_t i = 0; i < kDmus; ++i) {
        const double base = uniform(rng, 8000.0, 90000.0);
        const double amp = uniform(rng, 0.05, 0.45);
        for (int m = 0; m < 12; ++m) {
            const double season = 1.0 + amp * std::sin((m + 1) * 3.14159265358979 / 6.0);
            monthly[i][m] = std::max(100.0, base * season * (1.0 + gauss(rng, 0.03)));
        }
        gini_like[i] = amp / 2.0;
    }

    // ATCO productivity with a planted signal on the transformed scale.
    std::vector<double> atco_hours(kDmus), flight_hours(kDmus), ops_costs(kDmus),
        movements(kDmus), prod(kDmus);
    for (std::size_t i = 0; i < kDmus; ++i) {
        atco_hours[i] = std::exp(uniform(rng, std::log(6.0e4), std::log(1.8e6)));
        prod[i] = 0.55 + 0.18 * (std::log(time_h[i]) - std::log(1400.0)) - 0.35 * nona[i] +
                  0.22 * airp[i] - 0.08 * state[i] + 0.05 * (std::log(size_km2[i]) - 12.0) +
                  0.30 * over[i] - 0.55 * dom[i] - 1.2 * gini_like[i] - 0.25 * si[i] +
                  0.0012 * costs[i] + gauss(rng, 0.06);
        prod[i] = std::max(prod[i], 0.08);
        flight_hours[i] = prod[i] * atco_hours[i];
        ops_costs[i] = atco_hours[i] * costs[i] * (1.0 + uniform(rng, 0.1, 0.6));
        movements[i] = flight_hours[i] * uniform(rng, 0.8, 1.6);
    }

    // Data file. GINI is intentionally absent: the pipeline derives it from
    // the monthly counts.
    VariableCatalog catalog = builtin_catalog();
    using C = VariableCategory;
    using S = ExpectedSign;
    catalog.add({"ATCO_HOURS", C::Exogenous, "h", false, false, S::Ambiguous});
    catalog.add({"FLIGHT_HOURS", C::Exogenous, "h", false, false, S::Ambiguous});
    catalog.add({"OPS_COSTS", C::Exogenous, "EUR", false, false, S::Ambiguous});
    catalog.add({"MOVEMENTS", C::Exogenous, "Nb", false, false, S::Ambiguous});

    Dataset ds;
    ds.set_dmu_ids(ids);
    ds.set_year(2016);
    ds.add_column("TIME", time_h);
    ds.add_column("NONA", nona);
    ds.add_column("DELATM", delatm);
    ds.add_column("MET", met);
    ds.add_column("AIRP", airp);
    ds.add_column("JSC", jsc);
    ds.add_column("STATE", state);
    ds.add_column("SIZE", size_km2);
    ds.add_column("OCEAN", ocean);
    ds.add_column("COORD", coord);
    ds.add_column("L_AIRP", l_airp);
    ds.add_column("NOFAB", nofab);
    ds.add_column("OVER", over);
    ds.add_column("DOM", dom);
    ds.add_column("DENS", dens);
    ds.add_column("VI", vi);
    ds.add_column("HI", hi);
    ds.add_column("SI", si);
    ds.add_column("COSTS", costs);
    ds.add_column("RES", res);
    ds.add_column("WEALTH", wealth);
    ds.add_column("ATCO_HOURS", atco_hours);
    ds.add_column("FLIGHT_HOURS", flight_hours);
    ds.add_column("OPS_COSTS", ops_costs);
    ds.add_column("MOVEMENTS", movements);

    const fs::path base(dir);
    write_csv(ds, (base / "ansp_2016.csv").string());
    save_catalog_json(catalog, (base / "catalog.json").string());

    {
        std::ofstream out(base / "monthly_counts.csv");
        if (!out) throw IoError("cannot write monthly_counts.csv");
        out << "dmu_id";
        for (int m = 1; m <= 12; ++m) out << ",M" << m;
        out << '\n';
        for (std::size_t i = 0; i < kDmus; ++i) {
            out << ids[i];
            for (int m = 0; m < 12; ++m) {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.17g", monthly[i][m]);
                out << ',' << buf;
            }
            out << '\n';
        }
    }

    const std::string config = R"({
  "data": "ansp_2016.csv",
  "catalog": "catalog.json",
  "monthly_counts": "monthly_counts.csv",
  "missing_policy": "drop_row",
  "productivity": {"numerator": "FLIGHT_HOURS", "denominator": "ATCO_HOURS", "name": "PROD"},
  "correlation": ["TIME", "NONA", "DELATM", "MET", "AIRP", "JSC", "STATE", "SIZE", "OCEAN",
                  "COORD", "L_AIRP", "NOFAB", "OVER", "DOM", "GINI", "DENS", "VI", "HI", "SI",
                  "COSTS", "RES", "WEALTH"],
  "dea_models": [
    {"name": "M1", "inputs": ["ATCO_HOURS", "OPS_COSTS"], "outputs": ["FLIGHT_HOURS"], "rts": "CRS", "orientation": "input"},
    {"name": "M2", "inputs": ["ATCO_HOURS"], "outputs": ["FLIGHT_HOURS", "MOVEMENTS"], "rts": "CRS", "orientation": "input"},
    {"name": "M2A", "inputs": ["ATCO_HOURS"], "outputs": ["FLIGHT_HOURS", "MOVEMENTS"], "rts": "CRS", "orientation": "input", "exclude": ["ANSP38"]}
  ],
  "regressions": [
    {"label": "OLS PROD", "dependent": "PROD", "method": "OLS",
     "regressors": ["TIME", "NONA", "DELATM", "MET", "AIRP", "JSC", "STATE", "SIZE", "OCEAN",
                    "COORD", "L_AIRP", "NOFAB", "OVER", "DOM", "GINI", "DENS", "VI", "HI", "SI",
                    "COSTS", "RES"],
     "backward_eliminate": true, "staged": true},
    {"label": "OLS M1", "dependent": "DEA_M1", "method": "OLS",
     "regressors": ["TIME", "NONA", "AIRP", "STATE", "SIZE", "OVER", "DOM", "GINI", "SI", "COSTS", "RES"],
     "backward_eliminate": true},
    {"label": "Tobit M1", "dependent": "DEA_M1", "method": "Tobit", "lower": 0.0, "upper": 1.0,
     "regressors": ["TIME", "NONA", "AIRP", "STATE", "SIZE", "OVER", "DOM", "GINI", "SI", "COSTS", "RES"],
     "backward_eliminate": true},
    {"label": "Truncated M1", "dependent": "DEA_M1", "method": "Truncated", "lower": 0.0,
     "regressors": ["TIME", "NONA", "AIRP", "STATE", "SIZE", "OVER", "DOM", "GINI", "SI", "COSTS", "RES"],
     "backward_eliminate": true},
    {"label": "OLS M2A", "dependent": "DEA_M2A", "method": "OLS",
     "regressors": ["TIME", "NONA", "AIRP", "STATE", "SIZE", "OVER", "DOM", "GINI", "SI", "COSTS", "RES"]}
  ],
  "comparisons": [
    {"label": "M1", "results": ["OLS M1", "Tobit M1", "Truncated M1"]}
  ],
  "selection": {
    "threshold": 0.33,
    "vif_threshold": 10,
    "dummies": ["OCEAN", "NOFAB"],
    "airspace": ["SIZE", "COORD", "L_AIRP"],
    "demand": ["OVER", "DOM", "GINI", "DENS", "VI", "HI", "SI"]
  },
  "output_dir": "out",
  "render": {"decimals": 3, "decimal_separator": "."},
  "seed": 42
}
)";
    const fs::path config_path = base / "config.json";
    {
        std::ofstream out(config_path);
        if (!out) throw IoError("cannot write demo config");
        out << config;
    }
    return config_path.string();
}

} // namespace frontier
