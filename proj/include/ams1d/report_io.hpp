#ifndef AMS1D_REPORT_IO_HPP
#define AMS1D_REPORT_IO_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "ams1d/error_norms.hpp"

namespace ams1d {

namespace detail {

/// Three significant digits in scientific notation, the table style.
inline std::string sci3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2E", v);
    return buf;
}

inline std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

template <class Scalar>
std::string reportToCsv(const ConvergenceReport<Scalar>& report) {
    std::string out = "N_H,e_energy,order_energy,e_L2,order_L2\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.macroIntervals);
        out += ',' + detail::sci3(static_cast<double>(row.energyError));
        out += ',';
        if (row.energyOrder)
            out += detail::fixed2(static_cast<double>(*row.energyOrder));
        out += ',' + detail::sci3(static_cast<double>(row.l2ErrorValue));
        out += ',';
        if (row.l2Order)
            out += detail::fixed2(static_cast<double>(*row.l2Order));
        out += '\n';
    }
    return out;
}

template <class Scalar>
nlohmann::ordered_json reportToJson(const ConvergenceReport<Scalar>& report,
                                    const std::string& timestamp = "") {
    nlohmann::ordered_json meta;
    meta["problem"] = report.problem;
    meta["N_h"] = report.microIntervals;
    meta["seed"] = report.seed;
    meta["mesh"] = report.meshKind;
    if (!timestamp.empty())
        meta["generated_at"] = timestamp;

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["N_H"] = row.macroIntervals;
        r["e_energy"] = row.energyError;
        r["order_energy"] = row.energyOrder ? nlohmann::ordered_json(*row.energyOrder)
                                            : nlohmann::ordered_json(nullptr);
        r["e_L2"] = row.l2ErrorValue;
        r["order_L2"] =
            row.l2Order ? nlohmann::ordered_json(*row.l2Order) : nlohmann::ordered_json(nullptr);
        rows.push_back(r);
    }

    nlohmann::ordered_json j;
    j["meta"] = meta;
    j["rows"] = rows;
    return j;
}

} // namespace ams1d

#endif
