#ifndef DFLUX_REPORT_HPP
#define DFLUX_REPORT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dflux/errors.hpp"

namespace dflux {

/// Flat diagnostics container that serializes to CSV losslessly
/// (section,name,x,value; doubles in shortest round-trip form).
struct DiagnosticsReport {
    struct Curve {
        std::string name;
        std::vector<std::pair<double, double>> points;
        bool operator==(const Curve&) const = default;
    };

    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<Curve> curves;
    std::vector<std::pair<std::string, std::string>> statuses; // PASS / FAIL / SKIPPED

    bool operator==(const DiagnosticsReport&) const = default;

    void add_meta(std::string name, std::string value) {
        meta.emplace_back(std::move(name), std::move(value));
    }
    void add_scalar(std::string name, double value) {
        scalars.emplace_back(std::move(name), value);
    }
    void add_status(std::string name, bool pass) {
        statuses.emplace_back(std::move(name), pass ? "PASS" : "FAIL");
    }
    void add_skipped(std::string name) { statuses.emplace_back(std::move(name), "SKIPPED"); }
    Curve& add_curve(std::string name) {
        curves.push_back({std::move(name), {}});
        return curves.back();
    }

    double scalar(const std::string& name) const;
    bool has_failures() const;

    void write_csv(std::ostream& out) const;
    static DiagnosticsReport read_csv(std::istream& in);

    void save(const std::string& path) const;
    static DiagnosticsReport load(const std::string& path);
};

} // namespace dflux

#endif
