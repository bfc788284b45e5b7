#include "dflux/report.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "dflux/csv.hpp"

namespace dflux {

double DiagnosticsReport::scalar(const std::string& name) const {
    for (const auto& [key, value] : scalars) {
        if (key == name) return value;
    }
    throw Error("report has no scalar '" + name + "'");
}

bool DiagnosticsReport::has_failures() const {
    for (const auto& [name, status] : statuses) {
        if (status == "FAIL") return true;
    }
    return false;
}

void DiagnosticsReport::write_csv(std::ostream& out) const {
    out << "section,name,x,value\n";
    for (const auto& [name, value] : meta) {
        out << "meta," << name << ",," << value << "\n";
    }
    for (const auto& [name, value] : scalars) {
        out << "scalar," << name << ",," << format_double(value) << "\n";
    }
    for (const auto& curve : curves) {
        for (const auto& [x, value] : curve.points) {
            out << "curve," << curve.name << "," << format_double(x) << ","
                << format_double(value) << "\n";
        }
    }
    for (const auto& [name, status] : statuses) {
        out << "status," << name << ",," << status << "\n";
    }
}

DiagnosticsReport DiagnosticsReport::read_csv(std::istream& in) {
    DiagnosticsReport report;
    std::string line;
    if (!std::getline(in, line) || line != "section,name,x,value") {
        throw Error("diagnostics CSV header mismatch");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 4> field;
        std::size_t start = 0;
        for (int i = 0; i < 3; ++i) {
            const auto comma = line.find(',', start);
            if (comma == std::string::npos) throw Error("diagnostics CSV row malformed");
            field[static_cast<std::size_t>(i)] = line.substr(start, comma - start);
            start = comma + 1;
        }
        field[3] = line.substr(start);
        if (field[0] == "meta") {
            report.add_meta(field[1], field[3]);
        } else if (field[0] == "scalar") {
            report.add_scalar(field[1], parse_double(field[3]));
        } else if (field[0] == "curve") {
            if (report.curves.empty() || report.curves.back().name != field[1]) {
                report.add_curve(field[1]);
            }
            report.curves.back().points.emplace_back(parse_double(field[2]),
                                                     parse_double(field[3]));
        } else if (field[0] == "status") {
            report.statuses.emplace_back(field[1], field[3]);
        } else {
            throw Error("diagnostics CSV unknown section '" + field[0] + "'");
        }
    }
    return report;
}

void DiagnosticsReport::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write report to '" + path + "'");
    write_csv(out);
}

DiagnosticsReport DiagnosticsReport::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read report from '" + path + "'");
    return read_csv(in);
}

} // namespace dflux
