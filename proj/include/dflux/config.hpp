#ifndef DFLUX_CONFIG_HPP
#define DFLUX_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "dflux/errors.hpp"
#include "dflux/problem.hpp"

namespace dflux {

/// Sectioned key-value text:
///   [section]
///   key = value        # comment
/// Keys are addressed as "section.key". See README for the problem schema.
class ConfigFile {
public:
    static ConfigFile parse_string(const std::string& text);
    static ConfigFile parse_file(const std::string& path);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    long get_long_or(const std::string& key, long fallback) const;
    /// Comma-separated list of numbers.
    std::vector<double> get_list(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

/// Build a ProblemSpec from the [flux]/[entropy]/[coefficient]/[init]/
/// [bounds]/[nonlinearity] sections.
ProblemSpec problem_from_config(const ConfigFile& config);

/// Split a comma-separated list of numbers.
std::vector<double> parse_number_list(const std::string& text);

} // namespace dflux

#endif
