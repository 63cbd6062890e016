#ifndef EDSLAB_REPORT_HPP
#define EDSLAB_REPORT_HPP
//
// Analysis reports produced by the command-line drivers: a fixed JSON
// schema (stable keys, integers kept integral) and a plain-text rendering
// of the same data. Identical inputs and seeds serialize byte-identically.
//

#include "edslab/eds.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eds {

struct CheckResult {
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string note; // empty notes are omitted from the JSON
};

struct Report {
    std::string system;
    std::optional<int> n;
    std::uint64_t seed = 0;
    Vec point;
    bool has_cartan = false;
    std::vector<int> c;
    int sum_c = 0;
    int codim = 0;
    bool involutive = false;
    std::vector<int> characters;
    int k0 = 0;
    std::string generality;
    std::map<std::string, CheckResult> checks;
    std::vector<std::string> diagnostics;

    bool all_checks_pass() const;
    void add_cartan(const CartanReport& rep);
};

std::string report_to_json(const Report& r);
std::string report_to_text(const Report& r);

} // namespace eds

#endif
