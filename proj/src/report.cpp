#include "edslab/report.hpp"

#include <json.hpp>

#include <sstream>

namespace eds {

bool Report::all_checks_pass() const {
    for (const auto& [name, check] : checks)
        if (!check.pass) return false;
    return true;
}

void Report::add_cartan(const CartanReport& rep) {
    has_cartan = true;
    c = rep.c;
    sum_c = rep.sum_c;
    codim = rep.codim;
    involutive = rep.involutive;
    characters = rep.characters;
    k0 = rep.k0;
    generality = rep.generality;
    for (const auto& w : rep.diag.warnings) diagnostics.push_back(w);
}

std::string report_to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["system"] = r.system;
    if (r.n)
        j["n"] = *r.n;
    else
        j["n"] = nullptr;
    j["seed"] = r.seed;
    j["point"] = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < r.point.size(); ++i) j["point"].push_back(r.point(i));
    if (r.has_cartan) {
        j["c"] = r.c;
        j["sum_c"] = r.sum_c;
        j["codim"] = r.codim;
        j["involutive"] = r.involutive;
        j["characters"] = r.characters;
        j["k0"] = r.k0;
        j["generality"] = r.generality;
    } else {
        j["c"] = nullptr;
        j["sum_c"] = nullptr;
        j["codim"] = nullptr;
        j["involutive"] = nullptr;
        j["characters"] = nullptr;
        j["k0"] = nullptr;
        j["generality"] = nullptr;
    }
    j["checks"] = nlohmann::ordered_json::object();
    for (const auto& [name, check] : r.checks) {
        nlohmann::ordered_json jc;
        jc["pass"] = check.pass;
        jc["value"] = check.value;
        jc["tolerance"] = check.tolerance;
        if (!check.note.empty()) jc["note"] = check.note;
        j["checks"][name] = jc;
    }
    j["diagnostics"] = r.diagnostics;
    return j.dump(2) + "\n";
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "system: " << r.system;
    if (r.n) os << " (n = " << *r.n << ")";
    os << "\nseed: " << r.seed << "\n";
    if (r.has_cartan) {
        os << "polar codimensions c = [";
        for (size_t i = 0; i < r.c.size(); ++i) os << (i ? ", " : "") << r.c[i];
        os << "], sum = " << r.sum_c << "\n";
        os << "codim of the integral-element variety: " << r.codim << "\n";
        os << "involutive: " << (r.involutive ? "yes" : "no") << "\n";
        os << "characters s = [";
        for (size_t i = 0; i < r.characters.size(); ++i)
            os << (i ? ", " : "") << r.characters[i];
        os << "], k0 = " << r.k0 << "\n";
        os << "generality: " << r.generality << "\n";
    }
    for (const auto& [name, check] : r.checks) {
        os << "check " << name << ": " << (check.pass ? "pass" : "FAIL")
           << " (value " << check.value << ", tolerance " << check.tolerance << ")";
        if (!check.note.empty()) os << " - " << check.note;
        os << "\n";
    }
    for (const auto& d : r.diagnostics) os << "note: " << d << "\n";
    return os.str();
}

} // namespace eds
