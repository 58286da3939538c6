#include "zel/report.hpp"

namespace zel::report {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Inconclusive: return "Inconclusive";
        case Verdict::HypothesisFailure: return "HypothesisFailure";
    }
    return "?";
}

nlohmann::ordered_json to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["object"] = r.object;
    nlohmann::ordered_json level;
    level["p"] = r.p;
    level["k"] = r.k;
    if (r.n) level["n"] = *r.n;
    j["level"] = level;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["verdict"] = to_string(r.verdict);
    if (!r.note.empty()) j["note"] = r.note;
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

std::string to_text(const CheckReport& r) {
    std::string s = "[";
    s += to_string(r.verdict);
    s += "] ";
    s += r.check;
    s += "  ";
    s += r.object;
    s += "  (p=" + std::to_string(r.p) + ", k=" + std::to_string(r.k);
    if (r.n) s += ", n=" + std::to_string(*r.n);
    s += ")";
    if (!r.note.empty()) s += "  " + r.note;
    return s;
}

nlohmann::ordered_json make_document(const std::string& command,
                                     const nlohmann::ordered_json& parameters,
                                     const std::vector<CheckReport>& reports) {
    nlohmann::ordered_json doc;
    doc["tool"] = "zel";
    doc["version"] = "1.0.0";
    doc["convention"] = kConventionTag;
    doc["command"] = command;
    doc["parameters"] = parameters;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    doc["reports"] = arr;
    return doc;
}

nlohmann::ordered_json make_document(const std::string& command,
                                     const nlohmann::ordered_json& parameters,
                                     const nlohmann::ordered_json& result) {
    nlohmann::ordered_json doc;
    doc["tool"] = "zel";
    doc["version"] = "1.0.0";
    doc["convention"] = kConventionTag;
    doc["command"] = command;
    doc["parameters"] = parameters;
    doc["result"] = result;
    return doc;
}

}  // namespace zel::report
