#include "absim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>

namespace absim {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string &s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_real(const std::string &text, const std::string &key) {
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw ConfigError(key, "expected a finite real number, got '" + text + "'");
    }
    return v;
}

long parse_long(const std::string &text, const std::string &key) {
    char *end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
    return v;
}

uint64_t parse_u64(const std::string &text, const std::string &key) {
    char *end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || text.find('-') != std::string::npos) {
        throw ConfigError(key, "expected an unsigned integer, got '" + text + "'");
    }
    return static_cast<uint64_t>(v);
}

}  // namespace

std::string scenario_name(Scenario s) {
    switch (s) {
        case Scenario::DoubleWell:
            return "double_well";
        case Scenario::SingleMzi:
            return "single_mzi";
        case Scenario::DoubleMzi:
            return "double_mzi";
        case Scenario::KickedQubit:
            return "kicked_qubit";
        case Scenario::LatticeCheck:
            return "lattice_check";
    }
    return "?";
}

double parse_angle(const std::string &raw) {
    std::string text = trim(raw);
    double sign = 1.0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') {
            sign = -1.0;
        }
        text = text.substr(1);
    }
    if (text == "pi") {
        return sign * kPi;
    }
    if (text.size() > 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        const std::string head = text.substr(0, text.size() - 2);
        char *end = nullptr;
        const double m = std::strtod(head.c_str(), &end);
        if (end != head.c_str() && *end == '\0' && std::isfinite(m)) {
            return sign * m * kPi;
        }
    }
    if (text.size() > 3 && text.compare(0, 3, "pi/") == 0) {
        const std::string tail = text.substr(3);
        char *end = nullptr;
        const double q = std::strtod(tail.c_str(), &end);
        if (end != tail.c_str() && *end == '\0' && std::isfinite(q) && q != 0.0) {
            return sign * kPi / q;
        }
    }
    char *end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw Error("not an angle: '" + raw + "'");
    }
    return sign * v;
}

ScenarioConfig parse_config(const std::string &text) {
    ScenarioConfig cfg;
    bool scenario_seen = false;
    std::set<std::string> seen;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no, 1);
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("empty key", line_no, 1);
        }
        if (value.empty()) {
            throw ParseError("empty value for key '" + key + "'", line_no, static_cast<int>(eq) + 2);
        }
        if (!seen.insert(key).second) {
            throw ConfigError(key, "duplicate key");
        }

        if (key == "scenario") {
            scenario_seen = true;
            if (value == "double_well") {
                cfg.scenario = Scenario::DoubleWell;
            } else if (value == "single_mzi") {
                cfg.scenario = Scenario::SingleMzi;
            } else if (value == "double_mzi") {
                cfg.scenario = Scenario::DoubleMzi;
            } else if (value == "kicked_qubit") {
                cfg.scenario = Scenario::KickedQubit;
            } else if (value == "lattice_check") {
                cfg.scenario = Scenario::LatticeCheck;
            } else {
                throw ConfigError("scenario", "unknown scenario '" + value + "'");
            }
        } else if (key == "g0") {
            cfg.g0 = parse_real(value, key);
        } else if (key == "delta") {
            cfg.delta = parse_real(value, key);
        } else if (key == "flux") {
            try {
                cfg.flux = parse_angle(value);
            } catch (const Error &) {
                throw ConfigError("flux", "expected radians or a pi form, got '" + value + "'");
            }
        } else if (key == "v0") {
            try {
                cfg.v0 = parse_angle(value);
            } catch (const Error &) {
                throw ConfigError("v0", "expected radians or a pi form, got '" + value + "'");
            }
        } else if (key == "trials") {
            cfg.trials = parse_long(value, key);
        } else if (key == "repetitions_per_trial") {
            cfg.repetitions_per_trial = parse_long(value, key);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, key);
        } else if (key == "postselect") {
            cfg.postselect = value;
        } else if (key == "cut") {
            cfg.cut = value;
        } else if (key == "outputs") {
            cfg.outputs.clear();
            size_t p = 0;
            while (p < value.size()) {
                size_t c = value.find(',', p);
                if (c == std::string::npos) {
                    c = value.size();
                }
                const std::string item = trim(value.substr(p, c - p));
                if (!item.empty()) {
                    cfg.outputs.push_back(item);
                }
                p = c + 1;
            }
        } else {
            throw ConfigError(key, "unknown key (line " + std::to_string(line_no) + ")");
        }
    }

    if (!scenario_seen) {
        throw ConfigError("scenario", "missing required key");
    }
    validate_config(cfg);
    return cfg;
}

void validate_config(ScenarioConfig &cfg) {
    if (cfg.trials < 1) {
        throw ConfigError("trials", "must be >= 1");
    }
    if (cfg.repetitions_per_trial < 0) {
        throw ConfigError("repetitions_per_trial", "must be >= 0");
    }
    if (!(cfg.delta > 0.0)) {
        throw ConfigError("delta", "must be positive");
    }
    if (!std::isfinite(cfg.g0)) {
        throw ConfigError("g0", "must be finite");
    }

    // Scenario-dependent defaults and label checks.
    switch (cfg.scenario) {
        case Scenario::DoubleWell: {
            if (cfg.postselect.empty()) {
                cfg.postselect = "R";
            }
            if (cfg.postselect != "L" && cfg.postselect != "R" && cfg.postselect != "x+" &&
                cfg.postselect != "x-") {
                throw ConfigError("postselect", "double_well accepts L, R, x+ or x-");
            }
            if (cfg.cut.empty()) {
                cfg.cut = "well";
            }
            if (cfg.cut != "well") {
                throw ConfigError("cut", "double_well has the single cut 'well'");
            }
            break;
        }
        case Scenario::SingleMzi:
        case Scenario::DoubleMzi: {
            if (cfg.postselect.empty()) {
                cfg.postselect = "R";
            }
            if (cfg.postselect != "L" && cfg.postselect != "R") {
                throw ConfigError("postselect", "interferometer ports are L and R");
            }
            if (cfg.cut.empty()) {
                cfg.cut = "mid1";
            }
            if (cfg.scenario == Scenario::SingleMzi && cfg.cut != "mid1") {
                throw ConfigError("cut", "single_mzi has the single cut 'mid1'");
            }
            if (cfg.scenario == Scenario::DoubleMzi && cfg.cut != "mid1" && cfg.cut != "mid2") {
                throw ConfigError("cut", "double_mzi cuts are 'mid1' and 'mid2'");
            }
            break;
        }
        case Scenario::KickedQubit:
        case Scenario::LatticeCheck:
            // postselect/cut unused
            break;
    }

    for (const auto &o : cfg.outputs) {
        if (std::find(kReportSections.begin(), kReportSections.end(), o) == kReportSections.end()) {
            throw ConfigError("outputs", "unknown section '" + o + "'");
        }
    }
}

}  // namespace absim
