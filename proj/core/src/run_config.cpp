#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tiltzeta/report.hpp"

namespace tiltzeta {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
        throw UsageError("invalid value for " + key + ": '" + value + "'");
    }
    return d;
}

int parse_int(const std::string& key, const std::string& value) {
    const double d = parse_real(key, value);
    if (d != std::floor(d) || std::abs(d) > 1e9) throw UsageError("invalid integer for " + key + ": '" + value + "'");
    return static_cast<int>(d);
}

bool is_quadrature_command(Command c) {
    return c == Command::clt || c == Command::moments || c == Command::bchb;
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::clt: return "clt";
        case Command::moments: return "moments";
        case Command::predict: return "predict";
        case Command::gonek: return "gonek";
        case Command::verify: return "verify";
        case Command::bchb: return "bchb";
    }
    return "clt";
}

Command parse_command(const std::string& name) {
    for (Command c : {Command::clt, Command::moments, Command::predict, Command::gonek, Command::verify,
                      Command::bchb}) {
        if (name == to_string(c)) return c;
    }
    throw UsageError("unknown command '" + name + "'");
}

std::string default_output_dir() {
    const char* env = std::getenv(kOutputDirEnv);
    return env != nullptr && *env != '\0' ? std::string(env) : std::string("tiltzeta_out");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": expected key = value";
            throw UsageError(msg.str());
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "command") {
        config.command = parse_command(trim(value));
    } else if (key == "T") {
        config.T = parse_real(key, value);
    } else if (key == "x") {
        config.x = parse_real(key, value);
    } else if (key == "kmax" || key == "k_max") {
        config.k_max = parse_int(key, value);
    } else if (key == "alpha") {
        config.alpha = parse_real(key, value);
    } else if (key == "oversample") {
        config.oversample = parse_real(key, value);
    } else if (key == "workers") {
        config.workers = parse_int(key, value);
    } else if (key == "out" || key == "output_dir") {
        config.output_dir = trim(value);
    } else if (key == "precision") {
        const std::string v = trim(value);
        if (v == "double" || v == "standard") {
            config.precision = Precision::standard;
        } else if (v == "extended") {
            config.precision = Precision::extended;
        } else {
            throw UsageError("precision must be 'double' or 'extended'");
        }
    } else if (key == "rule") {
        try {
            config.rule = parse_quadrature_rule(trim(value).c_str());
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    } else {
        throw UsageError("unknown setting '" + key + "'");
    }
}

void RunConfig::validate() const {
    if (output_dir.empty()) throw UsageError("output directory is empty");
    if (workers < 1 || workers > 1024) throw UsageError("workers must be in [1, 1024]");
    if (is_quadrature_command(command)) {
        if (!(T >= 100.0)) throw UsageError("T must be >= 100 for quadrature commands");
        if (!(oversample >= 4.0)) throw UsageError("oversample must be >= 4");
        if (k_max < 2 || k_max > 8) throw UsageError("kmax must be in [2, 8]");
    }
    if (command == Command::moments && x) {
        if (!(*x >= 2.0) || *x > T) throw UsageError("x must satisfy 2 <= x <= T for moments");
    }
    if (command == Command::predict) {
        if (!(T > 16.0)) throw UsageError("T must exceed 16 for predict");
        if (k_max < 0 || k_max > 6) throw UsageError("kmax must be in [0, 6] for predict");
        if (x && !(*x >= 2.0 && *x <= 1e7)) throw UsageError("x must be in [2, 1e7] for predict");
    }
    if (command == Command::gonek) {
        if (!(T >= 20.0 && T <= 1e7)) throw UsageError("T must be in [20, 1e7] for gonek");
        if (alpha && !(std::abs(*alpha) <= std::log(T) / (2.0 * 3.141592653589793))) {
            throw UsageError("|alpha| must not exceed log T / 2pi");
        }
    }
}

}  // namespace tiltzeta
