#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <domcone/json_io.hpp>

namespace domcone::cli {

enum class Command { eval, aperture, acdo, check_inclusion, fundsol, sobolev, example, verify, suite, report };
enum class Format { json, csv };

std::string to_string(Command c);

struct Tolerances {
    double eigen = kEigenRelTol;
    double loewner = kLoewnerTol;
    double root = 1e-10;
    double property = 1e-8;
};

struct RunConfig {
    Command command = Command::suite;
    std::uint64_t seed = 0;
    Tolerances tol;
    std::string out;
    Format format = Format::json;

    std::string op;
    std::string body;
    std::string X;
    std::string B;
    std::string p;
    std::optional<double> q;
    std::optional<std::size_t> n;
    std::vector<double> eps;
    std::vector<double> radii;
    std::optional<std::size_t> count;
    std::vector<double> at;
    std::string q_sweep;
    std::optional<double> c;
    std::vector<int> groups;
    bool all = false;
    bool no_enforce_aperture = false;
    bool convex = false;
};

json config_to_json(const RunConfig& cfg);

/// Exit status and rendered report. 0: success; 2: a checked property was
/// violated (report still produced); 1: bad input or machinery failure.
struct RunOutcome {
    int exit_code = 0;
    std::string artifact;
};

RunOutcome run(const RunConfig& cfg);

/// JSON: pretty-printed, newline-terminated. CSV reports are rendered by the
/// commands that support them.
std::string emit_report(const json& report);

/// Full command-line entry: parse, run, write to --out or `out`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace domcone::cli
