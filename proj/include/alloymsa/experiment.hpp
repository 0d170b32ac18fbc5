#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "alloymsa/io.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/spectral.hpp"

namespace alloymsa {

enum class ExperimentKind {
    genfun,
    wegner,
    resonance,
    msa_schedule,
    msa_singularity,
    lifshitz,
    large_disorder,
    localization_decay,
};

const char* to_string(ExperimentKind k);
ExperimentKind kind_from_string(const std::string& s);  // schema error if unknown

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::genfun;
    int d = 1;
    Json potential;
    Json density;
    Json params = Json::object();
    std::uint64_t seed = 1;
    std::size_t trials = 2000;
    std::string output = "out";
};

// validates the schema; model parts are parsed once here so bad input fails early
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
// the hashed form leaves out the output path
Json config_to_json(const ExperimentConfig& cfg, bool with_output = true);

std::uint64_t fnv1a64(std::string_view bytes);
std::string config_hash(const ExperimentConfig& cfg);

const std::map<std::string, std::string>& module_versions();

struct ReportBundle {
    ExperimentKind kind = ExperimentKind::genfun;
    std::string csv;
    Json summary;
    std::map<std::string, bool> contracts;
    bool pass = true;
    std::vector<std::string> plot_header;
    std::vector<std::vector<double>> plot_rows;
};

ReportBundle run_experiment(const ExperimentConfig& cfg, Execution ex = default_execution());
// <kind>.csv, <kind>_summary.json and, where defined, <kind>_plot.dat
void write_report(const ReportBundle& report, const std::filesystem::path& dir);

// whitespace separated columns with a commented header
std::string emit_plotdata(const ReportBundle& report, ExperimentKind kind);

// lowest eigenvectors of Dirichlet-truncated boxes and their fitted decay
struct DecayStudy {
    std::size_t trials = 0, vectors = 0;
    double rate_max = 0, r2_min = 0;
    std::vector<double> rates, r2;  // [trial * vectors + j], nan if the fit failed
    std::vector<char> trial_pass;
    std::size_t fit_failures = 0;
    double pass_fraction = 0;
    DecayFit example;  // trial 0, lowest vector
};

DecayStudy localization_decay_study(const SingleSitePotential& u, const DisorderModel& model,
                                    double l, std::size_t vectors, std::size_t trials,
                                    std::uint64_t seed, double rate_max, double r2_min,
                                    Execution ex = default_execution());

}  // namespace alloymsa
