#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "alloymsa/density.hpp"
#include "alloymsa/genfun.hpp"
#include "alloymsa/lattice.hpp"
#include "alloymsa/msa.hpp"
#include "alloymsa/potential.hpp"

namespace alloymsa {

using Json = nlohmann::json;

// {"d", "values": [[[k...], v], ...], "C", "alpha"} plus optional
// "exact_support", "truncation_residual", "truncation_radius"
Json potential_to_json(const SingleSitePotential& u);
SingleSitePotential potential_from_json(const Json& j);

// {"pieces": [{"interval": [a, b], "coeffs": [...]}, ...]}
Json density_to_json(const DisorderModel& model);
DisorderModel density_from_json(const Json& j);

Json leading_to_json(const LeadingIndexData& lead);
Json schedule_to_json(const ScaleSchedule& s, double l_star);

LatticePoint point_from_json(const Json& j, int d);
Json point_to_json(const LatticePoint& x);

// %.17g, with inf and nan spelled out
std::string format_number(double x);

// rows are flushed in order; the file is written only by close()
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);
    std::string str() const { return text_; }
    void write(const std::filesystem::path& path) const;

private:
    std::size_t columns_;
    std::string text_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void write_spectrum_csv(const std::filesystem::path& path, const std::vector<double>& eigenvalues);

}  // namespace alloymsa
