#pragma once

#include <array>
#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>

#include "rftdist/labkit.hpp"
#include "rftdist/metric.hpp"
#include "rftdist/phylo.hpp"
#include "rftdist/transform.hpp"

// Text formats. Every real number is printed with 12 significant digits.
namespace rftdist::io {

std::string format_number(double value);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// Plot view: drops q = 1 for RFT, keeps k in [1, floor(N/2)] for DFT.
struct SpectrumView {
  bool plot = false;
};

// index,value
std::string power_spectrum_csv(const transform::PowerSpectrum& ps, SpectrumView view = {});
// {"kind", "N", "includes_first_term", "first_index", "values", ...}
nlohmann::json power_spectrum_json(const transform::PowerSpectrum& ps, SpectrumView view = {});

// index,value_A,value_T,value_C,value_G. RFT: signed coefficients; DFT:
// magnitudes |U(k)|.
std::string spectra_csv(const std::array<transform::Spectrum, 4>& spectra);
nlohmann::json spectra_json(const std::array<transform::Spectrum, 4>& spectra);

// Square CSV; first row and first column hold the labels.
std::string distance_matrix_csv(const metric::DistanceMatrix& matrix);
// Square PHYLIP: count line, then "label  d1 d2 ..." per row. Labels shorter
// than ten characters are padded to ten.
std::string distance_matrix_phylip(const metric::DistanceMatrix& matrix);
// Accepts either format above (PHYLIP if the first token is an integer).
metric::DistanceMatrix parse_distance_matrix(std::string_view text,
                                             metric::Method method = metric::Method::rft);

// Node heights and children for plotting, plus the Newick string.
nlohmann::json dendrogram_json(const phylo::PhyloTree& tree);

nlohmann::json report_json(const labkit::ExperimentReport& report);
std::string report_csv(const labkit::ExperimentReport& report);

nlohmann::json timing_json(const labkit::TimingReport& report);

}  // namespace rftdist::io
