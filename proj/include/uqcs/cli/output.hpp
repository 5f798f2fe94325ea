#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "uqcs/floquet.hpp"
#include "uqcs/measurement.hpp"
#include "uqcs/spectroscopy.hpp"

namespace uqcs::cli {

// 12 significant digits, as used in every CSV.
std::string fmt_num(double x);

// omega,re,im
std::string spectrum_csv(const Spectrum& s);
// t,re,im
std::string series_csv(const AutocorrSeries& s);
// eta,t,observable,re,im
std::string samples_csv(const SampleGrid& g);
// energy,band,level,weight_hint
std::string quasi_energy_csv(const std::vector<QuasiEnergy>& q);

// [{energy, amplitude, width, uncertainty}, ...]
nlohmann::json peaks_json(const std::vector<Peak>& peaks);
nlohmann::json complex_json(Complex z);
nlohmann::json matrix_json(const ComplexMatrix& m);

// Pretty-printed with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace uqcs::cli
