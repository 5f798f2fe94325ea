#include "uqcs/cli/output.hpp"

#include <fmt/format.h>

namespace uqcs::cli {

std::string fmt_num(double x) { return fmt::format("{:.12g}", x); }

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "omega,re,im\n";
  for (std::size_t i = 0; i < s.omega.size(); ++i) {
    out += fmt::format("{:.12g},{:.12g},{:.12g}\n", s.omega[i], s.amplitude[i].real(), s.amplitude[i].imag());
  }
  return out;
}

std::string series_csv(const AutocorrSeries& s) {
  std::string out = "t,re,im\n";
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out += fmt::format("{:.12g},{:.12g},{:.12g}\n", s.t[i], s.c[i].real(), s.c[i].imag());
  }
  return out;
}

std::string samples_csv(const SampleGrid& g) {
  std::string out = "eta,t,observable,re,im\n";
  for (const auto& s : g.flatten()) {
    out += fmt::format("{:.12g},{:.12g},{},{:.12g},{:.12g}\n", s.eta, s.t, s.observable, s.value.real(), s.value.imag());
  }
  return out;
}

std::string quasi_energy_csv(const std::vector<QuasiEnergy>& q) {
  std::string out = "energy,band,level,weight_hint\n";
  for (const auto& e : q) out += fmt::format("{:.12g},{},{},{:.12g}\n", e.energy, e.band, e.level, e.weight_hint);
  return out;
}

nlohmann::json peaks_json(const std::vector<Peak>& peaks) {
  auto arr = nlohmann::json::array();
  for (const auto& p : peaks) {
    arr.push_back({{"energy", p.center}, {"amplitude", p.amplitude}, {"width", p.width}, {"uncertainty", p.uncertainty}});
  }
  return arr;
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json matrix_json(const ComplexMatrix& m) {
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto rr = nlohmann::json::array();
    auto ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"re", re}, {"im", im}};
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace uqcs::cli
