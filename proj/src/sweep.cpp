#include "demonlab/sweep.hpp"

#include <cmath>
#include <sstream>

#include "demonlab/diagnostics.hpp"
#include "demonlab/montecarlo.hpp"
#include "demonlab/rng.hpp"

namespace demonlab {

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::MonteCarlo: return "montecarlo";
    case Engine::Both: return "both";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "analytic") return Engine::Analytic;
  if (text == "montecarlo") return Engine::MonteCarlo;
  if (text == "both") return Engine::Both;
  throw DomainError("unknown engine: " + std::string(text));
}

PowerParams Series::power_params() const {
  PowerParams p;
  p.nbar = spec.nbar;
  p.eps2 = eps2;
  if (spec.v2) p.v2 = *spec.v2;
  return p;
}

void SweepConfig::validate() const {
  if (series.empty()) throw DomainError("sweep needs at least one series");
  if (r2_grid.empty()) throw DomainError("empty reflectivity grid");
  for (double r2 : r2_grid)
    if (!(r2 >= 0.0 && r2 <= 1.0)) throw DomainError("reflectivity grid must lie within [0, 1]");
  for (const auto& s : series) s.spec.validate();
  if (engine != Engine::Analytic && slots == 0) throw DomainError("Monte Carlo sweeps need slots >= 1");
}

std::vector<double> default_r2_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(0.025 * i);
  return g;
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  SweepResult out;
  for (std::size_t si = 0; si < config.series.size(); ++si) {
    const auto& s = config.series[si];
    const auto params = s.power_params();
    for (std::size_t gi = 0; gi < config.r2_grid.size(); ++gi) {
      const double r2 = config.r2_grid[gi];
      const auto r = ReflectionAmplitude::from_reflectivity(r2);
      ReportRow row{std::string(to_string(s.spec.kind)), std::string(to_string(s.norm)), r2, {}, {}, {}, {}};
      auto record_failure = [&](const char* what, const std::exception& e) {
        std::ostringstream os;
        os << row.source << "/" << row.normalization << " r2=" << r2 << " " << what << ": " << e.what();
        out.failures.push_back(os.str());
      };
      if (config.engine != Engine::MonteCarlo) {
        try {
          row.analytic = closed_form_power(s.spec.kind, s.norm, params, r);
        } catch (const std::exception& e) {
          record_failure("analytic", e);
        }
      }
      if (config.engine != Engine::Analytic) {
        try {
          RunConfig rc;
          rc.spec = s.spec;
          rc.r = r;
          // Thermal nbar is the value at the detectors, so the event stream
          // applies no further loss to it.
          rc.eps2 = is_thermal(s.spec.kind) ? CouplingEfficiency(1.0) : s.eps2;
          rc.slots = config.slots;
          rc.seed = derive_seed(config.seed, 1000 + si, gi);
          rc.threads = config.threads;
          const auto m = measure_power(rc, s.norm);
          row.mc = m.value;
          row.mc_stderr = m.std_error;
        } catch (const std::exception& e) {
          record_failure("montecarlo", e);
        }
      }
      if (config.mutual_info) {
        try {
          InfoOptions opt;
          opt.target = config.info_target;
          row.mutual_info_bits = mutual_information(s.spec, r, s.eps2, opt).mutual_info;
        } catch (const std::exception& e) {
          record_failure("mutual information", e);
        }
      }
      if (config.engine == Engine::Both && row.analytic && row.mc && row.mc_stderr) {
        if (std::abs(*row.mc - *row.analytic) > 3.0 * *row.mc_stderr) out.disagreements.push_back(out.rows.size());
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace demonlab
