#include "demonlab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "demonlab/diagnostics.hpp"

namespace demonlab {
namespace {

void require_unit_interval(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    std::ostringstream os;
    os << what << " must lie in [0, 1], got " << x;
    throw DomainError(os.str());
  }
}

int total_photons(const Occupation& t) { return std::accumulate(t.begin(), t.end(), 0); }

}  // namespace

MeanPhotonNumber::MeanPhotonNumber(double nbar) : nbar_(nbar) {
  if (!std::isfinite(nbar) || nbar < 0.0) {
    std::ostringstream os;
    os << "mean photon number must be finite and non-negative, got " << nbar;
    throw DomainError(os.str());
  }
}

ReflectionAmplitude::ReflectionAmplitude(double r) : r_(r), r2_(r * r) {
  require_unit_interval(r, "reflection amplitude");
}

ReflectionAmplitude ReflectionAmplitude::from_reflectivity(double r2) {
  require_unit_interval(r2, "reflectivity");
  ReflectionAmplitude a(std::sqrt(r2));
  a.r2_ = r2;
  return a;
}

CouplingEfficiency::CouplingEfficiency(double eps2) : eps2_(eps2) {
  require_unit_interval(eps2, "coupling efficiency");
}

Visibility::Visibility(double v2) : v2_(v2) { require_unit_interval(v2, "visibility"); }

SqueezingParameter::SqueezingParameter(double s) : s_(s) {
  if (!std::isfinite(s) || s < 0.0) {
    std::ostringstream os;
    os << "squeezing parameter must be finite and non-negative, got " << s;
    throw DomainError(os.str());
  }
}

SqueezingParameter SqueezingParameter::from_mean_photon_number(MeanPhotonNumber nbar) {
  return SqueezingParameter(std::asinh(std::sqrt(nbar.value())));
}

MeanPhotonNumber SqueezingParameter::mean_photon_number() const {
  const double sh = std::sinh(s_);
  return MeanPhotonNumber(sh * sh);
}

JointOccupationDistribution::JointOccupationDistribution(std::vector<std::string> mode_labels,
                                                         int cutoff)
    : modes_(std::move(mode_labels)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw DomainError("cutoff must be non-negative");
  if (modes_.empty()) throw DomainError("distribution needs at least one mode");
  auto sorted = modes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("duplicate mode label");
}

JointOccupationDistribution JointOccupationDistribution::vacuum(std::vector<std::string> labels,
                                                                int cutoff) {
  JointOccupationDistribution d(std::move(labels), cutoff);
  d.accumulate(Occupation(d.mode_count(), 0), 1.0);
  return d;
}

void JointOccupationDistribution::accumulate(const Occupation& tuple, double probability) {
  if (tuple.size() != modes_.size()) throw DomainError("occupation tuple has wrong length");
  if (!(probability >= 0.0)) throw DomainError("probability must be non-negative");
  for (int n : tuple)
    if (n < 0) throw DomainError("occupation numbers must be non-negative");
  if (probability == 0.0) return;
  if (total_photons(tuple) > cutoff_) {
    lost_mass_ += probability;
    return;
  }
  entries_[tuple] += probability;
}

void JointOccupationDistribution::add_lost_mass(double probability) {
  if (!(probability >= 0.0)) throw DomainError("lost mass must be non-negative");
  lost_mass_ += probability;
}

bool JointOccupationDistribution::has_mode(std::string_view label) const noexcept {
  return std::find(modes_.begin(), modes_.end(), label) != modes_.end();
}

std::size_t JointOccupationDistribution::mode_index(std::string_view label) const {
  auto it = std::find(modes_.begin(), modes_.end(), label);
  if (it == modes_.end()) throw DomainError("unknown mode label: " + std::string(label));
  return static_cast<std::size_t>(it - modes_.begin());
}

double JointOccupationDistribution::probability(const Occupation& tuple) const {
  auto it = entries_.find(tuple);
  return it == entries_.end() ? 0.0 : it->second;
}

double JointOccupationDistribution::total_mass() const {
  double s = lost_mass_;
  for (const auto& [t, p] : entries_) s += p;
  return s;
}

double JointOccupationDistribution::mean(std::string_view label) const {
  const auto i = mode_index(label);
  double m = 0.0;
  for (const auto& [t, p] : entries_) m += p * t[i];
  return m;
}

JointOccupationDistribution JointOccupationDistribution::marginal(
    std::span<const std::string> keep) const {
  std::vector<std::size_t> idx;
  idx.reserve(keep.size());
  for (const auto& k : keep) idx.push_back(mode_index(k));
  JointOccupationDistribution out(std::vector<std::string>(keep.begin(), keep.end()), cutoff_);
  Occupation t2(idx.size());
  for (const auto& [t, p] : entries_) {
    for (std::size_t j = 0; j < idx.size(); ++j) t2[j] = t[idx[j]];
    out.entries_[t2] += p;
  }
  out.lost_mass_ = lost_mass_;
  return out;
}

JointOccupationDistribution JointOccupationDistribution::trace_out(std::string_view label) const {
  mode_index(label);
  std::vector<std::string> keep;
  for (const auto& m : modes_)
    if (m != label) keep.push_back(m);
  return marginal(keep);
}

JointOccupationDistribution JointOccupationDistribution::with_modes_exchanged(
    std::string_view a, std::string_view b) const {
  const auto ia = mode_index(a);
  const auto ib = mode_index(b);
  JointOccupationDistribution out(modes_, cutoff_);
  for (const auto& [key, p] : entries_) {
    Occupation t = key;
    std::swap(t[ia], t[ib]);
    out.entries_[t] += p;
  }
  out.lost_mass_ = lost_mass_;
  return out;
}

JointOccupationDistribution JointOccupationDistribution::post_selected_without(
    const Occupation& tuple) const {
  // Summed directly: total - removed cancels badly when removed is near 1.
  double keep = lost_mass_;
  for (const auto& [t, p] : entries_)
    if (t != tuple) keep += p;
  if (!(keep > 0.0)) throw ComputationError("post-selection removes all probability mass");
  JointOccupationDistribution out(modes_, cutoff_);
  for (const auto& [t, p] : entries_)
    if (t != tuple) out.entries_[t] = p / keep;
  out.lost_mass_ = lost_mass_ / keep;
  return out;
}

void JointOccupationDistribution::check_invariants(double tolerance) const {
  for (const auto& [t, p] : entries_) {
    if (!(p >= 0.0)) throw ComputationError("negative probability in distribution");
    if (t.size() != modes_.size()) throw ComputationError("tuple length mismatch");
    if (total_photons(t) > cutoff_) throw ComputationError("tuple exceeds cutoff");
  }
  const double m = total_mass();
  if (std::abs(m - 1.0) > tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "distribution mass " << m << " deviates from 1";
    throw ComputationError(os.str());
  }
}

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double thermal_pmf(MeanPhotonNumber nbar, int n) {
  if (n < 0) throw DomainError("photon number must be non-negative");
  const double x = nbar.value();
  if (n == 0) return 1.0 / (1.0 + x);
  return std::pow(x / (1.0 + x), n) / (1.0 + x);
}

JointOccupationDistribution thermal_state(MeanPhotonNumber nbar, std::string label, int cutoff) {
  JointOccupationDistribution d({std::move(label)}, cutoff);
  for (int n = 0; n <= cutoff; ++n) d.accumulate({n}, thermal_pmf(nbar, n));
  // Tail mass in closed form: P(N > cutoff) = (nbar/(1+nbar))^(cutoff+1).
  const double x = nbar.value();
  d.add_lost_mass(std::pow(x / (1.0 + x), cutoff + 1));
  return d;
}

JointOccupationDistribution beamsplitter_split(const JointOccupationDistribution& dist,
                                               std::string_view mode, ReflectionAmplitude r,
                                               std::string new_mode) {
  const auto i = dist.mode_index(mode);
  if (dist.has_mode(new_mode)) throw DomainError("mode label already present: " + new_mode);
  auto labels = dist.modes();
  labels.push_back(std::move(new_mode));
  JointOccupationDistribution out(std::move(labels), dist.cutoff());
  const double r2 = r.reflectivity();
  const double t2 = r.transmissivity();
  for (const auto& [t, p] : dist.entries()) {
    const int n = t[i];
    Occupation t2uple = t;
    t2uple.push_back(0);
    for (int k = 0; k <= n; ++k) {
      const double w = binomial_coefficient(n, k) * std::pow(t2, k) * std::pow(r2, n - k);
      if (w == 0.0) continue;
      t2uple[i] = k;
      t2uple.back() = n - k;
      out.accumulate(t2uple, p * w);
    }
  }
  out.add_lost_mass(dist.lost_mass());
  return out;
}

JointOccupationDistribution loss_channel(const JointOccupationDistribution& dist,
                                         std::string_view mode, CouplingEfficiency eps2,
                                         std::optional<std::string> loss_mode) {
  const auto i = dist.mode_index(mode);
  // Loss is a beamsplitter whose reflected port is the loss mode.
  const auto r = ReflectionAmplitude::from_reflectivity(1.0 - eps2.value());
  if (loss_mode) return beamsplitter_split(dist, mode, r, *loss_mode);
  std::string tmp = "__loss";
  while (dist.has_mode(tmp)) tmp += '_';
  auto extended = beamsplitter_split(dist, dist.modes()[i], r, tmp);
  return extended.trace_out(tmp);
}

double joint_detection_pmf(MeanPhotonNumber nbar, ReflectionAmplitude r, int m, int n) {
  if (m < 0 || n < 0) throw DomainError("photon counts must be non-negative");
  const int total = n + m;
  return binomial_coefficient(total, n) * thermal_pmf(nbar, total) *
         std::pow(r.reflectivity(), n) * std::pow(r.transmissivity(), m);
}

}  // namespace demonlab
