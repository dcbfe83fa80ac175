#include "demonlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <thread>

#include "demonlab/diagnostics.hpp"
#include "demonlab/rng.hpp"

namespace demonlab {
namespace {

enum StreamTag : std::uint64_t { kTagRun = 0, kTagBar = 1, kTagCross = 2, kTagFF = 3, kTagPairs = 4, kTagG2 = 5 };

// Everything a block needs that does not depend on the block's random state.
struct Prepared {
  SourceKind kind = SourceKind::Uncorrelated;
  double q = 0.0;  // thermal ratio nbar/(1+nbar) of the emitted mode
  double nbar = 0.0;
  std::vector<double> cumulative;  // pair kinds
  std::vector<std::array<int, 2>> tuples;
  StreamModel stream = StreamModel::Iid;
  std::vector<double> kernel;  // GaussianMemory, symmetric, sum of squares 1
  std::array<double, 2> survive{1.0, 1.0};
  std::array<double, 2> eta{1.0, 1.0};
  double r2 = 0.5;
  SwitchMode mode = SwitchMode::FeedForward;
  Policy policy;
  std::uint64_t dead_window = 0;
};

std::vector<double> gaussian_kernel(double coherence_slots) {
  // |gamma(tau)|^2 = exp(-tau^2 / (2 sigma^2)) must equal exp(-pi tau^2 / tau_c^2).
  const double sigma = coherence_slots / std::sqrt(2.0 * std::numbers::pi);
  const int half = std::max(1, static_cast<int>(std::ceil(5.0 * sigma)));
  std::vector<double> h(2 * half + 1);
  double norm = 0.0;
  for (int k = -half; k <= half; ++k) {
    const double v = std::exp(-0.5 * k * k / (sigma * sigma));
    h[k + half] = v;
    norm += v * v;
  }
  for (auto& v : h) v /= std::sqrt(norm);
  return h;
}

Prepared prepare_source(const SourceSpec& spec_in, StreamModel stream, double coherence_slots) {
  SourceSpec spec = spec_in;
  spec.drop_vacuum = false;  // the event stream always contains empty slots
  spec.validate();
  Prepared p;
  p.kind = spec.kind;
  p.stream = stream;
  if (is_thermal(spec.kind)) {
    const double mode_mean = (spec.kind == SourceKind::SplitThermal ? 2.0 : 1.0) * spec.nbar->value();
    p.nbar = mode_mean;
    p.q = mode_mean / (1.0 + mode_mean);
    if (stream == StreamModel::GaussianMemory) {
      if (!(coherence_slots > 0.0)) throw DomainError("Gaussian-memory stream needs coherence_slots > 0");
      p.kernel = gaussian_kernel(coherence_slots);
    }
  } else {
    if (stream != StreamModel::Iid) throw DomainError("Gaussian-memory stream applies to thermal sources only");
    const auto dist = make_source(spec, 2);
    double c = 0.0;
    for (const auto& [t, prob] : dist.entries()) {
      c += prob;
      p.cumulative.push_back(c);
      p.tuples.push_back({t[0], t[1]});
    }
    p.cumulative.back() = 1.0;
  }
  return p;
}

Prepared prepare(const RunConfig& c) {
  Prepared p = prepare_source(c.spec, c.stream, c.coherence_slots);
  for (int i = 0; i < 2; ++i) p.survive[i] = c.arm_trim[i] * c.arm_efficiency[i] * c.eps2.value();
  p.eta = {c.detectors.eta_a, c.detectors.eta_b};
  p.r2 = c.r.reflectivity();
  p.mode = c.mode;
  p.policy = c.effective_policy();
  p.dead_window = c.dead_window_slots;
  return p;
}

int geometric(BlockRng& rng, double q) {
  const double u = rng.uniform();
  if (u < 1.0 - q) return 0;
  // P(n >= k) = q^k
  return static_cast<int>(std::floor(std::log1p(-u) / std::log(q)));
}

int split_half(BlockRng& rng, int n) {
  int k = 0;
  for (int i = 0; i < n; ++i) k += rng.uniform() < 0.5;
  return k;
}

// Photon-number pairs emitted into (In_A, In_B), one per slot.
class SourceSampler {
 public:
  SourceSampler(const Prepared& p, BlockRng& rng, std::uint64_t length) : p_(p), rng_(rng) {
    if (p.stream == StreamModel::GaussianMemory) fill_memory(length);
  }

  std::array<int, 2> draw() {
    if (p_.stream == StreamModel::GaussianMemory) {
      const auto out = buffered_[pos_++];
      return out;
    }
    switch (p_.kind) {
      case SourceKind::Uncorrelated:
        return {geometric(rng_, p_.q), geometric(rng_, p_.q)};
      case SourceKind::SplitThermal: {
        const int n = geometric(rng_, p_.q);
        const int a = split_half(rng_, n);
        return {a, n - a};
      }
      default: {
        const double u = rng_.uniform();
        const auto it = std::upper_bound(p_.cumulative.begin(), p_.cumulative.end(), u);
        const auto i = std::min<std::size_t>(it - p_.cumulative.begin(), p_.tuples.size() - 1);
        return p_.tuples[i];
      }
    }
  }

 private:
  // Complex Gaussian field filtered by the kernel; counts are Poisson in the
  // instantaneous intensity.
  std::vector<std::complex<double>> field(std::uint64_t length) {
    const std::size_t taps = p_.kernel.size();
    std::vector<std::complex<double>> z(length + taps - 1);
    const double s = std::sqrt(0.5);
    for (auto& v : z) {
      const double re = rng_.normal();
      v = {s * re, s * rng_.normal()};
    }
    std::vector<std::complex<double>> e(length);
    for (std::uint64_t t = 0; t < length; ++t) {
      std::complex<double> acc = 0.0;
      for (std::size_t k = 0; k < taps; ++k) acc += p_.kernel[k] * z[t + k];
      e[t] = acc;
    }
    return e;
  }

  void fill_memory(std::uint64_t length) {
    buffered_.resize(length);
    if (p_.kind == SourceKind::Uncorrelated) {
      const auto ea = field(length);
      const auto eb = field(length);
      for (std::uint64_t t = 0; t < length; ++t)
        buffered_[t] = {rng_.poisson(p_.nbar * std::norm(ea[t])), rng_.poisson(p_.nbar * std::norm(eb[t]))};
    } else {
      const auto e = field(length);
      for (std::uint64_t t = 0; t < length; ++t) {
        const int n = rng_.poisson(p_.nbar * std::norm(e[t]));
        const int a = split_half(rng_, n);
        buffered_[t] = {a, n - a};
      }
    }
  }

  const Prepared& p_;
  BlockRng& rng_;
  std::vector<std::array<int, 2>> buffered_;
  std::size_t pos_ = 0;
};

class BlockSimulator {
 public:
  BlockSimulator(const Prepared& p, std::uint64_t seed, std::uint64_t length)
      : p_(p), rng_(seed), source_(p, rng_, length) {}

  StreamSample next() {
    StreamSample s;
    const auto n = source_.draw();
    s.in_a = n[0];
    s.in_b = n[1];
    route(n[0], 0, s.signal_a, s.dem_a);
    route(n[1], 1, s.signal_b, s.dem_b);
    const ClickPattern clicks{s.dem_a > 0, s.dem_b > 0};
    lost_slot_ = false;
    triggered_ = false;
    switch (p_.mode) {
      case SwitchMode::Bar: s.state = SwitchState::Bar; break;
      case SwitchMode::Cross: s.state = SwitchState::Cross; break;
      case SwitchMode::FeedForward:
        if (hold_ > 0) {
          // The switch is still held by an earlier trigger and ignores the demon.
          s.state = SwitchState::Cross;
          --hold_;
          lost_slot_ = clicks.dem_a || clicks.dem_b;
        } else {
          s.state = p_.policy(clicks);
          if (s.state == SwitchState::Cross) {
            triggered_ = true;
            hold_ = p_.dead_window;
          }
        }
        break;
    }
    return s;
  }

  bool lost_slot() const noexcept { return lost_slot_; }
  bool triggered() const noexcept { return triggered_; }

 private:
  // One uniform per photon: detected at the demon, reflected but missed,
  // transmitted, or lost.
  void route(int photons, int arm, int& signal, int& dem) {
    const double s = p_.survive[arm];
    const double refl = s * p_.r2;
    const double seen = refl * p_.eta[arm];
    for (int i = 0; i < photons; ++i) {
      const double u = rng_.uniform();
      if (u < seen) ++dem;
      else if (u < refl) continue;
      else if (u < s) ++signal;
    }
  }

  const Prepared& p_;
  BlockRng rng_;
  SourceSampler source_;
  std::uint64_t hold_ = 0;
  bool lost_slot_ = false;
  bool triggered_ = false;
};

struct Tally {
  std::uint64_t n_a = 0, n_b = 0, coinc = 0, photons_a = 0, photons_b = 0;
  std::uint64_t dem_a = 0, dem_b = 0, dem_coinc = 0, triggers = 0, lost = 0;

  Tally& operator+=(const Tally& o) {
    n_a += o.n_a;
    n_b += o.n_b;
    coinc += o.coinc;
    photons_a += o.photons_a;
    photons_b += o.photons_b;
    dem_a += o.dem_a;
    dem_b += o.dem_b;
    dem_coinc += o.dem_coinc;
    triggers += o.triggers;
    lost += o.lost;
    return *this;
  }
};

Tally simulate_block(const Prepared& p, std::uint64_t seed, std::uint64_t length) {
  BlockSimulator sim(p, seed, length);
  Tally t;
  for (std::uint64_t i = 0; i < length; ++i) {
    const auto s = sim.next();
    const bool cross = s.state == SwitchState::Cross;
    const int da = cross ? s.signal_b : s.signal_a;
    const int db = cross ? s.signal_a : s.signal_b;
    const bool ca = da > 0;
    const bool cb = db > 0;
    const bool ka = s.dem_a > 0;
    const bool kb = s.dem_b > 0;
    t.n_a += ca;
    t.n_b += cb;
    t.coinc += ca && cb;
    t.photons_a += da;
    t.photons_b += db;
    t.dem_a += ka;
    t.dem_b += kb;
    t.dem_coinc += (ca + cb) * (ka + kb);
    t.triggers += sim.triggered();
    t.lost += sim.lost_slot();
  }
  return t;
}

// Runs fn(block_index, block_length) for every block, spread over threads.
// Results are stored per block so the merge order never depends on timing.
template <typename Result, typename Fn>
std::vector<Result> for_each_block(std::uint64_t slots, unsigned threads, Fn fn) {
  const std::uint64_t blocks = (slots + kBlockSlots - 1) / kBlockSlots;
  std::vector<Result> out(blocks);
  auto work = [&](unsigned tid, unsigned stride) {
    for (std::uint64_t b = tid; b < blocks; b += stride) {
      const std::uint64_t len = std::min(kBlockSlots, slots - b * kBlockSlots);
      out[b] = fn(b, len);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  if (n == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n);
  for (unsigned i = 0; i < n; ++i)
    pool.emplace_back([&, i] {
      try {
        work(i, n);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

RunResult finish(const RunConfig& c, const Tally& t) {
  RunResult r;
  r.slots = c.slots;
  r.n_a = t.n_a;
  r.n_b = t.n_b;
  r.coincidences = t.coinc;
  r.photons_a = t.photons_a;
  r.photons_b = t.photons_b;
  r.dem_clicks_a = t.dem_a;
  r.dem_clicks_b = t.dem_b;
  r.dem_coincidences = t.dem_coinc;
  r.triggers = t.triggers;
  r.lost_to_dead_window = t.lost;
  r.delta_n = static_cast<std::int64_t>(t.n_a) - static_cast<std::int64_t>(t.n_b);
  // Per-slot difference d in {-1, 0, 1}: E[d^2] = (n_a + n_b - 2 coinc) / slots.
  const double n = static_cast<double>(c.slots);
  const double m1 = static_cast<double>(r.delta_n) / n;
  const double m2 = static_cast<double>(t.n_a + t.n_b - 2 * t.coinc) / n;
  r.stderr_delta_n = std::sqrt(std::max(0.0, n * (m2 - m1 * m1)));
  const double trans = c.r.transmissivity();
  const double refl = c.r.reflectivity();
  r.n_in_est = trans > 0.0 ? static_cast<double>(t.photons_a + t.photons_b) / (2.0 * trans) : 0.0;
  r.pairs_est = trans * refl > 0.0 ? static_cast<double>(t.dem_coinc) / (2.0 * trans * refl) : 0.0;
  return r;
}

RunResult run_tagged(const RunConfig& c, std::uint64_t tag) {
  c.validate();
  const Prepared p = prepare(c);
  const auto tallies = for_each_block<Tally>(c.slots, c.threads, [&](std::uint64_t b, std::uint64_t len) {
    return simulate_block(p, derive_seed(c.seed, tag, b), len);
  });
  Tally total;
  for (const auto& t : tallies) total += t;
  return finish(c, total);
}

}  // namespace

std::string_view to_string(SwitchMode m) {
  switch (m) {
    case SwitchMode::Bar: return "bar";
    case SwitchMode::Cross: return "cross";
    case SwitchMode::FeedForward: return "feedforward";
  }
  return "?";
}

SwitchMode parse_switch_mode(std::string_view text) {
  if (text == "bar") return SwitchMode::Bar;
  if (text == "cross") return SwitchMode::Cross;
  if (text == "feedforward") return SwitchMode::FeedForward;
  throw DomainError("unknown switch mode: " + std::string(text));
}

std::string_view to_string(StreamModel m) { return m == StreamModel::Iid ? "iid" : "gaussian-memory"; }

StreamModel parse_stream_model(std::string_view text) {
  if (text == "iid") return StreamModel::Iid;
  if (text == "gaussian-memory") return StreamModel::GaussianMemory;
  throw DomainError("unknown stream model: " + std::string(text));
}

void RunConfig::validate() const {
  spec.validate();
  if (slots == 0) throw DomainError("slots must be at least 1");
  if (slots > kMaxSlots) throw ComputationError("slot count would overflow the tallies");
  for (int i = 0; i < 2; ++i) {
    if (!(arm_trim[i] >= 0.0 && arm_trim[i] <= 1.0)) throw DomainError("arm trims must lie in [0, 1]");
    if (!(arm_efficiency[i] >= 0.0 && arm_efficiency[i] <= 1.0))
      throw DomainError("arm efficiencies must lie in [0, 1]");
  }
  detectors.validate();
  if (policy && mode != SwitchMode::FeedForward)
    throw DomainError("a policy only applies in feed-forward mode");
  if (dead_window_slots > 0 && mode != SwitchMode::FeedForward)
    throw DomainError("a dead window only applies in feed-forward mode");
  if (stream == StreamModel::GaussianMemory && !(coherence_slots > 0.0))
    throw DomainError("Gaussian-memory stream needs coherence_slots > 0");
}

Policy RunConfig::effective_policy() const { return policy ? *policy : canonical_policy(spec.kind); }

RunResult run(const RunConfig& config) { return run_tagged(config, kTagRun); }

std::vector<StreamSample> trace(const RunConfig& config, std::size_t count) {
  config.validate();
  if (count > kBlockSlots) throw DomainError("trace covers at most one block");
  const Prepared p = prepare(config);
  const auto len = std::min<std::uint64_t>(kBlockSlots, config.slots);
  BlockSimulator sim(p, derive_seed(config.seed, kTagRun, 0), len);
  std::vector<StreamSample> out;
  for (std::size_t i = 0; i < std::min<std::uint64_t>(count, len); ++i) out.push_back(sim.next());
  return out;
}

std::array<double, 2> calibrate_balance(const RunConfig& config) {
  if (config.mode != SwitchMode::Bar) throw DomainError("balance calibration runs in bar mode");
  RunConfig c = config;
  c.arm_trim = {1.0, 1.0};
  const auto base = run(c);
  if (std::abs(static_cast<double>(base.delta_n)) <= 3.0 * base.stderr_delta_n) return c.arm_trim;

  const int bright = base.delta_n > 0 ? 0 : 1;
  constexpr double kMinTrim = 0.1;
  auto imbalance = [&](double trim) {
    c.arm_trim = {1.0, 1.0};
    c.arm_trim[bright] = trim;
    const auto r = run(c);
    const double signed_dn = bright == 0 ? static_cast<double>(r.delta_n) : -static_cast<double>(r.delta_n);
    return std::pair{signed_dn, r.stderr_delta_n};
  };
  if (imbalance(kMinTrim).first > 0.0)
    throw ComputationError("arm imbalance exceeds the trim range (more than 10x)");

  double lo = kMinTrim;
  double hi = 1.0;
  constexpr int kBudget = 40;
  for (int it = 0; it < kBudget && hi - lo > 1e-6; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (imbalance(mid).first > 0.0) hi = mid;
    else lo = mid;
  }
  const double trim = 0.5 * (lo + hi);
  const auto [dn, se] = imbalance(trim);
  if (std::abs(dn) > 3.0 * se) throw ComputationError("balance calibration did not converge");
  std::array<double, 2> out{1.0, 1.0};
  out[bright] = trim;
  return out;
}

PowerMeasurement measure_power(const RunConfig& config, Normalization norm) {
  config.validate();
  if (norm == Normalization::Pairs && is_thermal(config.spec.kind))
    throw DomainError("pair normalization is undefined for thermal light");
  PowerMeasurement m;
  RunConfig c = config;
  c.policy.reset();
  c.dead_window_slots = 0;
  c.mode = SwitchMode::Bar;
  m.bar = run_tagged(c, kTagBar);
  c.mode = SwitchMode::Cross;
  m.cross = run_tagged(c, kTagCross);
  c = config;
  c.mode = SwitchMode::FeedForward;
  m.ff = run_tagged(c, kTagFF);

  if (norm == Normalization::Singles) {
    m.normalizer = (m.bar.n_in_est + m.cross.n_in_est + m.ff.n_in_est) / 3.0;
    const double photons = static_cast<double>(m.bar.photons_a + m.bar.photons_b + m.cross.photons_a +
                                               m.cross.photons_b + m.ff.photons_a + m.ff.photons_b);
    if (photons > 0.0) m.normalizer_std_error = m.normalizer / std::sqrt(photons);
  } else {
    RunConfig cal = config;
    cal.policy.reset();
    cal.dead_window_slots = 0;
    cal.mode = SwitchMode::Bar;
    cal.r = ReflectionAmplitude::from_reflectivity(0.5);
    m.pair_calibration = run_tagged(cal, kTagPairs);
    m.normalizer = m.pair_calibration->pairs_est;
    const double coinc = static_cast<double>(m.pair_calibration->dem_coincidences);
    if (coinc > 0.0) m.normalizer_std_error = m.normalizer / std::sqrt(coinc);
  }
  if (!(m.normalizer > 0.0))
    throw ComputationError("normalization estimate is zero; no photons reached the detectors");

  m.delta = construct_delta_n(
      Measurement{static_cast<double>(m.bar.delta_n), m.bar.stderr_delta_n},
      Measurement{static_cast<double>(m.cross.delta_n), m.cross.stderr_delta_n},
      Measurement{static_cast<double>(m.ff.delta_n), m.ff.stderr_delta_n});
  m.value = m.delta.value / m.normalizer;
  // Ratio estimator: both the imbalance and the normalizer fluctuate.
  m.std_error = std::hypot(m.delta.std_error, m.value * m.normalizer_std_error) / m.normalizer;
  return m;
}

std::vector<std::pair<int, double>> estimate_g2(const SourceSpec& spec, std::uint64_t slots,
                                                std::uint64_t seed, const std::vector<int>& tau_grid,
                                                G2Options options) {
  if (!is_thermal(spec.kind)) throw DomainError("g2 estimation is defined for thermal sources");
  if (slots < 100'000) throw DomainError("g2 estimation needs at least 1e5 slots");
  if (slots > kMaxSlots) throw ComputationError("slot count would overflow the tallies");
  if (tau_grid.empty()) throw DomainError("empty tau grid");
  int max_tau = 0;
  for (int t : tau_grid) {
    if (t < 0) throw DomainError("tau must be non-negative");
    max_tau = std::max(max_tau, t);
  }
  if (static_cast<std::uint64_t>(max_tau) >= kBlockSlots) throw DomainError("tau exceeds the block length");
  const Prepared p = prepare_source(spec, options.stream, options.coherence_slots);

  struct Sums {
    double n = 0.0, fact = 0.0;
    std::vector<double> prod;
    std::vector<double> pairs;
  };
  const auto parts = for_each_block<Sums>(slots, options.threads, [&](std::uint64_t b, std::uint64_t len) {
    BlockRng rng(derive_seed(seed, kTagG2, b));
    SourceSampler src(p, rng, len);
    std::vector<int> counts(len);
    for (auto& c : counts) c = src.draw()[0];
    Sums s;
    s.prod.assign(tau_grid.size(), 0.0);
    s.pairs.assign(tau_grid.size(), 0.0);
    for (int c : counts) {
      s.n += c;
      s.fact += static_cast<double>(c) * (c - 1);
    }
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
      const auto tau = static_cast<std::uint64_t>(tau_grid[i]);
      if (tau == 0 || tau >= len) continue;
      double acc = 0.0;
      for (std::uint64_t t = 0; t + tau < len; ++t) acc += static_cast<double>(counts[t]) * counts[t + tau];
      s.prod[i] = acc;
      s.pairs[i] = static_cast<double>(len - tau);
    }
    return s;
  });
  double n = 0.0;
  double fact = 0.0;
  std::vector<double> prod(tau_grid.size(), 0.0);
  std::vector<double> pairs(tau_grid.size(), 0.0);
  for (const auto& s : parts) {
    n += s.n;
    fact += s.fact;
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
      prod[i] += s.prod[i];
      pairs[i] += s.pairs[i];
    }
  }
  if (!(n > 0.0)) throw ComputationError("g2 undefined: the simulated stream is empty");
  const double mean = n / static_cast<double>(slots);
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    double g2;
    if (tau_grid[i] == 0) {
      g2 = fact / static_cast<double>(slots) / (mean * mean);
    } else {
      if (!(pairs[i] > 0.0)) throw ComputationError("no slot pairs at this delay");
      g2 = prod[i] / pairs[i] / (mean * mean);
    }
    out.emplace_back(tau_grid[i], g2);
  }
  return out;
}

CoherenceFit fit_coherence_time(const std::vector<std::pair<int, double>>& samples) {
  if (samples.size() < 2) throw DomainError("need at least two g2 samples to fit");
  auto evaluate = [&](double tau_c) {
    double yf = 0.0;
    double ff = 0.0;
    for (const auto& [tau, g2] : samples) {
      const double x = tau / tau_c;
      const double f = std::exp(-std::numbers::pi * x * x);
      yf += (g2 - 1.0) * f;
      ff += f * f;
    }
    const double a = ff > 0.0 ? yf / ff : 0.0;
    double ssr = 0.0;
    for (const auto& [tau, g2] : samples) {
      const double x = tau / tau_c;
      const double resid = g2 - 1.0 - a * std::exp(-std::numbers::pi * x * x);
      ssr += resid * resid;
    }
    return CoherenceFit{tau_c, a, ssr};
  };
  // Log-spaced scan, then golden-section refinement in log(tau_c).
  constexpr int kScan = 400;
  const double lo = std::log(0.05);
  const double hi = std::log(5000.0);
  int best = 0;
  double best_ssr = evaluate(std::exp(lo)).residual;
  for (int i = 1; i <= kScan; ++i) {
    const double ssr = evaluate(std::exp(lo + (hi - lo) * i / kScan)).residual;
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / kScan;
  double b = lo + (hi - lo) * std::min(kScan, best + 1) / kScan;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = evaluate(std::exp(c)).residual;
  double fd = evaluate(std::exp(d)).residual;
  for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = evaluate(std::exp(c)).residual;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = evaluate(std::exp(d)).residual;
    }
  }
  return evaluate(std::exp(0.5 * (a + b)));
}

}  // namespace demonlab
