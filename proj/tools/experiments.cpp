#include "experiments.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pmopi/correlation.hpp"
#include "pmopi/protocol/key_check.hpp"

namespace pmopi::cli {

namespace {

std::uint64_t key_of(double x) { return std::bit_cast<std::uint64_t>(x); }

std::string noise_label(const EstimationNoise& noise) {
  return noise.is_noiseless() ? "inf" : format_number(noise.snr_db());
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::string mode_name(protocol::Mode mode) { return mode == protocol::Mode::Fast ? "fast" : "slow"; }

protocol::SubbandPlan RunConfig::subband_plan() const {
  if (num_subbands > 0) return protocol::plan_subbands_by_count(channel.num_subcarriers, num_subbands);
  return protocol::plan_subbands(channel.num_subcarriers, coherence_bw_hz, channel.subcarrier_spacing_hz);
}

double ProbabilityEstimate::ci95() const noexcept {
  if (trials == 0) return 0.0;
  const double q = p();
  return 1.96 * std::sqrt(q * (1.0 - q) / static_cast<double>(trials));
}

ProbabilityEstimate pmi_match_probability(const RunConfig& config, double velocity_kmh, double delay_s,
                                          EstimationNoise noise, protocol::Mode mode, std::size_t trials) {
  protocol::ExchangeConfig xc;
  xc.mode = mode;
  xc.rotation_policy = protocol::RotationPolicy::Always;
  xc.snr = noise;
  xc.rho = Snr(config.rho);
  xc.sounding_delay_s = delay_s;
  xc.max_rekey_rounds = 1;
  xc.subband_plan.center_indices = {0};

  ProbabilityEstimate est;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng seeds = derive_stream(config.master_seed, {key_of(velocity_kmh), key_of(delay_s), trial});
    ChannelParams cp = config.channel;
    cp.velocity_kmh = velocity_kmh;
    cp.seed = seeds();
    const ChannelProcess channel(cp);
    Rng rng = split(seeds);
    // Eve plays no part in this measurement; her channel slots reuse the link.
    const auto outcome = protocol::run_exchange(channel, channel, channel, xc, rng);
    const auto& first = outcome.epochs.front();
    est.successes += first.alice_pmis == first.bob_pmis ? 1 : 0;
    ++est.trials;
  }
  return est;
}

CalibrationResult calibrate(const RunConfig& config) {
  const std::size_t trials = config.trials_or(kDefaultCalibrationTrials);
  const double target = config.target_coherence_bw_hz / config.channel.subcarrier_spacing_hz;
  const auto steps = static_cast<std::size_t>(
      std::floor((config.calibration_max_rms_s - config.calibration_min_rms_s) / config.calibration_step_s + 0.5));

  CalibrationResult best;
  double best_error = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= steps; ++i) {
    ChannelParams params = config.channel;
    params.rms_delay_spread_s = config.calibration_min_rms_s + static_cast<double>(i) * config.calibration_step_s;
    params.seed = config.master_seed;
    const auto corr = frequency_correlation(params, trials, config.max_sep);
    const auto coh = coherence_bandwidth(corr, params.subcarrier_spacing_hz);
    if (!coh.crossed) continue;
    const double error = std::abs(coh.separation - target);
    if (error < best_error) {
      best_error = error;
      best.rms_delay_spread_s = params.rms_delay_spread_s;
      best.crossing_subcarriers = coh.separation;
      best.coherence_bandwidth_hz = coh.bandwidth_hz;
      best.crossed = true;
    }
  }
  best.accepted = best.crossed && best_error <= kCalibrationAcceptSubcarriers;

  std::ostringstream out;
  out << "# pmopi calibrate: rms delay spread whose 0.5 frequency-correlation crossing is nearest the target\n";
  out << "target_crossing_subcarriers = " << format_number(target) << '\n';
  out << "crossed = " << (best.crossed ? "true" : "false") << '\n';
  if (best.crossed) {
    out << "rms_delay_spread_s = " << format_number(best.rms_delay_spread_s) << '\n';
    out << "crossing_subcarriers = " << format_number(best.crossing_subcarriers) << '\n';
    out << "coherence_bandwidth_hz = " << format_number(best.coherence_bandwidth_hz) << '\n';
  }
  out << "accepted = " << (best.accepted ? "true" : "false") << '\n';
  out << "num_taps = " << config.channel.num_taps << '\n';
  out << "calibration_trials = " << trials << '\n';
  out << "master_seed = " << config.master_seed << '\n';
  best.report = out.str();
  return best;
}

CorrelationCurve fig_corr(const RunConfig& config) {
  ChannelParams params = config.channel;
  params.seed = config.master_seed;
  CorrelationCurve curve;
  curve.correlation = frequency_correlation(params, config.trials_or(kDefaultCorrelationTrials), config.max_sep);
  std::string csv = "separation_subcarriers,correlation\n";
  for (std::size_t d = 0; d < curve.correlation.size(); ++d) {
    csv += std::to_string(d) + ',' + format_number(curve.correlation[d]) + '\n';
  }
  curve.csv = std::move(csv);
  return curve;
}

PmiTimeResult fig_pmi_time(const RunConfig& config) {
  const std::size_t trials = config.trials_or(kDefaultFigureTrials);
  PmiTimeResult result;
  std::string csv = "delay_ms,velocity_kmh,mode,match_probability,ci95\n";
  for (double velocity : config.velocities_kmh) {
    for (double delay_ms : config.delays_ms) {
      for (auto mode : {protocol::Mode::Fast, protocol::Mode::SlowVarying}) {
        const auto est =
            pmi_match_probability(config, velocity, delay_ms * 1e-3, EstimationNoise::noiseless(), mode, trials);
        result.points.push_back({delay_ms, velocity, mode, est});
        csv += format_number(delay_ms) + ',' + format_number(velocity) + ',' + mode_name(mode) + ',' +
               format_number(est.p()) + ',' + format_number(est.ci95()) + '\n';
      }
    }
  }
  result.csv = std::move(csv);
  return result;
}

PmiSnrResult fig_pmi_snr(const RunConfig& config) {
  if (config.velocities_kmh.empty()) throw std::invalid_argument("fig-pmi-snr: no velocity configured");
  const std::size_t trials = config.trials_or(kDefaultFigureTrials);
  const double velocity = config.velocities_kmh.front();

  std::vector<EstimationNoise> grid;
  for (double db : config.snr_grid_db) {
    grid.push_back(std::isfinite(db) ? EstimationNoise::from_db(db) : EstimationNoise::noiseless());
  }
  if (config.include_noiseless_point) grid.push_back(EstimationNoise::noiseless());

  PmiSnrResult result;
  std::string csv = "snr_db,mode,match_probability,ci95\n";
  for (const auto& noise : grid) {
    for (auto mode : {protocol::Mode::Fast, protocol::Mode::SlowVarying}) {
      const auto est = pmi_match_probability(config, velocity, config.sounding_delay_s, noise, mode, trials);
      std::optional<double> db;
      if (!noise.is_noiseless()) db = noise.snr_db();
      result.points.push_back({db, mode, est});
      csv += noise_label(noise) + ',' + mode_name(mode) + ',' + format_number(est.p()) + ',' +
             format_number(est.ci95()) + '\n';
    }
  }
  result.csv = std::move(csv);
  return result;
}

KeyExchangeResult keyexchange(const RunConfig& config) {
  KeyExchangeResult result;

  ChannelParams params = config.channel;
  params.seed = config.master_seed;
  const ChannelProcess channel(params);

  protocol::ExchangeConfig xc;
  xc.mode = config.mode;
  xc.snr = config.snr;
  xc.rho = Snr(config.rho);
  xc.sounding_delay_s = config.sounding_delay_s;
  xc.max_rekey_rounds = config.max_rekey_rounds;
  xc.key_staleness_epochs = config.key_staleness_epochs;
  xc.subband_plan = config.subband_plan();

  Rng rng = derive_stream(config.master_seed, {0x6b6579ULL});
  result.outcome = protocol::run_exchange(channel, xc, rng);
  const auto& outcome = result.outcome;

  result.grid_subbands = xc.subband_plan.size();
  result.bandwidth_division_subbands = protocol::bandwidth_division_count(config.total_bandwidth_hz,
                                                                         config.coherence_bw_hz);
  for (std::size_t i = 0; i < outcome.key_bob.pmis.size(); ++i) {
    if (outcome.eve_key.pmis[i] == outcome.key_bob.pmis[i]) ++result.eve_subband_hits;
  }

  static constexpr std::string_view kDemo = "pmopi demo payload: keyed by precoding matrix indices";
  const Bytes plaintext(kDemo.begin(), kDemo.end());
  if (outcome.matched && !outcome.alice_keys.empty() && !outcome.bob_keys.empty()) {
    const auto& [epoch, alice_key] = *outcome.alice_keys.entries().rbegin();
    const auto data = protocol::seal_data(alice_key, epoch, 0, plaintext);
    const auto bob_it = outcome.bob_keys.entries().find(epoch);
    if (bob_it != outcome.bob_keys.entries().end()) {
      result.payload_round_trip = protocol::open_data(data, bob_it->second) == plaintext;
    }
    result.outcome.transcript.push_back({outcome.transcript.back().time_s, protocol::Party::Alice, data});
  }

  std::ostringstream out;
  out << "mode: " << mode_name(config.mode) << '\n';
  out << "estimation snr: " << noise_label(config.snr) << (config.snr.is_noiseless() ? " (noiseless)" : " dB") << '\n';
  out << "subbands (subcarrier grid): " << result.grid_subbands << '\n';
  out << "key bits: " << outcome.key_alice.key_bits.size() << '\n';
  out << "subbands (bandwidth division " << format_number(config.total_bandwidth_hz) << " Hz / "
      << format_number(config.coherence_bw_hz) << " Hz): " << result.bandwidth_division_subbands << " -> "
      << result.bandwidth_division_subbands * Pmi::kBits << " key bits\n";
  out << "matched: " << (outcome.matched ? "true" : "false") << '\n';
  out << "rekey rounds: " << outcome.rekey_rounds << '\n';
  out << "epochs run: " << outcome.epochs.size() << '\n';
  out << "eve subband hits: " << result.eve_subband_hits << '/' << outcome.key_bob.pmis.size() << '\n';
  out << "eve full-key match: " << (outcome.eve_key.key_bits == outcome.key_bob.key_bits ? "true" : "false") << '\n';
  out << "payload round trip: " << (result.payload_round_trip ? "ok" : "failed") << '\n';
  result.report = out.str();
  result.transcript = protocol::format_transcript(result.outcome.transcript);

  if (!outcome.matched) result.exit_code = kExitAcceptance;
  return result;
}

}  // namespace pmopi::cli
