#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmopi/channel.hpp"
#include "pmopi/estimation.hpp"
#include "pmopi/protocol/exchange.hpp"

namespace pmopi::cli {

/// Flat experiment configuration; field names double as config-file keys and
/// command-line flags.
struct RunConfig {
  ChannelParams channel;

  protocol::Mode mode = protocol::Mode::Fast;
  EstimationNoise snr = EstimationNoise::noiseless();
  double rho = 10.0;
  double sounding_delay_s = 1e-3;
  std::size_t max_rekey_rounds = 3;
  std::uint64_t key_staleness_epochs = 8;
  /// Subband plan: spacing from coherence_bw_hz unless num_subbands > 0.
  double coherence_bw_hz = 300e3;
  std::size_t num_subbands = 0;
  /// Nominal system bandwidth, for the bandwidth-division subband count.
  double total_bandwidth_hz = 20e6;

  /// Per-command default when unset.
  std::optional<std::size_t> num_trials;
  std::string output_path;
  std::uint64_t master_seed = 1;

  // fig-corr / calibrate
  std::size_t max_sep = 60;
  double target_coherence_bw_hz = 300e3;
  double calibration_min_rms_s = 0.30e-6;
  double calibration_max_rms_s = 1.50e-6;
  double calibration_step_s = 0.02e-6;

  // fig-pmi-time / fig-pmi-snr
  std::vector<double> delays_ms{0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> velocities_kmh{0.0, 3.0, 10.0};
  /// Non-finite entries mean "noiseless".
  std::vector<double> snr_grid_db{-10, -5, 0, 5, 10, 15, 20, 25, 30, 35, 40};
  bool include_noiseless_point = true;

  std::size_t trials_or(std::size_t fallback) const { return num_trials.value_or(fallback); }
  protocol::SubbandPlan subband_plan() const;
};

inline constexpr std::size_t kDefaultFigureTrials = 1000;
inline constexpr std::size_t kDefaultCorrelationTrials = 400;
inline constexpr std::size_t kDefaultCalibrationTrials = 200;
/// Largest |crossing - target| in subcarriers that calibrate accepts.
inline constexpr double kCalibrationAcceptSubcarriers = 8.0;

/// Exit codes shared by all commands.
enum ExitCode : int { kExitOk = 0, kExitIoOrConfig = 1, kExitAcceptance = 2 };

struct ProbabilityEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;

  double p() const noexcept { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
  /// Half-width of the normal-approximation 95% binomial interval.
  double ci95() const noexcept;
};

/// Per-trial PMI agreement on one subband for a (velocity, delay, noise, mode)
/// point. Trials are seeded from (master_seed, velocity, delay, trial), so the
/// same channel and noise draws are reused across modes and SNR values.
ProbabilityEstimate pmi_match_probability(const RunConfig& config, double velocity_kmh, double delay_s,
                                          EstimationNoise noise, protocol::Mode mode, std::size_t trials);

struct CalibrationResult {
  double rms_delay_spread_s = 0.0;
  double crossing_subcarriers = 0.0;
  double coherence_bandwidth_hz = 0.0;
  bool crossed = false;
  bool accepted = false;
  std::string report;
};

CalibrationResult calibrate(const RunConfig& config);

struct CorrelationCurve {
  std::vector<double> correlation;
  std::string csv;
};
CorrelationCurve fig_corr(const RunConfig& config);

struct PmiTimePoint {
  double delay_ms;
  double velocity_kmh;
  protocol::Mode mode;
  ProbabilityEstimate estimate;
};
struct PmiTimeResult {
  std::vector<PmiTimePoint> points;
  std::string csv;
};
PmiTimeResult fig_pmi_time(const RunConfig& config);

struct PmiSnrPoint {
  /// Unset for the noiseless point.
  std::optional<double> snr_db;
  protocol::Mode mode;
  ProbabilityEstimate estimate;
};
struct PmiSnrResult {
  std::vector<PmiSnrPoint> points;
  std::string csv;
};
/// Uses the first entry of velocities_kmh and sounding_delay_s.
PmiSnrResult fig_pmi_snr(const RunConfig& config);

struct KeyExchangeResult {
  protocol::ExchangeOutcome outcome;
  std::size_t grid_subbands = 0;
  std::size_t bandwidth_division_subbands = 0;
  std::size_t eve_subband_hits = 0;
  bool payload_round_trip = false;
  std::string report;
  std::string transcript;
  int exit_code = kExitOk;
};
KeyExchangeResult keyexchange(const RunConfig& config);

/// "%.6g" formatting used in every CSV.
std::string format_number(double value);
std::string mode_name(protocol::Mode mode);

}  // namespace pmopi::cli
