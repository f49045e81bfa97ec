// pmopi: experiment harness for PMI-based key exchange over a simulated
// MIMO-OFDM channel.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"

namespace {

using namespace pmopi;
using namespace pmopi::cli;

bool write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << contents;
  return static_cast<bool>(out);
}

int emit(const std::string& path, const std::string& contents) {
  if (!write_file(path, contents)) {
    std::cerr << "error: cannot write " << path << '\n';
    return kExitIoOrConfig;
  }
  return kExitOk;
}

EstimationNoise parse_noise(const std::string& text) {
  if (text == "noiseless" || text == "inf") return EstimationNoise::noiseless();
  std::size_t used = 0;
  const double db = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("snr_db: expected a number or 'noiseless'");
  return EstimationNoise::from_db(db);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pmopi - PMI-based MIMO-OFDM key exchange simulator"};
  app.set_config("--config", "", "Flat 'key = value' configuration file; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::ignore);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::size_t trials = 0;
  std::string mode = "fast";
  std::string snr_text = "noiseless";

  app.add_option("--seed,--master_seed", cfg.master_seed, "Master seed");
  app.add_option("--trials,--num_trials", trials, "Monte-Carlo trials per point (command default when omitted)");
  app.add_option("--out,--output_path", cfg.output_path, "Output file");

  auto& ch = cfg.channel;
  app.add_option("--carrier_freq_hz", ch.carrier_freq_hz);
  app.add_option("--subcarrier_spacing_hz", ch.subcarrier_spacing_hz);
  app.add_option("--num_subcarriers", ch.num_subcarriers);
  app.add_option("--velocity_kmh", ch.velocity_kmh);
  app.add_option("--rms_delay_spread_s", ch.rms_delay_spread_s);
  app.add_option("--num_taps", ch.num_taps);
  app.add_option("--num_sinusoids", ch.num_sinusoids);

  app.add_option("--mode", mode, "fast | slow")->check(CLI::IsMember({"fast", "slow"}));
  app.add_option("--snr_db", snr_text, "Estimation SNR in dB, or 'noiseless'");
  app.add_option("--rho", cfg.rho, "Linear SNR inside the capacity objective");
  app.add_option("--sounding_delay_s", cfg.sounding_delay_s);
  app.add_option("--max_rekey_rounds", cfg.max_rekey_rounds);
  app.add_option("--key_staleness_epochs", cfg.key_staleness_epochs);
  app.add_option("--coherence_bw_hz", cfg.coherence_bw_hz);
  app.add_option("--num_subbands", cfg.num_subbands, "Fixed subband count (0: derive from coherence_bw_hz)");
  app.add_option("--total_bandwidth_hz", cfg.total_bandwidth_hz);

  app.add_option("--max_sep", cfg.max_sep);
  app.add_option("--target_coherence_bw_hz", cfg.target_coherence_bw_hz);
  app.add_option("--calibration_min_rms_s", cfg.calibration_min_rms_s);
  app.add_option("--calibration_max_rms_s", cfg.calibration_max_rms_s);
  app.add_option("--calibration_step_s", cfg.calibration_step_s);
  app.add_option("--delays_ms", cfg.delays_ms)->delimiter(',');
  app.add_option("--velocities_kmh", cfg.velocities_kmh)->delimiter(',');
  app.add_option("--snr_grid_db", cfg.snr_grid_db)->delimiter(',');

  auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit rms_delay_spread_s to the target coherence bandwidth");
  auto* corr_cmd = app.add_subcommand("fig-corr", "Frequency correlation versus subcarrier separation (CSV)");
  auto* time_cmd = app.add_subcommand("fig-pmi-time", "PMI match probability versus sounding delay (CSV)");
  auto* snr_cmd = app.add_subcommand("fig-pmi-snr", "PMI match probability versus estimation SNR (CSV)");
  auto* kx_cmd = app.add_subcommand("keyexchange", "Run one key exchange; report to stdout, transcript to --out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIoOrConfig;
  }

  try {
    if (trials > 0) cfg.num_trials = trials;
    cfg.mode = mode == "slow" ? protocol::Mode::SlowVarying : protocol::Mode::Fast;
    cfg.snr = parse_noise(snr_text);
    cfg.channel.validate();

    auto out_or = [&](const char* fallback) { return cfg.output_path.empty() ? std::string(fallback) : cfg.output_path; };

    if (calibrate_cmd->parsed()) {
      const auto result = calibrate(cfg);
      if (const int rc = emit(out_or("calibration.toml"), result.report); rc != kExitOk) return rc;
      std::cout << result.report;
      if (!result.crossed) {
        std::cerr << "calibrate: correlation never crossed 0.5 (not crossed) for any grid value\n";
        return kExitAcceptance;
      }
      if (!result.accepted) {
        std::cerr << "calibrate: best crossing " << result.crossing_subcarriers << " subcarriers is outside +/-"
                  << kCalibrationAcceptSubcarriers << " of the target\n";
        return kExitAcceptance;
      }
      return kExitOk;
    }
    if (corr_cmd->parsed()) return emit(out_or("fig_corr.csv"), fig_corr(cfg).csv);
    if (time_cmd->parsed()) return emit(out_or("fig_pmi_time.csv"), fig_pmi_time(cfg).csv);
    if (snr_cmd->parsed()) return emit(out_or("fig_pmi_snr.csv"), fig_pmi_snr(cfg).csv);
    if (kx_cmd->parsed()) {
      const auto result = keyexchange(cfg);
      if (const int rc = emit(out_or("transcript.log"), result.transcript); rc != kExitOk) return rc;
      std::cout << result.report;
      if (result.exit_code != kExitOk) std::cerr << "keyexchange: rekey budget exhausted without a shared key\n";
      return result.exit_code;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIoOrConfig;
  }
  return kExitIoOrConfig;
}
