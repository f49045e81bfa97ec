#include "pmopi/protocol/subbands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmopi::protocol {

namespace {

// Ratios such as 300e3 / 15e3 must not round up past an exact integer.
constexpr double kRatioSlack = 1e-9;

}  // namespace

SubbandPlan plan_subbands(std::size_t num_subcarriers, double coherence_bw_hz, double spacing_hz) {
  if (num_subcarriers == 0) throw std::invalid_argument("plan_subbands: no subcarriers");
  if (!(coherence_bw_hz > 0.0) || !(spacing_hz > 0.0)) {
    throw std::invalid_argument("plan_subbands: bandwidths must be positive");
  }
  const double ratio = coherence_bw_hz / spacing_hz;
  const auto spacing = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - kRatioSlack)));

  SubbandPlan plan;
  if (spacing >= num_subcarriers) {
    plan.subband_spacing_subcarriers = num_subcarriers;
    plan.center_indices = {0};
    return plan;
  }
  plan.subband_spacing_subcarriers = spacing;
  const std::size_t count = num_subcarriers / spacing;
  for (std::size_t i = 0; i < count; ++i) plan.center_indices.push_back(i * spacing);
  return plan;
}

SubbandPlan plan_subbands_by_count(std::size_t num_subcarriers, std::size_t count) {
  if (count == 0 || count > num_subcarriers) throw std::invalid_argument("plan_subbands_by_count: bad count");
  SubbandPlan plan;
  plan.subband_spacing_subcarriers = num_subcarriers / count;
  for (std::size_t i = 0; i < count; ++i) plan.center_indices.push_back(i * plan.subband_spacing_subcarriers);
  return plan;
}

std::size_t bandwidth_division_count(double total_bw_hz, double coherence_bw_hz) {
  if (!(total_bw_hz > 0.0) || !(coherence_bw_hz > 0.0)) {
    throw std::invalid_argument("bandwidth_division_count: bandwidths must be positive");
  }
  return static_cast<std::size_t>(std::floor(total_bw_hz / coherence_bw_hz + kRatioSlack));
}

BitString assemble_key(std::span<const Pmi> pmis) {
  if (pmis.empty()) throw std::invalid_argument("assemble_key: no PMIs");
  BitString bits;
  for (const Pmi& p : pmis) bits.append(p.index(), Pmi::kBits);
  return bits;
}

KeyMaterial KeyMaterial::from_pmis(std::uint64_t epoch, std::vector<Pmi> pmis) {
  KeyMaterial km;
  km.epoch = epoch;
  km.key_bits = assemble_key(pmis);
  km.pmis = std::move(pmis);
  return km;
}

void KeySet::expire(std::uint64_t current_epoch, std::uint64_t staleness) {
  std::erase_if(keys_, [&](const auto& kv) { return kv.first + staleness <= current_epoch; });
}

}  // namespace pmopi::protocol
