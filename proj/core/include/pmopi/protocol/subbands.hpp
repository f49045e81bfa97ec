#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "pmopi/bit_string.hpp"
#include "pmopi/mimo.hpp"

namespace pmopi::protocol {

/// Subcarriers at which each party extracts one PMI.
struct SubbandPlan {
  std::vector<std::size_t> center_indices;
  std::size_t subband_spacing_subcarriers = 1;

  std::size_t size() const noexcept { return center_indices.size(); }
  std::size_t key_bits() const noexcept { return size() * Pmi::kBits; }
};

/// Centers every ceil(coherence_bw / spacing) subcarriers starting at 0;
/// floor(num_subcarriers / that spacing) of them. A spacing wider than the
/// band yields one subband at index 0.
SubbandPlan plan_subbands(std::size_t num_subcarriers, double coherence_bw_hz, double spacing_hz);

/// `count` subbands spread evenly over the grid (spacing floor(N / count)).
SubbandPlan plan_subbands_by_count(std::size_t num_subcarriers, std::size_t count);

/// floor(total_bw / coherence_bw): the independent-subband count obtained by
/// dividing the whole system bandwidth rather than the usable subcarrier grid.
std::size_t bandwidth_division_count(double total_bw_hz, double coherence_bw_hz);

/// Concatenated 4-bit big-endian PMI codes in subband order. Throws on an
/// empty list.
BitString assemble_key(std::span<const Pmi> pmis);

struct KeyMaterial {
  std::uint64_t epoch = 0;
  std::vector<Pmi> pmis;
  BitString key_bits;

  static KeyMaterial from_pmis(std::uint64_t epoch, std::vector<Pmi> pmis);
  bool operator==(const KeyMaterial&) const = default;
};

/// Keys a party holds, by epoch. Both parties apply the same expiry rule so
/// the sets stay equal.
class KeySet {
 public:
  void insert(std::uint64_t epoch, BitString bits) { keys_[epoch] = std::move(bits); }
  /// Drops every key with epoch + staleness <= current_epoch.
  void expire(std::uint64_t current_epoch, std::uint64_t staleness);

  const std::map<std::uint64_t, BitString>& entries() const noexcept { return keys_; }
  bool empty() const noexcept { return keys_.empty(); }
  std::size_t size() const noexcept { return keys_.size(); }
  bool operator==(const KeySet&) const = default;

 private:
  std::map<std::uint64_t, BitString> keys_;
};

}  // namespace pmopi::protocol
