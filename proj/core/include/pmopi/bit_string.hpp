#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pmopi {

/// Ordered sequence of bits, most significant first.
class BitString {
 public:
  BitString() = default;
  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_.at(i) != 0; }

  void push_back(bool bit) { bits_.push_back(bit ? 1 : 0); }
  /// Appends the low `width` bits of value, most significant first.
  void append(std::uint64_t value, unsigned width);
  void flip(std::size_t i);

  /// Big-endian packing, zero-padded to whole bytes.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_string() const;

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Lower-case hex encoding.
std::string to_hex(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace pmopi
