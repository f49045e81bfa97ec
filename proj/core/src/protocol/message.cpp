#include "pmopi/protocol/message.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace pmopi::protocol {

namespace {

constexpr std::uint64_t kDataNonceFlag = std::uint64_t{1} << 63;
constexpr unsigned kSeqBits = 24;
constexpr std::uint64_t kMaxDataEpoch = (std::uint64_t{1} << (63 - kSeqBits)) - 1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Bytes payload(const Message& m) {
  return std::visit(Overloaded{
                        [](const KeyCheck& k) {
                          Bytes out = k.ciphertext;
                          out.insert(out.end(), k.digest.begin(), k.digest.end());
                          return out;
                        },
                        [](const Data& d) {
                          Bytes out(d.nonce.begin(), d.nonce.end());
                          out.insert(out.end(), d.ciphertext.begin(), d.ciphertext.end());
                          return out;
                        },
                        [](const auto&) { return Bytes{}; },
                    },
                    m);
}

std::uint64_t be_u64(std::span<const std::uint8_t, 8> bytes) {
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  return v;
}

}  // namespace

Nonce data_nonce(std::uint64_t epoch, std::uint32_t seq) {
  if (epoch > kMaxDataEpoch || seq >= (1U << kSeqBits)) throw std::out_of_range("data_nonce: epoch or seq too large");
  return Nonce{kDataNonceFlag | (epoch << kSeqBits) | seq};
}

std::uint64_t data_nonce_epoch(std::uint64_t nonce_value) noexcept {
  return (nonce_value & ~kDataNonceFlag) >> kSeqBits;
}

std::string_view party_name(Party p) noexcept { return p == Party::Alice ? "alice" : "bob"; }

std::string_view message_tag(const Message& m) noexcept {
  return std::visit(Overloaded{
                        [](const ReferenceSignal&) { return std::string_view("ReferenceSignal"); },
                        [](const SoundingSignal&) { return std::string_view("SoundingSignal"); },
                        [](const FlagStatic&) { return std::string_view("FlagStatic"); },
                        [](const FlagDynamic&) { return std::string_view("FlagDynamic"); },
                        [](const RotatedSounding&) { return std::string_view("RotatedSounding"); },
                        [](const KeyCheck&) { return std::string_view("KeyCheck"); },
                        [](const RekeyRequest&) { return std::string_view("RekeyRequest"); },
                        [](const Data&) { return std::string_view("Data"); },
                    },
                    m);
}

std::uint64_t message_epoch(const Message& m) noexcept {
  return std::visit(Overloaded{
                        [](const Data& d) { return data_nonce_epoch(be_u64(d.nonce)); },
                        [](const auto& msg) { return msg.epoch; },
                    },
                    m);
}

std::string format_entry(const TranscriptEntry& entry) {
  std::string line = std::to_string(message_epoch(entry.message));
  line += ',';
  line += party_name(entry.sender);
  line += ',';
  line += message_tag(entry.message);
  line += ',';
  line += to_hex(payload(entry.message));
  return line;
}

std::string format_transcript(const Transcript& transcript) {
  std::string out;
  for (const auto& entry : transcript) {
    out += format_entry(entry);
    out += '\n';
  }
  return out;
}

ParsedLine parse_entry(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) throw std::invalid_argument("parse_entry: expected 4 fields");
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  fields.push_back(line.substr(start));

  std::uint64_t epoch = 0;
  const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), epoch);
  if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
    throw std::invalid_argument("parse_entry: bad epoch");
  }

  Party sender;
  if (fields[1] == "alice") {
    sender = Party::Alice;
  } else if (fields[1] == "bob") {
    sender = Party::Bob;
  } else {
    throw std::invalid_argument("parse_entry: unknown sender");
  }

  const std::string_view tag = fields[2];
  const Bytes bytes = from_hex(fields[3]);
  auto require_empty = [&] {
    if (!bytes.empty()) throw std::invalid_argument("parse_entry: signal frames carry no payload");
  };

  Message msg;
  if (tag == "ReferenceSignal") {
    require_empty();
    msg = ReferenceSignal{epoch};
  } else if (tag == "SoundingSignal") {
    require_empty();
    msg = SoundingSignal{epoch};
  } else if (tag == "FlagStatic") {
    require_empty();
    msg = FlagStatic{epoch};
  } else if (tag == "FlagDynamic") {
    require_empty();
    msg = FlagDynamic{epoch};
  } else if (tag == "RotatedSounding") {
    require_empty();
    msg = RotatedSounding{epoch};
  } else if (tag == "RekeyRequest") {
    require_empty();
    msg = RekeyRequest{epoch};
  } else if (tag == "KeyCheck") {
    Digest digest{};
    if (bytes.size() < digest.size()) throw std::invalid_argument("parse_entry: KeyCheck shorter than digest");
    const auto split = bytes.end() - static_cast<std::ptrdiff_t>(digest.size());
    std::copy(split, bytes.end(), digest.begin());
    msg = KeyCheck{epoch, Bytes(bytes.begin(), split), digest};
  } else if (tag == "Data") {
    std::array<std::uint8_t, 8> nonce{};
    if (bytes.size() < nonce.size()) throw std::invalid_argument("parse_entry: Data shorter than nonce");
    std::copy_n(bytes.begin(), nonce.size(), nonce.begin());
    msg = Data{nonce, Bytes(bytes.begin() + 8, bytes.end())};
  } else {
    throw std::invalid_argument("parse_entry: unknown tag");
  }
  return {epoch, sender, std::move(msg)};
}

}  // namespace pmopi::protocol
