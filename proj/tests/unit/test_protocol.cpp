#include <gtest/gtest.h>

#include <algorithm>

#include "pmopi/protocol/eve.hpp"
#include "pmopi/protocol/exchange.hpp"
#include "pmopi/protocol/key_check.hpp"
#include "pmopi/protocol/message.hpp"
#include "pmopi/protocol/subbands.hpp"

using namespace pmopi;
using namespace pmopi::protocol;

namespace {

ChannelParams params_with(std::uint64_t seed, double velocity = 0.0) {
  ChannelParams p;
  p.seed = seed;
  p.velocity_kmh = velocity;
  return p;
}

ExchangeConfig default_exchange() {
  ExchangeConfig cfg;
  cfg.subband_plan = plan_subbands(1200, 300e3, 15e3);
  return cfg;
}

std::vector<std::string_view> tags(const Transcript& t) {
  std::vector<std::string_view> out;
  for (const auto& e : t) out.push_back(message_tag(e.message));
  return out;
}

}  // namespace

TEST(Subbands, GridPlan) {
  const auto plan = plan_subbands(1200, 300e3, 15e3);
  EXPECT_EQ(plan.size(), 60u);
  EXPECT_EQ(plan.subband_spacing_subcarriers, 20u);
  EXPECT_EQ(plan.key_bits(), 240u);
  EXPECT_EQ(plan.center_indices.front(), 0u);
  EXPECT_EQ(plan.center_indices.back(), 1180u);
}

TEST(Subbands, FullBandCoherenceGivesOneSubband) {
  const auto plan = plan_subbands(100, 100 * 15e3, 15e3);
  ASSERT_EQ(plan.size(), 1u);
  EXPECT_EQ(plan.center_indices[0], 0u);
  EXPECT_EQ(plan_subbands(100, 1e9, 15e3).size(), 1u);
}

TEST(Subbands, ByCountAndBandwidthDivision) {
  EXPECT_EQ(plan_subbands_by_count(1200, 25).key_bits(), 100u);
  EXPECT_EQ(bandwidth_division_count(20e6, 300e3), 66u);
  EXPECT_EQ(bandwidth_division_count(20e6, 300e3) * Pmi::kBits, 264u);
  EXPECT_THROW(plan_subbands_by_count(10, 11), std::invalid_argument);
}

TEST(AssembleKey, Encoding) {
  EXPECT_EQ(assemble_key(std::vector<Pmi>{Pmi(5)}).to_string(), "0101");
  EXPECT_EQ(assemble_key(std::vector<Pmi>{Pmi(0), Pmi(15)}).to_string(), "00001111");
  EXPECT_EQ(assemble_key(std::vector<Pmi>(66, Pmi(3))).size(), 264u);
  EXPECT_THROW(assemble_key(std::vector<Pmi>{}), std::invalid_argument);
}

TEST(KeySet, ExpiresStaleEpochs) {
  KeySet ks;
  for (std::uint64_t e = 0; e < 12; ++e) {
    ks.insert(e, BitString::from_string("1"));
    ks.expire(e, 8);
  }
  EXPECT_EQ(ks.size(), 8u);
  EXPECT_EQ(ks.entries().begin()->first, 4u);
}

TEST(KeyCheck, RoundTripAndShape) {
  const BitString key = BitString::from_string("1100101011110000");
  Rng a(77), b(77);
  const KeyCheck m1 = make_key_check(key, 3, a);
  const KeyCheck m2 = make_key_check(key, 3, b);
  EXPECT_EQ(m1, m2);
  EXPECT_EQ(m1.digest.size(), 32u);
  EXPECT_EQ(m1.ciphertext.size(), kKeyCheckChallengeBytes);
  const Bytes plain = decrypt(CipherKey(key), Nonce{3}, m1.ciphertext);
  EXPECT_EQ(sha256(plain), m1.digest);
  EXPECT_TRUE(verify_key_check(m1, key));
}

TEST(KeyCheck, SingleBitFlipsAlwaysDetected) {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    BitString key;
    for (int k = 0; k < 240; ++k) key.push_back(rng() & 1U);
    const KeyCheck msg = make_key_check(key, static_cast<std::uint64_t>(i), rng);
    BitString bad = key;
    bad.flip(rng() % key.size());
    EXPECT_FALSE(verify_key_check(msg, bad));
    EXPECT_TRUE(verify_key_check(msg, key));
  }
}

TEST(KeyCheck, EmptyChallenge) {
  const KeyCheck msg{0, {}, sha256("")};
  EXPECT_TRUE(verify_key_check(msg, BitString::from_string("1")));
}

TEST(DataFrames, NonceLayoutAndRoundTrip) {
  const Nonce n = data_nonce(9, 4);
  EXPECT_EQ(n.value >> 63, 1u);
  EXPECT_EQ(data_nonce_epoch(n.value), 9u);
  EXPECT_NE(n.value, 9u);  // never collides with a key-check nonce
  const BitString key = BitString::from_string("1011001110001111");
  const Bytes pt{1, 2, 3, 4, 5};
  const Data d = seal_data(key, 9, 4, pt);
  EXPECT_EQ(open_data(d, key), pt);
}

TEST(Transcript, FormatParseRoundTrip) {
  Rng rng(1);
  const BitString key = BitString::from_string("0110");
  const Transcript t{
      {0.0, Party::Alice, ReferenceSignal{0}},
      {0.001, Party::Bob, FlagStatic{0}},
      {0.001, Party::Bob, RotatedSounding{0}},
      {0.001, Party::Alice, make_key_check(key, 0, rng)},
      {0.001, Party::Bob, RekeyRequest{0}},
      {0.002, Party::Alice, seal_data(key, 0, 1, Bytes{9, 8, 7})},
  };
  const std::string text = format_transcript(t);
  EXPECT_EQ(format_entry(t[0]), "0,alice,ReferenceSignal,");
  std::size_t line_start = 0;
  for (const auto& entry : t) {
    const std::size_t end = text.find('\n', line_start);
    ASSERT_NE(end, std::string::npos);
    const ParsedLine parsed = parse_entry(std::string_view(text).substr(line_start, end - line_start));
    EXPECT_EQ(parsed.sender, entry.sender);
    EXPECT_EQ(parsed.message, entry.message);
    line_start = end + 1;
  }
  EXPECT_THROW(parse_entry("0,carol,ReferenceSignal,"), std::invalid_argument);
  EXPECT_THROW(parse_entry("0,alice,Nope,"), std::invalid_argument);
}

TEST(Exchange, StaticNoiselessFastModeMatches) {
  const ChannelProcess ch(params_with(5));
  Rng rng(1);
  const auto out = run_exchange(ch, default_exchange(), rng);
  EXPECT_TRUE(out.matched);
  EXPECT_EQ(out.rekey_rounds, 0u);
  EXPECT_EQ(out.key_alice, out.key_bob);
  EXPECT_EQ(out.key_alice.key_bits.size(), 240u);
  EXPECT_EQ(tags(out.transcript), (std::vector<std::string_view>{"ReferenceSignal", "SoundingSignal", "KeyCheck"}));
  EXPECT_EQ(out.alice_keys, out.bob_keys);
  EXPECT_EQ(out.alice_keys.size(), 1u);
}

TEST(Exchange, DeterministicGivenSeeds) {
  const ChannelProcess ch(params_with(8, 3.0));
  ExchangeConfig cfg = default_exchange();
  cfg.snr = EstimationNoise::from_db(10.0);
  cfg.sounding_delay_s = 1e-3;
  Rng a(4), b(4);
  const auto x = run_exchange(ch, cfg, a);
  const auto y = run_exchange(ch, cfg, b);
  EXPECT_EQ(format_transcript(x.transcript), format_transcript(y.transcript));
  EXPECT_EQ(x.key_bob, y.key_bob);
}

TEST(Exchange, RekeyBudgetExhaustion) {
  const ChannelProcess ch(params_with(6));
  ExchangeConfig cfg = default_exchange();
  cfg.snr = EstimationNoise::from_db(-20.0);
  cfg.max_rekey_rounds = 3;
  Rng rng(9);
  const auto out = run_exchange(ch, cfg, rng);
  EXPECT_FALSE(out.matched);
  EXPECT_EQ(out.rekey_rounds, 3u);
  EXPECT_EQ(out.epochs.size(), 3u);
  const auto seen = tags(out.transcript);
  EXPECT_EQ(std::count(seen.begin(), seen.end(), "RekeyRequest"), 3);
  EXPECT_TRUE(out.alice_keys.empty());
  EXPECT_TRUE(out.bob_keys.empty());
}

TEST(Exchange, ConfigValidation) {
  const ChannelProcess ch(params_with(1));
  Rng rng(1);
  ExchangeConfig cfg;
  EXPECT_THROW(run_exchange(ch, cfg, rng), std::invalid_argument);
  cfg = default_exchange();
  cfg.max_rekey_rounds = 0;
  EXPECT_THROW(run_exchange(ch, cfg, rng), std::invalid_argument);
  cfg = default_exchange();
  cfg.subband_plan.center_indices = {1200};
  EXPECT_THROW(run_exchange(ch, cfg, rng), std::invalid_argument);
}

TEST(Exchange, KeySetsStaySynchronisedUnderStaleness) {
  const ChannelProcess ch(params_with(12));
  ExchangeConfig cfg = default_exchange();
  cfg.key_epochs = 12;
  cfg.key_staleness_epochs = 8;
  cfg.sounding_delay_s = 1e-3;
  Rng rng(3);
  const auto out = run_exchange(ch, cfg, rng);
  EXPECT_EQ(out.epochs.size(), 12u);
  EXPECT_EQ(out.alice_keys, out.bob_keys);
  EXPECT_EQ(out.alice_keys.size(), 8u);
  EXPECT_EQ(out.alice_keys.entries().begin()->first, 4u);
}

TEST(SlowMode, StaticChannelRotatesFromSecondEpoch) {
  const ChannelProcess ch(params_with(31));
  ExchangeConfig cfg = default_exchange();
  cfg.mode = Mode::SlowVarying;
  cfg.key_epochs = 2;
  Rng rng(5);
  const auto out = run_exchange(ch, cfg, rng);
  ASSERT_EQ(out.epochs.size(), 2u);
  EXPECT_FALSE(out.epochs[0].rotated);
  EXPECT_TRUE(out.epochs[1].rotated);
  EXPECT_TRUE(out.matched);
  EXPECT_EQ(tags(out.transcript),
            (std::vector<std::string_view>{"ReferenceSignal", "SoundingSignal", "KeyCheck", "ReferenceSignal",
                                           "FlagStatic", "RotatedSounding", "KeyCheck"}));
  std::size_t changed = 0;
  for (std::size_t i = 0; i < 60; ++i) changed += out.epochs[0].bob_pmis[i] != out.epochs[1].bob_pmis[i] ? 1 : 0;
  EXPECT_GE(changed, 48u);  // about 15/16 of 60 expected
}

TEST(SlowMode, BobFlagsStaticThenDynamic) {
  const ChannelProcess ch(params_with(32, 60.0));
  PartyConfig pc;
  pc.mode = Mode::SlowVarying;
  pc.plan = plan_subbands(1200, 300e3, 15e3);
  Bob bob(pc, Radio(ch, EstimationNoise::noiseless(), Rng(1)), Rng(2));
  auto frame_tags = [](const std::vector<AirFrame>& frames) {
    std::vector<std::string_view> out;
    for (const auto& f : frames) out.push_back(message_tag(f.message));
    return out;
  };
  using V = std::vector<std::string_view>;
  EXPECT_EQ(frame_tags(bob.receive({0.0, Party::Alice, ReferenceSignal{0}, {}})), V{"SoundingSignal"});
  const auto second = bob.receive({0.0, Party::Alice, ReferenceSignal{1}, {}});
  EXPECT_EQ(frame_tags(second), (V{"FlagStatic", "RotatedSounding"}));
  EXPECT_EQ(second[1].rotations.size(), 60u);
  EXPECT_TRUE(bob.rotated_last_epoch());
  // One second at 60 km/h decorrelates every subband.
  EXPECT_EQ(frame_tags(bob.receive({1.0, Party::Alice, ReferenceSignal{2}, {}})), (V{"FlagDynamic", "SoundingSignal"}));
  EXPECT_FALSE(bob.rotated_last_epoch());
}

TEST(SlowMode, FastModeNeverRotates) {
  const ChannelProcess ch(params_with(34));
  ExchangeConfig cfg = default_exchange();
  cfg.key_epochs = 3;
  Rng rng(7);
  const auto out = run_exchange(ch, cfg, rng);
  for (const auto& e : out.epochs) EXPECT_FALSE(e.rotated);
  for (auto t : tags(out.transcript)) {
    EXPECT_NE(t, "FlagStatic");
    EXPECT_NE(t, "RotatedSounding");
  }
}

TEST(SlowMode, IdentityRotationReproducesFastMode) {
  const ChannelProcess ch(params_with(40, 3.0));
  ExchangeConfig fast = default_exchange();
  fast.snr = EstimationNoise::from_db(10.0);
  fast.sounding_delay_s = 1e-3;
  ExchangeConfig slow = fast;
  slow.mode = Mode::SlowVarying;
  slow.rotation_policy = RotationPolicy::Always;
  slow.rotations = [](Rng&) { return ComplexMatrix::identity(4); };
  Rng a(10), b(10);
  const auto x = run_exchange(ch, fast, a);
  const auto y = run_exchange(ch, slow, b);
  EXPECT_TRUE(y.epochs[0].rotated);
  EXPECT_EQ(x.epochs[0].alice_pmis, y.epochs[0].alice_pmis);
  EXPECT_EQ(x.epochs[0].bob_pmis, y.epochs[0].bob_pmis);
}

TEST(Eve, ColocatedEveRecoversBobsKey) {
  const ChannelProcess ch(params_with(50));
  Rng rng(11);
  const auto out = run_exchange(ch, ch, ch, default_exchange(), rng);
  EXPECT_EQ(out.eve_key.key_bits, out.key_bob.key_bits);
}

TEST(Eve, EstimateFromTranscriptOnly) {
  const ChannelProcess ch(params_with(51));
  const auto cfg = default_exchange();
  Rng rng(12);
  const auto out = run_exchange(ch, ch, ch, cfg, rng);
  const auto eve = eve_estimate(out.transcript, ch, ch, cfg.rho, cfg.codebook, cfg.subband_plan);
  ASSERT_TRUE(eve.has_value());
  EXPECT_EQ(*eve, out.eve_key);
  EXPECT_FALSE(eve_estimate(Transcript{}, ch, ch, cfg.rho, cfg.codebook, cfg.subband_plan).has_value());
}

TEST(Eve, IndependentChannelsDoNotLeakKey) {
  std::size_t hits = 0, total = 0, full = 0;
  const auto cfg = default_exchange();
  for (std::uint64_t s = 0; s < 200; ++s) {
    const ChannelProcess ch(params_with(1000 + s));
    Rng rng(s);
    const auto out = run_exchange(ch, cfg, rng);
    for (std::size_t i = 0; i < out.key_bob.pmis.size(); ++i) hits += out.eve_key.pmis[i] == out.key_bob.pmis[i];
    total += out.key_bob.pmis.size();
    full += out.eve_key.key_bits == out.key_bob.key_bits;
  }
  EXPECT_LE(static_cast<double>(hits) / static_cast<double>(total), 0.25);
  EXPECT_EQ(full, 0u);
}
