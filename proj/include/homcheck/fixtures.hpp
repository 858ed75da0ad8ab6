#ifndef HOMCHECK_FIXTURES_HPP
#define HOMCHECK_FIXTURES_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

namespace homcheck {

/// Knobs of the synthetic test universe. Rates are fractions of the
/// homonymous words that receive one planted violation each.
struct FixtureSpec {
  std::uint64_t seed = 1;
  std::size_t homonymous_words = 24;
  std::size_t single_words = 6;     // one-lexeme controls, outside every homonym check
  std::size_t unattested_words = 6; // homonymous, mapped, absent from training
  std::size_t documents = 18;
  double ohpt_rate = 0.0;
  double ohpd_rate = 0.0;
  double ohpsc_rate = 0.0;
};

struct FixtureSet {
  std::string resource_tsv;
  std::string sense_map_tsv;
  std::string corpus_xml;
  std::string gold_key;
  std::string align_tsv;
  std::string clusters_tsv;
  std::string test_xml;
  std::string test_key;
  nlohmann::ordered_json manifest;
};

/// Deterministic given spec. The manifest lists every planted violation by
/// the instance key the matching checker will report, so tests can compare
/// exception sets for equality rather than mere counts.
FixtureSet generate_fixtures(const FixtureSpec& spec);

/// Writes the eight data files plus manifest.json into dir (created if
/// needed).
void write_fixtures(const FixtureSet& fx, const std::string& dir);

}  // namespace homcheck

#endif
