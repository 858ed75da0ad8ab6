#ifndef HOMCHECK_OHPSC_HPP
#define HOMCHECK_OHPSC_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homcheck/corpus.hpp"
#include "homcheck/lexicon.hpp"
#include "homcheck/report.hpp"

namespace homcheck {

struct ClusterVerdict {
  std::string cluster_id;
  Word word;
  std::set<std::string> checked_keys;    // keys found in the sense map
  std::set<std::string> unchecked_keys;  // the rest of the cluster's keys
  std::set<std::string> homonym_ids;     // over checked keys

  bool pure() const { return homonym_ids.size() <= 1; }
  /// Zero checked keys: nothing to verify, kept out of the denominator.
  bool unverifiable() const { return checked_keys.empty(); }
};

struct OhpscResult {
  std::vector<ClusterVerdict> verdicts;  // participating clusters, sorted by cluster_id
  std::uint64_t checked_clusters = 0;    // verifiable participants (the denominator)
  std::uint64_t impure = 0;
  std::uint64_t unverifiable = 0;
  /// Clusters of words absent from the homonym resource: counted, not judged.
  std::uint64_t excluded_foreign_word = 0;
};

OhpscResult check_ohpsc(const SenseClustering& clustering, const SenseMap& smap,
                        const Lexicon& lex);

HypothesisReport ohpsc_report(const OhpscResult& result, const std::string& corpus_name);

/// Circularity guard: the clustering the sense map was derived from must not
/// be evaluated against that map. Returns the reason to refuse, if any:
/// either a provenance declaration of the map names the clustering (by path,
/// basename or the clustering's own provenance token), or a declared
/// provenance file is byte-identical to the clustering file.
std::optional<std::string> clustering_circularity(
    const std::vector<std::string>& smap_provenance, const std::string& clusters_path,
    const std::vector<std::string>& clustering_provenance);

}  // namespace homcheck

#endif
