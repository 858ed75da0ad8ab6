#include "homcheck/ohpsc.hpp"

#include <algorithm>

#include "homcheck/util.hpp"

namespace homcheck {

OhpscResult check_ohpsc(const SenseClustering& clustering, const SenseMap& smap,
                        const Lexicon& lex) {
  OhpscResult res;
  for (const SenseCluster& c : clustering.clusters()) {
    if (lex.homonym_ids(c.word).empty()) {
      ++res.excluded_foreign_word;
      continue;
    }
    ClusterVerdict v;
    v.cluster_id = c.cluster_id;
    v.word = c.word;
    for (const auto& k : c.sense_keys) {
      auto hid = smap.homonym_of(k);
      if (hid) {
        v.checked_keys.insert(k);
        v.homonym_ids.insert(*hid);
      } else {
        v.unchecked_keys.insert(k);
      }
    }
    if (v.unverifiable()) {
      ++res.unverifiable;
    } else {
      ++res.checked_clusters;
      if (!v.pure()) ++res.impure;
    }
    res.verdicts.push_back(std::move(v));
  }
  std::sort(res.verdicts.begin(), res.verdicts.end(),
            [](const ClusterVerdict& a, const ClusterVerdict& b) {
              return a.cluster_id < b.cluster_id;
            });
  return res;
}

HypothesisReport ohpsc_report(const OhpscResult& result, const std::string& corpus_name) {
  HypothesisReport rep;
  rep.summary.hypothesis = Hypothesis::OHPSC;
  rep.summary.corpus_name = corpus_name;
  rep.summary.instances = result.checked_clusters;
  rep.summary.apparent_exceptions = result.impure;
  rep.summary.actual_exceptions = result.impure;
  for (const auto& v : result.verdicts) {
    if (v.unverifiable() || v.pure()) continue;
    ExceptionRecord e;
    e.instance_key = v.cluster_id;
    e.evidence["word"] = word_key(v.word);
    e.evidence["homonym_ids"] = v.homonym_ids;
    e.evidence["checked_keys"] = v.checked_keys;
    if (!v.unchecked_keys.empty()) e.evidence["unchecked_keys"] = v.unchecked_keys;
    rep.exceptions.push_back(std::move(e));
  }
  rep.details["unverifiable_clusters"] = result.unverifiable;
  rep.details["excluded_foreign_word"] = result.excluded_foreign_word;
  return rep;
}

std::optional<std::string> clustering_circularity(
    const std::vector<std::string>& smap_provenance, const std::string& clusters_path,
    const std::vector<std::string>& clustering_provenance) {
  std::string basename = clusters_path;
  if (auto slash = basename.rfind('/'); slash != std::string::npos)
    basename = basename.substr(slash + 1);
  for (const auto& decl : smap_provenance) {
    if (decl == clusters_path || decl == basename)
      return "sense map declares provenance '" + decl +
             "', which names the clustering under evaluation";
    for (const auto& tok : clustering_provenance)
      if (!tok.empty() && decl == tok)
        return "sense map and clustering declare the same provenance '" + decl + "'";
    try {
      if (read_file(decl) == read_file(clusters_path))
        return "sense map provenance file '" + decl +
               "' is byte-identical to the clustering under evaluation";
    } catch (...) {
      // declaration is not a readable file; nothing to compare
    }
  }
  return std::nullopt;
}

}  // namespace homcheck
