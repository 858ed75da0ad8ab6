#ifndef HOMCHECK_REPORT_HPP
#define HOMCHECK_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace homcheck {

enum class Hypothesis { OHPT, OHPD, OHPC, OHPSC };

std::string hypothesis_name(Hypothesis h);
std::optional<Hypothesis> hypothesis_from_name(const std::string& name);

/// Focus column of the results table ("translations", "documents", ...).
std::string hypothesis_focus(Hypothesis h);

enum class ExceptionStatus { Unadjudicated, Actual, DataError };

std::string exception_status_name(ExceptionStatus s);

/// One apparent exception, keyed the way adjudication files address it:
/// OHPT "lemma#p#target", OHPD "lemma#p#document_id", OHPC test instance id,
/// OHPSC cluster id.
struct ExceptionRecord {
  std::string instance_key;
  nlohmann::ordered_json evidence;  // occurrence listing for the adjudicator
  ExceptionStatus status = ExceptionStatus::Unadjudicated;
  std::string category;  // set when adjudicated
  std::string note;
};

struct HypothesisSummary {
  Hypothesis hypothesis = Hypothesis::OHPT;
  std::string corpus_name;
  std::uint64_t instances = 0;
  std::uint64_t apparent_exceptions = 0;
  /// Exceptions still standing after data-error adjudications are removed.
  /// Equals apparent until apply_adjudication runs (conservative default).
  std::uint64_t actual_exceptions = 0;
  /// Set for OHPC: skipped unseen words make its support a lower bound,
  /// not an exact rate.
  bool lower_bound = false;

  std::string support_pct() const;
};

/// A checker run: the summary line plus everything an adjudicator needs.
struct HypothesisReport {
  HypothesisSummary summary;
  std::vector<ExceptionRecord> exceptions;  // sorted by instance_key
  /// Input accounting that is not an exception (skip counters etc).
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

enum class AdjVerdict { Actual, DataError };

struct AdjudicationRecord {
  Hypothesis hypothesis = Hypothesis::OHPT;
  std::string instance_key;
  AdjVerdict verdict = AdjVerdict::Actual;
  std::string category;
  std::string note;
};

/// Categories from the error taxonomy; anything else is rejected at load.
bool valid_adjudication_category(const std::string& c);

std::vector<AdjudicationRecord> load_adjudication(const std::string& path);

/// Marks each matched exception, recomputes actual_exceptions. A record whose
/// key matches no apparent exception of the right hypothesis is an error.
void apply_adjudication(HypothesisReport& report,
                        const std::vector<AdjudicationRecord>& records);

enum class ReportFormat { Text, Json, Csv };

std::optional<ReportFormat> report_format_from_name(const std::string& name);

/// Infers Json/Csv/Text from an output path's extension; json when unknown.
ReportFormat report_format_from_path(const std::string& path);

std::string emit_report(const HypothesisReport& report, ReportFormat format);

/// The combined results table over several runs, one row per summary.
std::string emit_summary_table(const std::vector<HypothesisSummary>& rows,
                               ReportFormat format);

nlohmann::ordered_json report_to_json(const HypothesisReport& report);
HypothesisReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace homcheck

#endif
