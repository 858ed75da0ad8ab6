#include "homcheck/report.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "homcheck/errors.hpp"
#include "homcheck/stats.hpp"
#include "homcheck/util.hpp"

namespace homcheck {

std::string hypothesis_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::OHPT: return "OHPT";
    case Hypothesis::OHPD: return "OHPD";
    case Hypothesis::OHPC: return "OHPC";
    case Hypothesis::OHPSC: return "OHPSC";
  }
  return "?";
}

std::optional<Hypothesis> hypothesis_from_name(const std::string& name) {
  std::string up = name;
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (up == "OHPT") return Hypothesis::OHPT;
  if (up == "OHPD") return Hypothesis::OHPD;
  if (up == "OHPC") return Hypothesis::OHPC;
  if (up == "OHPSC") return Hypothesis::OHPSC;
  return std::nullopt;
}

std::string hypothesis_focus(Hypothesis h) {
  switch (h) {
    case Hypothesis::OHPT: return "translations";
    case Hypothesis::OHPD: return "documents";
    case Hypothesis::OHPC: return "collocations";
    case Hypothesis::OHPSC: return "sense clusters";
  }
  return "?";
}

std::string exception_status_name(ExceptionStatus s) {
  switch (s) {
    case ExceptionStatus::Unadjudicated: return "unadjudicated";
    case ExceptionStatus::Actual: return "actual";
    case ExceptionStatus::DataError: return "data-error";
  }
  return "?";
}

std::string HypothesisSummary::support_pct() const {
  if (instances == 0) return "n/a";
  return format_support_pct(instances, actual_exceptions);
}

bool valid_adjudication_category(const std::string& c) {
  static const std::set<std::string> kCategories = {
      "sense-annotation", "translation",        "cluster-resource",
      "homonym-mapping",  "parallel-homonymy", "other"};
  return kCategories.count(c) > 0;
}

std::vector<AdjudicationRecord> load_adjudication(const std::string& path) {
  std::vector<AdjudicationRecord> out;
  for_each_tsv_row(path, [&](const std::vector<std::string>& f, std::size_t lineno) {
    if (f.size() != 5)
      throw ParseError(path, lineno,
                       "expected 'hypothesis \\t instance_key \\t verdict \\t category \\t "
                       "note', got " + std::to_string(f.size()) + " fields");
    AdjudicationRecord r;
    auto h = hypothesis_from_name(f[0]);
    if (!h) throw ParseError(path, lineno, "unknown hypothesis '" + f[0] + "'");
    r.hypothesis = *h;
    r.instance_key = f[1];
    if (r.instance_key.empty()) throw ParseError(path, lineno, "empty instance_key");
    if (f[2] == "actual")
      r.verdict = AdjVerdict::Actual;
    else if (f[2] == "data-error")
      r.verdict = AdjVerdict::DataError;
    else
      throw ParseError(path, lineno, "verdict must be 'actual' or 'data-error', got '" + f[2] + "'");
    if (!valid_adjudication_category(f[3]))
      throw ParseError(path, lineno, "unknown category '" + f[3] + "'");
    r.category = f[3];
    r.note = f[4];
    out.push_back(std::move(r));
  });
  return out;
}

void apply_adjudication(HypothesisReport& report,
                        const std::vector<AdjudicationRecord>& records) {
  std::map<std::string, ExceptionRecord*> by_key;
  for (auto& e : report.exceptions) by_key[e.instance_key] = &e;
  for (const auto& r : records) {
    if (r.hypothesis != report.summary.hypothesis) continue;
    auto it = by_key.find(r.instance_key);
    if (it == by_key.end())
      throw ValidationError("adjudication for " + hypothesis_name(r.hypothesis) +
                            " key '" + r.instance_key +
                            "' matches no apparent exception");
    it->second->status =
        r.verdict == AdjVerdict::DataError ? ExceptionStatus::DataError
                                           : ExceptionStatus::Actual;
    it->second->category = r.category;
    it->second->note = r.note;
  }
  std::uint64_t data_errors = 0;
  for (const auto& e : report.exceptions)
    if (e.status == ExceptionStatus::DataError) ++data_errors;
  report.summary.actual_exceptions = report.summary.apparent_exceptions - data_errors;
}

std::optional<ReportFormat> report_format_from_name(const std::string& name) {
  if (name == "text" || name == "txt") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

ReportFormat report_format_from_path(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot == std::string::npos) return ReportFormat::Json;
  std::string ext = path.substr(dot + 1);
  return report_format_from_name(ext).value_or(ReportFormat::Json);
}

namespace {

nlohmann::ordered_json summary_to_json(const HypothesisSummary& s) {
  nlohmann::ordered_json j;
  j["hypothesis"] = hypothesis_name(s.hypothesis);
  j["focus"] = hypothesis_focus(s.hypothesis);
  j["corpus"] = s.corpus_name;
  j["instances"] = s.instances;
  j["apparent_exceptions"] = s.apparent_exceptions;
  j["actual_exceptions"] = s.actual_exceptions;
  j["support_pct"] = s.support_pct();
  j["lower_bound"] = s.lower_bound;
  return j;
}

HypothesisSummary summary_from_json(const nlohmann::ordered_json& j) {
  HypothesisSummary s;
  auto h = hypothesis_from_name(j.at("hypothesis").get<std::string>());
  if (!h) throw ValidationError("unknown hypothesis in report json");
  s.hypothesis = *h;
  s.corpus_name = j.at("corpus").get<std::string>();
  s.instances = j.at("instances").get<std::uint64_t>();
  s.apparent_exceptions = j.at("apparent_exceptions").get<std::uint64_t>();
  s.actual_exceptions = j.at("actual_exceptions").get<std::uint64_t>();
  s.lower_bound = j.value("lower_bound", false);
  return s;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

constexpr const char* kSummaryHeader =
    "hypothesis,focus,corpus,instances,apparent_exceptions,actual_exceptions,"
    "support_pct,support_kind";

std::string summary_csv_row(const HypothesisSummary& s) {
  return hypothesis_name(s.hypothesis) + "," + csv_quote(hypothesis_focus(s.hypothesis)) +
         "," + csv_quote(s.corpus_name) + "," + std::to_string(s.instances) + "," +
         std::to_string(s.apparent_exceptions) + "," +
         std::to_string(s.actual_exceptions) + "," + s.support_pct() +
         (s.lower_bound ? ",lower-bound" : ",exact");
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      if (i + 1 < row.size())
        out += std::string(widths[i] - row[i].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> summary_table_row(const HypothesisSummary& s) {
  return {hypothesis_name(s.hypothesis),
          hypothesis_focus(s.hypothesis),
          s.corpus_name,
          std::to_string(s.instances),
          std::to_string(s.apparent_exceptions),
          std::to_string(s.actual_exceptions),
          s.support_pct() + (s.lower_bound ? " (lower bound)" : "")};
}

}  // namespace

nlohmann::ordered_json report_to_json(const HypothesisReport& report) {
  nlohmann::ordered_json j;
  j["summary"] = summary_to_json(report.summary);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : report.exceptions) {
    nlohmann::ordered_json je;
    je["instance_key"] = e.instance_key;
    je["status"] = exception_status_name(e.status);
    if (!e.category.empty()) je["category"] = e.category;
    if (!e.note.empty()) je["note"] = e.note;
    je["evidence"] = e.evidence;
    arr.push_back(std::move(je));
  }
  j["exceptions"] = std::move(arr);
  j["details"] = report.details;
  return j;
}

HypothesisReport report_from_json(const nlohmann::ordered_json& j) {
  HypothesisReport r;
  r.summary = summary_from_json(j.at("summary"));
  for (const auto& je : j.at("exceptions")) {
    ExceptionRecord e;
    e.instance_key = je.at("instance_key").get<std::string>();
    std::string st = je.at("status").get<std::string>();
    if (st == "actual")
      e.status = ExceptionStatus::Actual;
    else if (st == "data-error")
      e.status = ExceptionStatus::DataError;
    else
      e.status = ExceptionStatus::Unadjudicated;
    e.category = je.value("category", "");
    e.note = je.value("note", "");
    e.evidence = je.at("evidence");
    r.exceptions.push_back(std::move(e));
  }
  r.details = j.value("details", nlohmann::ordered_json::object());
  return r;
}

std::string emit_report(const HypothesisReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::Csv: {
      std::string out = kSummaryHeader;
      out += "\n";
      out += summary_csv_row(report.summary);
      out += "\n\ninstance_key,status,category,note\n";
      for (const auto& e : report.exceptions)
        out += csv_quote(e.instance_key) + "," + exception_status_name(e.status) + "," +
               csv_quote(e.category) + "," + csv_quote(e.note) + "\n";
      return out;
    }
    case ReportFormat::Text: {
      std::vector<std::vector<std::string>> rows;
      rows.push_back({"Hypothesis", "Focus", "Corpus", "Instances", "Apparent", "Actual",
                      "Support %"});
      rows.push_back(summary_table_row(report.summary));
      std::string out = render_table(rows);
      if (!report.exceptions.empty()) {
        out += "\nExceptions:\n";
        for (const auto& e : report.exceptions) {
          out += "  " + e.instance_key + " [" + exception_status_name(e.status) + "]";
          if (!e.category.empty()) out += " " + e.category;
          if (!e.note.empty()) out += ": " + e.note;
          out += "\n";
          out += "    evidence: " + e.evidence.dump() + "\n";
        }
      }
      if (!report.details.empty())
        out += "\nDetails: " + report.details.dump() + "\n";
      return out;
    }
  }
  throw ValidationError("unknown report format");
}

std::string emit_summary_table(const std::vector<HypothesisSummary>& rows,
                               ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& s : rows) arr.push_back(summary_to_json(s));
      return arr.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::string out = kSummaryHeader;
      out += "\n";
      for (const auto& s : rows) {
        out += summary_csv_row(s);
        out += "\n";
      }
      return out;
    }
    case ReportFormat::Text: {
      std::vector<std::vector<std::string>> t;
      t.push_back({"#", "Hypothesis", "Focus", "Corpus", "Instances", "Apparent", "Actual",
                   "Support %"});
      std::size_t i = 0;
      for (const auto& s : rows) {
        auto row = summary_table_row(s);
        row.insert(row.begin(), std::to_string(++i));
        t.push_back(std::move(row));
      }
      return render_table(t);
    }
  }
  throw ValidationError("unknown report format");
}

}  // namespace homcheck
