#include "render.hpp"

#include <sstream>

#include "chainlab/errors.hpp"

namespace chainlab::cli {

namespace {

constexpr const char* kSchema = "chainlab/1";

std::string latexEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '_': out += "\\_"; break;
      case '^': out += "\\^{}"; break;
      case '%': out += "\\%"; break;
      case '&': out += "\\&"; break;
      case '#': out += "\\#"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

Format parseFormat(const std::string& name) {
  if (name == "text") return Format::Text;
  if (name == "latex") return Format::Latex;
  if (name == "json") return Format::Json;
  throw DomainError("unknown format '" + name + "' (expected text, latex or json)");
}

nlohmann::json toJson(const Document& doc) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : doc.report.entries) {
    entries.push_back({{"family", e.family},
                       {"order", e.order},
                       {"name", e.name},
                       {"status", toString(e.status)},
                       {"residual", e.residual},
                       {"anchor", e.anchor},
                       {"detail", e.detail}});
  }
  nlohmann::json j = {{"schema", kSchema},
                      {"command", doc.command},
                      {"subject", doc.report.subject},
                      {"entries", entries},
                      {"errata", doc.report.errata},
                      {"status", toString(doc.report.status())}};
  if (!doc.data.empty()) j["data"] = doc.data;
  return j;
}

std::string render(const Document& doc, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << toJson(doc).dump(2) << "\n";
      break;
    case Format::Text:
      for (const auto& line : doc.text) os << line << "\n";
      if (!doc.text.empty()) os << "\n";
      os << doc.report.subject << "\n";
      for (const auto& e : doc.report.entries) {
        os << "  [" << toString(e.status) << "] " << e.family << " " << e.order << " " << e.name << "\n";
        if (!e.residual.empty()) os << "      residual: " << e.residual << "\n";
        os << "      anchor: " << e.anchor << "\n";
        if (!e.detail.empty()) os << "      detail: " << e.detail << "\n";
      }
      if (!doc.report.errata.empty()) {
        os << "errata:\n";
        for (const auto& e : doc.report.errata) os << "  - " << e << "\n";
      }
      os << "status: " << toString(doc.report.status()) << "\n";
      break;
    case Format::Latex:
      for (const auto& line : doc.latex) os << line << "\n";
      os << "% " << latexEscape(doc.report.subject) << "\n";
      for (const auto& e : doc.report.entries) {
        os << "% [" << toString(e.status) << "] " << e.family << " " << e.order << " " << latexEscape(e.name) << ": "
           << latexEscape(e.anchor) << "\n";
      }
      for (const auto& e : doc.report.errata) os << "% erratum: " << latexEscape(e) << "\n";
      os << "% status: " << toString(doc.report.status()) << "\n";
      break;
  }
  return os.str();
}

}  // namespace chainlab::cli
