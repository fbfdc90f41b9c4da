#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "chainlab/report.hpp"

namespace chainlab::cli {

enum class Format { Text, Latex, Json };

Format parseFormat(const std::string& name);

/// Everything one command emits: verb-specific lines for the text and LaTeX
/// forms, structured data for JSON, and the verification report.
struct Document {
  std::string command;
  VerificationReport report;
  std::vector<std::string> text;
  std::vector<std::string> latex;
  nlohmann::json data = nlohmann::json::object();
};

nlohmann::json toJson(const Document& doc);
std::string render(const Document& doc, Format format);

}  // namespace chainlab::cli
