#pragma once

// JSON documents for datasets and models.
//
// Dataset:
//   {"universe": ["i","j"], "menus": [{"members": ["i","j"], "probabilities": ["0.5","0.5"]}]}
// Model:
//   {"name": "...", "provenance": "...", "universe": [...],
//    "blocks": [{"menu": ["i","j"], "Q": [["0.9","0.1"],["0.1","0.9"]], "pi": ["0.5","0.5"]}]}
//
// Numbers may be decimal strings (kept verbatim for exact arithmetic) or JSON numbers.
// Rows of Q and entries of pi follow the order of the listed members.

#include <filesystem>
#include <string>
#include <string_view>

#include "msc/core.hpp"

namespace msc {

enum class DocumentKind { dataset, model };

/// Looks at the top-level keys: "blocks" means a model, "menus" a dataset.
DocumentKind detect_document(std::string_view text, const std::string& source = "<input>");

/// Throws ParseError("<source>:<json pointer>", ...) on malformed content or out-of-range values.
/// Sums and binary-menu closure are left to validate_dataset.
ChoiceDataset parse_dataset(std::string_view text, const std::string& source = "<input>");
MscModel parse_model(std::string_view text, const std::string& source = "<input>");

std::string dump_dataset(const ChoiceDataset& data);
std::string dump_model(const MscModel& model);

std::string read_text(const std::filesystem::path& path);

ChoiceDataset load_dataset(const std::filesystem::path& path);
MscModel load_model(const std::filesystem::path& path);
void save_dataset(const ChoiceDataset& data, const std::filesystem::path& path);
void save_model(const MscModel& model, const std::filesystem::path& path);

}  // namespace msc
