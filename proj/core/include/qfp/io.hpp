#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "qfp/optimizer.hpp"
#include "qfp/simulator.hpp"
#include "qfp/spectral.hpp"

namespace qfp {

// {"p": int, "method": string, "coeffs": [int], "params": {"t0": int, "T": [int]}?}
// plus an optional "proper" flag for GAP-derived sets.
std::string coefficient_set_to_json(const CoefficientSet& set);
CoefficientSet coefficient_set_from_json(std::string_view text);

// CSV rows (x, value) with a `# p=.. d=.. method=..` header comment.
std::string error_profile_to_csv(const ErrorProfile& profile, const CoefficientSet& K);

// CSV columns (length, shots, accept_count).
std::string shot_records_to_csv(std::span<const ShotRecord> records);
std::vector<ShotRecord> shot_records_from_csv(std::string_view text);

// CSV columns (length, accept_count, predicted, actual); actual = length
// divisible by p.
std::string classification_to_csv(const ClassificationReport& report, std::int64_t p);

std::string search_result_to_json(const SearchResult& result);
std::string search_trace_to_csv(const SearchResult& result);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace qfp
