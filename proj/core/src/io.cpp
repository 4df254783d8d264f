#include "qfp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string coefficient_set_to_json(const CoefficientSet& set) {
  ordered_json j;
  j["p"] = set.p.value();
  j["method"] = to_string(set.method);
  j["coeffs"] = set.coeffs;
  if (set.params) {
    ordered_json params;
    params["t0"] = set.params->offset;
    params["T"] = set.params->generators;
    j["params"] = std::move(params);
  }
  if (set.proper) j["proper"] = *set.proper;
  return j.dump(2) + "\n";
}

CoefficientSet coefficient_set_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("invalid coefficient-set JSON: ") + e.what());
  }
  if (!j.contains("p") || !j.contains("coeffs")) {
    throw PreconditionError("coefficient-set JSON needs \"p\" and \"coeffs\"");
  }
  CoefficientSet set{Prime(j.at("p").get<std::int64_t>()),
                     j.at("coeffs").get<std::vector<std::int64_t>>(),
                     SetMethod::explicit_set,
                     std::nullopt,
                     std::nullopt};
  if (set.coeffs.empty()) throw PreconditionError("coefficient-set JSON has no coefficients");
  if (j.contains("method")) set.method = set_method_from_string(j.at("method").get<std::string>());
  if (j.contains("params")) {
    const auto& pj = j.at("params");
    set.params = ParamVector{set.p, pj.at("t0").get<std::int64_t>(),
                             pj.at("T").get<std::vector<std::int64_t>>()};
  }
  if (j.contains("proper")) set.proper = j.at("proper").get<bool>();
  return set;
}

std::string error_profile_to_csv(const ErrorProfile& profile, const CoefficientSet& K) {
  std::ostringstream out;
  out << "# p=" << K.p.value() << " d=" << K.size() << " method=" << to_string(K.method) << "\n";
  out << "x,value\n";
  for (std::size_t i = 0; i < profile.per_x.size(); ++i) {
    out << (i + 1) << ',' << format_double(profile.per_x[i]) << "\n";
  }
  return out.str();
}

std::string shot_records_to_csv(std::span<const ShotRecord> records) {
  std::ostringstream out;
  out << "length,shots,accept_count\n";
  for (const ShotRecord& r : records) {
    out << r.length << ',' << r.shots << ',' << r.accept_count << "\n";
  }
  return out.str();
}

std::vector<ShotRecord> shot_records_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<ShotRecord> records;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (first) {
      first = false;
      if (line.rfind("length", 0) == 0) continue;  // header
    }
    long long length = 0, shots = 0, hits = 0;
    if (std::sscanf(line.c_str(), "%lld,%lld,%lld", &length, &shots, &hits) != 3) {
      throw PreconditionError("malformed shot-record CSV line: " + line);
    }
    records.push_back(ShotRecord{length, shots, hits});
  }
  return records;
}

std::string classification_to_csv(const ClassificationReport& report, std::int64_t p) {
  std::ostringstream out;
  out << "# cut_point=" << format_double(report.cut_point)
      << " margin=" << format_double(report.margin) << "\n";
  out << "length,accept_count,predicted,actual\n";
  for (const ClassificationEntry& e : report.entries) {
    out << e.length << ',' << e.accept_count << ',' << (e.predicted_member ? 1 : 0) << ','
        << (e.length % p == 0 ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string search_result_to_json(const SearchResult& result) {
  ordered_json j;
  j["best"] = result.best_point;
  j["value"] = result.best_value;
  j["evaluations"] = result.evaluations;
  ordered_json trace = ordered_json::array();
  for (const auto& [iter, value] : result.trace) {
    trace.push_back(ordered_json::array({iter, value}));
  }
  j["trace"] = std::move(trace);
  return j.dump(2) + "\n";
}

std::string search_trace_to_csv(const SearchResult& result) {
  std::ostringstream out;
  out << "iteration,value\n";
  for (const auto& [iter, value] : result.trace) {
    out << iter << ',' << format_double(value) << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write file: " + path.string());
  out << content;
}

}  // namespace qfp
