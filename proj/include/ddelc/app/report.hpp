#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ddelc::app {

/// Fixed CSV number format: 6 significant digits, '.' decimal point,
/// independent of locale. Identical inputs produce identical bytes.
std::string format_number(double v);

/// A rectangular table destined for CSV and/or aligned text output.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// Header row plus data rows, comma separated, '\n' line endings.
std::string to_csv(const Table& t);

/// Column-aligned text rendering for terminal output.
std::string to_text(const Table& t);

/// Writes content to path, creating parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

/// FNV-1a 64-bit digest, hex encoded; used to fingerprint emitted files.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

/// Collects the data for the per-run manifest: one manifest per invocation,
/// digesting every file the run emitted.
class RunManifest {
 public:
  RunManifest(std::string subcommand, nlohmann::json parameters);

  /// Registers an emitted file (content must be the exact bytes written).
  void add_output(const std::filesystem::path& path, std::string_view content);

  /// Finalizes and writes the manifest itself.
  void write(const std::filesystem::path& path, double duration_seconds) const;

  nlohmann::json to_json(double duration_seconds) const;

 private:
  std::string subcommand_;
  nlohmann::json parameters_;
  nlohmann::json outputs_ = nlohmann::json::array();
};

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kRunSchema = "ddelc.run.v1";
inline constexpr std::string_view kJsonSchema = "ddelc.v1";

}  // namespace ddelc::app
