#include "ddelc/app/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ddelc::app {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  // snprintf honors the C locale set by the CLI entry point; normalize a ','
  // decimal point anyway in case a host library flipped LC_NUMERIC.
  for (char& c : buf) {
    if (c == ',') c = '.';
  }
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  const auto append_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(t.header);
  for (const auto& row : t.rows) append_row(row);
  return out;
}

std::string to_text(const Table& t) {
  std::vector<std::size_t> widths(t.header.size(), 0);
  const auto widen = [&widths](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i)
      widths[i] = std::max(widths[i], row[i].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);

  std::string out;
  const auto append_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      out.append(widths[i] - row[i].size(), ' ');
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  };
  append_row(t.header);
  std::string rule;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (i) rule += "  ";
    rule.append(widths[i], '-');
  }
  out += rule + '\n';
  for (const auto& row : t.rows) append_row(row);
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("short write to " + path.string());
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view data) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

RunManifest::RunManifest(std::string subcommand, nlohmann::json parameters)
    : subcommand_(std::move(subcommand)), parameters_(std::move(parameters)) {}

void RunManifest::add_output(const std::filesystem::path& path, std::string_view content) {
  outputs_.push_back({{"path", path.string()},
                      {"bytes", content.size()},
                      {"fnv1a64", fnv1a64_hex(content)}});
}

nlohmann::json RunManifest::to_json(double duration_seconds) const {
  return {{"schema", kRunSchema},
          {"tool", "ddelc"},
          {"version", kToolVersion},
          {"subcommand", subcommand_},
          {"parameters", parameters_},
          {"duration_seconds", duration_seconds},
          {"outputs", outputs_}};
}

void RunManifest::write(const std::filesystem::path& path, double duration_seconds) const {
  write_file(path, to_json(duration_seconds).dump(2) + "\n");
}

}  // namespace ddelc::app
