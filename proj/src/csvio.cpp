#include "speechml/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "speechml/errors.hpp"
#include "speechml/features.hpp"

namespace speechml {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

double parse_double(const std::string& s, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw ParseError(context + ": not a number: '" + s + "'");
  }
  return v;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FileNotFound("cannot open: " + path.string());
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (!line.empty()) {
      lines.push_back(line);
    }
  }
  return lines;
}

}  // namespace

Manifest read_manifest(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw ParseError("manifest is empty: " + path.string());
  }
  if (lines.front() != "id,path,label,score") {
    throw ParseError("manifest header must be 'id,path,label,score': " +
                     path.string());
  }

  Manifest manifest;
  manifest.source_dir = path.parent_path();
  std::set<std::string> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_line(lines[li]);
    if (fields.size() != 4) {
      throw ParseError("manifest line " + std::to_string(li + 1) +
                       ": expected 4 fields");
    }
    ManifestRow row;
    row.id = fields[0];
    row.path = fields[1];
    if (row.id.empty() || row.path.empty()) {
      throw ParseError("manifest line " + std::to_string(li + 1) +
                       ": empty id or path");
    }
    if (!seen.insert(row.id).second) {
      throw DuplicateId("duplicate manifest id: " + row.id);
    }
    if (fields[2] == "0") {
      row.label = 0;
    } else if (fields[2] == "1") {
      row.label = 1;
    } else {
      throw ParseError("manifest id " + row.id + ": label must be 0 or 1");
    }
    row.score = parse_double(fields[3], "manifest id " + row.id);
    if (!(row.score >= 0.0) || !(row.score <= 1.0)) {
      throw ParseError("manifest id " + row.id + ": score outside [0, 1]");
    }
    manifest.rows.push_back(std::move(row));
  }
  return manifest;
}

void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << "id,path,label,score\n";
  for (const ManifestRow& r : rows) {
    out << r.id << ',' << r.path << ',' << r.label << ','
        << format_double(r.score) << '\n';
  }
  if (!out) {
    throw IoError("short write: " + path.string());
  }
}

FeatureTable read_feature_table(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty()) {
    throw ParseError("feature table is empty: " + path.string());
  }

  const auto& schema = feature_schema();
  const auto header = split_line(lines.front());
  if (header.size() != schema.size() + 1 || header.front() != "id") {
    throw ParseError("feature table header does not match the schema: " +
                     path.string());
  }
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (header[j + 1] != schema[j]) {
      throw ParseError("feature table column " + std::to_string(j + 1) +
                       " must be '" + schema[j] + "', got '" + header[j + 1] +
                       "'");
    }
  }

  FeatureTable table;
  table.values = DataMatrix(lines.size() - 1, schema.size());
  std::set<std::string> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_line(lines[li]);
    if (fields.size() != schema.size() + 1) {
      throw ParseError("feature table line " + std::to_string(li + 1) +
                       ": wrong field count");
    }
    if (!seen.insert(fields[0]).second) {
      throw DuplicateId("duplicate feature table id: " + fields[0]);
    }
    table.ids.push_back(fields[0]);
    for (std::size_t j = 0; j < schema.size(); ++j) {
      const double v =
          parse_double(fields[j + 1], "feature table id " + fields[0]);
      if (!std::isfinite(v)) {
        throw ParseError("feature table id " + fields[0] +
                         ": non-finite value in " + schema[j]);
      }
      table.values.at(li - 1, j) = v;
    }
  }
  return table;
}

void write_feature_table(const std::filesystem::path& path,
                         const FeatureTable& table) {
  if (table.ids.size() != table.values.rows ||
      table.values.cols != feature_schema().size()) {
    throw DimensionMismatch("write_feature_table: table shape is invalid");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << "id";
  for (const std::string& name : feature_schema()) {
    out << ',' << name;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.ids.size(); ++i) {
    out << table.ids[i];
    for (std::size_t j = 0; j < table.values.cols; ++j) {
      out << ',' << format_double(table.values.at(i, j));
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("short write: " + path.string());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace speechml
