#include "ssrom/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ssrom/error.hpp"

namespace ssrom::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

bool try_parse(std::string_view text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw InputError("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double v = 0;
  if (!try_parse(text, v)) throw InputError("not a number: '" + std::string(text) + "'");
  return v;
}

Matrix read_csv(const std::filesystem::path& path, std::vector<std::string>* header) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size() && numeric; ++j) numeric = try_parse(fields[j], values[j]);
    if (!numeric) {
      if (first) {
        if (header) {
          header->clear();
          for (const auto& f : fields) header->push_back(trim(f));
        }
        first = false;
        continue;
      }
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": non-numeric field");
    }
    first = false;
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(rows.front().size()) + " fields, got " +
                       std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw InputError(path.string() + ": no numeric rows");
  Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rows[i][j];
  }
  return a;
}

void write_csv(const std::filesystem::path& path, const Matrix& a, const std::vector<std::string>& header) {
  if (!header.empty() && static_cast<Eigen::Index>(header.size()) != a.cols()) {
    throw InputError("write_csv: header has " + std::to_string(header.size()) + " names for " +
                     std::to_string(a.cols()) + " columns");
  }
  std::vector<std::vector<std::string>> rows;
  if (!header.empty()) rows.push_back(header);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < a.cols(); ++j) row.push_back(format_double(a(i, j)));
    rows.push_back(std::move(row));
  }
  write_csv_rows(path, rows);
}

Matrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw InputError(path.string() + ": empty file");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  auto lower = [](std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "array" ||
      (lower(field) != "real" && lower(field) != "double" && lower(field) != "integer") ||
      lower(symmetry) != "general") {
    throw InputError(path.string() + ": only 'matrix array real general' Matrix Market files are supported");
  }
  do {
    if (!std::getline(in, line)) throw InputError(path.string() + ": missing size line");
  } while (trim(line).empty() || trim(line)[0] == '%');
  std::istringstream size_line(line);
  long rows = 0, cols = 0;
  if (!(size_line >> rows >> cols) || rows < 1 || cols < 1) {
    throw InputError(path.string() + ": bad size line '" + line + "'");
  }
  Matrix a(rows, cols);
  Eigen::Index idx = 0;
  std::string token;
  while (in >> token) {
    if (token[0] == '%') {
      std::getline(in, line);
      continue;
    }
    if (idx >= a.size()) throw InputError(path.string() + ": more entries than declared");
    a(idx % rows, idx / rows) = parse_double(token);
    ++idx;
  }
  if (idx != a.size()) {
    throw InputError(path.string() + ": expected " + std::to_string(a.size()) + " entries, found " +
                     std::to_string(idx));
  }
  return a;
}

void write_matrix_market(const std::filesystem::path& path, const Matrix& a) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) out << format_double(a(i, j)) << '\n';
  }
}

Matrix read_matrix(const std::filesystem::path& path) {
  return path.extension() == ".mtx" ? read_matrix_market(path) : read_csv(path);
}

void write_matrix(const std::filesystem::path& path, const Matrix& a) {
  if (path.extension() == ".mtx") {
    write_matrix_market(path, a);
  } else {
    write_csv(path, a);
  }
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_rows(const std::filesystem::path& path, const std::vector<std::vector<std::string>>& rows) {
  auto out = open_out(path);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << csv_escape(row[j]);
    }
    out << "\r\n";
  }
}

}  // namespace ssrom::io
