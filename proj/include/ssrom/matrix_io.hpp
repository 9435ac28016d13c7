#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ssrom/linalg.hpp"

namespace ssrom::io {

// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Numeric CSV, one matrix row per line. A first line that does not parse as
// numbers is treated as a header and returned through `header` when given.
Matrix read_csv(const std::filesystem::path& path, std::vector<std::string>* header = nullptr);
void write_csv(const std::filesystem::path& path, const Matrix& a,
               const std::vector<std::string>& header = {});

// Matrix Market "array real general" (dense, column-major).
Matrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const std::filesystem::path& path, const Matrix& a);

// Dispatches on extension: .mtx -> Matrix Market, anything else -> CSV.
Matrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Matrix& a);

// RFC-4180 rows: fields containing a comma, quote, CR or LF are quoted and
// embedded quotes doubled; lines end in CRLF.
std::string csv_escape(const std::string& field);
void write_csv_rows(const std::filesystem::path& path,
                    const std::vector<std::vector<std::string>>& rows);

}  // namespace ssrom::io
