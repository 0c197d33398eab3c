#include "robusthd/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace robusthd {

namespace {

double parse_field(const std::string& line, std::size_t begin, std::size_t end,
                   std::size_t line_no) {
  // Trim surrounding blanks.
  while (begin < end && (line[begin] == ' ' || line[begin] == '\t')) ++begin;
  while (end > begin && (line[end - 1] == ' ' || line[end - 1] == '\t' || line[end - 1] == '\r'))
    --end;
  double value = 0.0;
  const char* first = line.data() + begin;
  const char* last = line.data() + end;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw DataError("csv: non-numeric field at line " + std::to_string(line_no));
  if (!std::isfinite(value))
    throw DataError("csv: non-finite value at line " + std::to_string(line_no));
  return value;
}

}  // namespace

SampleMatrix read_csv_matrix(const std::string& path, bool skip_header) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool skipped = !skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!skipped) {
      skipped = true;
      continue;
    }
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::size_t begin = 0;
    for (;;) {
      const std::size_t comma = line.find(',', begin);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      row.push_back(parse_field(line, begin, end, line_no));
      if (comma == std::string::npos) break;
      begin = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError("csv: ragged row at line " + std::to_string(line_no));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("csv: no data rows in " + path);

  SampleMatrix m;
  m.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return m;
}

void write_covariance_csv(const std::string& path, const Eigen::MatrixXd& matrix) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("csv: cannot write " + path);
  std::fputs("j,k,value\n", f);
  for (Index j = 0; j < matrix.rows(); ++j)
    for (Index k = 0; k < matrix.cols(); ++k)
      std::fprintf(f, "%lld,%lld,%.17g\n", static_cast<long long>(j + 1),
                   static_cast<long long>(k + 1), matrix(j, k));
  std::fclose(f);
}

void write_pp_csv(const std::string& path, const PPCurve& curve) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("csv: cannot write " + path);
  std::fputs("t,cdf_reference,cdf_empirical\n", f);
  for (std::size_t i = 0; i < curve.grid.size(); ++i)
    std::fprintf(f, "%.17g,%.17g,%.17g\n", curve.grid[i], curve.cdf_reference[i],
                 curve.cdf_empirical[i]);
  std::fclose(f);
}

}  // namespace robusthd
