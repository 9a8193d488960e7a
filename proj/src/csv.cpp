#include "r0/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "r0/errors.hpp"

namespace r0 {

std::string format_f64(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FileError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_samples_csv(const std::string& path,
                       const std::vector<std::string>& comments, int dim,
                       const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_out(path);
  for (const std::string& c : comments) out << "# " << c << "\n";
  for (int i = 0; i < dim; ++i) out << (i ? "," : "") << "x" << i;
  out << "\n";
  for (const auto& row : rows) {
    if (int(row.size()) != dim)
      throw std::invalid_argument("write_samples_csv: row width mismatch");
    for (int i = 0; i < dim; ++i)
      out << (i ? "," : "") << format_f64(row[std::size_t(i)]);
    out << "\n";
  }
  if (!out.flush()) throw FileError("write failed for '" + path + "'");
}

std::vector<std::vector<double>> read_samples_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      saw_header = true;  // column-name row
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw FormatError("'" + path + "' line " + std::to_string(lineno) +
                          ": bad number '" + cell + "'");
      }
      while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\t')) ++pos;
      if (pos != cell.size())
        throw FormatError("'" + path + "' line " + std::to_string(lineno) +
                          ": bad number '" + cell + "'");
      row.push_back(v);
    }
    if (row.empty())
      throw FormatError("'" + path + "' line " + std::to_string(lineno) +
                        ": empty row");
    if (width == 0) width = row.size();
    if (row.size() != width)
      throw FormatError("'" + path + "' line " + std::to_string(lineno) +
                        ": expected " + std::to_string(width) + " columns");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_runlog_csv(const std::string& path, const RunLog& log) {
  std::ofstream out = open_out(path);
  out << "iter";
  for (const std::string& t : log.term_labels)
    out << "," << t << "_raw_norm," << t << "_value";
  out << ",reg_loss,reg_grad_norm,cos_reward_reg\n";
  for (const RunRecord& r : log.records) {
    out << r.iter;
    for (std::size_t ti = 0; ti < log.term_labels.size(); ++ti)
      out << "," << format_f64(r.term_raw_norms[ti]) << ","
          << format_f64(r.term_values[ti]);
    out << "," << format_f64(r.reg_loss) << "," << format_f64(r.reg_grad_norm)
        << "," << format_f64(r.cos_reward_reg) << "\n";
  }
  if (!out.flush()) throw FileError("write failed for '" + path + "'");
}

void write_timing_csv(const std::string& path, const RunLog& log) {
  std::ofstream out = open_out(path);
  out << "iter,wall_ms\n";
  for (const RunRecord& r : log.records)
    out << r.iter << "," << format_f64(r.wall_ms) << "\n";
  if (!out.flush()) throw FileError("write failed for '" + path + "'");
}

}  // namespace r0
