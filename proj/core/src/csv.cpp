#include "ebh/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ebh {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(start)));
      return cells;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_number(const std::string& cell, const std::string& path, int line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() || *end != '\0' || errno == ERANGE) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": not a number: '" + cell +
                             "'");
  }
  return v;
}

}  // namespace

EvidenceVector read_evidence_csv(const std::string& path, std::optional<EvidenceKind> kind) {
  EvidenceKind resolved;
  if (kind.has_value()) {
    resolved = *kind;
  } else if (ends_with(path, ".evals.csv")) {
    resolved = EvidenceKind::EValues;
  } else if (ends_with(path, ".pvals.csv")) {
    resolved = EvidenceKind::PValues;
  } else {
    throw std::runtime_error(path +
                             ": cannot infer evidence kind; use a .evals.csv/.pvals.csv name or "
                             "pass the kind explicitly");
  }

  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string cell = trim(line);
    if (cell.empty() || cell.front() == '#') continue;
    if (values.empty() && cell == "value") continue;
    values.push_back(parse_number(cell, path, line_no));
  }
  if (values.empty()) throw std::runtime_error(path + ": no values");
  return EvidenceVector(std::move(values), resolved);
}

void write_evidence_csv(const std::string& path, const EvidenceVector& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << "value\n";
  out.precision(17);
  for (double x : v.values()) {
    if (x == std::numeric_limits<double>::infinity()) {
      out << "inf\n";
    } else {
      out << x << "\n";
    }
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::vector<PriceSeries> read_price_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");

  std::string line;
  int line_no = 0;
  std::size_t n_periods = 0;
  bool header_seen = false;
  std::vector<PriceSeries> result;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (!header_seen) {
      if (cells.size() < 3 || cells[0] != "asset_id" || cells[1] != "rank") {
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": header must be asset_id,rank,<periods...>");
      }
      n_periods = cells.size() - 2;
      header_seen = true;
      continue;
    }
    if (cells.size() != n_periods + 2) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(n_periods + 2) + " cells, got " +
                               std::to_string(cells.size()));
    }
    PriceSeries s;
    s.asset_id = cells[0];
    if (s.asset_id.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty asset_id");
    }
    const double rank = parse_number(cells[1], path, line_no);
    s.rank = static_cast<int>(rank);
    bool ended = false;
    for (std::size_t j = 2; j < cells.size(); ++j) {
      if (cells[j].empty()) {
        ended = true;
        continue;
      }
      if (ended) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": price for " +
                                 s.asset_id + " reappears after a gap; blank cells may only "
                                 "end a series");
      }
      const double price = parse_number(cells[j], path, line_no);
      if (!(price > 0.0)) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": nonpositive price");
      }
      s.prices.push_back(price);
    }
    s.alive = !ended;
    result.push_back(std::move(s));
  }
  if (!header_seen) throw std::runtime_error(path + ": missing header");
  if (result.empty()) throw std::runtime_error(path + ": no asset rows");
  return result;
}

}  // namespace ebh
