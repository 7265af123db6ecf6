#include "oraclust/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oraclust/rows.hpp"

namespace oraclust {

double Dataset::distance(PointId a, PointId b) const {
  const double* pa = point(a);
  const double* pb = point(b);
  double s = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = pa[d] - pb[d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

Dataset load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) parse_fail(path, line_no, "missing header");
  // header: label,dim=<d>
  const std::string prefix = "label,dim=";
  if (line.rfind(prefix, 0) != 0) parse_fail(path, line_no, "bad header, expected label,dim=<d>");
  std::size_t dim = 0;
  try {
    dim = std::stoul(line.substr(prefix.size()));
  } catch (const std::exception&) {
    parse_fail(path, line_no, "bad dimension in header");
  }
  if (dim == 0) parse_fail(path, line_no, "dimension must be positive");

  Dataset data;
  data.dim = dim;
  std::vector<int> labels;
  bool any_label = false, all_labeled = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != dim + 1)
      parse_fail(path, line_no, "expected " + std::to_string(dim + 1) + " fields, got " +
                                    std::to_string(cells.size()));
    if (cells[0].empty()) {
      all_labeled = false;
      labels.push_back(0);
    } else {
      any_label = true;
      try {
        labels.push_back(std::stoi(cells[0]));
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad label '" + cells[0] + "'");
      }
    }
    for (std::size_t d = 0; d < dim; ++d) {
      try {
        std::size_t used = 0;
        data.coords.push_back(std::stod(cells[d + 1], &used));
        if (used != cells[d + 1].size()) throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        parse_fail(path, line_no, "bad coordinate '" + cells[d + 1] + "'");
      }
    }
    ++data.n;
  }
  if (data.n == 0) parse_fail(path, line_no, "no points");
  if (any_label && !all_labeled) parse_fail(path, line_no, "labels must be all present or all empty");
  if (any_label) data.labels = std::move(labels);
  return data;
}

void save_points_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "label,dim=" << data.dim << "\n";
  for (std::size_t i = 0; i < data.n; ++i) {
    if (data.labels) out << (*data.labels)[i];
    for (std::size_t d = 0; d < data.dim; ++d)
      out << ',' << format_double(data.coords[i * data.dim + d]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace oraclust
