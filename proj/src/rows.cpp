#include "oraclust/rows.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace oraclust {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

namespace {

double to_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad numeric field '" + s + "'");
  return v;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t used = 0;
  const auto v = std::stoull(s, &used);
  if (used != s.size()) throw std::runtime_error("bad integer field '" + s + "'");
  return v;
}

void expect_fields(const std::vector<std::string>& f, std::size_t want) {
  if (f.size() != want)
    throw std::runtime_error("expected " + std::to_string(want) + " fields, got " +
                             std::to_string(f.size()));
}

}  // namespace

std::string KMeansRow::csv_header() {
  return "algo,n,k,delta,eps,c_ball,c_iter,seed,strong_distinct,weak_distinct,"
         "true_cost,est_cost,approx_factor,aborted";
}

std::string KMeansRow::csv_row() const {
  std::ostringstream os;
  os << algo << ',' << n << ',' << k << ',' << format_double(delta) << ','
     << format_double(eps) << ',' << format_double(c_ball) << ',' << format_double(c_iter) << ','
     << seed << ',' << strong_distinct << ',' << weak_distinct << ','
     << format_double(true_cost) << ',' << format_double(est_cost) << ','
     << format_double(approx_factor) << ',' << (aborted ? 1 : 0);
  return os.str();
}

KMeansRow KMeansRow::from_csv(const std::string& line) {
  const auto f = split_csv_line(line);
  expect_fields(f, 14);
  KMeansRow r;
  r.algo = f[0];
  r.n = to_u64(f[1]);
  r.k = to_u64(f[2]);
  r.delta = to_double(f[3]);
  r.eps = to_double(f[4]);
  r.c_ball = to_double(f[5]);
  r.c_iter = to_double(f[6]);
  r.seed = to_u64(f[7]);
  r.strong_distinct = to_u64(f[8]);
  r.weak_distinct = to_u64(f[9]);
  r.true_cost = to_double(f[10]);
  r.est_cost = to_double(f[11]);
  r.approx_factor = to_double(f[12]);
  r.aborted = to_u64(f[13]) != 0;
  return r;
}

std::string KCenterRow::csv_header() {
  return "algo,n,k,delta,eps,c_sample,c_ball,seed,search_mode,found_rad,"
         "strong_distinct,weak_distinct,true_radius,approx_factor,status";
}

std::string KCenterRow::csv_row() const {
  std::ostringstream os;
  os << algo << ',' << n << ',' << k << ',' << format_double(delta) << ','
     << format_double(eps) << ',' << format_double(c_sample) << ',' << format_double(c_ball) << ','
     << seed << ',' << search_mode << ',' << format_double(found_rad) << ','
     << strong_distinct << ',' << weak_distinct << ',' << format_double(true_radius) << ','
     << format_double(approx_factor) << ',' << status;
  return os.str();
}

KCenterRow KCenterRow::from_csv(const std::string& line) {
  const auto f = split_csv_line(line);
  expect_fields(f, 15);
  KCenterRow r;
  r.algo = f[0];
  r.n = to_u64(f[1]);
  r.k = to_u64(f[2]);
  r.delta = to_double(f[3]);
  r.eps = to_double(f[4]);
  r.c_sample = to_double(f[5]);
  r.c_ball = to_double(f[6]);
  r.seed = to_u64(f[7]);
  r.search_mode = f[8];
  r.found_rad = to_double(f[9]);
  r.strong_distinct = to_u64(f[10]);
  r.weak_distinct = to_u64(f[11]);
  r.true_radius = to_double(f[12]);
  r.approx_factor = to_double(f[13]);
  r.status = f[14];
  return r;
}

}  // namespace oraclust
