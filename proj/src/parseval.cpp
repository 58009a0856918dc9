#include "bconv/parseval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "bconv/errors.hpp"

namespace bconv {

namespace {

struct Kernel {
  std::vector<double> gammas;
  std::vector<double> angular;  // 2 pi lambda^n
};

void validate(const ScanConfig& c) {
  if (!(c.step > 0)) throw std::invalid_argument("scan step must be positive");
  if (!(c.t_min < c.t_max)) throw std::invalid_argument("scan needs t_min < t_max");
  if (c.n_terms < 1) throw std::invalid_argument("scan needs n_terms >= 1");
  if (c.n_factors < 1) throw std::invalid_argument("scan needs n_factors >= 1");
}

Kernel make_kernel(const ScanConfig& c) {
  Kernel k;
  for (const Rational& g : c.family.enumerate(static_cast<std::size_t>(c.n_terms)))
    k.gammas.push_back(g.to_double());
  double lam = c.lambda.to_double();
  double w = 2.0 * M_PI;
  for (int n = 0; n < c.n_factors; ++n, w *= lam) k.angular.push_back(w);
  return k;
}

double eval_point(const Kernel& k, double t, std::vector<double>* contributions) {
  double q = 0.0;
  for (double g : k.gammas) {
    double x = t - g;
    double prod = 1.0;
    for (double w : k.angular) prod *= std::cos(w * x);
    double term = prod * prod;
    if (contributions) contributions->push_back(term);
    q += term;
  }
  return q;
}

std::size_t grid_points(const ScanConfig& c) {
  double span = (c.t_max - c.t_min) / c.step;
  auto points = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (points > 10000000)
    throw resource_limit_error("scan grid has " + std::to_string(points) +
                               " points (limit 10^7); increase step");
  return points;
}

void format_value(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  line += buf;
}

}  // namespace

double parseval_sum(double t, const ScanConfig& config) {
  validate(config);
  return eval_point(make_kernel(config), t, nullptr);
}

std::vector<ScanRow> scan(const ScanConfig& config) {
  validate(config);
  const std::size_t points = grid_points(config);
  const Kernel kernel = make_kernel(config);

  std::vector<ScanRow> rows(points);
  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<std::size_t>(jobs, points);

  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      ScanRow& row = rows[i];
      row.t = config.t_min + static_cast<double>(i) * config.step;
      row.q = eval_point(kernel, row.t, config.contributions ? &row.contributions : nullptr);
    }
  };

  if (jobs <= 1) {
    worker(0, points);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (points + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      std::size_t begin = j * chunk;
      std::size_t end = std::min(points, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::vector<std::pair<double, double>> peak_report(const std::vector<ScanRow>& rows,
                                                   double threshold) {
  if (rows.empty()) throw std::invalid_argument("peak report over empty scan");
  std::vector<std::pair<double, double>> peaks;
  std::size_t i = 1;
  while (i + 1 < rows.size()) {
    if (rows[i].q > rows[i - 1].q) {
      std::size_t j = i;
      while (j + 1 < rows.size() && rows[j + 1].q == rows[i].q) ++j;
      if (j + 1 < rows.size() && rows[j + 1].q < rows[i].q) {
        if (rows[i].q >= threshold) peaks.emplace_back(rows[i].t, rows[i].q);
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return peaks;
}

void write_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  std::string header = "t,q";
  if (!rows.empty() && !rows.front().contributions.empty())
    for (std::size_t i = 0; i < rows.front().contributions.size(); ++i)
      header += ",q_" + std::to_string(i);
  os << header << '\n';
  for (const ScanRow& row : rows) {
    std::string line;
    format_value(line, row.t);
    line += ',';
    format_value(line, row.q);
    for (double c : row.contributions) {
      line += ',';
      format_value(line, c);
    }
    os << line << '\n';
  }
}

std::vector<ScanRow> read_csv(std::istream& is) {
  std::vector<ScanRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("t,", 0) == 0) continue;  // header
    }
    std::stringstream ss(line);
    std::string cell;
    ScanRow row;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      double v = std::strtod(cell.c_str(), nullptr);
      if (col == 0)
        row.t = v;
      else if (col == 1)
        row.q = v;
      else
        row.contributions.push_back(v);
      ++col;
    }
    if (col < 2) throw std::invalid_argument("bad CSV row: '" + line + "'");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_svg(std::ostream& os, const std::vector<ScanRow>& rows) {
  const double width = 900, height = 420, ml = 60, mr = 20, mt = 20, mb = 40;
  double t_lo = rows.empty() ? 0 : rows.front().t;
  double t_hi = rows.empty() ? 1 : rows.back().t;
  double q_hi = 1.05;
  for (const ScanRow& r : rows) q_hi = std::max(q_hi, r.q);
  if (t_hi <= t_lo) t_hi = t_lo + 1;

  auto xpix = [&](double t) { return ml + (t - t_lo) / (t_hi - t_lo) * (width - ml - mr); };
  auto ypix = [&](double q) { return height - mb - q / q_hi * (height - mt - mb); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\">\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
     << height - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << ml << "\" y=\"" << height - mb + 18 << "\" font-size=\"12\">" << t_lo
     << "</text>\n";
  os << "<text x=\"" << width - mr - 30 << "\" y=\"" << height - mb + 18
     << "\" font-size=\"12\">" << t_hi << "</text>\n";
  os << "<text x=\"" << 8 << "\" y=\"" << ypix(1.0) + 4 << "\" font-size=\"12\">1</text>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << ypix(1.0) << "\" x2=\"" << width - mr << "\" y2=\""
     << ypix(1.0) << "\" stroke=\"#cccccc\" stroke-dasharray=\"4\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
  for (const ScanRow& r : rows) os << xpix(r.t) << ',' << ypix(r.q) << ' ';
  os << "\"/>\n</svg>\n";
}

}  // namespace bconv
