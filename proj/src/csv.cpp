#include "multigroup/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace multigroup::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("bad number '" + s + "' in " + context);
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

}  // namespace

core::Dataset read_dataset_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty file: " + path);
  const auto header = split(line);
  if (header.size() < 2 || header.back() != "y") {
    throw std::runtime_error(
        "dataset header must be one or more feature columns followed by y");
  }
  const std::size_t dim = header.size() - 1;
  std::vector<double> xs, ys;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": wrong column count");
    }
    for (std::size_t k = 0; k < dim; ++k) {
      xs.push_back(parse_double(cells[k], path));
    }
    ys.push_back(parse_double(cells.back(), path));
  }
  if (ys.empty()) throw std::runtime_error("no records in " + path);
  return core::Dataset(std::move(xs), std::move(ys), dim);
}

void write_dataset_csv(const std::string& path, const core::Dataset& d) {
  auto f = open_out(path);
  for (std::size_t k = 0; k < d.dim(); ++k) f << "x" << (k + 1) << ",";
  f << "y\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (double v : d.x(i)) f << format_double(v) << ",";
    f << format_double(d.y(i)) << "\n";
  }
}

core::GroupFamily read_groups_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty file: " + path);
  if (split(line) != std::vector<std::string>{"id", "lo", "hi"}) {
    throw std::runtime_error("groups header must be id,lo,hi");
  }
  core::GroupFamily fam;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 3) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": wrong column count");
    }
    const int id = static_cast<int>(parse_double(cells[0], path));
    fam.groups.push_back(core::Group::interval_group(
        id, parse_double(cells[1], path), parse_double(cells[2], path)));
  }
  fam.validate();
  return fam;
}

void write_groups_csv(const std::string& path, const core::GroupFamily& fam) {
  auto f = open_out(path);
  f << "id,lo,hi\n";
  for (const auto& g : fam.groups) {
    if (!g.interval) {
      throw std::runtime_error("only interval groups can be written");
    }
    f << g.id << "," << format_double(g.interval->lo) << ","
      << format_double(g.interval->hi) << "\n";
  }
}

void write_trace_csv(const std::string& path, const core::RunTrace& trace) {
  auto f = open_out(path);
  f << "iteration,accepted,group_id,hyp_id,eta,statistic,query_noise,"
       "threshold_noise,loss_before,loss_after,pairs_examined\n";
  for (const auto& it : trace.iterations) {
    f << it.iteration << "," << (it.accepted ? 1 : 0) << "," << it.group_id
      << "," << it.hyp_id << "," << format_double(it.eta) << ","
      << format_double(it.statistic) << "," << format_double(it.query_noise)
      << "," << format_double(it.threshold_noise) << ","
      << format_double(it.loss_before) << "," << format_double(it.loss_after)
      << "," << it.pairs_examined << "\n";
  }
}

void write_rows_csv(const std::string& path,
                    const std::vector<experiments::RunRow>& rows) {
  auto f = open_out(path);
  f << "run_id,method,seed,n,lambda,sigma,eta,criterion,total_loss,"
       "worst_group_loss,worst_group_id,num_updates,wall_ms\n";
  for (const auto& r : rows) {
    f << r.run_id << "," << r.method << "," << r.seed << "," << r.n << ","
      << format_double(r.hypers.lambda) << "," << format_double(r.hypers.sigma)
      << "," << format_double(r.hypers.eta) << ","
      << experiments::criterion_name(r.criterion) << ","
      << format_double(r.total_loss) << ","
      << format_double(r.worst_group_loss) << "," << r.worst_group_id << ","
      << r.num_updates << "," << format_double(r.wall_ms) << "\n";
  }
}

void write_aggregates_csv(
    const std::string& path,
    const std::vector<experiments::MethodAggregate>& aggregates) {
  auto f = open_out(path);
  f << "method,runs,total_mean,total_se,worst_mean,worst_se\n";
  for (const auto& a : aggregates) {
    f << a.method << "," << a.runs << "," << format_double(a.total_mean) << ","
      << format_double(a.total_se) << "," << format_double(a.worst_mean) << ","
      << format_double(a.worst_se) << "\n";
  }
}

void write_tune_csv(const std::string& path,
                    const std::vector<experiments::TuneRow>& table) {
  auto f = open_out(path);
  f << "index,lambda,sigma,eta,learning_rate,val_total,val_worst\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& r = table[i];
    f << i << "," << format_double(r.point.lambda) << ","
      << format_double(r.point.sigma) << "," << format_double(r.point.eta)
      << "," << format_double(r.point.learning_rate) << ","
      << format_double(r.val_total) << "," << format_double(r.val_worst)
      << "\n";
  }
}

}  // namespace multigroup::io
