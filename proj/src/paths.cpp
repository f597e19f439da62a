#include "coxflow/paths.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coxflow {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void append_list(std::string& out, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt17(v[i]);
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    const std::string tok = s.substr(pos, next - pos);
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) fail("bad float token '" + tok + "'");
    out.push_back(v);
    pos = next + 1;
    if (next == s.size()) break;
  }
  return out;
}

}  // namespace

void CountingPath::validate() const {
  if (!(horizon > 0)) fail("CountingPath: horizon must be > 0");
  if (cap < 1) fail("CountingPath: cap must be >= 1");
  if (static_cast<int>(jump_times.size()) > cap)
    fail("CountingPath: more than cap jumps recorded");
  double prev = 0.0;
  for (double t : jump_times) {
    if (!(t > prev)) fail("CountingPath: jump times must be strictly increasing and > 0");
    if (!(t <= horizon)) fail("CountingPath: jump time past horizon");
    prev = t;
  }
}

std::span<const double> CovariatePath::value_at(double t) const {
  // segment i covers [s_i, s_{i+1}); the value at T is the last segment's.
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  long i = (it - grid.begin()) - 1;
  if (i < 0) i = 0;
  if (i >= segments()) i = segments() - 1;
  return segment_value(static_cast<int>(i));
}

void CovariatePath::validate() const {
  if (dim < 1) fail("CovariatePath: dim must be >= 1");
  if (grid.size() < 2) fail("CovariatePath: grid needs at least 2 points");
  if (grid.front() != 0.0) fail("CovariatePath: grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) fail("CovariatePath: grid must be increasing");
  if (values.size() != static_cast<std::size_t>(segments()) * dim)
    fail("CovariatePath: values size must be segments*dim");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) fail("CovariatePath: values must lie in [0,1]");
}

double tau(const CountingPath& x) {
  if (static_cast<int>(x.jump_times.size()) == x.cap) return x.jump_times.back();
  return x.horizon;
}

std::pair<CountingPath, CovariatePath> stop_pair(const CountingPath& x,
                                                 const CovariatePath& z) {
  if (z.horizon() != x.horizon)
    fail("stop_pair: counting and covariate paths have different horizons");
  const double stop = tau(x);
  if (stop >= x.horizon) return {x, z};

  CovariatePath out;
  out.dim = z.dim;
  const auto frozen = z.value_at(stop);
  for (std::size_t i = 0; i + 1 < z.grid.size() && z.grid[i] < stop; ++i) {
    out.grid.push_back(z.grid[i]);
    const auto v = z.segment_value(static_cast<int>(i));
    out.values.insert(out.values.end(), v.begin(), v.end());
  }
  if (out.grid.empty() || out.grid.back() < stop) {
    out.grid.push_back(stop);
    out.values.insert(out.values.end(), frozen.begin(), frozen.end());
  }
  out.grid.push_back(x.horizon);
  return {x, out};
}

Dataset read_dataset(std::istream& in) {
  Dataset data;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t next = line.find(';', pos);
      fields.push_back(line.substr(pos, next == std::string::npos
                                            ? std::string::npos
                                            : next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    try {
      if (fields.size() != 7) fail("expected 7 ';'-separated fields");
      LabeledSample s;
      s.y = std::stoi(fields[0]);
      if (s.y != 1 && s.y != -1) fail("label must be -1 or +1");
      s.x.horizon = std::stod(fields[1]);
      s.x.cap = std::stoi(fields[2]);
      s.x.jump_times = parse_list(fields[3]);
      s.z.grid = parse_list(fields[4]);
      s.z.dim = std::stoi(fields[5]);
      s.z.values = parse_list(fields[6]);
      s.x.validate();
      s.z.validate();
      if (s.z.horizon() != s.x.horizon) fail("horizon mismatch between x and z");
      data.push_back(std::move(s));
    } catch (const std::exception& e) {
      fail("dataset line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return data;
}

Dataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open dataset file: " + path);
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& s : data) {
    std::string line = std::to_string(s.y);
    line += ';';
    line += fmt17(s.x.horizon);
    line += ';';
    line += std::to_string(s.x.cap);
    line += ';';
    append_list(line, s.x.jump_times);
    line += ';';
    append_list(line, s.z.grid);
    line += ';';
    line += std::to_string(s.z.dim);
    line += ';';
    append_list(line, s.z.values);
    line += '\n';
    out << line;
  }
}

void write_dataset_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) fail("cannot open output file: " + path);
  write_dataset(out, data);
}

}  // namespace coxflow
