#ifndef COXFLOW_PATHS_HPP_
#define COXFLOW_PATHS_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace coxflow {

// A counting-process trajectory on [0,T], stopped at its cap-th jump.
// X_t = #{i : jump_times[i] <= t}; right-continuous, unit jumps.
struct CountingPath {
  double horizon = 1.0;                // T
  std::vector<double> jump_times;      // strictly increasing, in (0,T]
  int cap = 1;                         // u

  void validate() const;  // throws std::invalid_argument
  bool operator==(const CountingPath&) const = default;
};

// Piecewise-constant path on [0,T] with values in [0,1]^d.
// grid has m+1 entries 0 = s_0 < ... < s_m = T; values is m*d row-major,
// value on [s_i, s_{i+1}) is row i. The value at T is that of the last
// segment.
struct CovariatePath {
  std::vector<double> grid;
  std::vector<double> values;
  int dim = 1;

  int segments() const { return static_cast<int>(grid.size()) - 1; }
  double horizon() const { return grid.empty() ? 0.0 : grid.back(); }
  std::span<const double> value_at(double t) const;
  std::span<const double> segment_value(int i) const {
    return {values.data() + static_cast<std::size_t>(i) * dim,
            static_cast<std::size_t>(dim)};
  }

  void validate() const;
  bool operator==(const CovariatePath&) const = default;
};

struct LabeledSample {
  CountingPath x;
  CovariatePath z;
  int y = 1;  // -1 or +1

  bool operator==(const LabeledSample&) const = default;
};

using Dataset = std::vector<LabeledSample>;

// Time of the cap-th jump, or T when the path never reaches cap jumps.
double tau(const CountingPath& x);

// Freeze the covariate path after tau(x): grid points past tau are dropped,
// a breakpoint is inserted at tau and the value holding at tau is extended
// to T. Idempotent. Throws on horizon mismatch.
std::pair<CountingPath, CovariatePath> stop_pair(const CountingPath& x,
                                                 const CovariatePath& z);

// Line-delimited dataset format, one record per line:
//   y;T;u;jump_times;grid;d;values
// with comma-separated float lists printed at 17 significant digits.
Dataset read_dataset(std::istream& in);
Dataset read_dataset_file(const std::string& path);
void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset_file(const std::string& path, const Dataset& data);

}  // namespace coxflow

#endif  // COXFLOW_PATHS_HPP_
