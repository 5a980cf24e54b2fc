#include "allmach/core/grid.hpp"

#include <cmath>

#include "allmach/core/errors.hpp"

namespace allmach {

Grid::Grid(double xmin, double xmax, int nx)
    : dim_(1), nx_(nx), ny_(1), xmin_(xmin), xmax_(xmax), ymin_(0.0), ymax_(1.0) {
  if (nx < 1 || !(xmax > xmin)) throw ConfigError("grid: need nx >= 1 and xmax > xmin");
  dx_ = (xmax - xmin) / nx;
  dy_ = 1.0;
}

Grid::Grid(double xmin, double xmax, int nx, double ymin, double ymax, int ny)
    : dim_(2), nx_(nx), ny_(ny), xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
  if (nx < 1 || ny < 1 || !(xmax > xmin) || !(ymax > ymin))
    throw ConfigError("grid: need positive sizes and non-empty extents");
  dx_ = (xmax - xmin) / nx;
  dy_ = (ymax - ymin) / ny;
}

void Field::fill(double value) {
  for (auto& x : v_) x = value;
}

Field& Field::operator+=(const Field& o) {
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}

Field& Field::operator*=(double a) {
  for (auto& x : v_) x *= a;
  return *this;
}

void Field::axpy(double a, const Field& x) {
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += a * x.v_[k];
}

double max_abs_interior(const Field& f) {
  const Grid& g = f.grid();
  double m = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) m = std::max(m, std::abs(f(i, j)));
  return m;
}

double integrate_interior(const Field& f) {
  const Grid& g = f.grid();
  double s = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) s += f(i, j);
  return s * g.cell_volume();
}

}  // namespace allmach
