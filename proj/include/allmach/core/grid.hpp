#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace allmach {

inline constexpr int kGhost = 3;

// Uniform cell-centred mesh, 1D or 2D, with kGhost ghost layers per side
// along each active axis. Node i (0-based) sits at xmin + (i + 1/2) dx.
class Grid {
 public:
  Grid() = default;
  Grid(double xmin, double xmax, int nx);
  Grid(double xmin, double xmax, int nx, double ymin, double ymax, int ny);

  int dim() const { return dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int gx() const { return kGhost; }
  int gy() const { return dim_ == 2 ? kGhost : 0; }
  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double min_spacing() const { return dim_ == 2 && dy_ < dx_ ? dy_ : dx_; }
  double cell_volume() const { return dim_ == 2 ? dx_ * dy_ : dx_; }

  double x(int i) const { return xmin_ + (i + 0.5) * dx_; }
  double y(int j) const { return dim_ == 2 ? ymin_ + (j + 0.5) * dy_ : 0.0; }

  std::size_t stride() const { return static_cast<std::size_t>(nx_ + 2 * kGhost); }
  std::size_t rows() const { return static_cast<std::size_t>(ny_ + 2 * gy()); }
  std::size_t size() const { return stride() * rows(); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j + gy()) * stride() + static_cast<std::size_t>(i + kGhost);
  }

  bool operator==(const Grid& o) const = default;

 private:
  int dim_ = 1;
  int nx_ = 0;
  int ny_ = 1;
  double xmin_ = 0.0, xmax_ = 1.0, ymin_ = 0.0, ymax_ = 1.0;
  double dx_ = 1.0, dy_ = 1.0;
};

// Scalar grid function including ghost nodes.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g, double value = 0.0) : grid_(g), v_(g.size(), value) {}

  const Grid& grid() const { return grid_; }
  double& operator()(int i, int j = 0) { return v_[grid_.index(i, j)]; }
  double operator()(int i, int j = 0) const { return v_[grid_.index(i, j)]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::span<double> span() { return v_; }
  std::span<const double> span() const { return v_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }

  void fill(double value);
  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);
  // this += a * x over every node
  void axpy(double a, const Field& x);

 private:
  Grid grid_;
  std::vector<double> v_;
};

// max |f| over interior nodes
double max_abs_interior(const Field& f);
// sum of f over interior nodes times cell volume, summed in row-major order
double integrate_interior(const Field& f);

}  // namespace allmach
