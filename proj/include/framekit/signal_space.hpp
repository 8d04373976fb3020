#pragma once

// Cyclic sample model of a window of L^2(R) and truncated sequence spaces.
//
// A Grid of q samples per unit over P units has n = q*P points t_i = i/q and
// the weighted inner product <f,g> = (1/q) sum f_i conj(g_i). Frame
// computations work in orthonormal coordinates, values / sqrt(q), so that
// plain Euclidean inner products on coordinate vectors equal the weighted
// inner products on signals.

#include "framekit/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

namespace framekit {

inline constexpr double kGridSnap = 1e-12;

struct Grid {
  int q = 1;  // samples per unit
  int P = 1;  // period in units

  Grid() = default;
  Grid(int samples_per_unit, int period_units) : q(samples_per_unit), P(period_units) {
    if (q <= 0 || P <= 0) {
      throw Error(ErrorKind::InvalidInput, "grid needs positive q and P");
    }
  }

  Eigen::Index n() const { return static_cast<Eigen::Index>(q) * P; }
  double t(Eigen::Index i) const { return static_cast<double>(i) / q; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

class Signal {
 public:
  Signal(Grid grid, Vector values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n()) {
      throw Error(ErrorKind::DimensionMismatch, "signal length does not match grid");
    }
  }

  static Signal zeros(Grid grid) { return Signal(grid, Vector::Zero(grid.n())); }

  /// Signal whose orthonormal coordinates are the given vector.
  static Signal from_coordinates(Grid grid, const Vector& coords) {
    return Signal(grid, coords * std::sqrt(static_cast<double>(grid.q)));
  }

  const Grid& grid() const { return grid_; }
  const Vector& values() const { return values_; }
  Complex operator[](Eigen::Index i) const { return values_(i); }

  Vector coordinates() const { return values_ / std::sqrt(static_cast<double>(grid_.q)); }

  Complex inner(const Signal& other) const {
    require_same_grid(other);
    return other.values_.dot(values_) / static_cast<double>(grid_.q);
  }

  double norm_squared() const { return values_.squaredNorm() / grid_.q; }
  double norm() const { return std::sqrt(norm_squared()); }

  Signal operator+(const Signal& o) const {
    require_same_grid(o);
    return Signal(grid_, values_ + o.values_);
  }
  Signal operator-(const Signal& o) const {
    require_same_grid(o);
    return Signal(grid_, values_ - o.values_);
  }
  Signal operator*(Complex s) const { return Signal(grid_, values_ * s); }
  /// Pointwise product.
  Signal times(const Signal& o) const {
    require_same_grid(o);
    return Signal(grid_, values_.cwiseProduct(o.values_));
  }

 private:
  void require_same_grid(const Signal& o) const {
    if (!(grid_ == o.grid_)) throw Error(ErrorKind::DimensionMismatch, "signals live on different grids");
  }

  Grid grid_;
  Vector values_;
};

namespace detail {

inline long long snap_to_integer(double x, ErrorKind kind, const std::string& what) {
  const double r = std::round(x);
  if (!std::isfinite(x) || std::abs(x - r) > kGridSnap) {
    throw Error(kind, what + " (" + std::to_string(x) + " is not an integer)");
  }
  return static_cast<long long>(r);
}

inline Eigen::Index wrap(long long i, Eigen::Index n) {
  long long r = i % static_cast<long long>(n);
  if (r < 0) r += n;
  return static_cast<Eigen::Index>(r);
}

}  // namespace detail

/// Cyclic translation T_a f(t) = f(t - a); a*q must be an integer.
inline Signal translate(const Signal& f, double a) {
  const Grid& g = f.grid();
  const long long shift =
      detail::snap_to_integer(a * g.q, ErrorKind::OffGridShift, "translation a*q off grid");
  const Eigen::Index n = g.n();
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = f[detail::wrap(i - shift, n)];
  return Signal(g, std::move(out));
}

/// Modulation E_b f(t) = exp(2 pi i b t) f(t); b*P must be an integer.
inline Signal modulate(const Signal& f, double b) {
  const Grid& g = f.grid();
  const long long cycles =
      detail::snap_to_integer(b * g.P, ErrorKind::OffGridFrequency, "modulation b*P off grid");
  const Eigen::Index n = g.n();
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // b * t_i = cycles * i / n, reduced mod n to keep the phase argument small
    const double phase =
        2.0 * std::numbers::pi * static_cast<double>(detail::wrap(cycles * i, n)) / n;
    out(i) = std::polar(1.0, phase) * f[i];
  }
  return Signal(g, std::move(out));
}

/// Index-permutation dilation i -> c*i mod n; needs gcd(c, n) = 1.
inline Signal dilate(const Signal& f, long long c) {
  const Grid& g = f.grid();
  const Eigen::Index n = g.n();
  if (std::gcd(c < 0 ? -c : c, static_cast<long long>(n)) != 1) {
    throw Error(ErrorKind::NonCoprimeDilation,
                "dilation factor " + std::to_string(c) + " is not coprime to n = " + std::to_string(n));
  }
  Vector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = f[detail::wrap(c * i, n)];
  return Signal(g, std::move(out));
}

/// chi_[s,t) sampled on the grid.
inline Signal indicator(const Grid& g, double s, double t) {
  const long long lo = detail::snap_to_integer(s * g.q, ErrorKind::OffGridEndpoints, "indicator start off grid");
  const long long hi = detail::snap_to_integer(t * g.q, ErrorKind::OffGridEndpoints, "indicator end off grid");
  if (!(lo < hi) || lo < 0 || hi > g.n()) {
    throw Error(ErrorKind::OffGridEndpoints, "indicator interval must satisfy 0 <= s < t <= P");
  }
  Vector v = Vector::Zero(g.n());
  for (long long i = lo; i < hi; ++i) v(static_cast<Eigen::Index>(i)) = 1.0;
  return Signal(g, std::move(v));
}

inline Operator mult_operator(const Signal& g) { return g.values().asDiagonal(); }

enum class GridOp { Translate, Modulate, Dilate };

/// Matrix M with M * coordinates(f) = coordinates(op(f)).
inline Operator operator_of(const Grid& g, GridOp kind, double parameter) {
  const Eigen::Index n = g.n();
  Operator m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e(j) = 1.0;
    const Signal basis(g, e);
    switch (kind) {
      case GridOp::Translate: m.col(j) = translate(basis, parameter).values(); break;
      case GridOp::Modulate: m.col(j) = modulate(basis, parameter).values(); break;
      case GridOp::Dilate: {
        const double r = std::round(parameter);
        if (std::abs(r - parameter) > kGridSnap) {
          throw Error(ErrorKind::NonCoprimeDilation, "dilation factor must be an integer");
        }
        m.col(j) = dilate(basis, static_cast<long long>(r)).values();
        break;
      }
    }
  }
  return m;
}

/// C^n model of l^2(N) with a boundary margin excluded from shift identities.
struct TruncatedSequenceSpace {
  Eigen::Index n = 1;
  Eigen::Index margin = 0;

  TruncatedSequenceSpace() = default;
  TruncatedSequenceSpace(Eigen::Index dimension, Eigen::Index margin_width)
      : n(dimension), margin(margin_width) {
    if (n <= 0 || margin < 0 || margin >= n) {
      throw Error(ErrorKind::InvalidInput, "need n > 0 and 0 <= margin < n");
    }
  }

  /// Canonical basis vector chi_k, 1-based.
  Vector chi(Eigen::Index k) const {
    if (k < 1 || k > n) throw Error(ErrorKind::InvalidInput, "chi index out of range");
    Vector v = Vector::Zero(n);
    v(k - 1) = 1.0;
    return v;
  }

  /// Orthonormal columns spanning coordinates 1..n-margin.
  Operator margin_subspace() const { return Operator::Identity(n, n - margin); }
};

struct ShiftPair {
  Operator backward;  // (x1,...,xn) -> (x2,...,xn,0)
  Operator forward;   // (x1,...,xn) -> (0,x1,...,x_{n-1})
};

inline ShiftPair shift_operators(const TruncatedSequenceSpace& space) {
  const Eigen::Index n = space.n;
  Operator back = Operator::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) back(i, i + 1) = 1.0;
  return {back, back.adjoint()};
}

/// (x1, x2, x3, ...) -> (x1, x1 + x2, x2 + x3, ...).
inline Operator summing_operator(const TruncatedSequenceSpace& space) {
  const Eigen::Index n = space.n;
  Operator m = Operator::Identity(n, n);
  for (Eigen::Index i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  return m;
}

}  // namespace framekit
