#pragma once

// Sp(1) = SU(2) as unit quaternions, its quotient SO(3), word maps G^n -> G and
// their right-trivialized differentials, and mapping degrees of word maps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "repwitness/words.hpp"
#include "repwitness/zlinalg.hpp"

namespace repwitness {

/// Every numerical threshold used by the Lie group and solver code.
struct Tolerances {
  double norm_drift = 1e-12;          // |q| - 1 after normalize()
  double unit_input = 1e-9;           // accepted |q| - 1 on user-facing inputs
  double newton_convergence = 1e-10;  // empirical degree Newton stop
  double dedup_radius = 1e-6;         // distinct preimages
  double regular_value = 1e-4;        // min singular value for a regular target
  double solve_residual = 1e-9;       // solver success
  double sign_snap = 1e-6;            // psi(w) snapped to +-1
  double commute = 1e-6;              // SO(3) commutator distance / axis parallelism
};

inline constexpr Tolerances kTolerances{};

using Vec3 = Eigen::Vector3d;

/// Quaternion w + x i + y j + z k.
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static Quat identity() { return {}; }
  static Quat pure(const Vec3& v) { return {0.0, v.x(), v.y(), v.z()}; }

  Vec3 imag() const { return {x, y, z}; }
  double norm() const;
  Quat conj() const { return {w, -x, -y, -z}; }
  Quat normalized() const;
  Quat operator-() const { return {-w, -x, -y, -z}; }

  friend Quat operator*(const Quat& a, const Quat& b);
  friend bool operator==(const Quat&, const Quat&) = default;
};

double distance(const Quat& a, const Quat& b);

/// exp of a pure imaginary quaternion: cos|v| + sin|v| v/|v|.
Quat exp_map(const Vec3& v);
/// Inverse of exp_map on unit quaternions, with |result| in [0, pi].
Vec3 log_map(const Quat& q);

/// Ad(q) v = q v q^-1 on pure imaginary v.
Vec3 adjoint(const Quat& q, const Vec3& v);

/// Haar-distributed unit quaternion (normalized 4-d Gaussian).
template <class Rng>
Quat random_unit_quat(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Quat q{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    if (q.norm() > 1e-6) return q.normalized();
  }
}

using QTuple = std::vector<Quat>;
/// Right-trivialized tangent vector at a point of G^n: the perturbation
/// g_p -> exp(t xi_p) g_p.
using TangentVector = std::vector<Vec3>;

/// Rotation matrix, R^T R = I and det R = 1.
struct Rot3 {
  Eigen::Matrix3d matrix = Eigen::Matrix3d::Identity();

  static Rot3 about_axis(const Vec3& axis, double angle);
  Rot3 inverse() const { return {matrix.transpose()}; }
  friend Rot3 operator*(const Rot3& a, const Rot3& b) { return {a.matrix * b.matrix}; }
};

/// The double cover Sp(1) -> SO(3), q |-> (v |-> q v q^-1).
/// Throws DomainError if q is not unit within tolerance.
Rot3 covering_map(const Quat& q);

/// One of the two preimages of R under covering_map.
Quat lift(const Rot3& r);

Quat word_eval(const Word& w, const QTuple& g);
Rot3 word_eval(const Word& w, const std::vector<Rot3>& g);

/// d/dt|0 [ w(exp(t xi) g) w(g)^-1 ] as a pure imaginary vector.
Vec3 word_differential(const Word& w, const QTuple& g, const TangentVector& xi);

/// The 3 x 3n matrix of word_differential; columns 3p..3p+2 belong to generator p+1.
Eigen::MatrixXd word_jacobian(const Word& w, const QTuple& g);

/// Degree of (w_1 x ... x w_n): G^n -> G^n for G of rank `rank_m`:
/// det(abelianize(w_1), ..., abelianize(w_n))^rank_m.
Integer degree_formula(const std::vector<Word>& words, unsigned rank_m);

struct EmpiricalDegree {
  /// Signed preimage count; empty if inconclusive (no converged start, or no
  /// regular target could be found).
  std::optional<std::int64_t> degree;
  Quat target;
  bool target_resampled = false;
  std::size_t solutions = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t starts_used = 0;
  std::size_t converged_starts = 0;
};

/// Counts solutions of w(g) = target (w in F_1) with their Jacobian signs,
/// by multi-start Newton from Haar-random starts.
EmpiricalDegree empirical_degree(const Word& w, const Quat& target, std::size_t starts, std::uint64_t seed);

/// Conjugates the tuple so that Im g_1 points along +i and Im g_2 lies in the
/// i-j half plane with nonnegative j component (skipping central entries).
QTuple normalize_conjugacy(const QTuple& g);

/// Orientation sign of the point [(g, h)] of {[g, h] = -1} inside the quotient
/// of Sp(1)^2 by conjugation, using the preimage and fibre orientation
/// conventions. Returns 0 when (g, h) is not a regular point.
int commutator_orientation_sign(const Quat& g, const Quat& h);

}  // namespace repwitness
