#include "repwitness/liegrp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "repwitness/errors.hpp"

namespace repwitness {

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat Quat::normalized() const {
  const double n = norm();
  return {w / n, x / n, y / n, z / n};
}

Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

double distance(const Quat& a, const Quat& b) {
  const double dw = a.w - b.w, dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dw * dw + dx * dx + dy * dy + dz * dz);
}

Quat exp_map(const Vec3& v) {
  const double theta = v.norm();
  if (theta < 1e-300) return {1.0, v.x(), v.y(), v.z()};
  const double s = std::sin(theta) / theta;
  return {std::cos(theta), s * v.x(), s * v.y(), s * v.z()};
}

Vec3 log_map(const Quat& q) {
  const Quat u = q.normalized();
  const Vec3 im = u.imag();
  const double s = im.norm();
  if (s < 1e-300) return u.w > 0 ? Vec3::Zero() : Vec3(std::numbers::pi, 0.0, 0.0);
  return im * (std::atan2(s, u.w) / s);
}

namespace {

Eigen::Matrix3d rotation_matrix(const Quat& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

Quat quat_power(Quat base, std::int64_t k) {
  if (k < 0) {
    base = base.conj();
    k = -k;
  }
  Quat out = Quat::identity();
  while (k) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

void check_rank(const Word& w, std::size_t n, const char* who) {
  if (w.rank() != n)
    throw DomainError(std::string(who) + ": word has rank " + std::to_string(w.rank()) + " but " +
                      std::to_string(n) + " group elements were given");
}

}  // namespace

Vec3 adjoint(const Quat& q, const Vec3& v) { return (q * Quat::pure(v) * q.conj()).imag(); }

Rot3 Rot3::about_axis(const Vec3& axis, double angle) {
  return {rotation_matrix(exp_map(axis.normalized() * (angle / 2.0)))};
}

Rot3 covering_map(const Quat& q) {
  if (std::abs(q.norm() - 1.0) > kTolerances.unit_input) throw DomainError("covering_map: quaternion is not a unit");
  return {rotation_matrix(q)};
}

Quat lift(const Rot3& r) {
  const Eigen::Matrix3d& m = r.matrix;
  const double tr = m.trace();
  Quat q;
  if (tr > 0) {
    const double s = 2.0 * std::sqrt(1.0 + tr);
    q = {0.25 * s, (m(2, 1) - m(1, 2)) / s, (m(0, 2) - m(2, 0)) / s, (m(1, 0) - m(0, 1)) / s};
  } else if (m(0, 0) > m(1, 1) && m(0, 0) > m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2));
    q = {(m(2, 1) - m(1, 2)) / s, 0.25 * s, (m(0, 1) + m(1, 0)) / s, (m(0, 2) + m(2, 0)) / s};
  } else if (m(1, 1) > m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2));
    q = {(m(0, 2) - m(2, 0)) / s, (m(0, 1) + m(1, 0)) / s, 0.25 * s, (m(1, 2) + m(2, 1)) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1));
    q = {(m(1, 0) - m(0, 1)) / s, (m(0, 2) + m(2, 0)) / s, (m(1, 2) + m(2, 1)) / s, 0.25 * s};
  }
  return q.normalized();
}

Quat word_eval(const Word& w, const QTuple& g) {
  check_rank(w, g.size(), "word_eval");
  Quat out = Quat::identity();
  for (const Run& r : w.runs()) out = out * quat_power(g[r.generator - 1], r.exponent);
  return out.normalized();
}

Rot3 word_eval(const Word& w, const std::vector<Rot3>& g) {
  check_rank(w, g.size(), "word_eval");
  Eigen::Matrix3d out = Eigen::Matrix3d::Identity();
  for (const Run& r : w.runs()) {
    const Eigen::Matrix3d& m = g[r.generator - 1].matrix;
    const Eigen::Matrix3d step = r.exponent > 0 ? m : Eigen::Matrix3d(m.transpose());
    for (std::int64_t k = 0; k < std::abs(r.exponent); ++k) out = out * step;
  }
  return {out};
}

Eigen::MatrixXd word_jacobian(const Word& w, const QTuple& g) {
  check_rank(w, g.size(), "word_jacobian");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, 3 * static_cast<Eigen::Index>(g.size()));
  // d(h_1 ... h_L) (h_1 ... h_L)^-1 = sum_a Ad(h_1 ... h_{a-1}) dh_a h_a^-1, where
  // dh h^-1 = xi for h = g and -Ad(g^-1) xi for h = g^-1.
  Quat prefix = Quat::identity();
  for (const Run& r : w.runs()) {
    const std::size_t p = r.generator - 1;
    auto block = jac.middleCols(3 * static_cast<Eigen::Index>(p), 3);
    if (r.exponent > 0) {
      for (std::int64_t k = 0; k < r.exponent; ++k) {
        block += rotation_matrix(prefix);
        prefix = prefix * g[p];
      }
    } else {
      const Quat inv = g[p].conj();
      for (std::int64_t k = 0; k < -r.exponent; ++k) {
        prefix = prefix * inv;
        block -= rotation_matrix(prefix);
      }
    }
  }
  return jac;
}

Vec3 word_differential(const Word& w, const QTuple& g, const TangentVector& xi) {
  if (xi.size() != g.size()) throw DomainError("word_differential: tangent vector has wrong length");
  const Eigen::MatrixXd jac = word_jacobian(w, g);
  Eigen::VectorXd flat(3 * static_cast<Eigen::Index>(xi.size()));
  for (std::size_t p = 0; p < xi.size(); ++p) flat.segment<3>(3 * static_cast<Eigen::Index>(p)) = xi[p];
  return jac * flat;
}

Integer degree_formula(const std::vector<Word>& words, unsigned rank_m) {
  const std::size_t n = words.size();
  std::vector<IntVector> cols;
  cols.reserve(n);
  for (const Word& w : words) {
    if (w.rank() != n)
      throw DomainError("degree_formula: need exactly as many words as generators (" + std::to_string(w.rank()) +
                        " generators, " + std::to_string(n) + " words)");
    cols.push_back(abelianize(w));
  }
  if (rank_m == 0) throw DomainError("degree_formula: group rank must be positive");
  return boost::multiprecision::pow(determinant(IntMatrix::from_columns(n, cols)), rank_m);
}

// ---------------------------------------------------------------------------
// Empirical degree at n = 1

namespace {

struct Preimage {
  Quat point;
  int sign;
  double min_singular;
};

std::optional<Preimage> newton_root(const Word& w, const Quat& target, Quat g) {
  constexpr int kMaxIterations = 60;
  for (int it = 0; it < kMaxIterations; ++it) {
    QTuple tuple{g};
    const Quat value = word_eval(w, tuple);
    if (distance(value, target) < kTolerances.newton_convergence) {
      const Eigen::Matrix3d jac = word_jacobian(w, tuple);
      Eigen::JacobiSVD<Eigen::Matrix3d> svd(jac);
      const double det = jac.determinant();
      const Vec3 sv = svd.singularValues();
      return Preimage{g, det > 0 ? 1 : -1, sv.minCoeff()};
    }
    const Eigen::Matrix3d jac = word_jacobian(w, tuple);
    Vec3 step = jac.colPivHouseholderQr().solve(log_map(target * value.conj()));
    if (!step.allFinite()) return std::nullopt;
    if (step.norm() > 1.0) step *= 1.0 / step.norm();
    g = (exp_map(step) * g).normalized();
  }
  return std::nullopt;
}

bool lex_less(const Quat& a, const Quat& b) {
  if (a.w != b.w) return a.w < b.w;
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.z < b.z;
}

}  // namespace

EmpiricalDegree empirical_degree(const Word& w, const Quat& target, std::size_t starts, std::uint64_t seed) {
  if (w.rank() != 1) throw DomainError("empirical_degree: only words in F_1 are supported");
  if (abelianize(w)[0] == 0) throw DomainError("empirical_degree: word has zero exponent sum");
  if (std::abs(target.norm() - 1.0) > kTolerances.unit_input) throw DomainError("empirical_degree: target is not a unit");

  std::mt19937_64 rng(seed);
  EmpiricalDegree result;
  result.target = target.normalized();
  constexpr int kTargetAttempts = 16;
  for (int attempt = 0; attempt < kTargetAttempts; ++attempt) {
    std::vector<Preimage> found;
    std::size_t converged = 0;
    for (std::size_t s = 0; s < starts; ++s) {
      auto root = newton_root(w, result.target, random_unit_quat(rng));
      if (!root) continue;
      ++converged;
      const bool seen = std::any_of(found.begin(), found.end(), [&](const Preimage& p) {
        return distance(p.point, root->point) < kTolerances.dedup_radius;
      });
      if (!seen) found.push_back(*root);
    }
    result.starts_used += starts;
    result.converged_starts = converged;

    const bool singular = std::any_of(found.begin(), found.end(), [](const Preimage& p) {
      return p.min_singular < kTolerances.regular_value;
    });
    if (singular) {
      result.target = random_unit_quat(rng);
      result.target_resampled = true;
      continue;
    }
    std::sort(found.begin(), found.end(), [](const Preimage& a, const Preimage& b) { return lex_less(a.point, b.point); });
    result.solutions = found.size();
    for (const auto& p : found) (p.sign > 0 ? result.positive : result.negative) += 1;
    if (converged > 0)
      result.degree = static_cast<std::int64_t>(result.positive) - static_cast<std::int64_t>(result.negative);
    return result;
  }
  return result;
}

// ---------------------------------------------------------------------------

QTuple normalize_conjugacy(const QTuple& g) {
  const double eps = kTolerances.commute;
  Vec3 a = Vec3::UnitX(), b = Vec3::UnitY();
  std::size_t first = 0;
  while (first < g.size() && g[first].imag().norm() < eps) ++first;
  if (first == g.size()) return g;
  a = g[first].imag().normalized();
  bool have_b = false;
  for (std::size_t k = first + 1; k < g.size() && !have_b; ++k) {
    const Vec3 v = g[k].imag();
    const Vec3 perp = v - a.dot(v) * a;
    if (perp.norm() > eps) {
      b = perp.normalized();
      have_b = true;
    }
  }
  if (!have_b) {
    b = a.cross(std::abs(a.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).normalized();
  }
  Eigen::Matrix3d r;
  r.row(0) = a.transpose();
  r.row(1) = b.transpose();
  r.row(2) = a.cross(b).transpose();
  const Quat h = lift(Rot3{r});
  QTuple out;
  out.reserve(g.size());
  for (const Quat& q : g) out.push_back((h * q * h.conj()).normalized());
  return out;
}

int commutator_orientation_sign(const Quat& g, const Quat& h) {
  const Word c = commutator(Word::generator(2, 1), Word::generator(2, 2));
  const Eigen::MatrixXd dc = word_jacobian(c, {g, h});
  // Fibre directions: the conjugation action (g, h) . k = (k^-1 g k, k^-1 h k),
  // differentiated at k = 1 and right-trivialized.
  Eigen::Matrix<double, 6, 6> frame;
  const Eigen::Matrix3d adg = rotation_matrix(g), adh = rotation_matrix(h);
  frame.block<3, 3>(0, 0) = adg - Eigen::Matrix3d::Identity();
  frame.block<3, 3>(3, 0) = adh - Eigen::Matrix3d::Identity();
  // Normal directions: the row space of dc, which dc maps positively onto T(Sp(1)).
  frame.block<3, 3>(0, 3) = dc.leftCols(3).transpose();
  frame.block<3, 3>(3, 3) = dc.rightCols(3).transpose();
  const double det = frame.determinant();
  if (std::abs(det) < 1e-9) return 0;
  return det > 0 ? 1 : -1;
}

}  // namespace repwitness
