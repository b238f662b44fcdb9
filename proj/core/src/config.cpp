#include "gerbes/config.hpp"

#include <atomic>
#include <cstdlib>

namespace gerbes {

namespace {

double initial_tolerance() {
  if (const char* env = std::getenv("GERBE_TOLERANCE")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0.0) return v;
  }
  return 1e-9;
}

std::atomic<double>& tol_storage() {
  static std::atomic<double> t{initial_tolerance()};
  return t;
}

}  // namespace

double tolerance() { return tol_storage().load(std::memory_order_relaxed); }
void set_tolerance(double eps) { tol_storage().store(eps, std::memory_order_relaxed); }

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

Mat scalar_mat(cplx z) {
  Mat m(1, 1);
  m(0, 0) = z;
  return m;
}

bool exactly_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  double m = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_unitary(const Mat& m, double eps) {
  if (m.rows() != m.cols()) return false;
  return is_isometry(m, eps);
}

bool is_isometry(const Mat& m, double eps) {
  Mat g = m.adjoint() * m;
  Mat id = Mat::Identity(m.cols(), m.cols());
  return max_abs_diff(g, id) <= eps;
}

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorKind::InvalidSurface: return "InvalidSurface";
    case ErrorKind::EmptyRefinement: return "EmptyRefinement";
    case ErrorKind::InvalidDescent: return "InvalidDescent";
    case ErrorKind::SiteMismatch: return "SiteMismatch";
    case ErrorKind::IndexNotValidOnEdge: return "IndexNotValidOnEdge";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::GerbeMismatch: return "GerbeMismatch";
    case ErrorKind::MorphismMismatch: return "MorphismMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::DescentObstruction: return "DescentObstruction";
    case ErrorKind::NotTrivialGerbe: return "NotTrivialGerbe";
    case ErrorKind::InvalidGerbe: return "InvalidGerbe";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotOriented: return "NotOriented";
    case ErrorKind::BoundaryNotOnBrane: return "BoundaryNotOnBrane";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Error";
}

void Report::check(const std::string& law, double dev, double eps, const std::string& where) {
  ++checks;
  if (dev > max_deviation) max_deviation = dev;
  if (dev > eps || dev != dev) fail(law, where, dev);
}

void Report::fail(const std::string& law, const std::string& where, double dev) {
  if (violations.size() < cap)
    violations.push_back({law, where, dev});
  else
    ++dropped;
  if (dev > max_deviation) max_deviation = dev;
}

void Report::merge(const Report& other, const std::string& prefix) {
  checks += other.checks;
  if (other.max_deviation > max_deviation) max_deviation = other.max_deviation;
  for (const auto& v : other.violations) {
    if (violations.size() < cap)
      violations.push_back({prefix + v.law, v.where, v.deviation});
    else
      ++dropped;
  }
  dropped += other.dropped;
}

}  // namespace gerbes
