#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gerbes {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

// Absolute tolerance on complex entries. GERBE_TOLERANCE overrides the default 1e-9.
double tolerance();
void set_tolerance(double eps);

// Inverse of a unit-modulus scalar; conj keeps the operation an exact involution.
inline cplx unit_inv(cplx z) { return std::conj(z); }

Mat kron(const Mat& a, const Mat& b);
Mat scalar_mat(cplx z);
bool exactly_equal(const Mat& a, const Mat& b);
double max_abs_diff(const Mat& a, const Mat& b);
bool is_unitary(const Mat& m, double eps);
bool is_isometry(const Mat& m, double eps);

enum class ErrorKind {
  NonManifoldEdge,
  InvalidSurface,
  EmptyRefinement,
  InvalidDescent,
  SiteMismatch,
  IndexNotValidOnEdge,
  BaseMismatch,
  GerbeMismatch,
  MorphismMismatch,
  NotInvertible,
  DescentObstruction,
  NotTrivialGerbe,
  InvalidGerbe,
  NotClosed,
  NotOriented,
  BoundaryNotOnBrane,
  NotEquivariant,
  ParseError,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what)
      : std::runtime_error(std::string(error_name(k)) + ": " + what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

#define GERBES_ERROR_TYPE(Name)                                                   \
  class Name : public Error {                                                     \
   public:                                                                        \
    explicit Name(const std::string& what) : Error(ErrorKind::Name, what) {}      \
  };

GERBES_ERROR_TYPE(NonManifoldEdge)
GERBES_ERROR_TYPE(InvalidSurface)
GERBES_ERROR_TYPE(EmptyRefinement)
GERBES_ERROR_TYPE(InvalidDescent)
GERBES_ERROR_TYPE(SiteMismatch)
GERBES_ERROR_TYPE(IndexNotValidOnEdge)
GERBES_ERROR_TYPE(BaseMismatch)
GERBES_ERROR_TYPE(GerbeMismatch)
GERBES_ERROR_TYPE(MorphismMismatch)
GERBES_ERROR_TYPE(NotInvertible)
GERBES_ERROR_TYPE(DescentObstruction)
GERBES_ERROR_TYPE(NotTrivialGerbe)
GERBES_ERROR_TYPE(InvalidGerbe)
GERBES_ERROR_TYPE(NotClosed)
GERBES_ERROR_TYPE(NotOriented)
GERBES_ERROR_TYPE(BoundaryNotOnBrane)
GERBES_ERROR_TYPE(NotEquivariant)
GERBES_ERROR_TYPE(ParseError)

#undef GERBES_ERROR_TYPE

// One violated constraint in a validation report.
struct Violation {
  std::string law;
  std::string where;
  double deviation = 0.0;
};

struct Report {
  std::vector<Violation> violations;
  double max_deviation = 0.0;
  std::size_t checks = 0;

  bool ok() const { return violations.empty(); }
  // Records a check; adds a violation when dev > eps. Keeps at most `cap` entries.
  void check(const std::string& law, double dev, double eps, const std::string& where);
  void fail(const std::string& law, const std::string& where, double dev = 1.0);
  void merge(const Report& other, const std::string& prefix = "");
  static constexpr std::size_t cap = 64;
  std::size_t dropped = 0;
};

// Small fixed-width bitset over simplices.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}
  int size() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v = true) {
    if (v)
      w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
    else
      w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool any() const {
    for (auto x : w_)
      if (x) return true;
    return false;
  }
  Bits operator&(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }
  // *this = a & b without reallocating.
  void assign_and(const Bits& a, const Bits& b) {
    n_ = a.n_;
    w_.resize(a.w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] = a.w_[i] & b.w_[i];
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
  }
  bool operator==(const Bits& o) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Dense table of optional values keyed by a fixed number of integer coordinates.
template <class T>
class Field {
 public:
  Field() = default;
  explicit Field(std::vector<int> shape) : shape_(std::move(shape)) {
    std::size_t n = 1;
    for (int s : shape_) n *= static_cast<std::size_t>(s);
    data_.resize(n);
  }

  const std::vector<int>& shape() const { return shape_; }
  std::size_t flat_size() const { return data_.size(); }

  bool has(std::initializer_list<int> ix) const { return data_[flat(ix)].has_value(); }
  const T& at(std::initializer_list<int> ix) const {
    const auto& o = data_[flat(ix)];
    if (!o) throw std::out_of_range("Field::at: missing entry");
    return *o;
  }
  const T* find(std::initializer_list<int> ix) const {
    const auto& o = data_[flat(ix)];
    return o ? &*o : nullptr;
  }
  void set(std::initializer_list<int> ix, T v) { data_[flat(ix)] = std::move(v); }
  void erase(std::initializer_list<int> ix) { data_[flat(ix)].reset(); }

  const std::optional<T>& raw(std::size_t i) const { return data_[i]; }
  std::optional<T>& raw(std::size_t i) { return data_[i]; }

 private:
  std::size_t flat(std::initializer_list<int> ix) const {
    std::size_t f = 0;
    std::size_t k = 0;
    for (int i : ix) {
      if (k >= shape_.size() || i < 0 || i >= shape_[k])
        throw std::out_of_range("Field: index out of range");
      f = f * static_cast<std::size_t>(shape_[k]) + static_cast<std::size_t>(i);
      ++k;
    }
    if (k != shape_.size()) throw std::out_of_range("Field: wrong arity");
    return f;
  }

  std::vector<int> shape_;
  std::vector<std::optional<T>> data_;
};

template <class T, class Eq>
bool fields_equal(const Field<T>& a, const Field<T>& b, Eq eq) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t i = 0; i < a.flat_size(); ++i) {
    const auto& x = a.raw(i);
    const auto& y = b.raw(i);
    if (x.has_value() != y.has_value()) return false;
    if (x && !eq(*x, *y)) return false;
  }
  return true;
}

}  // namespace gerbes
