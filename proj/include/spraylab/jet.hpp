#ifndef SPRAYLAB_JET_HPP
#define SPRAYLAB_JET_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spraylab {

// Thrown when a jet operation hits a branch point or a denominator whose
// value is within singular_floor of zero. Usually means the sample point
// is too close to the domain boundary.
struct SingularJet : std::runtime_error {
  explicit SingularJet(const std::string& what) : std::runtime_error(what) {}
};

struct OrderExceeded : std::runtime_error {
  explicit OrderExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kSingularFloor = 1e-12;

// Shared per-(nvars, order) enumeration of multi-indices |alpha| <= order,
// graded lexicographic, with a precomputed truncated product table.
class JetTable {
 public:
  static std::shared_ptr<const JetTable> get(int nvars, int order);

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(indices_.size()); }

  std::span<const std::uint8_t> index(int k) const {
    return {indices_[k].data(), static_cast<std::size_t>(nvars_)};
  }
  int degree(int k) const { return degrees_[k]; }
  // Position of a multi-index, or -1 if it exceeds the truncation order.
  int position(std::span<const int> alpha) const;

  struct MulTriple {
    std::int32_t a, b, to;
  };
  const std::vector<MulTriple>& mul_triples() const { return mul_triples_; }

 private:
  JetTable(int nvars, int order);

  int nvars_;
  int order_;
  std::vector<std::vector<std::uint8_t>> indices_;
  std::vector<int> degrees_;
  std::vector<MulTriple> mul_triples_;
  // packed multi-index -> position
  std::vector<std::pair<std::uint64_t, int>> lookup_;  // sorted by key
};

// Truncated Taylor expansion of a scalar at a base point. Coefficients are
// stored as partial derivatives divided by alpha! in the table's graded-lex
// order. Immutable value type; all operations are pure.
class Jet {
 public:
  Jet() = default;

  // One variable jet per coordinate of p, truncated at total degree `order`.
  static std::vector<Jet> lift(std::span<const double> p, int order);
  static Jet variable(std::span<const double> p, int coord, int order);
  static Jet constant(double v, int nvars, int order);
  Jet constant_like(double v) const;

  bool valid() const { return table_ != nullptr; }
  int order() const { return table_->order(); }
  int nvars() const { return table_->nvars(); }
  double value() const { return coeffs_[0]; }

  // Taylor coefficient (derivative / alpha!).
  double coeff(std::span<const int> alpha) const;
  // Raw partial derivative at the base point: coeff * alpha!.
  double partial(std::span<const int> alpha) const;

  Jet truncated(int order) const;
  // Partial-derivative jet with respect to variable v; order drops by one.
  Jet deriv(int v) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(const Jet& a, double s);
  friend Jet operator+(double s, const Jet& a);
  friend Jet operator-(const Jet& a, double s);
  friend Jet operator-(double s, const Jet& a);
  friend Jet operator*(const Jet& a, double s);
  friend Jet operator*(double s, const Jet& a);
  friend Jet operator/(const Jet& a, double s);
  friend Jet operator/(double s, const Jet& a);

  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet atan(const Jet& a);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  friend Jet pow_int(const Jet& a, int k);

  const std::vector<double>& coeffs() const { return coeffs_; }
  std::span<const double> base_point() const {
    return base_ ? std::span<const double>(*base_) : std::span<const double>();
  }

 private:
  Jet(std::shared_ptr<const JetTable> table,
      std::shared_ptr<const std::vector<double>> base)
      : table_(std::move(table)),
        base_(std::move(base)),
        coeffs_(table_->size(), 0.0) {}

  // Truncate both operands to the smaller order.
  static void align(Jet& a, Jet& b);
  // g(a) from the univariate series c[k] = g^(k)(a0)/k! via Horner.
  static Jet compose(const Jet& a, std::span<const double> c);

  std::shared_ptr<const JetTable> table_;
  std::shared_ptr<const std::vector<double>> base_;
  std::vector<double> coeffs_;
};

}  // namespace spraylab

#endif  // SPRAYLAB_JET_HPP
