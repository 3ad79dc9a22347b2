#include "spraylab/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace spraylab {

namespace {

std::uint64_t pack(std::span<const std::uint8_t> alpha) {
  std::uint64_t key = 0;
  for (std::uint8_t a : alpha) key = (key << 8) | a;
  return key;
}

std::uint64_t pack_int(std::span<const int> alpha) {
  std::uint64_t key = 0;
  for (int a : alpha) key = (key << 8) | static_cast<std::uint64_t>(a);
  return key;
}

void enumerate(int nvars, int deg, int pos, std::vector<std::uint8_t>& cur,
               std::vector<std::vector<std::uint8_t>>& out) {
  if (pos == nvars - 1) {
    cur[pos] = static_cast<std::uint8_t>(deg);
    out.push_back(cur);
    return;
  }
  for (int a = deg; a >= 0; --a) {
    cur[pos] = static_cast<std::uint8_t>(a);
    enumerate(nvars, deg - a, pos + 1, cur, out);
  }
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

JetTable::JetTable(int nvars, int order) : nvars_(nvars), order_(order) {
  std::vector<std::uint8_t> cur(nvars);
  for (int deg = 0; deg <= order; ++deg)
    enumerate(nvars, deg, 0, cur, indices_);
  degrees_.reserve(indices_.size());
  lookup_.reserve(indices_.size());
  for (int k = 0; k < static_cast<int>(indices_.size()); ++k) {
    int deg = 0;
    for (std::uint8_t a : indices_[k]) deg += a;
    degrees_.push_back(deg);
    lookup_.emplace_back(pack(index(k)), k);
  }
  std::sort(lookup_.begin(), lookup_.end());

  std::vector<int> sum(nvars);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (degrees_[i] + degrees_[j] > order) continue;
      for (int v = 0; v < nvars; ++v) sum[v] = indices_[i][v] + indices_[j][v];
      mul_triples_.push_back({i, j, position(sum)});
    }
  }
}

int JetTable::position(std::span<const int> alpha) const {
  int deg = 0;
  for (int a : alpha) deg += a;
  if (deg > order_) return -1;
  std::uint64_t key = pack_int(alpha);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(),
                             std::make_pair(key, 0));
  return (it != lookup_.end() && it->first == key) ? it->second : -1;
}

std::shared_ptr<const JetTable> JetTable::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot.reset(new JetTable(nvars, order));
  return slot;
}

std::vector<Jet> Jet::lift(std::span<const double> p, int order) {
  std::vector<Jet> vars;
  vars.reserve(p.size());
  for (int v = 0; v < static_cast<int>(p.size()); ++v)
    vars.push_back(variable(p, v, order));
  return vars;
}

Jet Jet::variable(std::span<const double> p, int coord, int order) {
  auto base = std::make_shared<std::vector<double>>(p.begin(), p.end());
  Jet j(JetTable::get(static_cast<int>(p.size()), order), base);
  j.coeffs_[0] = p[coord];
  if (order >= 1) {
    std::vector<int> unit(p.size(), 0);
    unit[coord] = 1;
    j.coeffs_[j.table_->position(unit)] = 1.0;
  }
  return j;
}

Jet Jet::constant(double v, int nvars, int order) {
  Jet j(JetTable::get(nvars, order), nullptr);
  j.coeffs_[0] = v;
  return j;
}

Jet Jet::constant_like(double v) const {
  Jet j(table_, base_);
  j.coeffs_[0] = v;
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  int pos = table_->position(alpha);
  if (pos < 0) throw OrderExceeded("multi-index exceeds jet order");
  return coeffs_[pos];
}

double Jet::partial(std::span<const int> alpha) const {
  double fact = 1;
  for (int a : alpha) fact *= factorial(a);
  return coeff(alpha) * fact;
}

Jet Jet::truncated(int order) const {
  if (order == this->order()) return *this;
  if (order > this->order())
    throw OrderExceeded("cannot extend jet order");
  Jet out(JetTable::get(nvars(), order), base_);
  std::copy(coeffs_.begin(), coeffs_.begin() + out.coeffs_.size(),
            out.coeffs_.begin());
  return out;
}

Jet Jet::deriv(int v) const {
  if (order() < 1) throw OrderExceeded("derivative of an order-0 jet");
  Jet out(JetTable::get(nvars(), order() - 1), base_);
  std::vector<int> alpha(nvars());
  for (int k = 0; k < out.table_->size(); ++k) {
    auto beta = out.table_->index(k);
    for (int i = 0; i < nvars(); ++i) alpha[i] = beta[i];
    ++alpha[v];
    out.coeffs_[k] = coeffs_[table_->position(alpha)] * (beta[v] + 1);
  }
  return out;
}

void Jet::align(Jet& a, Jet& b) {
  if (a.order() > b.order()) a = a.truncated(b.order());
  if (b.order() > a.order()) b = b.truncated(a.order());
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }

Jet operator+(const Jet& a, const Jet& b) {
  Jet x = a, y = b;
  Jet::align(x, y);
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) x.coeffs_[k] += y.coeffs_[k];
  return x;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet x = a, y = b;
  Jet::align(x, y);
  for (std::size_t k = 0; k < x.coeffs_.size(); ++k) x.coeffs_[k] -= y.coeffs_[k];
  return x;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet x = a, y = b;
  Jet::align(x, y);
  Jet out = x.constant_like(0.0);
  for (const auto& t : x.table_->mul_triples())
    out.coeffs_[t.to] += x.coeffs_[t.a] * y.coeffs_[t.b];
  return out;
}

Jet operator+(const Jet& a, double s) {
  Jet out = a;
  out.coeffs_[0] += s;
  return out;
}
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { return a + (-s); }
Jet operator-(double s, const Jet& a) { return (-a) + s; }
Jet operator*(const Jet& a, double s) {
  Jet out = a;
  for (double& c : out.coeffs_) c *= s;
  return out;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) {
  if (std::abs(s) <= kSingularFloor) throw SingularJet("division by zero scale");
  return a * (1.0 / s);
}
Jet operator/(double s, const Jet& a) { return a.constant_like(s) / a; }

// Horner evaluation of sum c[k] (a - a0)^k; the shifted jet is nilpotent.
Jet Jet::compose(const Jet& a, std::span<const double> c) {
  Jet w = a;
  w.coeffs_[0] = 0.0;
  Jet out = a.constant_like(c.back());
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k)
    out = out * w + c[k];
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  double b0 = b.value();
  if (std::abs(b0) <= kSingularFloor)
    throw SingularJet("jet division: denominator value " + std::to_string(b0));
  std::vector<double> c(b.order() + 1);
  double p = 1.0 / b0;
  for (int k = 0; k <= b.order(); ++k) {
    c[k] = p;
    p *= -1.0 / b0;
  }
  return a * Jet::compose(b, c);
}

Jet sqrt(const Jet& a) {
  double a0 = a.value();
  if (a0 <= kSingularFloor)
    throw SingularJet("jet sqrt: argument value " + std::to_string(a0));
  std::vector<double> c(a.order() + 1);
  const double r = std::sqrt(a0);
  c[0] = r;
  double coef = 1.0;  // binom(1/2, k) * a0^(1/2 - k)
  for (int k = 1; k <= a.order(); ++k) {
    coef *= (0.5 - (k - 1)) / k;
    c[k] = coef * r / std::pow(a0, k);
  }
  return Jet::compose(a, c);
}

Jet exp(const Jet& a) {
  std::vector<double> c(a.order() + 1);
  double e = std::exp(a.value());
  double f = 1;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) f *= k;
    c[k] = e / f;
  }
  return Jet::compose(a, c);
}

Jet log(const Jet& a) {
  double a0 = a.value();
  if (a0 <= kSingularFloor)
    throw SingularJet("jet log: argument value " + std::to_string(a0));
  std::vector<double> c(a.order() + 1);
  c[0] = std::log(a0);
  double sign = 1;
  for (int k = 1; k <= a.order(); ++k) {
    c[k] = sign / (k * std::pow(a0, k));
    sign = -sign;
  }
  return Jet::compose(a, c);
}

Jet atan(const Jet& a) {
  // f(w) = atan(t + w) satisfies (1 + (t+w)^2) f'(w) = 1; expand 1/A(w)
  // with A = (1+t^2) + 2t w + w^2 by the linear recurrence for b_k.
  double t = a.value();
  double s = 1.0 + t * t;
  int d = a.order();
  std::vector<double> b(std::max(d, 1));
  b[0] = 1.0 / s;
  if (d >= 2) b[1] = -2.0 * t / (s * s);
  for (int k = 2; k < d; ++k) b[k] = -(2.0 * t * b[k - 1] + b[k - 2]) / s;
  std::vector<double> c(d + 1);
  c[0] = std::atan(t);
  for (int k = 1; k <= d; ++k) c[k] = b[k - 1] / k;
  return Jet::compose(a, c);
}

Jet sin(const Jet& a) {
  std::vector<double> c(a.order() + 1);
  double cyc[4] = {std::sin(a.value()), std::cos(a.value()),
                   -std::sin(a.value()), -std::cos(a.value())};
  double f = 1;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) f *= k;
    c[k] = cyc[k % 4] / f;
  }
  return Jet::compose(a, c);
}

Jet cos(const Jet& a) {
  std::vector<double> c(a.order() + 1);
  double cyc[4] = {std::cos(a.value()), -std::sin(a.value()),
                   -std::cos(a.value()), std::sin(a.value())};
  double f = 1;
  for (int k = 0; k <= a.order(); ++k) {
    if (k > 0) f *= k;
    c[k] = cyc[k % 4] / f;
  }
  return Jet::compose(a, c);
}

Jet pow_int(const Jet& a, int k) {
  if (k == 0) return a.constant_like(1.0);
  if (k < 0) return a.constant_like(1.0) / pow_int(a, -k);
  Jet out = a;
  for (int i = 1; i < k; ++i) out = out * a;
  return out;
}

}  // namespace spraylab
