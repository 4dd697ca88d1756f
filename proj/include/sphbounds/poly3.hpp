#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

namespace sphbounds {

/// Polynomial in three variables (t, u, v) with sparse monomial storage.
class Poly3 {
 public:
  using Exponent = std::array<int, 3>;

  Poly3() = default;

  static Poly3 constant(double c) {
    Poly3 p;
    p.add_term({0, 0, 0}, c);
    return p;
  }

  /// The coordinate function x_i.
  static Poly3 variable(int i) {
    Poly3 p;
    Exponent e{0, 0, 0};
    e[i] = 1;
    p.add_term(e, 1.0);
    return p;
  }

  void add_term(const Exponent& e, double c) {
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  [[nodiscard]] const std::map<Exponent, double>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  [[nodiscard]] int max_exponent() const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max({m, e[0], e[1], e[2]});
    return m;
  }

  [[nodiscard]] double operator()(double t, double u, double v) const {
    const int m = max_exponent();
    std::vector<double> pt(m + 1, 1.0), pu(m + 1, 1.0), pv(m + 1, 1.0);
    for (int i = 1; i <= m; ++i) {
      pt[i] = pt[i - 1] * t;
      pu[i] = pu[i - 1] * u;
      pv[i] = pv[i - 1] * v;
    }
    double s = 0.0;
    for (const auto& [e, c] : terms_) s += c * pt[e[0]] * pu[e[1]] * pv[e[2]];
    return s;
  }

  /// q(x0, x1, x2) = p(x_{order[0]}, x_{order[1]}, x_{order[2]}).
  [[nodiscard]] Poly3 substituted(const std::array<int, 3>& order) const {
    Poly3 out;
    for (const auto& [e, c] : terms_) {
      Exponent f{0, 0, 0};
      for (int i = 0; i < 3; ++i) f[order[i]] += e[i];
      out.add_term(f, c);
    }
    return out;
  }

  /// Average over the six permutations of the variables.
  [[nodiscard]] Poly3 symmetrized() const {
    Poly3 out;
    for (const auto& order : permutations()) out += substituted(order);
    out *= 1.0 / 6.0;
    return out;
  }

  /// sup over [-1,1]^3 of |d p / d x_i|, bounded termwise.
  [[nodiscard]] std::array<double, 3> partial_bounds() const {
    std::array<double, 3> b{0.0, 0.0, 0.0};
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < 3; ++i) b[i] += std::abs(c) * e[i];
    return b;
  }

  /// Monomial coefficients of the univariate restriction s -> p(1, s, s).
  [[nodiscard]] std::vector<double> restrict_to_one_s_s() const {
    std::vector<double> out(1, 0.0);
    for (const auto& [e, c] : terms_) {
      const std::size_t deg = static_cast<std::size_t>(e[1] + e[2]);
      if (out.size() <= deg) out.resize(deg + 1, 0.0);
      out[deg] += c;
    }
    return out;
  }

  /// Largest coefficient difference to `other`.
  [[nodiscard]] double distance(const Poly3& other) const {
    Poly3 diff = *this;
    diff -= other;
    double m = 0.0;
    for (const auto& [e, c] : diff.terms_) m = std::max(m, std::abs(c));
    return m;
  }

  Poly3& operator+=(const Poly3& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly3& operator-=(const Poly3& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly3& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
  friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
  friend Poly3 operator*(double s, Poly3 a) { return a *= s; }
  friend Poly3 operator*(const Poly3& a, const Poly3& b) {
    Poly3 out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
  }

  static const std::array<std::array<int, 3>, 6>& permutations() {
    static const std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    return perms;
  }

 private:
  std::map<Exponent, double> terms_;
};

/// Evaluates sum_i a_i s^i.
inline double eval_univariate(const std::vector<double>& coeffs, double s) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * s + *it;
  return v;
}

}  // namespace sphbounds
