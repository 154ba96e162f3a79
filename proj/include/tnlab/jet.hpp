#pragma once

// Forward-mode truncated-Taylor ("jet") arithmetic in up to 8 independent
// variables, carrying every partial derivative up to total order DEG <= 3.
// Coefficients are stored once per monomial, so mixed partials are symmetric
// by construction and derivatives of constants are exactly zero.
//
// The scalar type T may itself be a Jet.  Nesting is how second derivatives
// of quantities that already contain second derivatives (spray coefficients)
// are obtained without finite differences.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace tnlab {

template <class T, int NV, int DEG>
class Jet;

inline double deep_value(double x) { return x; }
template <class T, int NV, int DEG>
double deep_value(const Jet<T, NV, DEG>& j);

inline double recip(double x) { return 1.0 / x; }
template <class T, int NV, int DEG>
Jet<T, NV, DEG> recip(const Jet<T, NV, DEG>& u);

inline double sqrt(double x) { return std::sqrt(x); }
template <class T, int NV, int DEG>
Jet<T, NV, DEG> sqrt(const Jet<T, NV, DEG>& u);

template <class S, class T>
concept JetScalarOf = std::same_as<S, T> || std::same_as<S, double>;

namespace detail {

constexpr int binom_int(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

// Monomial bookkeeping shared by every Jet<T, NV, DEG> with the same NV, DEG.
template <int NV, int DEG>
struct MonoTable {
  static_assert(NV >= 1 && NV <= 8 && DEG >= 1 && DEG <= 3);
  static constexpr int kCoefCount = binom_int(NV + DEG, DEG);

  std::vector<std::array<std::uint8_t, NV>> exps;
  std::vector<std::array<std::uint16_t, 3>> products;  // (i, j, i*j)
  std::array<int, NV> deg1{};
  std::array<std::array<int, NV>, NV> deg2{};
  std::array<std::array<std::array<int, NV>, NV>, NV> deg3{};

  MonoTable() {
    std::vector<int> lookup(std::size_t{1} << (2 * NV), -1);
    auto pack = [](const std::array<std::uint8_t, NV>& e) {
      int key = 0;
      for (int v = 0; v < NV; ++v) key |= static_cast<int>(e[v]) << (2 * v);
      return key;
    };
    auto push = [&](const std::array<std::uint8_t, NV>& e) {
      lookup[pack(e)] = static_cast<int>(exps.size());
      exps.push_back(e);
    };

    std::array<std::uint8_t, NV> e{};
    push(e);
    for (int i = 0; i < NV; ++i) {
      e.fill(0);
      e[i] = 1;
      deg1[i] = static_cast<int>(exps.size());
      push(e);
    }
    if constexpr (DEG >= 2) {
      for (int i = 0; i < NV; ++i)
        for (int j = i; j < NV; ++j) {
          e.fill(0);
          e[i] += 1;
          e[j] += 1;
          deg2[i][j] = deg2[j][i] = static_cast<int>(exps.size());
          push(e);
        }
    }
    if constexpr (DEG >= 3) {
      for (int i = 0; i < NV; ++i)
        for (int j = i; j < NV; ++j)
          for (int k = j; k < NV; ++k) {
            e.fill(0);
            e[i] += 1;
            e[j] += 1;
            e[k] += 1;
            const int idx = static_cast<int>(exps.size());
            const int p[3] = {i, j, k};
            for (int a = 0; a < 3; ++a)
              for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                  if (a == b || b == c || a == c) continue;
                  deg3[p[a]][p[b]][p[c]] = idx;
                }
            push(e);
          }
    }

    auto degree = [](const std::array<std::uint8_t, NV>& m) {
      int d = 0;
      for (int v = 0; v < NV; ++v) d += m[v];
      return d;
    };
    const int n = static_cast<int>(exps.size());
    for (int i = 0; i < n; ++i) {
      const int di = degree(exps[i]);
      for (int j = 0; j < n; ++j) {
        if (di + degree(exps[j]) > DEG) continue;
        std::array<std::uint8_t, NV> s{};
        for (int v = 0; v < NV; ++v)
          s[v] = static_cast<std::uint8_t>(exps[i][v] + exps[j][v]);
        products.push_back({static_cast<std::uint16_t>(i),
                            static_cast<std::uint16_t>(j),
                            static_cast<std::uint16_t>(lookup[pack(s)])});
      }
    }
  }
};

template <int NV, int DEG>
const MonoTable<NV, DEG>& mono_table() {
  static const MonoTable<NV, DEG> table;
  return table;
}

}  // namespace detail

template <class T, int NV, int DEG>
class Jet {
 public:
  using Table = detail::MonoTable<NV, DEG>;
  static constexpr int kCoefCount = Table::kCoefCount;
  static constexpr int kVars = NV;
  static constexpr int kOrder = DEG;

  Jet() = default;

  template <class S>
    requires JetScalarOf<S, T>
  Jet(const S& v) {  // NOLINT: implicit constant lift is intended
    c_[0] = T(v);
  }

  static Jet variable(const T& value, int var) {
    Jet j;
    j.c_[0] = value;
    j.c_[tab().deg1[var]] = T(1.0);
    return j;
  }

  const T& value() const { return c_[0]; }
  void set_value(const T& v) { c_[0] = v; }
  void add_value(const T& v) { c_[0] = c_[0] + v; }

  const T& coef(int i) const { return c_[i]; }
  T& coef(int i) { return c_[i]; }

  // Partial derivatives (monomial coefficients times multi-index factorial).
  T first(int i) const { return c_[tab().deg1[i]]; }

  T second(int i, int j) const {
    static_assert(DEG >= 2, "jet carries no second-order data");
    const T& v = c_[tab().deg2[i][j]];
    return i == j ? 2.0 * v : v;
  }

  T third(int i, int j, int k) const {
    static_assert(DEG >= 3, "jet carries no third-order data");
    double mult = 1.0;
    if (i == j && j == k)
      mult = 6.0;
    else if (i == j || j == k || i == k)
      mult = 2.0;
    return mult * c_[tab().deg3[i][j][k]];
  }

  Jet operator-() const {
    Jet r;
    for (int i = 0; i < kCoefCount; ++i) r.c_[i] = -c_[i];
    return r;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < kCoefCount; ++i) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < kCoefCount; ++i) c_[i] = c_[i] - o.c_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    r += b;
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    r -= b;
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (const auto& p : tab().products) r.c_[p[2]] += a.c_[p[0]] * b.c_[p[1]];
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator+(const Jet& a, const S& s) {
    Jet r = a;
    r.c_[0] = r.c_[0] + T(s);
    return r;
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator+(const S& s, const Jet& a) {
    return a + s;
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator-(const Jet& a, const S& s) {
    Jet r = a;
    r.c_[0] = r.c_[0] - T(s);
    return r;
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator-(const S& s, const Jet& a) {
    Jet r = -a;
    r.c_[0] = r.c_[0] + T(s);
    return r;
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator*(const Jet& a, const S& s) {
    Jet r;
    for (int i = 0; i < kCoefCount; ++i) r.c_[i] = a.c_[i] * s;
    return r;
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator*(const S& s, const Jet& a) {
    return a * s;
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator/(const Jet& a, const S& s) {
    return a * recip(T(s));
  }
  template <class S>
    requires JetScalarOf<S, T>
  friend Jet operator/(const S& s, const Jet& a) {
    return Jet(s) * recip(a);
  }

 private:
  static const Table& tab() { return detail::mono_table<NV, DEG>(); }

  std::array<T, kCoefCount> c_{};
};

template <class T, int NV, int DEG>
double deep_value(const Jet<T, NV, DEG>& j) {
  return deep_value(j.value());
}

// Evaluates sum_k series[k] * (u - u0)^k, the truncated composition of a
// univariate power series with a jet.
template <class T, int NV, int DEG>
Jet<T, NV, DEG> compose(const Jet<T, NV, DEG>& u,
                        const std::array<T, DEG + 1>& series) {
  Jet<T, NV, DEG> p = u;
  p.set_value(T{});
  Jet<T, NV, DEG> r(series[DEG]);
  for (int k = DEG - 1; k >= 0; --k) {
    r = r * p;
    r.add_value(series[k]);
  }
  return r;
}

template <class T, int NV, int DEG>
Jet<T, NV, DEG> recip(const Jet<T, NV, DEG>& u) {
  if (deep_value(u) == 0.0) throw std::domain_error("jet recip: zero value part");
  std::array<T, DEG + 1> series{};
  const T r0 = recip(u.value());
  series[0] = r0;
  T p = r0;
  for (int k = 1; k <= DEG; ++k) {
    p = p * r0;
    series[k] = (k % 2 == 1) ? T(-p) : p;
  }
  return compose(u, series);
}

template <class T, int NV, int DEG>
Jet<T, NV, DEG> sqrt(const Jet<T, NV, DEG>& u) {
  if (deep_value(u) <= 0.0)
    throw std::domain_error("jet sqrt: nonpositive value part");
  std::array<T, DEG + 1> series{};
  const T s = sqrt(u.value());
  series[0] = s;
  if constexpr (DEG >= 1) {
    const T is = recip(s);
    series[1] = 0.5 * is;
    if constexpr (DEG >= 2) {
      const T iu = recip(u.value());
      series[2] = -0.125 * (is * iu);
      if constexpr (DEG >= 3) series[3] = 0.0625 * (is * iu * iu);
    }
  }
  return compose(u, series);
}

}  // namespace tnlab
