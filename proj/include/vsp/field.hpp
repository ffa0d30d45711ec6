#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vsp/error.hpp"

namespace vsp {

using elem = std::uint8_t;

// GF(q) for prime powers q <= 16. Element codes are the base-p digit
// encodings of polynomials in the generator x, so codes 0 and 1 are the
// field zero and one, and for prime q codes are plain residues.
//
// Reduction polynomials (Conway polynomials):
//   GF(4)  x^2 + x + 1
//   GF(8)  x^3 + x + 1
//   GF(9)  x^2 + 2x + 2
//   GF(16) x^4 + x + 1
class Field {
 public:
  static constexpr int max_order = 16;

  int q() const { return t_->q; }
  int p() const { return t_->p; }
  int degree() const { return t_->e; }

  elem add(elem a, elem b) const { return t_->add[a][b]; }
  elem sub(elem a, elem b) const { return t_->add[a][t_->neg[b]]; }
  elem mul(elem a, elem b) const { return t_->mul[a][b]; }
  elem neg(elem a) const { return t_->neg[a]; }
  elem inv(elem a) const {
    if (a == 0) throw invalid_parameter("inverse of zero");
    return t_->inv[a];
  }
  elem div(elem a, elem b) const { return mul(a, inv(b)); }

  // coefficient list (constant term first) of the reduction polynomial
  const std::vector<int>& polynomial() const { return t_->poly; }

  friend bool operator==(const Field& a, const Field& b) { return a.q() == b.q(); }

 private:
  Field() = default;

  struct tables {
    int q = 0, p = 0, e = 0;
    std::vector<int> poly;
    std::array<std::array<elem, max_order>, max_order> add{}, mul{};
    std::array<elem, max_order> neg{}, inv{};
  };
  std::shared_ptr<const tables> t_;

  friend Field make_field(int q);
};

namespace detail {

inline bool prime_power(int q, int& p, int& e) {
  if (q < 2) return false;
  p = 0;
  for (int d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  e = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  return r == 1;
}

inline std::vector<int> conway_polynomial(int p, int e) {
  if (e == 1) return {0, 1};
  if (p == 2 && e == 2) return {1, 1, 1};
  if (p == 2 && e == 3) return {1, 1, 0, 1};
  if (p == 2 && e == 4) return {1, 1, 0, 0, 1};
  if (p == 3 && e == 2) return {2, 2, 1};
  throw invalid_parameter("no reduction polynomial for GF(" + std::to_string(p) + "^" +
                          std::to_string(e) + ")");
}

}  // namespace detail

inline Field make_field(int q) {
  int p = 0, e = 0;
  if (q < 2 || q > Field::max_order || !detail::prime_power(q, p, e))
    throw invalid_parameter("field order " + std::to_string(q) +
                            " is not a prime power in [2,16]");
  auto t = std::make_shared<Field::tables>();
  t->q = q;
  t->p = p;
  t->e = e;
  t->poly = detail::conway_polynomial(p, e);

  auto digits = [&](int code) {
    std::vector<int> d(e);
    for (int i = 0; i < e; ++i) {
      d[i] = code % p;
      code /= p;
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    int c = 0;
    for (int i = e - 1; i >= 0; --i) c = c * p + d[i];
    return c;
  };

  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto da = digits(a), db = digits(b);
      std::vector<int> s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      t->add[a][b] = static_cast<elem>(encode(s));

      std::vector<int> prod(2 * e, 0);
      for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      // reduce modulo the monic polynomial
      for (int deg = 2 * e - 1; deg >= e; --deg) {
        int c = prod[deg];
        if (!c) continue;
        prod[deg] = 0;
        for (int i = 0; i < e; ++i)
          prod[deg - e + i] = ((prod[deg - e + i] - c * t->poly[i]) % p + p) % p;
      }
      prod.resize(e);
      t->mul[a][b] = static_cast<elem>(encode(prod));
    }
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      if (t->add[a][b] == 0) t->neg[a] = static_cast<elem>(b);
      if (t->mul[a][b] == 1) t->inv[a] = static_cast<elem>(b);
    }
  Field f;
  f.t_ = std::move(t);
  return f;
}

}  // namespace vsp
