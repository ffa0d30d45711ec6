#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vsp/error.hpp"
#include "vsp/field.hpp"

namespace vsp {

using bigint = boost::multiprecision::cpp_int;
using row_vec = std::vector<elem>;

inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

// [k]_q, the number of points of a k-space
inline std::uint64_t q_integer(int k, int q) {
  std::uint64_t r = 0, pw = 1;
  for (int i = 0; i < k; ++i) {
    r += pw;
    pw *= static_cast<std::uint64_t>(q);
  }
  return r;
}

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline bigint gaussian_binomial(int v, int k, int q) {
  if (v < 0 || k < 0 || k > v) throw invalid_parameter("gaussian_binomial needs 0 <= k <= v");
  if (q < 2) throw invalid_parameter("gaussian_binomial needs q >= 2");
  bigint num = 1, den = 1, Q = q;
  for (int i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(Q, v - i) - 1;
    den *= boost::multiprecision::pow(Q, i + 1) - 1;
  }
  return num / den;
}

class Point {
 public:
  // throws on the zero vector
  static Point normalized(row_vec coords, const Field& F) {
    auto it = std::find_if(coords.begin(), coords.end(), [](elem x) { return x != 0; });
    if (it == coords.end()) throw invalid_parameter("zero vector is not a point");
    elem s = F.inv(*it);
    for (auto& x : coords) x = F.mul(x, s);
    Point p;
    p.c_ = std::move(coords);
    return p;
  }
  const row_vec& coords() const { return c_; }
  int ambient_dim() const { return static_cast<int>(c_.size()); }
  auto operator<=>(const Point&) const = default;

 private:
  row_vec c_;
};

class Subspace {
 public:
  int ambient_dim() const { return v_; }
  int dim() const { return k_; }
  int q() const { return q_; }
  elem at(int r, int c) const { return b_[static_cast<std::size_t>(r) * v_ + c]; }
  std::span<const elem> row(int r) const {
    return {b_.data() + static_cast<std::size_t>(r) * v_, static_cast<std::size_t>(v_)};
  }
  std::vector<row_vec> rows() const {
    std::vector<row_vec> out;
    for (int r = 0; r < k_; ++r) out.emplace_back(row(r).begin(), row(r).end());
    return out;
  }
  std::vector<int> pivots() const {
    std::vector<int> p;
    for (int r = 0; r < k_; ++r) {
      int c = 0;
      while (at(r, c) == 0) ++c;
      p.push_back(c);
    }
    return p;
  }
  // rows as digit strings, e.g. "1010" (hex digits above 9)
  std::vector<std::string> row_strings() const {
    static constexpr char dig[] = "0123456789abcdef";
    std::vector<std::string> out;
    for (int r = 0; r < k_; ++r) {
      std::string s;
      for (int c = 0; c < v_; ++c) s += dig[at(r, c)];
      out.push_back(std::move(s));
    }
    return out;
  }
  std::uint64_t point_count() const { return q_integer(k_, q_); }

  auto operator<=>(const Subspace&) const = default;

  // trusted constructor: basis must already be in reduced echelon form
  static Subspace from_rref(int v, int q, int k, row_vec basis) {
    Subspace s;
    s.v_ = v;
    s.q_ = q;
    s.k_ = k;
    s.b_ = std::move(basis);
    return s;
  }

 private:
  int v_ = 0, q_ = 0, k_ = 0;
  row_vec b_;
};

namespace detail {

// in-place reduced echelon form of a rows x v matrix; returns the rank and
// leaves the nonzero rows on top
inline int rref_generic(row_vec& M, int rows, int v, const Field& F) {
  int rank = 0;
  for (int c = 0; c < v && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (M[r * v + c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank)
      for (int j = 0; j < v; ++j) std::swap(M[piv * v + j], M[rank * v + j]);
    elem s = F.inv(M[rank * v + c]);
    for (int j = 0; j < v; ++j) M[rank * v + j] = F.mul(M[rank * v + j], s);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || M[r * v + c] == 0) continue;
      elem f = M[r * v + c];
      for (int j = 0; j < v; ++j) M[r * v + j] = F.sub(M[r * v + j], F.mul(f, M[rank * v + j]));
    }
    ++rank;
  }
  return rank;
}

// coordinate c of a packed binary row lives in bit (v-1-c), so numeric
// order of packed rows is lexicographic order of coordinate sequences
inline std::uint64_t pack_binary(std::span<const elem> r) {
  std::uint64_t w = 0;
  for (elem x : r) w = (w << 1) | (x & 1u);
  return w;
}

inline row_vec unpack_binary(std::uint64_t w, int v) {
  row_vec r(v);
  for (int c = 0; c < v; ++c) r[c] = static_cast<elem>((w >> (v - 1 - c)) & 1u);
  return r;
}

// word-parallel GF(2) reduction; returns rank, rows[0..rank) reduced and
// ordered by pivot column
inline int rref_binary(std::vector<std::uint64_t>& rows, int v) {
  int rank = 0;
  const int n = static_cast<int>(rows.size());
  for (int c = 0; c < v && rank < n; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << (v - 1 - c);
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r] & bit) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = 0; r < n; ++r)
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    ++rank;
  }
  rows.resize(rank);
  return rank;
}

inline void check_rows(const std::vector<row_vec>& rows, const Field& F, int& v) {
  if (rows.empty()) throw invalid_parameter("no rows given");
  v = static_cast<int>(rows.front().size());
  if (v < 1) throw invalid_parameter("rows must be nonempty vectors");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != v) throw invalid_parameter("rows of unequal length");
    for (elem x : r)
      if (x >= F.q()) throw invalid_parameter("entry outside GF(" + std::to_string(F.q()) + ")");
  }
}

inline Subspace rref_canonical_generic(const std::vector<row_vec>& rows, const Field& F) {
  int v = 0;
  check_rows(rows, F, v);
  const int n = static_cast<int>(rows.size());
  row_vec M;
  M.reserve(static_cast<std::size_t>(n) * v);
  for (const auto& r : rows) M.insert(M.end(), r.begin(), r.end());
  int k = rref_generic(M, n, v, F);
  if (k == 0) throw invalid_parameter("rows span the zero subspace");
  M.resize(static_cast<std::size_t>(k) * v);
  return Subspace::from_rref(v, F.q(), k, std::move(M));
}

inline Subspace rref_canonical_binary(const std::vector<row_vec>& rows, const Field& F) {
  int v = 0;
  check_rows(rows, F, v);
  if (F.q() != 2 || v > 64) throw invalid_parameter("binary path needs q=2 and v<=64");
  std::vector<std::uint64_t> w;
  for (const auto& r : rows) w.push_back(pack_binary(r));
  int k = rref_binary(w, v);
  if (k == 0) throw invalid_parameter("rows span the zero subspace");
  row_vec M;
  for (auto x : w) {
    auto r = unpack_binary(x, v);
    M.insert(M.end(), r.begin(), r.end());
  }
  return Subspace::from_rref(v, 2, k, std::move(M));
}

}  // namespace detail

inline Subspace rref_canonical(const std::vector<row_vec>& rows, const Field& F) {
  if (F.q() == 2 && !rows.empty() && rows.front().size() <= 64)
    return detail::rref_canonical_binary(rows, F);
  return detail::rref_canonical_generic(rows, F);
}

inline int rank_of(const std::vector<row_vec>& rows, const Field& F) {
  if (rows.empty()) return 0;
  int v = 0;
  detail::check_rows(rows, F, v);
  if (F.q() == 2 && v <= 64) {
    std::vector<std::uint64_t> w;
    for (const auto& r : rows) w.push_back(detail::pack_binary(r));
    return detail::rref_binary(w, v);
  }
  row_vec M;
  for (const auto& r : rows) M.insert(M.end(), r.begin(), r.end());
  return detail::rref_generic(M, static_cast<int>(rows.size()), v, F);
}

inline std::pair<int, int> span_meet(const Subspace& A, const Subspace& B) {
  if (A.ambient_dim() != B.ambient_dim() || A.q() != B.q())
    throw invalid_parameter("span_meet on subspaces of different ambient spaces");
  auto rows = A.rows();
  auto rb = B.rows();
  rows.insert(rows.end(), rb.begin(), rb.end());
  int span = rank_of(rows, make_field(A.q()));
  return {span, A.dim() + B.dim() - span};
}

// B contained in A
inline bool contains(const Subspace& A, const Subspace& B) {
  return span_meet(A, B).first == A.dim();
}

// Calls fn for every k-subspace of GF(q)^v in lexicographic order of the
// canonical basis matrices (row-major).
inline void enumerate_subspaces(int v, int k, const Field& F,
                                const std::function<void(const Subspace&)>& fn,
                                std::uint64_t budget = default_enumeration_budget) {
  if (v < 1 || k < 1 || k > v) throw invalid_parameter("enumerate_subspaces needs 1 <= k <= v");
  bigint total = gaussian_binomial(v, k, F.q());
  if (total > budget)
    throw resource_error("enumeration of " + total.str() + " subspaces exceeds the budget of " +
                         std::to_string(budget));
  const int q = F.q();
  row_vec M(static_cast<std::size_t>(k) * v, 0);
  std::vector<int> piv(k, -1);
  std::vector<int> blocked(v, 0);  // earlier-row nonzero entries per column

  auto free_cols = [&](int from) {
    int n = 0;
    for (int c = from; c < v; ++c) n += blocked[c] == 0;
    return n;
  };

  std::function<void(int, int)> rec = [&](int r, int c) {
    if (r == k) {
      fn(Subspace::from_rref(v, q, k, M));
      return;
    }
    if (c == v) return;  // row without pivot, cannot happen when pruned
    const int nr = c + 1 == v ? r + 1 : r;
    const int nc = c + 1 == v ? 0 : c + 1;
    if (piv[r] < 0) {
      const bool before_prev = r > 0 && c <= piv[r - 1];
      // zero here, pivot later in this row
      if (before_prev || free_cols(c + 1) >= k - r) {
        if (c + 1 < v) rec(r, c + 1);
      }
      if (!before_prev && blocked[c] == 0 && free_cols(c + 1) >= k - r - 1) {
        piv[r] = c;
        M[r * v + c] = 1;
        ++blocked[c];
        if (c + 1 == v)
          rec(r + 1, 0);
        else
          rec(r, c + 1);
        --blocked[c];
        M[r * v + c] = 0;
        piv[r] = -1;
      }
      return;
    }
    // after the pivot: any value, nonzero entries block column c
    for (int x = 0; x < q; ++x) {
      if (x != 0) {
        ++blocked[c];
        if (free_cols(piv[r] + 1) < k - r - 1) {
          --blocked[c];
          continue;
        }
      }
      M[r * v + c] = static_cast<elem>(x);
      rec(nr, nc);
      M[r * v + c] = 0;
      if (x != 0) --blocked[c];
    }
  };
  rec(0, 0);
}

inline std::vector<Subspace> all_subspaces(int v, int k, const Field& F,
                                           std::uint64_t budget = default_enumeration_budget) {
  std::vector<Subspace> out;
  enumerate_subspaces(v, k, F, [&](const Subspace& S) { out.push_back(S); }, budget);
  return out;
}

// The points of PG(v-1,q), indexed in lexicographic order of their
// normalized coordinates. A point's code is its coordinate vector read as a
// base-q number with the first coordinate most significant.
class ProjectiveSpace {
 public:
  ProjectiveSpace(int v, Field F) : v_(v), F_(std::move(F)) {
    if (v < 1) throw invalid_parameter("ambient dimension must be positive");
    const double vol = std::pow(static_cast<double>(F_.q()), v);
    if (vol > double(1 << 24))
      throw resource_error("PG(" + std::to_string(v - 1) + "," + std::to_string(F_.q()) +
                           ") is too large to index");
    const std::uint32_t Q = static_cast<std::uint32_t>(ipow(F_.q(), v));
    index_.assign(Q, -1);
    for (std::uint32_t code = 1; code < Q; ++code) {
      // normalized iff leading digit is 1
      std::uint32_t lead = code;
      while (lead >= static_cast<std::uint32_t>(F_.q())) lead /= F_.q();
      if (lead == 1) {
        index_[code] = static_cast<std::int32_t>(codes_.size());
        codes_.push_back(code);
      }
    }
  }

  int ambient_dim() const { return v_; }
  const Field& field() const { return F_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(codes_.size()); }
  std::uint32_t code(std::uint32_t i) const { return codes_[i]; }

  row_vec coords(std::uint32_t i) const { return decode(codes_[i]); }
  Point point(std::uint32_t i) const { return Point::normalized(coords(i), F_); }

  row_vec decode(std::uint32_t code) const {
    row_vec r(v_);
    for (int c = v_ - 1; c >= 0; --c) {
      r[c] = static_cast<elem>(code % F_.q());
      code /= F_.q();
    }
    return r;
  }
  std::uint32_t encode(std::span<const elem> x) const {
    std::uint32_t code = 0;
    for (elem e : x) code = code * F_.q() + e;
    return code;
  }

  // index of the point spanned by a nonzero vector
  std::uint32_t index_of(std::span<const elem> x) const {
    if (static_cast<int>(x.size()) != v_) throw invalid_parameter("vector length mismatch");
    auto it = std::find_if(x.begin(), x.end(), [](elem e) { return e != 0; });
    if (it == x.end()) throw invalid_parameter("zero vector is not a point");
    const elem s = F_.inv(*it);
    std::uint32_t code = 0;
    for (elem e : x) code = code * F_.q() + F_.mul(e, s);
    return static_cast<std::uint32_t>(index_[code]);
  }
  std::uint32_t index_of(const Point& P) const { return index_of(P.coords()); }

  // sorted indices of the points of S
  std::vector<std::uint32_t> points_of(const Subspace& S) const {
    if (S.ambient_dim() != v_ || S.q() != F_.q())
      throw invalid_parameter("subspace lives in a different ambient space");
    std::vector<std::uint32_t> out;
    const int k = S.dim();
    if (F_.q() == 2) {
      std::vector<std::uint32_t> w(k);
      for (int r = 0; r < k; ++r) w[r] = static_cast<std::uint32_t>(detail::pack_binary(S.row(r)));
      for (std::uint32_t m = 1; m < (1u << k); ++m) {
        std::uint32_t x = 0;
        for (int r = 0; r < k; ++r)
          if (m >> r & 1u) x ^= w[r];
        out.push_back(static_cast<std::uint32_t>(index_[x]));
      }
    } else {
      // coefficient vectors with leading coefficient 1 give each point once
      std::vector<elem> lam(k, 0);
      row_vec x(v_);
      for (int lead = 0; lead < k; ++lead) {
        const std::uint64_t tail = ipow(F_.q(), k - lead - 1);
        for (std::uint64_t t = 0; t < tail; ++t) {
          std::fill(lam.begin(), lam.end(), 0);
          lam[lead] = 1;
          std::uint64_t z = t;
          for (int r = k - 1; r > lead; --r) {
            lam[r] = static_cast<elem>(z % F_.q());
            z /= F_.q();
          }
          std::fill(x.begin(), x.end(), 0);
          for (int r = lead; r < k; ++r) {
            if (!lam[r]) continue;
            for (int c = 0; c < v_; ++c) x[c] = F_.add(x[c], F_.mul(lam[r], S.at(r, c)));
          }
          out.push_back(static_cast<std::uint32_t>(index_[encode(x)]));
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  int v_;
  Field F_;
  std::vector<std::uint32_t> codes_;
  std::vector<std::int32_t> index_;
};

// shared instances, one per (v,q)
inline std::shared_ptr<const ProjectiveSpace> projective_space(int v, const Field& F) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const ProjectiveSpace>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{v, F.q()}];
  if (!slot) slot = std::make_shared<const ProjectiveSpace>(v, F);
  return slot;
}

inline std::vector<Point> subspace_points(const Subspace& S) {
  auto F = make_field(S.q());
  auto space = projective_space(S.ambient_dim(), F);
  std::vector<Point> out;
  for (auto i : space->points_of(S)) out.push_back(space->point(i));
  return out;
}

struct Prescription {
  std::vector<Subspace> elements;
  int span_dim = 0;
};

inline Subspace coordinate_subspace(int v, const Field& F, int first, int count) {
  row_vec M(static_cast<std::size_t>(count) * v, 0);
  for (int r = 0; r < count; ++r) M[r * v + first + r] = 1;
  return Subspace::from_rref(v, F.q(), count, std::move(M));
}

// A = <e_1..e_i>, B = <e_{i+1}..e_{i+j}>. For three i-spaces with span s the
// third element has rows e_r + e_{i+r} (+ e_{2i+r} for r <= s-2i).
inline Prescription canonical_prescription(int v, const Field& F, const std::vector<int>& dims,
                                           std::optional<int> span_dim = std::nullopt) {
  if (dims.empty() || dims.size() > 3)
    throw invalid_parameter("a prescription has one to three elements");
  for (int d : dims)
    if (d < 1 || d >= v) throw invalid_parameter("prescribed dimension out of range");
  Prescription P;
  const int i = dims[0];
  P.elements.push_back(coordinate_subspace(v, F, 0, i));
  if (dims.size() == 1) {
    P.span_dim = i;
  } else {
    const int j = dims[1];
    if (i + j > v)
      throw infeasible_prescription("no disjoint " + std::to_string(i) + "- and " +
                                    std::to_string(j) + "-spaces in dimension " +
                                    std::to_string(v));
    P.elements.push_back(coordinate_subspace(v, F, i, j));
    P.span_dim = i + j;
    if (dims.size() == 3) {
      if (dims[2] != i || j != i)
        throw infeasible_prescription("three prescribed elements must have equal dimension");
      const int s = span_dim.value_or(std::min(v, 3 * i));
      if (s < 2 * i || s > std::min(v, 3 * i))
        throw infeasible_prescription("span dimension " + std::to_string(s) +
                                      " is not realizable by three disjoint " +
                                      std::to_string(i) + "-spaces in dimension " +
                                      std::to_string(v));
      const int t = s - 2 * i;
      std::vector<row_vec> rows;
      for (int r = 0; r < i; ++r) {
        row_vec x(v, 0);
        x[r] = 1;
        x[i + r] = 1;
        if (r < t) x[2 * i + r] = 1;
        rows.push_back(std::move(x));
      }
      P.elements.push_back(rref_canonical(rows, F));
      P.span_dim = s;
      return P;
    }
  }
  if (span_dim && *span_dim != P.span_dim)
    throw infeasible_prescription("span dimension " + std::to_string(*span_dim) +
                                  " does not match the prescribed elements");
  return P;
}

}  // namespace vsp
