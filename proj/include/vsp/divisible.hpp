#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vsp/error.hpp"
#include "vsp/field.hpp"
#include "vsp/geometry.hpp"

namespace vsp {

inline constexpr std::uint32_t max_multiplicity_bound = 1u << 16;

class PointMultiset {
 public:
  PointMultiset(int v, const Field& F) : PointMultiset(projective_space(v, F)) {}
  explicit PointMultiset(std::shared_ptr<const ProjectiveSpace> space)
      : space_(std::move(space)), mult_(space_->size(), 0) {}

  static PointMultiset from_subspace(const Subspace& S) {
    PointMultiset M(S.ambient_dim(), make_field(S.q()));
    for (auto i : M.space().points_of(S)) M.add(i);
    return M;
  }

  const ProjectiveSpace& space() const { return *space_; }
  std::shared_ptr<const ProjectiveSpace> space_ptr() const { return space_; }
  int ambient_dim() const { return space_->ambient_dim(); }
  const Field& field() const { return space_->field(); }

  std::uint32_t multiplicity(std::uint32_t i) const { return mult_.at(i); }
  std::uint32_t multiplicity(const Point& P) const { return mult_.at(space_->index_of(P)); }
  void add(std::uint32_t i, std::uint32_t m = 1) { set(i, mult_.at(i) + m); }
  void set(std::uint32_t i, std::uint32_t m) {
    if (m > max_multiplicity_bound) throw invalid_parameter("multiplicity exceeds 2^16");
    card_ = card_ - mult_.at(i) + m;
    mult_[i] = m;
  }

  std::uint64_t cardinality() const { return card_; }
  bool empty() const { return card_ == 0; }
  std::uint32_t max_multiplicity() const {
    return mult_.empty() ? 0 : *std::max_element(mult_.begin(), mult_.end());
  }
  bool is_set() const { return max_multiplicity() <= 1; }
  std::vector<std::uint32_t> support() const {
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < mult_.size(); ++i)
      if (mult_[i]) s.push_back(i);
    return s;
  }
  // M(S): total multiplicity of the points inside S
  std::uint64_t weight_in(const Subspace& S) const {
    std::uint64_t w = 0;
    for (auto i : space_->points_of(S)) w += mult_[i];
    return w;
  }

  PointMultiset& operator+=(const PointMultiset& o) {
    if (o.ambient_dim() != ambient_dim() || !(o.field() == field()))
      throw invalid_parameter("adding multisets of different ambient spaces");
    for (std::uint32_t i = 0; i < mult_.size(); ++i)
      if (o.mult_[i]) add(i, o.mult_[i]);
    return *this;
  }
  friend PointMultiset operator+(PointMultiset a, const PointMultiset& b) { return a += b; }
  friend bool operator==(const PointMultiset& a, const PointMultiset& b) {
    return a.ambient_dim() == b.ambient_dim() && a.field() == b.field() && a.mult_ == b.mult_;
  }

 private:
  std::shared_ptr<const ProjectiveSpace> space_;
  std::vector<std::uint32_t> mult_;
  std::uint64_t card_ = 0;
};

// k x n matrix over GF(q), row-major
struct Matrix {
  int rows = 0, cols = 0;
  row_vec data;
  elem at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  row_vec column(int c) const {
    row_vec x(rows);
    for (int r = 0; r < rows; ++r) x[r] = at(r, c);
    return x;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

// One row per line, one character per entry (0-9, a-f); whitespace inside a
// line is ignored, blank lines and lines starting with '#' are skipped.
inline Matrix parse_matrix(std::string_view text, const Field& F) {
  Matrix M;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    row_vec row;
    for (std::size_t i = 0; i < line.size(); ++i) {
      char ch = line[i];
      if (ch == ' ' || ch == '\t' || ch == '\r') continue;
      int d = -1;
      if (ch >= '0' && ch <= '9') d = ch - '0';
      else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
      if (d < 0 || d >= F.q())
        throw format_error("line " + std::to_string(line_no) + ", column " +
                           std::to_string(i + 1) + ": '" + std::string(1, ch) +
                           "' is not an element of GF(" + std::to_string(F.q()) + ")");
      row.push_back(static_cast<elem>(d));
    }
    if (M.rows == 0) M.cols = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != M.cols)
      throw format_error("line " + std::to_string(line_no) + ": row has " +
                         std::to_string(row.size()) + " entries, expected " +
                         std::to_string(M.cols));
    M.data.insert(M.data.end(), row.begin(), row.end());
    ++M.rows;
    if (end == text.size()) break;
  }
  if (M.rows == 0) throw format_error("matrix has no rows");
  return M;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw format_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Matrix read_matrix_file(const std::string& path, const Field& F) {
  try {
    return parse_matrix(read_text_file(path), F);
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

inline std::string format_matrix(const Matrix& M) {
  static constexpr char dig[] = "0123456789abcdef";
  std::string out;
  for (int r = 0; r < M.rows; ++r) {
    for (int c = 0; c < M.cols; ++c) {
      if (c) out += ' ';
      out += dig[M.at(r, c)];
    }
    out += '\n';
  }
  return out;
}

inline PointMultiset multiset_from_columns(const Matrix& A, const Field& F) {
  PointMultiset M(A.rows, F);
  for (int c = 0; c < A.cols; ++c) {
    auto x = A.column(c);
    if (std::all_of(x.begin(), x.end(), [](elem e) { return e == 0; }))
      throw format_error("column " + std::to_string(c + 1) + " is zero");
    M.add(M.space().index_of(x));
  }
  return M;
}

// columns listing the support, each point repeated by its multiplicity
inline Matrix matrix_from_multiset(const PointMultiset& M) {
  Matrix A;
  A.rows = M.ambient_dim();
  std::vector<row_vec> cols;
  for (auto i : M.support())
    for (std::uint32_t t = 0; t < M.multiplicity(i); ++t) cols.push_back(M.space().coords(i));
  A.cols = static_cast<int>(cols.size());
  A.data.resize(static_cast<std::size_t>(A.rows) * A.cols);
  for (int c = 0; c < A.cols; ++c)
    for (int r = 0; r < A.rows; ++r) A.data[static_cast<std::size_t>(r) * A.cols + c] = cols[c][r];
  return A;
}

struct Spectrum {
  int k = 0;  // dimension of the span of the support
  int v = 0;  // embedding dimension
  int q = 2;
  std::uint64_t cardinality = 0;
  bool is_set = false;
  std::map<std::uint64_t, std::uint64_t> counts;  // i -> a_i

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

struct EquationResiduals {
  long long se1 = 0, se2 = 0, se5 = 0;
  bool ok() const { return se1 == 0 && se2 == 0 && se5 == 0; }
};

// left minus right side of se1, se2 and (for sets) se5
inline EquationResiduals standard_equation_residuals(const Spectrum& S) {
  using i128 = __int128;
  const i128 n = static_cast<i128>(S.cardinality);
  i128 s1 = 0, s2 = 0, s5 = 0;
  for (auto [i, a] : S.counts) {
    s1 += a;
    s2 += static_cast<i128>(i) * a;
    s5 += static_cast<i128>(i) * (static_cast<i128>(i) - 1) / 2 * a;
  }
  auto br = [&](int k) -> i128 { return k <= 0 ? 0 : static_cast<i128>(q_integer(k, S.q)); };
  EquationResiduals r;
  r.se1 = static_cast<long long>(s1 - br(S.k));
  r.se2 = static_cast<long long>(s2 - n * br(S.k - 1));
  if (S.is_set) r.se5 = static_cast<long long>(s5 - n * (n - 1) / 2 * br(S.k - 2));
  return r;
}

namespace detail {

// coordinates of each support point with respect to the reduced echelon basis
// of the span; returns the span dimension
inline int span_coordinates(const PointMultiset& M, const std::vector<std::uint32_t>& supp,
                            std::vector<row_vec>& coords) {
  const Field& F = M.field();
  std::vector<row_vec> rows;
  for (auto i : supp) rows.push_back(M.space().coords(i));
  Subspace span = rref_canonical(rows, F);
  auto piv = span.pivots();
  coords.clear();
  for (auto& x : rows) {
    row_vec y(span.dim());
    for (int r = 0; r < span.dim(); ++r) y[r] = x[piv[r]];
    coords.push_back(std::move(y));
  }
  return span.dim();
}

// calls fn(weight) for each hyperplane of GF(q)^k, weight = total
// multiplicity of points on it
template <class Fn>
void hyperplane_weights(int k, const Field& F, const std::vector<row_vec>& y,
                        const std::vector<std::uint32_t>& mult, Fn&& fn) {
  const int q = F.q();
  if (q == 2 && k <= 64) {
    std::vector<std::uint64_t> w;
    for (auto& r : y) w.push_back(pack_binary(r));
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t h = 1; h < total; ++h) {
      std::uint64_t s = 0;
      for (std::size_t t = 0; t < w.size(); ++t)
        if ((std::popcount(h & w[t]) & 1) == 0) s += mult[t];
      fn(s);
    }
    return;
  }
  row_vec h(k);
  for (int lead = 0; lead < k; ++lead) {
    const std::uint64_t tail = ipow(q, k - lead - 1);
    for (std::uint64_t t = 0; t < tail; ++t) {
      std::fill(h.begin(), h.end(), 0);
      h[lead] = 1;
      std::uint64_t z = t;
      for (int r = k - 1; r > lead; --r) {
        h[r] = static_cast<elem>(z % q);
        z /= q;
      }
      std::uint64_t s = 0;
      for (std::size_t p = 0; p < y.size(); ++p) {
        elem dot = 0;
        for (int r = lead; r < k; ++r) dot = F.add(dot, F.mul(h[r], y[p][r]));
        if (dot == 0) s += mult[p];
      }
      fn(s);
    }
  }
}

}  // namespace detail

inline Spectrum spectrum(const PointMultiset& M) {
  if (M.empty()) throw invalid_parameter("spectrum of the empty multiset");
  auto supp = M.support();
  std::vector<row_vec> y;
  const int k = detail::span_coordinates(M, supp, y);
  const double work = static_cast<double>(q_integer(k, M.field().q())) * supp.size();
  if (work > 4e9) throw resource_error("spectrum computation too large");
  std::vector<std::uint32_t> mult;
  for (auto i : supp) mult.push_back(M.multiplicity(i));
  Spectrum S;
  S.k = k;
  S.v = M.ambient_dim();
  S.q = M.field().q();
  S.cardinality = M.cardinality();
  S.is_set = M.is_set();
  detail::hyperplane_weights(k, M.field(), y, mult, [&](std::uint64_t w) { ++S.counts[w]; });
  return S;
}

// Every hyperplane of the ambient space either contains the span of the
// support (nothing outside) or meets it in a hyperplane of the span, so the
// spectrum over the span decides divisibility.
inline bool is_divisible(const PointMultiset& M, std::uint64_t delta) {
  if (delta < 1) throw invalid_parameter("delta must be positive");
  if (M.empty()) return true;
  auto S = spectrum(M);
  for (auto [i, a] : S.counts)
    if ((S.cardinality - i) % delta != 0) return false;
  return true;
}

inline PointMultiset complement(const PointMultiset& M, std::uint32_t lambda) {
  if (M.max_multiplicity() > lambda)
    throw invalid_parameter("lambda " + std::to_string(lambda) +
                            " is below the maximum multiplicity " +
                            std::to_string(M.max_multiplicity()));
  PointMultiset C(M.space_ptr());
  for (std::uint32_t i = 0; i < M.space().size(); ++i) C.set(i, lambda - M.multiplicity(i));
  return C;
}

enum class Admissibility { yes, no, unknown };
enum class LengthRule { projective_table, semigroup, none };

struct LengthVerdict {
  Admissibility admissible = Admissibility::unknown;
  LengthRule rule = LengthRule::none;
  friend bool operator==(const LengthVerdict&, const LengthVerdict&) = default;
};

inline const char* to_string(Admissibility a) {
  switch (a) {
    case Admissibility::yes: return "yes";
    case Admissibility::no: return "no";
    default: return "unknown";
  }
}
inline const char* to_string(LengthRule r) {
  switch (r) {
    case LengthRule::projective_table: return "projective-table";
    case LengthRule::semigroup: return "semigroup";
    default: return "none";
  }
}

// effective lengths of Delta-divisible binary projective codes, Delta in
// {2,4,8}; n = 0 (the empty set) is always admissible
inline LengthVerdict admissible_length_projective_binary(int delta, long long n) {
  if (n < 0) throw invalid_parameter("length must be nonnegative");
  bool ok = false;
  switch (delta) {
    case 2: ok = n == 0 || n >= 3; break;
    case 4: ok = n == 0 || n == 7 || n == 8 || n >= 14; break;
    case 8:
      ok = n == 0 || n == 15 || n == 16 || (n >= 30 && n <= 32) || (n >= 45 && n <= 51) ||
           n >= 60;
      break;
    default:
      throw invalid_parameter("projective length table covers delta 2, 4, 8 only");
  }
  return {ok ? Admissibility::yes : Admissibility::no, LengthRule::projective_table};
}

// lengths of q^r-divisible multisets: the numerical semigroup generated by
// q^i [r+1-i]_q, 0 <= i <= r
inline LengthVerdict admissible_length_semigroup(int q, int r, long long n) {
  if (r < 1) throw invalid_parameter("r must be at least 1");
  if (n < 0) throw invalid_parameter("length must be nonnegative");
  std::vector<std::uint64_t> gens;
  for (int i = 0; i <= r; ++i) gens.push_back(ipow(q, i) * q_integer(r + 1 - i, q));
  std::vector<char> reach(static_cast<std::size_t>(n) + 1, 0);
  reach[0] = 1;
  for (long long x = 1; x <= n; ++x)
    for (auto g : gens)
      if (g <= static_cast<std::uint64_t>(x) && reach[x - g]) {
        reach[x] = 1;
        break;
      }
  return {reach[n] ? Admissibility::yes : Admissibility::no, LengthRule::semigroup};
}

namespace detail {

struct se_solver {
  using i128 = __int128;
  std::vector<std::uint64_t> xs;  // allowed hyperplane multiplicities, ascending
  bool is_set = false;
  std::vector<std::uint64_t> a;
  std::vector<std::vector<std::uint64_t>> out;
  std::uint64_t nodes = 0, budget = 0;

  static i128 c2(i128 x) { return x * (x - 1) / 2; }

  // real feasibility of the remaining moment system over xs[t..]
  bool hull_ok(std::size_t t, i128 R1, i128 R2, i128 R3) const {
    if (R1 < 0 || R2 < 0 || R3 < 0) return false;
    if (R1 == 0) return R2 == 0 && R3 == 0;
    const i128 lo = xs[t], hi = xs.back();
    if (R2 < lo * R1 || R2 > hi * R1) return false;
    if (!is_set) return true;
    // upper chord between the outermost points
    if ((R3 - c2(lo) * R1) * (hi - lo) > (c2(hi) - c2(lo)) * (R2 - lo * R1)) return false;
    // lower hull: chord of consecutive points around R2/R1
    for (std::size_t u = t; u + 1 < xs.size(); ++u) {
      const i128 xa = xs[u], xb = xs[u + 1];
      if (R2 >= xa * R1 && R2 <= xb * R1)
        return (R3 - c2(xa) * R1) * (xb - xa) >= (c2(xb) - c2(xa)) * (R2 - xa * R1);
    }
    // R2/R1 equals the single remaining point
    return R3 == c2(hi) * R1;
  }

  void rec(std::size_t t, i128 R1, i128 R2, i128 R3) {
    if (++nodes > budget) throw resource_error("standard equation search exceeded its node budget");
    if (t + 1 == xs.size()) {
      const i128 x = xs[t];
      if (R2 == x * R1 && (!is_set || R3 == c2(x) * R1)) {
        a[t] = static_cast<std::uint64_t>(R1);
        out.push_back(a);
        a[t] = 0;
      }
      return;
    }
    const i128 x = xs[t];
    for (i128 c = 0; c <= R1; ++c) {
      const i128 r1 = R1 - c, r2 = R2 - c * x, r3 = is_set ? R3 - c * c2(x) : 0;
      if (r2 < 0 || r3 < 0) break;
      if (!hull_ok(t + 1, r1, r2, r3)) continue;
      a[t] = static_cast<std::uint64_t>(c);
      rec(t + 1, r1, r2, r3);
    }
    a[t] = 0;
  }
};

}  // namespace detail

// All spectra (a_i) with support in `allowed` solving se1, se2 and, for sets,
// se5, in lexicographic order of (a_{x_1}, a_{x_2}, ...) with x ascending.
inline std::vector<Spectrum> solve_standard_equations(std::uint64_t n, int k, int q,
                                                      std::vector<std::uint64_t> allowed,
                                                      bool is_set,
                                                      std::uint64_t node_budget = 100'000'000) {
  if (allowed.empty()) throw invalid_parameter("allowed multiplicities must be nonempty");
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (allowed.size() > 12) throw resource_error("more than 12 allowed hyperplane multiplicities");
  if (k < 1) throw invalid_parameter("dimension must be positive");
  if (static_cast<double>(q_integer(k, q)) > double(1 << 24))
    throw resource_error("span dimension too large for exact standard equations");
  using i128 = __int128;
  auto br = [&](int d) -> i128 { return d <= 0 ? 0 : static_cast<i128>(q_integer(d, q)); };
  detail::se_solver s;
  s.xs = allowed;
  s.is_set = is_set;
  s.a.assign(allowed.size(), 0);
  s.budget = node_budget;
  const i128 N = static_cast<i128>(n);
  const i128 R1 = br(k), R2 = N * br(k - 1), R3 = is_set ? N * (N - 1) / 2 * br(k - 2) : 0;
  if (s.hull_ok(0, R1, R2, R3)) s.rec(0, R1, R2, R3);
  std::vector<Spectrum> res;
  for (auto& sol : s.out) {
    Spectrum S;
    S.k = k;
    S.v = k;
    S.q = q;
    S.cardinality = n;
    S.is_set = is_set;
    for (std::size_t t = 0; t < sol.size(); ++t)
      if (sol[t]) S.counts[allowed[t]] = sol[t];
    res.push_back(std::move(S));
  }
  return res;
}

}  // namespace vsp
