#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsp/divisible.hpp"
#include "vsp/error.hpp"
#include "vsp/field.hpp"
#include "vsp/geometry.hpp"
#include "vsp/typecalc.hpp"

namespace vsp {

// GF(q^m) as polynomials over GF(q) modulo the smallest monic irreducible
// polynomial of degree m (coefficients compared as base-q numbers, constant
// term least significant). Elements are coefficient vectors of 1, x, ..., x^{m-1}.
class ExtensionField {
 public:
  ExtensionField(Field base, int m) : F_(std::move(base)), m_(m) {
    if (m < 1) throw invalid_parameter("extension degree must be positive");
    if (m > 20 || ipow(F_.q(), m) > (1u << 20))
      throw resource_error("extension field too large");
    const std::uint64_t count = ipow(F_.q(), m);
    for (std::uint64_t c = 0; c < count; ++c) {
      row_vec f = digits(c, m);
      f.push_back(1);
      if (irreducible(f)) {
        poly_ = f;
        break;
      }
    }
  }

  const Field& base() const { return F_; }
  int degree() const { return m_; }
  std::uint64_t size() const { return ipow(F_.q(), m_); }
  const row_vec& polynomial() const { return poly_; }

  row_vec element(std::uint64_t code) const { return digits(code, m_); }

  row_vec mul(const row_vec& a, const row_vec& b) const {
    row_vec prod(2 * m_, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) prod[i + j] = F_.add(prod[i + j], F_.mul(a[i], b[j]));
    for (int d = 2 * m_ - 1; d >= m_; --d) {
      elem c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (int i = 0; i < m_; ++i) prod[d - m_ + i] = F_.sub(prod[d - m_ + i], F_.mul(c, poly_[i]));
    }
    prod.resize(m_);
    return prod;
  }

  // row r holds the coordinates of x^r * a; invertible for a != 0
  std::vector<row_vec> multiplication_matrix(const row_vec& a) const {
    std::vector<row_vec> M;
    row_vec xr(m_, 0);
    xr[0] = 1;
    row_vec x(m_, 0);
    if (m_ > 1) x[1] = 1;
    for (int r = 0; r < m_; ++r) {
      M.push_back(mul(xr, a));
      if (m_ > 1) xr = mul(xr, x);
    }
    return M;
  }

 private:
  Field F_;
  int m_;
  row_vec poly_;

  row_vec digits(std::uint64_t c, int len) const {
    row_vec d(len);
    for (int i = 0; i < len; ++i) {
      d[i] = static_cast<elem>(c % F_.q());
      c /= F_.q();
    }
    return d;
  }

  // remainder of f modulo monic g, both constant term first
  row_vec poly_mod(row_vec f, const row_vec& g) const {
    const int dg = static_cast<int>(g.size()) - 1;
    for (int d = static_cast<int>(f.size()) - 1; d >= dg; --d) {
      elem c = f[d];
      if (!c) continue;
      for (int i = 0; i <= dg; ++i) f[d - dg + i] = F_.sub(f[d - dg + i], F_.mul(c, g[i]));
    }
    f.resize(std::max(dg, 0));
    return f;
  }

  bool irreducible(const row_vec& f) const {
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= n; ++d) {
      const std::uint64_t cnt = ipow(F_.q(), d);
      for (std::uint64_t c = 0; c < cnt; ++c) {
        row_vec g = digits(c, d);
        g.push_back(1);
        auto r = poly_mod(f, g);
        if (std::all_of(r.begin(), r.end(), [](elem e) { return e == 0; })) return false;
      }
    }
    return true;
  }
};

struct Partition {
  int v = 0;
  int q = 2;
  std::vector<Subspace> elements;
  // points to be partitioned; empty means all points of PG(v-1,q)
  std::vector<Point> ground;

  PartitionType realized_type() const {
    PartitionType T(v, q);
    for (const auto& E : elements)
      if (E.dim() >= 1 && E.dim() < v) T.m[E.dim()] += 1;
    return T;
  }
};

// Spread of k-spaces from the GF(q^k)-structure of GF(q)^v: one element per
// point of PG(v/k-1, q^k).
inline Partition desarguesian_spread(int v, int k, const Field& F) {
  if (k < 1 || v < 1 || v % k != 0)
    throw invalid_parameter("spread needs k dividing v (v=" + std::to_string(v) +
                            ", k=" + std::to_string(k) + ")");
  ExtensionField E(F, k);
  const int n = v / k;
  const std::uint64_t Q = E.size();
  Partition P{v, F.q(), {}};
  std::vector<row_vec> xpow;
  {
    row_vec x(k, 0), xr(k, 0);
    xr[0] = 1;
    if (k > 1) x[1] = 1;
    for (int r = 0; r < k; ++r) {
      xpow.push_back(xr);
      if (k > 1) xr = E.mul(xr, x);
    }
  }
  // normalized vectors over GF(q^k): leading coordinate 1
  for (int lead = 0; lead < n; ++lead) {
    const std::uint64_t tail = ipow(Q, n - lead - 1);
    for (std::uint64_t t = 0; t < tail; ++t) {
      std::vector<row_vec> beta(n, row_vec(k, 0));
      beta[lead][0] = 1;
      std::uint64_t z = t;
      for (int j = n - 1; j > lead; --j) {
        beta[j] = E.element(z % Q);
        z /= Q;
      }
      std::vector<row_vec> rows;
      for (int r = 0; r < k; ++r) {
        row_vec row;
        for (int j = 0; j < n; ++j) {
          auto c = E.mul(xpow[r], beta[j]);
          row.insert(row.end(), c.begin(), c.end());
        }
        rows.push_back(std::move(row));
      }
      P.elements.push_back(rref_canonical(rows, F));
    }
  }
  return P;
}

// The special (v-k)-space <e_{k+1},...,e_v> together with the row spaces of
// (I_k | A_a), where A_a is the first k rows of the multiplication-by-a
// matrix of GF(q^{v-k}). A_a - A_b = A_{a-b} has rank k for a != b.
inline Partition lifted_mrd(int v, int k, const Field& F) {
  if (k < 1 || k > v - k)
    throw invalid_parameter("lifted MRD needs 1 <= k <= v-k (v=" + std::to_string(v) +
                            ", k=" + std::to_string(k) + ")");
  const int m = v - k;
  ExtensionField E(F, m);
  Partition P{v, F.q(), {}};
  P.elements.push_back(coordinate_subspace(v, F, k, m));
  for (std::uint64_t c = 0; c < E.size(); ++c) {
    auto A = E.multiplication_matrix(E.element(c));
    std::vector<row_vec> rows;
    for (int r = 0; r < k; ++r) {
      row_vec row(v, 0);
      row[r] = 1;
      for (int j = 0; j < m; ++j) row[k + j] = A[r][j];
      rows.push_back(std::move(row));
    }
    P.elements.push_back(rref_canonical(rows, F));
  }
  return P;
}

// Expansion rules: 0 replaces an element by all its points (any q); 1..6 are
// the reduction rules of apply_reduction, realized for any q by the
// analogous constructions (line spread, lifted MRD) inside the element.
inline Partition expand_element(const Partition& P, std::size_t index, int rule) {
  if (index >= P.elements.size()) throw precondition_error("element index out of range");
  const Subspace& S = P.elements[index];
  const int d = S.dim();
  const Field F = make_field(P.q);
  Partition sub{d, P.q, {}};
  if (rule == 0 || rule == 1 || rule == 2 || rule == 4) {
    const int need = rule == 0 ? d : reduction_rule(rule).source;
    if (d != need || d < 2)
      throw precondition_error("rule " + std::to_string(rule) + " does not apply to a " +
                               std::to_string(d) + "-space");
    auto space = projective_space(d, F);
    for (std::uint32_t i = 0; i < space->size(); ++i)
      sub.elements.push_back(rref_canonical({space->coords(i)}, F));
  } else {
    const auto& r = reduction_rule(rule);
    if (d != r.source)
      throw precondition_error("rule " + std::to_string(rule) + " needs a " +
                               std::to_string(r.source) + "-space, element has dimension " +
                               std::to_string(d));
    if (rule == 3 || rule == 6)
      sub = lifted_mrd(d, 1, F);
    else
      sub = desarguesian_spread(d, 2, F);
  }
  Partition out{P.v, P.q, {}};
  for (std::size_t t = 0; t < P.elements.size(); ++t)
    if (t != index) out.elements.push_back(P.elements[t]);
  // map coordinates of the element onto its basis
  for (const auto& U : sub.elements) {
    std::vector<row_vec> rows;
    for (int r = 0; r < U.dim(); ++r) {
      row_vec x(P.v, 0);
      for (int t = 0; t < d; ++t) {
        elem c = U.at(r, t);
        if (!c) continue;
        for (int col = 0; col < P.v; ++col) x[col] = F.add(x[col], F.mul(c, S.at(t, col)));
      }
      rows.push_back(std::move(x));
    }
    out.elements.push_back(rref_canonical(rows, F));
  }
  return out;
}

struct PartitionReport {
  bool valid = false;
  bool disjoint = true;
  bool covering = true;
  PartitionType type;
  std::string first_violation;
  std::optional<std::pair<std::size_t, std::size_t>> overlap;  // element indices
  std::optional<Point> overlap_point;
  std::vector<Point> uncovered;
};

// Checks disjointness and coverage of `ground` (all points when empty).
inline PartitionReport verify_cover(int v, int q, const std::vector<Subspace>& elements,
                                    const std::vector<std::uint32_t>* ground = nullptr) {
  const Field F = make_field(q);
  auto space = projective_space(v, F);
  PartitionReport R;
  R.type = PartitionType(v, q);
  std::vector<std::int64_t> owner(space->size(), -1);
  std::vector<char> in_ground(space->size(), ground ? 0 : 1);
  if (ground)
    for (auto i : *ground) in_ground.at(i) = 1;
  for (std::size_t t = 0; t < elements.size(); ++t) {
    const auto& E = elements[t];
    if (E.ambient_dim() != v || E.q() != q) {
      R.disjoint = false;
      if (R.first_violation.empty())
        R.first_violation = "element " + std::to_string(t) + " lives in a different ambient space";
      continue;
    }
    if (E.dim() >= v) {
      if (R.first_violation.empty())
        R.first_violation = "element " + std::to_string(t) + " is the whole space";
      R.disjoint = false;
      continue;
    }
    R.type.m[E.dim()] += 1;
    for (auto i : space->points_of(E)) {
      if (!in_ground[i]) {
        R.disjoint = false;
        if (R.first_violation.empty())
          R.first_violation = "element " + std::to_string(t) + " leaves the ground set";
        continue;
      }
      if (owner[i] >= 0) {
        if (R.disjoint) {
          R.overlap = {static_cast<std::size_t>(owner[i]), t};
          R.overlap_point = space->point(i);
          if (R.first_violation.empty())
            R.first_violation = "elements " + std::to_string(owner[i]) + " and " +
                                std::to_string(t) + " intersect";
        }
        R.disjoint = false;
      } else {
        owner[i] = static_cast<std::int64_t>(t);
      }
    }
  }
  for (std::uint32_t i = 0; i < space->size(); ++i)
    if (in_ground[i] && owner[i] < 0) R.uncovered.push_back(space->point(i));
  if (!R.uncovered.empty()) {
    R.covering = false;
    if (R.first_violation.empty())
      R.first_violation = std::to_string(R.uncovered.size()) + " points are not covered";
  }
  R.valid = R.disjoint && R.covering;
  return R;
}

inline PartitionReport verify_partition(const Partition& P) {
  if (P.ground.empty()) return verify_cover(P.v, P.q, P.elements);
  auto space = projective_space(P.v, make_field(P.q));
  std::vector<std::uint32_t> g;
  for (const auto& x : P.ground) g.push_back(space->index_of(x));
  return verify_cover(P.v, P.q, P.elements, &g);
}

// Elements that can be replaced by a sub-partition, with the applicable
// expansion rules.
struct ReducibilityHint {
  std::size_t element;
  int dim;
  std::vector<int> rules;
};

inline std::vector<ReducibilityHint> reducibility_hints(const Partition& P) {
  std::vector<ReducibilityHint> out;
  for (std::size_t t = 0; t < P.elements.size(); ++t) {
    const int d = P.elements[t].dim();
    if (d < 2) continue;
    ReducibilityHint h{t, d, {0}};
    for (int r = 1; r <= 6; ++r)
      if (reduction_rule(r).source == d) h.rules.push_back(r);
    out.push_back(std::move(h));
  }
  return out;
}

// A witness for reducibility: a proper subspace, spanned by two elements,
// that is exactly partitioned by the elements it contains.
struct ReducibilityWitness {
  Subspace subspace;
  std::vector<std::size_t> elements;
};

inline std::optional<ReducibilityWitness> find_reducible_pair_span(const Partition& P) {
  const Field F = make_field(P.q);
  auto space = projective_space(P.v, F);
  const std::size_t n = P.elements.size();
  std::vector<std::vector<std::uint32_t>> pts(n);
  std::vector<std::int64_t> owner(space->size(), -1);
  for (std::size_t t = 0; t < n; ++t) {
    pts[t] = space->points_of(P.elements[t]);
    for (auto i : pts[t]) owner[i] = static_cast<std::int64_t>(t);
  }
  std::set<Subspace> seen;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      auto rows = P.elements[a].rows();
      auto rb = P.elements[b].rows();
      rows.insert(rows.end(), rb.begin(), rb.end());
      Subspace U = rref_canonical(rows, F);
      if (U.dim() >= P.v || !seen.insert(U).second) continue;
      // every point of U must belong to an element lying inside U
      std::set<std::size_t> used;
      bool ok = true;
      for (auto i : space->points_of(U)) {
        auto o = owner[i];
        if (o < 0) {
          ok = false;
          break;
        }
        if (used.count(static_cast<std::size_t>(o))) continue;
        if (!contains(U, P.elements[static_cast<std::size_t>(o)])) {
          ok = false;
          break;
        }
        used.insert(static_cast<std::size_t>(o));
      }
      if (ok && used.size() >= 2)
        return ReducibilityWitness{U, std::vector<std::size_t>(used.begin(), used.end())};
    }
  return std::nullopt;
}

// Partition files: {"format":"vsp-partition","version":1,"q":2,"v":8,
//                   "elements":[["10000000", ...], ...]}
inline nlohmann::json partition_to_json(const Partition& P) {
  nlohmann::json j;
  j["format"] = "vsp-partition";
  j["version"] = 1;
  j["q"] = P.q;
  j["v"] = P.v;
  j["elements"] = nlohmann::json::array();
  for (const auto& E : P.elements) j["elements"].push_back(E.row_strings());
  if (!P.ground.empty()) {
    static constexpr char dig[] = "0123456789abcdef";
    j["ground"] = nlohmann::json::array();
    for (const auto& x : P.ground) {
      std::string s;
      for (elem e : x.coords()) s += dig[e];
      j["ground"].push_back(s);
    }
  }
  return j;
}

inline Partition partition_from_json(const nlohmann::json& j) {
  auto where = [](const std::string& w, const std::string& msg) {
    return format_error(w + ": " + msg);
  };
  if (!j.is_object()) throw where("document", "expected an object");
  if (j.value("format", "") != "vsp-partition")
    throw where("format", "expected \"vsp-partition\"");
  if (!j.contains("q") || !j["q"].is_number_integer()) throw where("q", "missing integer");
  if (!j.contains("v") || !j["v"].is_number_integer()) throw where("v", "missing integer");
  Partition P;
  P.q = j["q"].get<int>();
  P.v = j["v"].get<int>();
  Field F = [&] {
    try {
      return make_field(P.q);
    } catch (const invalid_parameter& e) {
      throw where("q", e.what());
    }
  }();
  if (P.v < 1 || P.v > 24) throw where("v", "out of range");
  if (!j.contains("elements") || !j["elements"].is_array())
    throw where("elements", "missing array");
  auto parse_row = [&](const nlohmann::json& x, const std::string& wr) {
    if (!x.is_string()) throw where(wr, "expected a digit string");
    auto s = x.get<std::string>();
    if (static_cast<int>(s.size()) != P.v)
      throw where(wr, "row has " + std::to_string(s.size()) + " digits, expected " +
                          std::to_string(P.v));
    row_vec r;
    for (char ch : s) {
      int d = -1;
      if (ch >= '0' && ch <= '9') d = ch - '0';
      else if (ch >= 'a' && ch <= 'f') d = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F') d = ch - 'A' + 10;
      if (d < 0 || d >= P.q) throw where(wr, std::string("invalid digit '") + ch + "'");
      r.push_back(static_cast<elem>(d));
    }
    return r;
  };
  const auto& els = j["elements"];
  for (std::size_t t = 0; t < els.size(); ++t) {
    const std::string w = "elements[" + std::to_string(t) + "]";
    if (!els[t].is_array() || els[t].empty()) throw where(w, "expected a nonempty array of rows");
    std::vector<row_vec> rows;
    for (std::size_t r = 0; r < els[t].size(); ++r)
      rows.push_back(parse_row(els[t][r], w + "[" + std::to_string(r) + "]"));
    try {
      P.elements.push_back(rref_canonical(rows, F));
    } catch (const invalid_parameter& e) {
      throw where(w, e.what());
    }
    if (P.elements.back().dim() != static_cast<int>(rows.size()))
      throw where(w, "rows are linearly dependent");
  }
  if (j.contains("ground")) {
    if (!j["ground"].is_array()) throw where("ground", "expected an array of digit strings");
    for (std::size_t t = 0; t < j["ground"].size(); ++t) {
      const std::string w = "ground[" + std::to_string(t) + "]";
      auto x = parse_row(j["ground"][t], w);
      try {
        P.ground.push_back(Point::normalized(std::move(x), F));
      } catch (const invalid_parameter& e) {
        throw where(w, e.what());
      }
    }
  }
  return P;
}

inline Partition read_partition_file(const std::string& path) {
  auto text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error(path + ": " + e.what());
  }
  try {
    return partition_from_json(j);
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

}  // namespace vsp
