#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vsp/divisible.hpp"
#include "vsp/error.hpp"
#include "vsp/geometry.hpp"

#ifndef VSP_DEFAULT_DATA_DIR
#define VSP_DEFAULT_DATA_DIR "data"
#endif

namespace vsp {

// exponent vector of a vector space partition of PG(v-1,q); m[d] counts the
// elements of dimension d, 1 <= d <= v-1 (m[0] is unused)
struct PartitionType {
  int v = 0;
  int q = 2;
  std::vector<std::uint64_t> m;

  PartitionType() = default;
  PartitionType(int v_, int q_) : v(v_), q(q_), m(static_cast<std::size_t>(std::max(v_, 1)), 0) {}

  std::uint64_t count(int d) const { return d >= 1 && d < v ? m[d] : 0; }
  int max_dim() const {
    for (int d = v - 1; d >= 1; --d)
      if (m[d]) return d;
    return 0;
  }
  std::uint64_t element_count() const {
    std::uint64_t s = 0;
    for (int d = 1; d < v; ++d) s += m[d];
    return s;
  }
  std::uint64_t total_points() const {
    std::uint64_t s = 0;
    for (int d = 1; d < v; ++d) s += m[d] * q_integer(d, q);
    return s;
  }
  bool empty() const { return element_count() == 0; }

  // ordering used for enumeration: descending on (m_{v-1},...,m_1)
  std::vector<std::uint64_t> key() const {
    std::vector<std::uint64_t> k;
    for (int d = v - 1; d >= 1; --d) k.push_back(m[d]);
    return k;
  }
  friend bool operator==(const PartitionType&, const PartitionType&) = default;
  friend auto operator<=>(const PartitionType& a, const PartitionType& b) {
    if (auto c = a.v <=> b.v; c != 0) return c;
    if (auto c = a.q <=> b.q; c != 0) return c;
    return a.key() <=> b.key();
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, const std::string& ctx) {
  if (s.empty() || s.size() > 18) throw invalid_parameter("bad number in '" + ctx + "'");
  std::uint64_t x = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw invalid_parameter("bad number in '" + ctx + "'");
    x = x * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return x;
}

// "d^m" or "d^{m}" -> (d, m)
inline std::pair<int, std::uint64_t> parse_token(const std::string& tok) {
  auto caret = tok.find('^');
  if (caret == std::string::npos || caret == 0)
    throw invalid_parameter("malformed type token '" + tok + "'");
  std::string e = tok.substr(caret + 1);
  if (e.size() >= 2 && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
  auto d = parse_uint(tok.substr(0, caret), tok);
  if (d > 64) throw invalid_parameter("dimension out of range in '" + tok + "'");
  return {static_cast<int>(d), parse_uint(e, tok)};
}

}  // namespace detail

inline PartitionType parse_type(std::string_view text, int v, int q) {
  if (v < 2) throw invalid_parameter("ambient dimension must be at least 2");
  PartitionType T(v, q);
  std::set<int> seen;
  auto toks = detail::split_ws(text);
  if (toks.empty()) throw invalid_parameter("empty type string");
  for (const auto& tok : toks) {
    auto [d, c] = detail::parse_token(tok);
    if (d < 1 || d > v - 1)
      throw invalid_parameter("dimension " + std::to_string(d) + " in '" + tok +
                              "' is outside 1.." + std::to_string(v - 1));
    if (!seen.insert(d).second)
      throw invalid_parameter("dimension " + std::to_string(d) + " appears twice");
    T.m[d] = c;
  }
  if (T.empty()) throw invalid_parameter("type '" + std::string(text) + "' has no elements");
  return T;
}

inline std::string format_type(const PartitionType& T) {
  std::string out;
  for (int d = T.v - 1; d >= 1; --d) {
    if (!T.m[d]) continue;
    if (!out.empty()) out += ' ';
    out += std::to_string(d) + "^" + std::to_string(T.m[d]);
  }
  return out;
}

inline bool check_packing(const PartitionType& T) {
  return T.total_points() == q_integer(T.v, T.q);
}

// no two elements of dimensions i, j (possibly i = j) with i + j > v
inline bool check_dimension(const PartitionType& T) {
  for (int i = 1; i < T.v; ++i) {
    if (!T.m[i]) continue;
    if (2 * i > T.v && T.m[i] > 1) return false;
    for (int j = i + 1; j < T.v; ++j)
      if (T.m[j] && i + j > T.v) return false;
  }
  return true;
}

struct TailReport {
  int k = 0;
  std::vector<std::uint64_t> tail;  // m_1..m_k at indices 1..k
  std::uint64_t n = 0;
  std::uint64_t delta = 0;
  LengthVerdict verdict;
};

inline LengthVerdict tail_length_verdict(int q, int k, std::uint64_t n) {
  if (q == 2 && k <= 3) return admissible_length_projective_binary(1 << k, static_cast<long long>(n));
  return admissible_length_semigroup(q, k, static_cast<long long>(n));
}

// the points outside the elements of dimension > k form a q^k-divisible set
inline std::vector<TailReport> tails(const PartitionType& T) {
  std::vector<TailReport> out;
  const int top = T.max_dim();
  for (int k = 1; k <= T.v - 2; ++k) {
    if (top <= k) break;
    TailReport R;
    R.k = k;
    R.tail.assign(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i) {
      R.tail[i] = T.m[i];
      R.n += T.m[i] * q_integer(i, T.q);
    }
    R.delta = ipow(T.q, k);
    R.verdict = tail_length_verdict(T.q, k, R.n);
    out.push_back(std::move(R));
  }
  return out;
}

inline std::string format_tail(const TailReport& R) {
  std::string out;
  for (int i = R.k; i >= 1; --i) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + "^" + std::to_string(R.tail[i]);
  }
  return out;
}

// A supertail pattern fixes the counts of every dimension up to its top
// dimension (zeros included) and requires a strictly larger element.
struct ForbiddenPattern {
  std::string text;
  std::string key;
  std::string note;
  int top = 0;
  std::vector<std::uint64_t> counts;  // indices 1..top

  bool matches(const PartitionType& T) const {
    if (T.max_dim() <= top) return false;
    for (int i = 1; i <= top; ++i)
      if (T.count(i) != counts[i]) return false;
    return true;
  }
};

inline ForbiddenPattern parse_pattern(const std::string& text) {
  ForbiddenPattern P;
  P.text = text;
  std::map<int, std::uint64_t> c;
  for (const auto& tok : detail::split_ws(text)) {
    auto [d, m] = detail::parse_token(tok);
    if (d < 1) throw format_error("bad pattern '" + text + "'");
    if (!c.emplace(d, m).second) throw format_error("dimension repeated in pattern '" + text + "'");
  }
  if (c.empty()) throw format_error("empty pattern");
  P.top = c.rbegin()->first;
  P.counts.assign(static_cast<std::size_t>(P.top) + 1, 0);
  for (auto [d, m] : c) P.counts[d] = m;
  return P;
}

// Affine expression a + b*i + c*j, e.g. "1-i+7j".
struct AffineExpr {
  long long a = 0, bi = 0, cj = 0;
  long long eval(long long i, long long j) const { return a + bi * i + cj * j; }
};

inline AffineExpr parse_affine(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '{' && ch != '}') s += ch;
  if (s.empty()) throw format_error("empty expression");
  AffineExpr e;
  std::size_t p = 0;
  while (p < s.size()) {
    int sign = 1;
    if (s[p] == '+' || s[p] == '-') {
      sign = s[p] == '-' ? -1 : 1;
      ++p;
    }
    long long coef = -1;
    std::size_t q0 = p;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
    if (p > q0) coef = std::stoll(s.substr(q0, p - q0));
    char var = 0;
    if (p < s.size() && (s[p] == 'i' || s[p] == 'j')) var = s[p++];
    if (coef < 0 && !var) throw format_error("malformed expression '" + std::string(text) + "'");
    if (coef < 0) coef = 1;
    if (var == 'i') e.bi += sign * coef;
    else if (var == 'j') e.cj += sign * coef;
    else e.a += sign * coef;
  }
  return e;
}

// A parametrized list of types such as "4^{13} 3^{3-3j} 2^{13-i+7j} 1^{3i}"
// with i in [i_lo, i_hi] (which may depend on j) and j in [j_lo, j_hi].
struct TypeFamily {
  std::string pattern;
  std::string i_lo = "0", i_hi = "0", j_lo = "0", j_hi = "0";
  std::string key;
  std::string printed;
  std::string note;

  std::vector<PartitionType> expand(int v, int q) const {
    std::vector<std::pair<int, AffineExpr>> toks;
    for (const auto& tok : detail::split_ws(pattern)) {
      auto caret = tok.find('^');
      if (caret == std::string::npos) throw format_error("bad family token '" + tok + "'");
      int d = static_cast<int>(detail::parse_uint(tok.substr(0, caret), tok));
      if (d < 1 || d >= v) throw format_error("dimension out of range in family '" + pattern + "'");
      toks.emplace_back(d, parse_affine(tok.substr(caret + 1)));
    }
    const auto il = parse_affine(i_lo), ih = parse_affine(i_hi);
    const auto jl = parse_affine(j_lo), jh = parse_affine(j_hi);
    std::vector<PartitionType> out;
    for (long long j = jl.eval(0, 0); j <= jh.eval(0, 0); ++j)
      for (long long i = il.eval(0, j); i <= ih.eval(0, j); ++i) {
        PartitionType T(v, q);
        for (auto& [d, e] : toks) {
          long long x = e.eval(i, j);
          if (x < 0)
            throw format_error("family '" + pattern + "' has a negative exponent at i=" +
                               std::to_string(i) + ", j=" + std::to_string(j));
          T.m[d] += static_cast<std::uint64_t>(x);
        }
        if (!T.empty()) out.push_back(std::move(T));
      }
    return out;
  }
};

struct Normalization {
  std::string list, printed, normalized, reason;
};

struct KnownTable {
  int q = 2;
  std::vector<ForbiddenPattern> forbidden;
  std::vector<TypeFamily> exclusions;
  std::vector<TypeFamily> feasible_compact;
  std::vector<TypeFamily> feasible_explicit;
  std::vector<Normalization> normalizations;
  std::string source;
};

inline std::string default_data_dir() {
  if (const char* env = std::getenv("VSP_DATA_DIR"); env && *env) return env;
  return VSP_DEFAULT_DATA_DIR;
}

namespace detail {

inline nlohmann::json read_json_file(const std::string& path) {
  auto text = read_text_file(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

inline std::vector<TypeFamily> families_from_json(const nlohmann::json& j, const std::string& path) {
  std::vector<TypeFamily> out;
  try {
    for (const auto& f : j.at("families")) {
      TypeFamily F;
      F.pattern = f.at("type").get<std::string>();
      F.i_lo = f.at("i").at(0).get<std::string>();
      F.i_hi = f.at("i").at(1).get<std::string>();
      F.j_lo = f.at("j").at(0).get<std::string>();
      F.j_hi = f.at("j").at(1).get<std::string>();
      F.key = f.value("key", "");
      F.printed = f.value("printed", "");
      F.note = f.value("note", "");
      out.push_back(std::move(F));
    }
  } catch (const nlohmann::json::exception& e) {
    throw format_error(path + ": " + e.what());
  }
  return out;
}

}  // namespace detail

inline KnownTable load_known_table(const std::string& dir = default_data_dir()) {
  KnownTable t;
  t.source = dir;
  const std::string fp = dir + "/forbidden_supertails.json";
  auto fj = detail::read_json_file(fp);
  try {
    t.q = fj.at("q").get<int>();
    for (const auto& p : fj.at("patterns")) {
      auto P = parse_pattern(p.at("pattern").get<std::string>());
      P.key = p.at("key").get<std::string>();
      P.note = p.value("note", "");
      t.forbidden.push_back(std::move(P));
    }
  } catch (const nlohmann::json::exception& e) {
    throw format_error(fp + ": " + e.what());
  }
  t.exclusions = detail::families_from_json(detail::read_json_file(dir + "/pg72_exclusions.json"),
                                            dir + "/pg72_exclusions.json");
  t.feasible_compact = detail::families_from_json(
      detail::read_json_file(dir + "/pg72_feasible_compact.json"), dir + "/pg72_feasible_compact.json");
  t.feasible_explicit =
      detail::families_from_json(detail::read_json_file(dir + "/pg72_feasible_explicit.json"),
                                 dir + "/pg72_feasible_explicit.json");
  const std::string np = dir + "/normalizations.json";
  auto nj = detail::read_json_file(np);
  try {
    for (const auto& n : nj.at("normalizations"))
      t.normalizations.push_back({n.at("list").get<std::string>(), n.at("printed").get<std::string>(),
                                  n.at("normalized").get<std::string>(),
                                  n.value("reason", "")});
  } catch (const nlohmann::json::exception& e) {
    throw format_error(np + ": " + e.what());
  }
  for (const auto& P : t.forbidden)
    if (P.key.empty()) throw format_error(fp + ": pattern '" + P.text + "' lacks a citation key");
  for (const auto& F : t.exclusions)
    if (F.key.empty()) throw format_error("exclusion family '" + F.pattern + "' lacks a citation key");
  return t;
}

struct Citation {
  std::string key;
  std::string detail;
  friend bool operator==(const Citation&, const Citation&) = default;
};

struct TailVerdict {
  bool accepted = true;
  std::vector<Citation> citations;
};

inline TailVerdict check_tails(const PartitionType& T, const KnownTable* table) {
  TailVerdict V;
  for (const auto& R : tails(T)) {
    if (R.verdict.admissible != Admissibility::no) continue;
    V.accepted = false;
    const bool proj = R.verdict.rule == LengthRule::projective_table;
    V.citations.push_back({proj ? "projective-lengths" : "divisible-lengths",
                           "supertail " + format_tail(R) + ": " + std::to_string(R.n) +
                               " points cannot be " + std::to_string(R.delta) + "-divisible"});
  }
  if (table && table->q == T.q)
    for (const auto& P : table->forbidden)
      if (P.matches(T)) {
        V.accepted = false;
        V.citations.push_back({P.key, "forbidden supertail " + P.text});
      }
  return V;
}

inline TailVerdict check_tails(const PartitionType& T, const KnownTable& table) {
  return check_tails(T, &table);
}

// q = 2 reduction rules: replace one element by a sub-partition of it
//   1: 2 -> 1^3   2: 3 -> 1^7   3: 3 -> 2^1 1^4
//   4: 4 -> 1^15  5: 4 -> 2^5   6: 4 -> 3^1 1^8
struct ReductionRule {
  int source;
  int m3, m2, m1;
};

inline const ReductionRule& reduction_rule(int rule) {
  static const ReductionRule rules[] = {
      {2, 0, 0, 3}, {3, 0, 0, 7}, {3, 0, 1, 4}, {4, 0, 0, 15}, {4, 0, 5, 0}, {4, 1, 0, 8}};
  if (rule < 1 || rule > 6) throw precondition_error("reduction rules are numbered 1..6");
  return rules[rule - 1];
}

inline PartitionType apply_reduction(const PartitionType& T, int rule) {
  if (T.q != 2) throw precondition_error("reduction rules are stated for q=2");
  const auto& r = reduction_rule(rule);
  if (T.count(r.source) == 0)
    throw precondition_error("rule " + std::to_string(rule) + " needs an element of dimension " +
                             std::to_string(r.source));
  PartitionType U = T;
  U.m[r.source] -= 1;
  if (r.m3) U.m[3] += r.m3;
  if (r.m2) U.m[2] += r.m2;
  U.m[1] += r.m1;
  return U;
}

enum class FilterLevel { packing, dimension, tails };

inline FilterLevel parse_filter_level(const std::string& s) {
  if (s == "packing") return FilterLevel::packing;
  if (s == "dimension") return FilterLevel::dimension;
  if (s == "tails" || s == "all") return FilterLevel::tails;
  throw invalid_parameter("unknown filter '" + s + "'");
}

inline void check_type_budget(int v, int q) {
  int p = 0, e = 0;
  if (q < 2 || q > 16 || !detail::prime_power(q, p, e))
    throw invalid_parameter("q must be a prime power in [2,16]");
  if (v < 2) throw invalid_parameter("v must be at least 2");
  const int vmax = q == 2 ? 8 : 5;
  if (v > vmax)
    throw invalid_parameter("type enumeration for q=" + std::to_string(q) + " is limited to v<=" +
                            std::to_string(vmax));
}

// Exponent vectors in descending lexicographic order of (m_{v-1},...,m_1).
inline std::vector<PartitionType> enumerate_types(int v, int q, FilterLevel level,
                                                  const KnownTable* table = nullptr) {
  check_type_budget(v, q);
  std::vector<PartitionType> out;
  PartitionType T(v, q);
  const std::uint64_t N = q_integer(v, q);
  auto rec = [&](auto&& self, int d, std::uint64_t rem) -> void {
    if (d == 1) {
      T.m[1] = rem;
      bool ok = true;
      if (level != FilterLevel::packing) ok = check_dimension(T);
      if (ok && level == FilterLevel::tails) ok = check_tails(T, table).accepted;
      if (ok) out.push_back(T);
      T.m[1] = 0;
      return;
    }
    const std::uint64_t sz = q_integer(d, q);
    for (std::uint64_t c = rem / sz + 1; c-- > 0;) {
      T.m[d] = c;
      self(self, d - 1, rem - c * sz);
    }
    T.m[d] = 0;
  };
  rec(rec, v - 1, N);
  return out;
}

struct TypeVerdict {
  bool packing = false;
  bool dimension = false;
  bool tails = false;
  std::vector<Citation> citations;
  bool accepted() const { return packing && dimension && tails; }
};

inline TypeVerdict evaluate_type(const PartitionType& T, const KnownTable* table) {
  TypeVerdict V;
  V.packing = check_packing(T);
  if (!V.packing)
    V.citations.push_back({"packing", std::to_string(T.total_points()) + " points instead of " +
                                          std::to_string(q_integer(T.v, T.q))});
  V.dimension = check_dimension(T);
  if (!V.dimension)
    V.citations.push_back({"dimension", "two elements would span more than the ambient space"});
  auto tv = check_tails(T, table);
  V.tails = tv.accepted;
  V.citations.insert(V.citations.end(), tv.citations.begin(), tv.citations.end());
  return V;
}

struct ReconciliationReport {
  std::size_t packing = 0, dimension = 0, tails = 0;
  std::size_t exclusions = 0;
  std::vector<PartitionType> exclusions_outside;  // excluded types that the filters already reject
  std::size_t feasible = 0;
  std::size_t compact = 0, explicit_list = 0;
  std::vector<PartitionType> missing_compact, extra_compact;
  std::vector<PartitionType> missing_explicit, extra_explicit;
  std::size_t normalizations = 0;
  std::vector<PartitionType> feasible_types;

  bool ok() const {
    return exclusions_outside.empty() && missing_compact.empty() && extra_compact.empty() &&
           missing_explicit.empty() && extra_explicit.empty();
  }
};

inline std::set<PartitionType> expand_families(const std::vector<TypeFamily>& fams, int v, int q) {
  std::set<PartitionType> s;
  for (const auto& F : fams)
    for (auto& T : F.expand(v, q)) s.insert(std::move(T));
  return s;
}

// Filtered PG(7,2) candidates minus the known-infeasible list against the
// two family tables of feasible types.
inline ReconciliationReport classify_pg72(const KnownTable& table) {
  constexpr int v = 8, q = 2;
  ReconciliationReport R;
  auto all = enumerate_types(v, q, FilterLevel::packing);
  R.packing = all.size();
  std::set<PartitionType> filtered;
  for (const auto& T : all) {
    if (!check_dimension(T)) continue;
    ++R.dimension;
    if (!check_tails(T, &table).accepted) continue;
    filtered.insert(T);
  }
  R.tails = filtered.size();
  auto excl = expand_families(table.exclusions, v, q);
  R.exclusions = excl.size();
  for (const auto& T : excl) {
    if (!filtered.count(T)) R.exclusions_outside.push_back(T);
    filtered.erase(T);
  }
  R.feasible = filtered.size();
  auto compact = expand_families(table.feasible_compact, v, q);
  auto expl = expand_families(table.feasible_explicit, v, q);
  R.compact = compact.size();
  R.explicit_list = expl.size();
  auto diff = [](const std::set<PartitionType>& a, const std::set<PartitionType>& b) {
    std::vector<PartitionType> d;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
    return d;
  };
  R.missing_compact = diff(filtered, compact);
  R.extra_compact = diff(compact, filtered);
  R.missing_explicit = diff(filtered, expl);
  R.extra_explicit = diff(expl, filtered);
  R.normalizations = table.normalizations.size();
  R.feasible_types.assign(filtered.begin(), filtered.end());
  std::sort(R.feasible_types.begin(), R.feasible_types.end(),
            [](const PartitionType& a, const PartitionType& b) { return a.key() > b.key(); });
  return R;
}

}  // namespace vsp
