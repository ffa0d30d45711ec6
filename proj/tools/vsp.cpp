// vsp: command-line front end for the vector space partition library.
//
// exit codes: 0 found/valid, 1 infeasible/invalid, 2 timeout/unknown,
//             3 usage error, 4 format or I/O error

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "vsp/vsp.hpp"

namespace {

using json = nlohmann::json;

enum exit_code { ok = 0, negative = 1, undecided = 2, usage = 3, io = 4 };

struct RunConfig {
  std::string command;
  int q = 2;
  int v = 0;
  int k = 0;
  int dim = 0;
  std::string type;
  std::string matrix;
  std::string ground;
  std::string fixed;
  std::string input;
  std::string output;
  std::string filters = "all";
  bool reconcile = false;
  bool rejected = false;
  bool stats = false;
  int prescribe = 2;
  int threads = 1;
  double time_limit = 0;
  std::uint64_t max_nodes = 1'000'000'000;
  std::uint64_t delta = 0;
  std::string format = "text";

  json echo() const {
    json j{{"command", command}, {"format", format}};
    auto put_if = [&](const char* key, const auto& val, bool cond) {
      if (cond) j[key] = val;
    };
    put_if("q", q, command != "check" && command != "spectrum" ? true : q != 2);
    put_if("v", v, v != 0);
    put_if("k", k, k != 0);
    put_if("dim", dim, dim != 0);
    put_if("type", type, !type.empty());
    put_if("matrix", matrix, !matrix.empty());
    put_if("ground", ground, !ground.empty());
    put_if("fixed", fixed, !fixed.empty());
    put_if("input", input, !input.empty());
    put_if("output", output, !output.empty());
    if (command == "types") {
      j["filters"] = filters;
      j["reconcile"] = reconcile;
      j["rejected"] = rejected;
    }
    if (command == "search" || command == "pack") {
      j["threads"] = threads;
      j["time_limit"] = time_limit;
      j["max_nodes"] = max_nodes;
    }
    if (command == "search") j["prescribe"] = prescribe;
    put_if("delta", delta, delta != 0);
    return j;
  }
};

// Collects the report in both shapes; text lines go to stdout in text mode,
// the JSON document is printed once at the end in json mode.
struct Report {
  const RunConfig& cfg;
  json doc;
  std::ostringstream text;

  explicit Report(const RunConfig& c) : cfg(c) {
    doc["tool"] = "vsp";
    doc["version"] = 1;
    doc["config"] = c.echo();
    doc["result"] = json::object();
  }
  json& result() { return doc["result"]; }
  void emit(int code) {
    doc["exit_code"] = code;
    if (cfg.format == "json")
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << text.str();
  }
};

std::string point_string(const vsp::row_vec& x) {
  static constexpr char dig[] = "0123456789abcdef";
  std::string s;
  for (auto e : x) s += dig[e];
  return s;
}

json subspace_json(const vsp::Subspace& S) { return S.row_strings(); }

std::string subspace_text(const vsp::Subspace& S) {
  std::string s = "<";
  auto rows = S.row_strings();
  for (std::size_t i = 0; i < rows.size(); ++i) s += (i ? " " : "") + rows[i];
  return s + ">";
}

json citations_json(const std::vector<vsp::Citation>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back({{"key", c.key}, {"detail", c.detail}});
  return a;
}

void write_partition(const vsp::Partition& P, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw vsp::format_error("cannot write " + path);
  f << vsp::partition_to_json(P).dump(1) << "\n";
  if (!f) throw vsp::format_error("write to " + path + " failed");
}

int status_code(vsp::SearchStatus s) {
  switch (s) {
    case vsp::SearchStatus::found: return ok;
    case vsp::SearchStatus::infeasible: return negative;
    default: return undecided;
  }
}

void validate_common(const RunConfig& c) {
  int p = 0, e = 0;
  if (c.q < 2 || c.q > 16 || !vsp::detail::prime_power(c.q, p, e))
    throw vsp::invalid_parameter("--q must be a prime power in [2,16]");
  if (c.threads < 1 || c.threads > 256) throw vsp::invalid_parameter("--threads must be in [1,256]");
  if (c.time_limit < 0) throw vsp::invalid_parameter("--time-limit must be nonnegative");
  if (c.format != "text" && c.format != "json")
    throw vsp::invalid_parameter("--format must be text or json");
}

vsp::SearchLimits limits_of(const RunConfig& c) {
  vsp::SearchLimits L;
  L.max_nodes = c.max_nodes;
  L.time_limit = c.time_limit;
  L.threads = c.threads;
  return L;
}

void put_stats(Report& R, const vsp::SearchStats& st) {
  R.result()["nodes"] = st.nodes;
  R.text << "nodes: " << st.nodes << "\n";
  if (R.cfg.stats) {
    R.result()["seconds"] = st.seconds;
    R.result()["max_depth"] = st.max_depth;
    R.text << "seconds: " << st.seconds << "\nmax depth: " << st.max_depth << "\n";
  }
}

// ---------------------------------------------------------------- types

int cmd_types(const RunConfig& c) {
  if (c.v < 1) throw vsp::invalid_parameter("--v is required");
  vsp::check_type_budget(c.v, c.q);
  const auto level = vsp::parse_filter_level(c.filters);
  Report R(c);
  std::optional<vsp::KnownTable> table;
  if (level == vsp::FilterLevel::tails || c.reconcile) table = vsp::load_known_table();

  if (c.reconcile) {
    if (c.q != 2 || c.v != 8) throw vsp::invalid_parameter("--reconcile is available for --q 2 --v 8");
    auto rep = vsp::classify_pg72(*table);
    auto names = [](const std::vector<vsp::PartitionType>& ts) {
      json a = json::array();
      for (const auto& T : ts) a.push_back(vsp::format_type(T));
      return a;
    };
    auto& r = R.result();
    r["counts"] = {{"packing", rep.packing},       {"dimension", rep.dimension},
                   {"tails", rep.tails},           {"excluded", rep.exclusions},
                   {"feasible", rep.feasible},     {"compact_table", rep.compact},
                   {"explicit_table", rep.explicit_list},
                   {"normalizations", rep.normalizations}};
    r["excluded_but_already_filtered"] = names(rep.exclusions_outside);
    r["missing_from_compact"] = names(rep.missing_compact);
    r["extra_in_compact"] = names(rep.extra_compact);
    r["missing_from_explicit"] = names(rep.missing_explicit);
    r["extra_in_explicit"] = names(rep.extra_explicit);
    r["ok"] = rep.ok();
    r["feasible_types"] = names(rep.feasible_types);
    auto& t = R.text;
    t << "packing condition:      " << rep.packing << "\n"
      << "dimension condition:    " << rep.dimension << "\n"
      << "supertail conditions:   " << rep.tails << "\n"
      << "excluded types:         " << rep.exclusions << "\n"
      << "remaining:              " << rep.feasible << "\n"
      << "compact table expands:  " << rep.compact << "\n"
      << "explicit table expands: " << rep.explicit_list << "\n"
      << "normalized entries:     " << rep.normalizations << "\n";
    auto list = [&](const char* what, const std::vector<vsp::PartitionType>& ts) {
      t << what << ": " << ts.size() << "\n";
      for (const auto& T : ts) t << "  " << vsp::format_type(T) << "\n";
    };
    list("excluded but already filtered", rep.exclusions_outside);
    list("missing from compact table", rep.missing_compact);
    list("extra in compact table", rep.extra_compact);
    list("missing from explicit table", rep.missing_explicit);
    list("extra in explicit table", rep.extra_explicit);
    t << "reconciliation: " << (rep.ok() ? "ok" : "MISMATCH") << "\n";
    const int code = rep.ok() ? ok : negative;
    R.emit(code);
    return code;
  }

  const vsp::KnownTable* tp = table ? &*table : nullptr;
  json list = json::array();
  std::size_t accepted = 0, rejected = 0;
  if (c.rejected) {
    // every type passing the packing condition, with its verdict
    for (const auto& T : vsp::enumerate_types(c.v, c.q, vsp::FilterLevel::packing)) {
      auto V = vsp::evaluate_type(T, tp);
      bool acc = V.packing && V.dimension;
      if (level == vsp::FilterLevel::packing) acc = true;
      if (level == vsp::FilterLevel::tails) acc = V.accepted();
      if (level == vsp::FilterLevel::packing) V.citations.clear();
      if (level == vsp::FilterLevel::dimension)
        std::erase_if(V.citations, [](const vsp::Citation& x) { return x.key != "dimension"; });
      (acc ? accepted : rejected) += 1;
      list.push_back({{"type", vsp::format_type(T)}, {"accepted", acc},
                      {"citations", citations_json(V.citations)}});
      R.text << (acc ? "accept " : "reject ") << vsp::format_type(T);
      for (const auto& x : V.citations) R.text << "  [" << x.key << "] " << x.detail;
      R.text << "\n";
    }
  } else {
    for (const auto& T : vsp::enumerate_types(c.v, c.q, level, tp)) {
      ++accepted;
      list.push_back(vsp::format_type(T));
      R.text << vsp::format_type(T) << "\n";
    }
  }
  R.result()["count"] = accepted;
  if (c.rejected) R.result()["rejected"] = rejected;
  R.result()["types"] = std::move(list);
  R.text << "count: " << accepted << "\n";
  if (c.rejected) R.text << "rejected: " << rejected << "\n";
  R.emit(ok);
  return ok;
}

// ---------------------------------------------------------------- search

json outcome_json(const vsp::SearchOutcome& o) {
  json w = json::array();
  for (const auto& S : o.witness) w.push_back(subspace_json(S));
  json j{{"status", vsp::to_string(o.status)}, {"by_counting", o.by_counting}};
  if (!o.note.empty()) j["note"] = o.note;
  if (!o.witness.empty()) j["witness"] = std::move(w);
  return j;
}

void outcome_text(std::ostringstream& t, const vsp::SearchOutcome& o) {
  t << "status: " << vsp::to_string(o.status) << (o.by_counting ? " (by counting)" : "") << "\n";
  if (!o.note.empty()) t << "note: " << o.note << "\n";
  if (!o.witness.empty()) {
    t << "witness:\n";
    for (const auto& S : o.witness)
      if (S.dim() >= 2) t << "  " << S.dim() << " " << subspace_text(S) << "\n";
    std::size_t pts = 0;
    for (const auto& S : o.witness) pts += S.dim() == 1;
    if (pts) t << "  plus " << pts << " points\n";
  }
}

int cmd_search(const RunConfig& c) {
  if (c.v < 2) throw vsp::invalid_parameter("--v is required (at least 2)");
  if (c.type.empty()) throw vsp::invalid_parameter("--type is required");
  if (c.prescribe < 0 || c.prescribe > 3) throw vsp::invalid_parameter("--prescribe must be in 0..3");
  const auto F = vsp::make_field(c.q);
  const auto T = vsp::parse_type(c.type, c.v, c.q);
  if (vsp::q_integer(c.v, c.q) > (1u << 24)) throw vsp::resource_error("projective space too large");
  auto o = vsp::search_type(c.v, F, T, static_cast<vsp::PrescriptionPolicy>(c.prescribe),
                            limits_of(c));
  Report R(c);
  R.result() = outcome_json(o);
  R.result()["type"] = vsp::format_type(T);
  R.text << "type: " << vsp::format_type(T) << "\n";
  outcome_text(R.text, o);
  put_stats(R, o.stats);
  if (o.status == vsp::SearchStatus::found && !c.output.empty()) {
    vsp::Partition P{c.v, c.q, o.witness, {}};
    write_partition(P, c.output);
    R.text << "wrote " << c.output << "\n";
  }
  const int code = status_code(o.status);
  R.emit(code);
  return code;
}

// ---------------------------------------------------------------- pack

int cmd_pack(const RunConfig& c) {
  if (c.ground.empty()) throw vsp::invalid_parameter("--ground is required");
  if (c.type.empty() == (c.dim == 0))
    throw vsp::invalid_parameter("give exactly one of --type and --dim");
  const auto F = vsp::make_field(c.q);
  const auto A = vsp::read_matrix_file(c.ground, F);
  const int v = static_cast<int>(A.rows);
  if (v < 2) throw vsp::invalid_parameter("ground matrix needs at least 2 rows");
  if (vsp::q_integer(v, c.q) > (1u << 24)) throw vsp::resource_error("projective space too large");
  const auto M = vsp::multiset_from_columns(A, F);
  if (!M.is_set()) throw vsp::format_error(c.ground + ": ground set has repeated points");
  auto space = vsp::projective_space(v, F);
  const auto ground = M.support();
  std::vector<vsp::Point> gpts;
  for (auto i : ground) gpts.push_back(vsp::Point::normalized(space->coords(i), F));

  RunConfig echo = c;
  echo.v = v;
  Report R(echo);
  R.result()["ground_points"] = ground.size();
  R.text << "ground: " << ground.size() << " points in PG(" << v - 1 << "," << c.q << ")\n";
  int code = ok;
  if (!c.type.empty()) {
    const auto T = vsp::parse_type(c.type, v, c.q);
    vsp::BuildOptions opt;
    opt.limits = limits_of(c);
    auto P = vsp::build_problem(v, F, ground, T, opt);
    auto o = vsp::solve(P);
    R.result().update(outcome_json(o));
    R.result()["type"] = vsp::format_type(T);
    R.text << "type: " << vsp::format_type(T) << "\n";
    outcome_text(R.text, o);
    put_stats(R, o.stats);
    if (o.status == vsp::SearchStatus::found && !c.output.empty()) {
      write_partition(vsp::Partition{v, c.q, o.witness, gpts}, c.output);
      R.text << "wrote " << c.output << "\n";
    }
    code = status_code(o.status);
  } else {
    if (c.dim < 1 || c.dim >= v) throw vsp::invalid_parameter("--dim must be in [1,v-1]");
    std::vector<vsp::Subspace> fixed;
    if (!c.fixed.empty()) {
      auto FP = vsp::read_partition_file(c.fixed);
      if (FP.v != v || FP.q != c.q)
        throw vsp::invalid_parameter("--fixed file lives in a different ambient space");
      fixed = FP.elements;
    }
    auto o = vsp::max_disjoint(v, F, ground, c.dim, fixed, limits_of(c));
    const bool optimal = o.status == vsp::SearchStatus::found;
    R.result()["status"] = optimal ? "optimal" : "timeout";
    R.result()["max_disjoint"] = o.value;
    json w = json::array();
    for (const auto& S : o.witness) w.push_back(subspace_json(S));
    R.result()["witness"] = std::move(w);
    R.text << "status: " << (optimal ? "optimal" : "timeout (lower bound)") << "\n"
           << "max disjoint " << c.dim << "-spaces: " << o.value << "\n";
    for (const auto& S : o.witness) R.text << "  " << subspace_text(S) << "\n";
    put_stats(R, o.stats);
    if (!c.output.empty()) {
      auto all = fixed;
      all.insert(all.end(), o.witness.begin(), o.witness.end());
      write_partition(vsp::Partition{v, c.q, all, {}}, c.output);
      R.text << "wrote " << c.output << "\n";
    }
    code = optimal ? ok : undecided;
  }
  R.emit(code);
  return code;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const RunConfig& c) {
  if (c.matrix.empty()) throw vsp::invalid_parameter("--matrix is required");
  const auto F = vsp::make_field(c.q);
  const auto A = vsp::read_matrix_file(c.matrix, F);
  if (vsp::q_integer(static_cast<int>(A.rows), c.q) > (1u << 24))
    throw vsp::resource_error("projective space too large");
  const auto M = vsp::multiset_from_columns(A, F);
  const auto S = vsp::spectrum(M);
  const auto res = vsp::standard_equation_residuals(S);
  Report R(c);
  auto& r = R.result();
  r["rows"] = A.rows;
  r["cardinality"] = S.cardinality;
  r["k"] = S.k;
  r["is_set"] = S.is_set;
  r["max_multiplicity"] = M.max_multiplicity();
  json counts = json::object();
  for (auto [i, a] : S.counts) counts[std::to_string(i)] = a;
  r["spectrum"] = counts;
  r["standard_equations"] = {{"se1", res.se1}, {"se2", res.se2}, {"se5", res.se5}, {"ok", res.ok()}};
  // largest power of q dividing every hyperplane complement weight
  std::uint64_t div = 0;
  for (auto [i, a] : S.counts) div = std::gcd(div, S.cardinality - i);
  std::uint64_t qpow = 1;
  if (div != 0)
    while (div % (qpow * c.q) == 0) qpow *= c.q;
  r["max_divisibility"] = div == 0 ? json(nullptr) : json(qpow);
  auto& t = R.text;
  t << "points: " << S.cardinality << (S.is_set ? " (projective)" : " (multiset)") << "\n"
    << "span dimension k: " << S.k << "\n"
    << "spectrum (points per hyperplane of the span: count):\n";
  for (auto [i, a] : S.counts) t << "  a_" << i << " = " << a << "\n";
  t << "standard equations: " << (res.ok() ? "satisfied" : "VIOLATED") << "\n";
  if (div) t << "divisible by " << qpow << " (largest power of " << c.q << ")\n";
  int code = ok;
  if (c.delta) {
    bool d = vsp::is_divisible(M, c.delta);
    r["divisible"] = d;
    t << c.delta << "-divisible: " << (d ? "yes" : "no") << "\n";
    code = d ? ok : negative;
  }
  R.emit(code);
  return code;
}

// ---------------------------------------------------------------- constructions

int emit_construction(const RunConfig& c, const vsp::Partition& P) {
  auto rep = vsp::verify_partition(P);
  Report R(c);
  R.result()["type"] = vsp::format_type(rep.type);
  R.result()["elements"] = P.elements.size();
  R.result()["valid"] = rep.valid;
  R.text << "type: " << vsp::format_type(rep.type) << "\nelements: " << P.elements.size()
         << "\nvalid: " << (rep.valid ? "yes" : "no") << "\n";
  if (!c.output.empty()) {
    write_partition(P, c.output);
    R.text << "wrote " << c.output << "\n";
  } else {
    R.result()["partition"] = vsp::partition_to_json(P);
  }
  const int code = rep.valid ? ok : negative;
  R.emit(code);
  return code;
}

int cmd_spread(const RunConfig& c) {
  if (c.v < 1 || c.k < 1) throw vsp::invalid_parameter("--v and --k are required");
  if (vsp::q_integer(c.v, c.q) > (1u << 24)) throw vsp::resource_error("projective space too large");
  return emit_construction(c, vsp::desarguesian_spread(c.v, c.k, vsp::make_field(c.q)));
}

int cmd_mrd(const RunConfig& c) {
  if (c.v < 1 || c.k < 1) throw vsp::invalid_parameter("--v and --k are required");
  if (vsp::q_integer(c.v, c.q) > (1u << 24)) throw vsp::resource_error("projective space too large");
  return emit_construction(c, vsp::lifted_mrd(c.v, c.k, vsp::make_field(c.q)));
}

// ---------------------------------------------------------------- check

int cmd_check(const RunConfig& c) {
  auto P = vsp::read_partition_file(c.input);
  auto rep = vsp::verify_partition(P);
  RunConfig echo = c;
  echo.q = P.q;
  echo.v = P.v;
  Report R(echo);
  auto& r = R.result();
  auto& t = R.text;
  r["valid"] = rep.valid;
  r["disjoint"] = rep.disjoint;
  r["covering"] = rep.covering;
  r["type"] = vsp::format_type(rep.type);
  r["elements"] = P.elements.size();
  if (!P.ground.empty()) r["ground_points"] = P.ground.size();
  t << "partition of " << (P.ground.empty() ? "PG(" : "a ground set in PG(") << P.v - 1 << ","
    << P.q << ")" << (P.ground.empty() ? "" : " (" + std::to_string(P.ground.size()) + " points)")
    << ", " << P.elements.size() << " elements\n";
  t << "type: " << vsp::format_type(rep.type) << "\n"
    << "valid: " << (rep.valid ? "yes" : "no") << "\n";
  if (!rep.first_violation.empty()) {
    r["violation"] = rep.first_violation;
    t << "violation: " << rep.first_violation << "\n";
  }
  if (rep.overlap) {
    r["overlap"] = {{"elements", {rep.overlap->first, rep.overlap->second}},
                    {"point", point_string(rep.overlap_point->coords())}};
    t << "elements " << rep.overlap->first << " and " << rep.overlap->second << " meet in "
      << point_string(rep.overlap_point->coords()) << "\n";
  }
  json un = json::array();
  for (const auto& x : rep.uncovered) un.push_back(point_string(x.coords()));
  r["uncovered"] = un;
  t << "uncovered points: " << rep.uncovered.size() << "\n";
  for (const auto& x : rep.uncovered) t << "  " << point_string(x.coords()) << "\n";

  if (rep.valid) {
    json hints = json::array();
    std::map<int, std::pair<std::size_t, std::vector<int>>> by_dim;
    for (const auto& h : vsp::reducibility_hints(P)) {
      hints.push_back({{"element", h.element}, {"dim", h.dim}, {"rules", h.rules}});
      auto& e = by_dim[h.dim];
      ++e.first;
      e.second = h.rules;
    }
    r["reducibility_hints"] = hints;
    t << "replaceable elements (expansion rules):\n";
    if (by_dim.empty()) t << "  none\n";
    for (auto it = by_dim.rbegin(); it != by_dim.rend(); ++it) {
      t << "  " << it->second.first << " of dimension " << it->first << ": rules";
      for (int x : it->second.second) t << " " << x;
      t << "\n";
    }
    if (P.ground.empty()) {
      auto w = vsp::find_reducible_pair_span(P);
      if (w) {
        r["reducible_subspace"] = {{"subspace", subspace_json(w->subspace)},
                                   {"elements", w->elements}};
        t << "reducible: the " << w->subspace.dim() << "-space " << subspace_text(w->subspace)
          << " is partitioned by " << w->elements.size() << " elements\n";
      } else {
        r["reducible_subspace"] = nullptr;
        t << "reducible: no proper subspace spanned by two elements is partitioned\n";
      }
    }
  }
  const int code = rep.valid ? ok : negative;
  R.emit(code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vector space partitions of PG(v-1,q)"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_limits = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "worker threads");
    s->add_option("--time-limit", c.time_limit, "seconds, 0 for none");
    s->add_option("--max-nodes", c.max_nodes, "search node budget");
    s->add_flag("--stats", c.stats, "report timing (makes output run-dependent)");
  };

  auto* types = app.add_subcommand("types", "enumerate partition types passing the filters");
  types->add_option("--q", c.q)->required();
  types->add_option("--v", c.v)->required();
  types->add_option("--filters", c.filters, "packing, dimension, tails or all")
      ->check(CLI::IsMember({"packing", "dimension", "tails", "all"}));
  types->add_flag("--reconcile", c.reconcile, "compare with the curated PG(7,2) tables");
  types->add_flag("--rejected", c.rejected, "also list rejected types with reasons");
  add_format(types);

  auto* search = app.add_subcommand("search", "decide existence of a partition of a given type");
  search->add_option("--q", c.q);
  search->add_option("--v", c.v)->required();
  search->add_option("--type", c.type)->required();
  search->add_option("--prescribe", c.prescribe, "number of largest elements to fix (0..3)");
  search->add_option("-o,--output", c.output, "witness partition file");
  add_limits(search);
  add_format(search);

  auto* pack = app.add_subcommand("pack", "partition or pack a point set given as a matrix");
  pack->add_option("--q", c.q);
  pack->add_option("--ground", c.ground, "matrix file whose columns are the points")->required();
  pack->add_option("--type", c.type, "exact partition type of the ground set");
  pack->add_option("--dim", c.dim, "maximize the number of disjoint subspaces of this dimension");
  pack->add_option("--fixed", c.fixed, "partition file of subspaces to keep (with --dim)");
  pack->add_option("-o,--output", c.output, "witness partition file");
  add_limits(pack);
  add_format(pack);

  auto* spec = app.add_subcommand("spectrum", "hyperplane spectrum of a point multiset");
  spec->add_option("--q", c.q);
  spec->add_option("--matrix", c.matrix)->required();
  spec->add_option("--delta", c.delta, "also test delta-divisibility (exit 1 when it fails)");
  add_format(spec);

  auto* spread = app.add_subcommand("spread", "Desarguesian k-spread of PG(v-1,q)");
  spread->add_option("--q", c.q);
  spread->add_option("--v", c.v)->required();
  spread->add_option("--k", c.k)->required();
  spread->add_option("-o,--output", c.output);
  add_format(spread);

  auto* mrd = app.add_subcommand("mrd", "partition of type (v-k)^1 k^{q^(v-k)} from a lifted MRD code");
  mrd->add_option("--q", c.q);
  mrd->add_option("--v", c.v)->required();
  mrd->add_option("--k", c.k)->required();
  mrd->add_option("-o,--output", c.output);
  add_format(mrd);

  auto* check = app.add_subcommand("check", "verify a partition file");
  check->add_option("input", c.input)->required();
  add_format(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    validate_common(c);
    if (c.command == "types") return cmd_types(c);
    if (c.command == "search") return cmd_search(c);
    if (c.command == "pack") return cmd_pack(c);
    if (c.command == "spectrum") return cmd_spectrum(c);
    if (c.command == "spread") return cmd_spread(c);
    if (c.command == "mrd") return cmd_mrd(c);
    return cmd_check(c);
  } catch (const vsp::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const vsp::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const vsp::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
}
