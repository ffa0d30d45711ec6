#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "vsp/constructions.hpp"
#include "vsp/error.hpp"
#include "vsp/geometry.hpp"
#include "vsp/typecalc.hpp"

namespace vsp {

struct SearchLimits {
  std::uint64_t max_nodes = 1'000'000'000;
  double time_limit = 0;  // seconds; 0 means no limit
  int threads = 1;
  std::uint64_t candidate_budget = default_enumeration_budget;
};

enum class SearchStatus { found, infeasible, timeout };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::infeasible: return "infeasible";
    default: return "timeout";
  }
}

struct SearchStats {
  std::uint64_t nodes = 0;
  int max_depth = 0;
  double seconds = 0;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::infeasible;
  bool by_counting = false;  // decided by the point count alone
  std::vector<Subspace> witness;  // partition of the ground set, points included
  SearchStats stats;
  std::string note;
};

struct CoverProblem {
  int v = 0;
  int q = 2;
  std::shared_ptr<const ProjectiveSpace> space;
  std::vector<std::uint32_t> ground;  // sorted point indices
  PartitionType demand;
  // candidates of every demanded dimension >= 2, by dimension descending and
  // then in enumeration order
  std::vector<Subspace> candidates;
  std::vector<std::vector<std::uint32_t>> candidate_points;
  std::optional<Prescription> prescription;
  bool counting_ok = true;
  SearchLimits limits;

  std::map<int, std::size_t> candidate_counts() const {
    std::map<int, std::size_t> c;
    for (const auto& S : candidates) ++c[S.dim()];
    return c;
  }
};

struct BuildOptions {
  std::optional<Prescription> prescription;
  // replaces the enumerated candidates of the given dimensions
  std::map<int, std::vector<Subspace>> restrict_to;
  SearchLimits limits;
};

inline std::vector<std::uint32_t> all_points(const ProjectiveSpace& S) {
  std::vector<std::uint32_t> g(S.size());
  for (std::uint32_t i = 0; i < S.size(); ++i) g[i] = i;
  return g;
}

namespace detail {

// subspaces of dimension d whose points all lie in the ground set
inline void collect_candidates(const ProjectiveSpace& space, int d, const std::vector<char>& in_ground,
                               bool full_ground, std::uint64_t budget, std::vector<Subspace>& out,
                               std::vector<std::vector<std::uint32_t>>& pts) {
  enumerate_subspaces(
      space.ambient_dim(), d, space.field(),
      [&](const Subspace& S) {
        auto p = space.points_of(S);
        if (!full_ground)
          for (auto i : p)
            if (!in_ground[i]) return;
        out.push_back(S);
        pts.push_back(std::move(p));
      },
      budget);
}

}  // namespace detail

inline CoverProblem build_problem(int v, const Field& F, std::vector<std::uint32_t> ground,
                                  const PartitionType& demand, const BuildOptions& opt = {}) {
  CoverProblem P;
  P.v = v;
  P.q = F.q();
  P.space = projective_space(v, F);
  P.limits = opt.limits;
  if (ground.empty()) throw invalid_parameter("ground set is empty");
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  for (auto i : ground)
    if (i >= P.space->size()) throw invalid_parameter("ground point index out of range");
  P.ground = std::move(ground);
  if (demand.v != v || demand.q != F.q()) throw invalid_parameter("demand type has a different (v,q)");
  P.demand = demand;
  P.prescription = opt.prescription;
  P.counting_ok = demand.total_points() == P.ground.size();
  if (!P.counting_ok) return P;

  const bool full = P.ground.size() == P.space->size();
  std::vector<char> in_ground(P.space->size(), 0);
  for (auto i : P.ground) in_ground[i] = 1;
  for (int d = v - 1; d >= 2; --d) {
    if (!demand.count(d)) continue;
    if (auto it = opt.restrict_to.find(d); it != opt.restrict_to.end()) {
      for (const auto& S : it->second) {
        if (S.dim() != d) throw invalid_parameter("restricted candidate has the wrong dimension");
        auto p = P.space->points_of(S);
        if (std::all_of(p.begin(), p.end(), [&](std::uint32_t i) { return in_ground[i] != 0; })) {
          P.candidates.push_back(S);
          P.candidate_points.push_back(std::move(p));
        }
      }
      continue;
    }
    if (gaussian_binomial(v, d, F.q()) > opt.limits.candidate_budget)
      throw resource_error("candidate enumeration of " + gaussian_binomial(v, d, F.q()).str() +
                           " subspaces of dimension " + std::to_string(d) +
                           " exceeds the budget");
    detail::collect_candidates(*P.space, d, in_ground, full, opt.limits.candidate_budget,
                               P.candidates, P.candidate_points);
  }
  if (P.prescription) {
    for (const auto& E : P.prescription->elements) {
      if (E.ambient_dim() != v || E.q() != F.q())
        throw invalid_parameter("prescribed element lives in a different ambient space");
      auto p = P.space->points_of(E);
      for (auto i : p)
        if (!in_ground[i]) throw invalid_parameter("prescribed element leaves the ground set");
      if (E.dim() >= 2 &&
          std::find(P.candidates.begin(), P.candidates.end(), E) == P.candidates.end()) {
        // keep the dimension-descending order
        auto pos = std::find_if(P.candidates.begin(), P.candidates.end(),
                                [&](const Subspace& S) { return S.dim() < E.dim(); });
        auto at = pos - P.candidates.begin();
        P.candidates.insert(pos, E);
        P.candidate_points.insert(P.candidate_points.begin() + at, std::move(p));
      }
    }
  }
  return P;
}

namespace detail {

using clock = std::chrono::steady_clock;

// Shared termination state for one solve call.
struct search_control {
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t max_nodes = 0;
  clock::time_point deadline = clock::time_point::max();
  std::atomic<bool> aborted{false};
  // lowest root branch known to contain a solution (parallel runs)
  std::atomic<std::size_t> best_branch{std::numeric_limits<std::size_t>::max()};

  bool tick(std::uint64_t& local) {
    if (++local % 256 == 0) {
      auto n = nodes.fetch_add(256) + 256;
      if (n > max_nodes || clock::now() > deadline) aborted = true;
    }
    return !aborted.load(std::memory_order_relaxed);
  }
};

// Exact cover of the ground points by candidates, where up to m_1 points may
// stay uncovered (they become the 1-dimensional elements).
class cover_engine {
 public:
  cover_engine(const CoverProblem& P) {
    const std::size_t n = P.ground.size();
    std::vector<std::int32_t> local(P.space->size(), -1);
    for (std::size_t t = 0; t < n; ++t) local[P.ground[t]] = static_cast<std::int32_t>(t);
    npts_ = static_cast<std::uint32_t>(n);
    maxdim_ = P.v;
    cand_dim_.reserve(P.candidates.size());
    cand_pts_.resize(P.candidates.size());
    point_cands_.resize(n);
    for (std::size_t c = 0; c < P.candidates.size(); ++c) {
      cand_dim_.push_back(P.candidates[c].dim());
      for (auto g : P.candidate_points[c]) {
        cand_pts_[c].push_back(static_cast<std::uint32_t>(local[g]));
        point_cands_[local[g]].push_back(static_cast<std::uint32_t>(c));
      }
    }
    covered_.assign(n, 0);
    alive_.assign(P.candidates.size(), 1);
    count_.assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) count_[p] = static_cast<std::uint32_t>(point_cands_[p].size());
    rem_.assign(static_cast<std::size_t>(maxdim_) + 1, 0);
    alive_by_dim_.assign(static_cast<std::size_t>(maxdim_) + 1, 0);
    for (int d = 1; d < P.v; ++d) rem_[d] = static_cast<std::int64_t>(P.demand.count(d));
    for (int d : cand_dim_) ++alive_by_dim_[d];
    uncovered_ = npts_;
    for (std::size_t p = 0; p < n; ++p)
      if (count_[p] == 0) ++zero_;
    for (int d = 2; d < P.v; ++d)
      if (rem_[d] == 0) kill_dim(d);
  }

  struct branch {
    std::int64_t cand;  // >= 0 candidate, < 0 skip of point (-cand-1)
  };

  std::uint32_t points() const { return npts_; }
  const std::vector<std::uint32_t>& candidate_points(std::size_t c) const { return cand_pts_[c]; }

  // place candidate c (used for prescriptions); false if it is not available
  bool force(std::size_t c) {
    if (c >= alive_.size() || !alive_[c]) return false;
    apply({static_cast<std::int64_t>(c)});
    return true;
  }

  bool done() const {
    for (int d = 2; d < maxdim_; ++d)
      if (rem_[d] > 0) return false;
    return true;
  }

  bool dead() const {
    if (zero_ > static_cast<std::uint64_t>(std::max<std::int64_t>(rem_[1], 0))) return true;
    for (int d = 2; d < maxdim_; ++d)
      if (rem_[d] > alive_by_dim_[d]) return true;
    return false;
  }

  // branching options at the current node: candidates through the point with
  // fewest live candidates, then leaving that point uncovered
  std::vector<branch> options() const {
    std::uint32_t best = npts_, bc = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t p = 0; p < npts_; ++p)
      if (!covered_[p] && count_[p] < bc) {
        bc = count_[p];
        best = p;
        if (bc == 0) break;
      }
    std::vector<branch> out;
    if (best == npts_) return out;
    for (auto c : point_cands_[best])
      if (alive_[c]) out.push_back({static_cast<std::int64_t>(c)});
    if (rem_[1] > 0) out.push_back({-static_cast<std::int64_t>(best) - 1});
    return out;
  }

  void apply(branch b) {
    marks_.push_back(trail_.size());
    if (b.cand >= 0) {
      const auto c = static_cast<std::uint32_t>(b.cand);
      for (auto p : cand_pts_[c]) {
        covered_[p] = 1;
        --uncovered_;
      }
      for (auto p : cand_pts_[c])
        for (auto c2 : point_cands_[p])
          if (alive_[c2]) kill(c2);
      const int d = cand_dim_[c];
      if (--rem_[d] == 0) kill_dim(d);
    } else {
      const auto p = static_cast<std::uint32_t>(-b.cand - 1);
      if (count_[p] == 0) --zero_;
      covered_[p] = 1;
      --uncovered_;
      --rem_[1];
      for (auto c2 : point_cands_[p])
        if (alive_[c2]) kill(c2);
    }
    path_.push_back(b);
  }

  void undo() {
    const branch b = path_.back();
    path_.pop_back();
    const std::size_t mark = marks_.back();
    marks_.pop_back();
    while (trail_.size() > mark) {
      unkill(trail_.back());
      trail_.pop_back();
    }
    if (b.cand >= 0) {
      const auto c = static_cast<std::uint32_t>(b.cand);
      ++rem_[cand_dim_[c]];
      for (auto p : cand_pts_[c]) {
        covered_[p] = 0;
        ++uncovered_;
      }
    } else {
      const auto p = static_cast<std::uint32_t>(-b.cand - 1);
      ++rem_[1];
      covered_[p] = 0;
      ++uncovered_;
      if (count_[p] == 0) ++zero_;
    }
  }

  // depth-first search below the current node
  bool search(search_control& ctl, std::uint64_t& local_nodes, int depth, int& max_depth) {
    if (!ctl.tick(local_nodes)) return false;
    if (branch_ > ctl.best_branch.load(std::memory_order_relaxed)) return false;
    max_depth = std::max(max_depth, depth);
    if (done()) return true;
    if (dead()) return false;
    for (auto b : options()) {
      apply(b);
      if (search(ctl, local_nodes, depth + 1, max_depth)) return true;
      undo();
      if (ctl.aborted || branch_ > ctl.best_branch.load(std::memory_order_relaxed)) return false;
    }
    return false;
  }

  void set_branch(std::size_t b) { branch_ = b; }

  const std::vector<branch>& path() const { return path_; }
  std::vector<std::uint32_t> uncovered_points() const {
    std::vector<std::uint32_t> u;
    for (std::uint32_t p = 0; p < npts_; ++p)
      if (!covered_[p]) u.push_back(p);
    return u;
  }

 private:
  std::uint32_t npts_ = 0;
  int maxdim_ = 0;
  std::vector<int> cand_dim_;
  std::vector<std::vector<std::uint32_t>> cand_pts_, point_cands_;
  std::vector<char> covered_, alive_;
  std::vector<std::uint32_t> count_;
  std::vector<std::int64_t> rem_, alive_by_dim_;
  std::uint32_t uncovered_ = 0;
  std::uint64_t zero_ = 0;
  std::vector<std::uint32_t> trail_;
  std::vector<std::size_t> marks_;
  std::vector<branch> path_;
  std::size_t branch_ = 0;

  void kill(std::uint32_t c) {
    alive_[c] = 0;
    --alive_by_dim_[cand_dim_[c]];
    for (auto p : cand_pts_[c])
      if (--count_[p] == 0 && !covered_[p]) ++zero_;
    trail_.push_back(c);
  }
  void unkill(std::uint32_t c) {
    for (auto p : cand_pts_[c])
      if (count_[p]++ == 0 && !covered_[p]) --zero_;
    ++alive_by_dim_[cand_dim_[c]];
    alive_[c] = 1;
  }
  void kill_dim(int d) {
    for (std::uint32_t c = 0; c < alive_.size(); ++c)
      if (alive_[c] && cand_dim_[c] == d) kill(c);
  }
};

inline SearchOutcome finish_witness(const CoverProblem& P, const cover_engine& E,
                                    SearchOutcome out) {
  const Field F = make_field(P.q);
  std::vector<Subspace> w;
  for (auto b : E.path())
    if (b.cand >= 0) w.push_back(P.candidates[static_cast<std::size_t>(b.cand)]);
    else w.push_back(rref_canonical({P.space->coords(P.ground[static_cast<std::size_t>(-b.cand - 1)])}, F));
  for (auto p : E.uncovered_points()) w.push_back(rref_canonical({P.space->coords(P.ground[p])}, F));
  std::sort(w.begin(), w.end(), [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() > b.dim();
    return a < b;
  });
  auto rep = verify_cover(P.v, P.q, w, &P.ground);
  if (!rep.valid || rep.type != P.demand)
    throw std::logic_error("search produced an invalid witness: " + rep.first_violation);
  out.witness = std::move(w);
  return out;
}

}  // namespace detail

inline SearchOutcome solve(const CoverProblem& P) {
  using namespace detail;
  const auto t0 = clock::now();
  SearchOutcome out;
  if (!P.counting_ok) {
    out.status = SearchStatus::infeasible;
    out.by_counting = true;
    out.note = "demand covers " + std::to_string(P.demand.total_points()) + " points, ground has " +
               std::to_string(P.ground.size());
    return out;
  }
  cover_engine root(P);
  if (P.prescription) {
    for (const auto& E : P.prescription->elements) {
      if (E.dim() < 2) continue;
      auto it = std::find(P.candidates.begin(), P.candidates.end(), E);
      if (!root.force(static_cast<std::size_t>(it - P.candidates.begin()))) {
        out.status = SearchStatus::infeasible;
        out.note = "prescribed elements are not compatible with the demand";
        out.stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
        return out;
      }
    }
  }
  search_control ctl;
  ctl.max_nodes = P.limits.max_nodes;
  if (P.limits.time_limit > 0)
    ctl.deadline = t0 + std::chrono::duration_cast<clock::duration>(
                            std::chrono::duration<double>(P.limits.time_limit));

  const int threads = std::max(1, P.limits.threads);
  std::uint64_t local = 0;
  int max_depth = 0;
  if (threads == 1 || root.done() || root.dead()) {
    bool ok = root.search(ctl, local, 0, max_depth);
    out.stats.nodes = ctl.nodes.load() + local % 256;
    out.stats.max_depth = max_depth;
    out.stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
    if (ok) {
      out.status = SearchStatus::found;
      return finish_witness(P, root, std::move(out));
    }
    out.status = ctl.aborted ? SearchStatus::timeout : SearchStatus::infeasible;
    return out;
  }

  // split at the root; the lowest branch index with a solution wins
  const auto opts = root.options();
  std::atomic<std::size_t> next{0};
  std::vector<std::unique_ptr<cover_engine>> result(opts.size());
  std::vector<char> finished(opts.size(), 0);
  std::vector<int> depth(opts.size(), 0);
  std::atomic<std::uint64_t> extra{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= opts.size()) return;
      if (b > ctl.best_branch.load()) {
        finished[b] = 1;
        continue;
      }
      auto E = std::make_unique<cover_engine>(root);
      E->set_branch(b);
      E->apply(opts[b]);
      std::uint64_t ln = 0;
      int md = 0;
      bool ok = E->search(ctl, ln, 1, md);
      extra += ln % 256;
      depth[b] = md;
      if (ok) {
        result[b] = std::move(E);
        std::size_t cur = ctl.best_branch.load();
        while (b < cur && !ctl.best_branch.compare_exchange_weak(cur, b)) {
        }
      }
      if (!ctl.aborted || ok) finished[b] = 1;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min<int>(threads, static_cast<int>(opts.size())); ++t)
    pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  out.stats.nodes = ctl.nodes.load() + extra.load();
  out.stats.max_depth = opts.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
  out.stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  const std::size_t b = ctl.best_branch.load();
  if (b < opts.size()) {
    // a lower branch that timed out could still hold a solution, but any
    // solution is a valid witness
    out.status = SearchStatus::found;
    return finish_witness(P, *result[b], std::move(out));
  }
  const bool all = std::all_of(finished.begin(), finished.end(), [](char c) { return c != 0; });
  out.status = all && !ctl.aborted ? SearchStatus::infeasible : SearchStatus::timeout;
  return out;
}

struct PackingOutcome {
  SearchStatus status = SearchStatus::infeasible;  // found when optimal, timeout otherwise
  std::uint64_t value = 0;  // optimum, or best lower bound on timeout
  std::vector<Subspace> witness;
  SearchStats stats;
};

namespace detail {

class packing_engine {
 public:
  packing_engine(std::size_t npts, std::vector<std::vector<std::uint32_t>> cand_pts,
                 std::uint64_t block)
      : cand_pts_(std::move(cand_pts)), block_(block) {
    point_cands_.resize(npts);
    for (std::uint32_t c = 0; c < cand_pts_.size(); ++c)
      for (auto p : cand_pts_[c]) point_cands_[p].push_back(c);
    avail_.assign(npts, 1);
    alive_.assign(cand_pts_.size(), 1);
    count_.assign(npts, 0);
    for (std::size_t p = 0; p < npts; ++p) {
      count_[p] = static_cast<std::uint32_t>(point_cands_[p].size());
      if (count_[p]) ++usable_;
    }
  }

  void run(search_control& ctl) {
    std::uint64_t local = 0;
    rec(ctl, local, 0);
    nodes_local_ = local % 256;
  }

  std::uint64_t best() const { return best_; }
  const std::vector<std::uint32_t>& best_set() const { return best_set_; }
  std::uint64_t leftover_nodes() const { return nodes_local_; }
  int max_depth() const { return max_depth_; }

 private:
  std::vector<std::vector<std::uint32_t>> cand_pts_, point_cands_;
  std::uint64_t block_;
  std::vector<char> avail_, alive_;
  std::vector<std::uint32_t> count_;
  std::uint64_t usable_ = 0;
  std::vector<std::uint32_t> trail_, chosen_, best_set_;
  std::uint64_t best_ = 0, nodes_local_ = 0;
  int max_depth_ = 0;

  void kill(std::uint32_t c) {
    alive_[c] = 0;
    for (auto p : cand_pts_[c])
      if (--count_[p] == 0 && avail_[p]) --usable_;
    trail_.push_back(c);
  }
  void unkill(std::uint32_t c) {
    for (auto p : cand_pts_[c])
      if (count_[p]++ == 0 && avail_[p]) ++usable_;
    alive_[c] = 1;
  }
  void remove_point(std::uint32_t p) {
    avail_[p] = 0;
    if (count_[p]) --usable_;
  }
  void restore_point(std::uint32_t p) {
    avail_[p] = 1;
    if (count_[p]) ++usable_;
  }

  void rec(search_control& ctl, std::uint64_t& local, int depth) {
    if (!ctl.tick(local)) return;
    max_depth_ = std::max(max_depth_, depth);
    if (chosen_.size() > best_) {
      best_ = chosen_.size();
      best_set_ = chosen_;
    }
    if (chosen_.size() + usable_ / block_ <= best_) return;
    std::uint32_t bp = 0, bc = std::numeric_limits<std::uint32_t>::max();
    bool any = false;
    for (std::uint32_t p = 0; p < avail_.size(); ++p)
      if (avail_[p] && count_[p] > 0 && count_[p] < bc) {
        bc = count_[p];
        bp = p;
        any = true;
      }
    if (!any) return;
    std::vector<std::uint32_t> opts;
    for (auto c : point_cands_[bp])
      if (alive_[c]) opts.push_back(c);
    for (auto c : opts) {
      const std::size_t mark = trail_.size();
      for (auto p : cand_pts_[c]) remove_point(p);
      for (auto p : cand_pts_[c])
        for (auto c2 : point_cands_[p])
          if (alive_[c2]) kill(c2);
      chosen_.push_back(c);
      rec(ctl, local, depth + 1);
      chosen_.pop_back();
      while (trail_.size() > mark) {
        unkill(trail_.back());
        trail_.pop_back();
      }
      for (auto p : cand_pts_[c]) restore_point(p);
      if (ctl.aborted) return;
    }
    // leave bp out of every chosen subspace
    const std::size_t mark = trail_.size();
    remove_point(bp);
    for (auto c2 : point_cands_[bp])
      if (alive_[c2]) kill(c2);
    rec(ctl, local, depth + 1);
    while (trail_.size() > mark) {
      unkill(trail_.back());
      trail_.pop_back();
    }
    restore_point(bp);
  }
};

}  // namespace detail

// Maximum number of pairwise disjoint dim-subspaces inside the ground set
// that avoid the fixed subspaces.
inline PackingOutcome max_disjoint(int v, const Field& F, const std::vector<std::uint32_t>& ground,
                                   int dim, const std::vector<Subspace>& fixed = {},
                                   const SearchLimits& limits = {}) {
  using namespace detail;
  const auto t0 = clock::now();
  auto space = projective_space(v, F);
  if (dim < 1 || dim > v) throw invalid_parameter("packing dimension out of range");
  std::vector<char> in_ground(space->size(), 0);
  for (auto i : ground) in_ground.at(i) = 1;
  for (const auto& S : fixed) {
    for (auto i : space->points_of(S)) {
      if (in_ground[i] != 1) throw invalid_parameter("fixed subspaces must be disjoint and inside the ground set");
      in_ground[i] = 2;
    }
  }
  std::vector<std::uint32_t> pts;
  std::vector<std::int32_t> local(space->size(), -1);
  for (std::uint32_t i = 0; i < space->size(); ++i)
    if (in_ground[i] == 1) {
      local[i] = static_cast<std::int32_t>(pts.size());
      pts.push_back(i);
    }
  if (gaussian_binomial(v, dim, F.q()) > limits.candidate_budget)
    throw resource_error("too many candidate subspaces for packing");
  std::vector<Subspace> cands;
  std::vector<std::vector<std::uint32_t>> cpts;
  std::vector<char> usable(space->size(), 0);
  for (auto i : pts) usable[i] = 1;
  detail::collect_candidates(*space, dim, usable, false, limits.candidate_budget, cands, cpts);
  for (auto& c : cpts)
    for (auto& p : c) p = static_cast<std::uint32_t>(local[p]);
  packing_engine E(pts.size(), cpts, q_integer(dim, F.q()));
  search_control ctl;
  ctl.max_nodes = limits.max_nodes;
  if (limits.time_limit > 0)
    ctl.deadline = t0 + std::chrono::duration_cast<clock::duration>(
                            std::chrono::duration<double>(limits.time_limit));
  E.run(ctl);
  PackingOutcome out;
  out.status = ctl.aborted ? SearchStatus::timeout : SearchStatus::found;
  out.value = E.best();
  for (auto c : E.best_set()) out.witness.push_back(cands[c]);
  std::sort(out.witness.begin(), out.witness.end());
  out.stats.nodes = ctl.nodes.load() + E.leftover_nodes();
  out.stats.max_depth = E.max_depth();
  out.stats.seconds = std::chrono::duration<double>(clock::now() - t0).count();
  return out;
}

// Calls fn for every set of `count` pairwise disjoint dim-subspaces inside
// the ground set (each set once, in increasing candidate order). Returns the
// number of sets; throws resource_error when the node budget runs out.
template <class Fn>
std::uint64_t enumerate_packings(int v, const Field& F, const std::vector<std::uint32_t>& ground,
                                 int dim, std::size_t count, Fn&& fn,
                                 std::uint64_t max_nodes = 100'000'000) {
  auto space = projective_space(v, F);
  std::vector<char> in_ground(space->size(), 0);
  for (auto i : ground) in_ground.at(i) = 1;
  std::vector<Subspace> cands;
  std::vector<std::vector<std::uint32_t>> cpts;
  detail::collect_candidates(*space, dim, in_ground, false, default_enumeration_budget, cands, cpts);
  std::vector<int> used(space->size(), 0);
  std::vector<std::size_t> pick;
  std::uint64_t found = 0, nodes = 0;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (++nodes > max_nodes) throw resource_error("packing enumeration exceeded its node budget");
    if (pick.size() == count) {
      std::vector<Subspace> s;
      for (auto c : pick) s.push_back(cands[c]);
      fn(s);
      ++found;
      return;
    }
    for (std::size_t c = from; c + (count - pick.size()) <= cands.size(); ++c) {
      bool ok = true;
      for (auto p : cpts[c])
        if (used[p]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      for (auto p : cpts[c]) used[p] = 1;
      pick.push_back(c);
      self(self, c + 1);
      pick.pop_back();
      for (auto p : cpts[c]) used[p] = 0;
    }
  };
  rec(rec, 0);
  return found;
}

enum class PrescriptionPolicy { none = 0, one = 1, two = 2, three = 3 };

// Decides whether a vector space partition of the given type exists by
// exact cover of all points, prescribing up to three of the largest elements
// (for three equal dimensions every span dimension is searched).
inline SearchOutcome search_type(int v, const Field& F, const PartitionType& T,
                                 PrescriptionPolicy policy = PrescriptionPolicy::two,
                                 const SearchLimits& limits = {}) {
  const auto t0 = detail::clock::now();
  if (T.v != v || T.q != F.q()) throw invalid_parameter("type does not match (v,q)");
  SearchOutcome out;
  if (!check_packing(T)) {
    out.status = SearchStatus::infeasible;
    out.by_counting = true;
    out.note = "packing condition fails: " + std::to_string(T.total_points()) + " != " +
               std::to_string(q_integer(v, F.q()));
    return out;
  }
  std::vector<int> dims;
  for (int d = v - 1; d >= 2 && dims.size() < 3; --d)
    for (std::uint64_t c = 0; c < T.count(d) && dims.size() < 3; ++c) dims.push_back(d);
  std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(policy), dims.size());
  if (want == 3 && !(dims[0] == dims[1] && dims[1] == dims[2])) want = 2;
  if (want >= 2 && dims[0] + dims[1] > v) want = 1;
  dims.resize(want);

  std::vector<std::optional<int>> strata{std::nullopt};
  if (want == 3) {
    strata.clear();
    for (int s = 2 * dims[0]; s <= std::min(v, 3 * dims[0]); ++s) strata.push_back(s);
  }
  auto ground = all_points(*projective_space(v, F));
  bool any_timeout = false;
  SearchStats total;
  std::vector<std::string> notes;
  for (auto s : strata) {
    BuildOptions opt;
    opt.limits = limits;
    if (limits.time_limit > 0) {
      double used = std::chrono::duration<double>(detail::clock::now() - t0).count();
      opt.limits.time_limit = std::max(1e-3, limits.time_limit - used);
    }
    if (limits.max_nodes > total.nodes) opt.limits.max_nodes = limits.max_nodes - total.nodes;
    else opt.limits.max_nodes = 1;
    if (!dims.empty()) opt.prescription = canonical_prescription(v, F, dims, s);
    auto P = build_problem(v, F, ground, T, opt);
    auto r = solve(P);
    total.nodes += r.stats.nodes;
    total.max_depth = std::max(total.max_depth, r.stats.max_depth);
    if (r.status == SearchStatus::found) {
      r.stats = total;
      r.stats.seconds = std::chrono::duration<double>(detail::clock::now() - t0).count();
      if (s) r.note = "span dimension of the prescribed elements: " + std::to_string(*s);
      return r;
    }
    if (r.status == SearchStatus::timeout) any_timeout = true;
  }
  out.status = any_timeout ? SearchStatus::timeout : SearchStatus::infeasible;
  out.stats = total;
  out.stats.seconds = std::chrono::duration<double>(detail::clock::now() - t0).count();
  if (!dims.empty()) {
    out.note = "prescribed dimensions";
    for (int d : dims) out.note += " " + std::to_string(d);
  }
  return out;
}

}  // namespace vsp
