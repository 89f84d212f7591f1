#pragma once

// Primal network simplex for the dense bipartite transportation problem
//   min sum c_ij f_ij  s.t.  sum_j f_ij = a_i,  sum_i f_ij = b_j,  f >= 0
// with integer costs. The spanning-tree bookkeeping (thread, reverse thread,
// successor counts, last successors) and the block-search pivot rule follow the
// classic primal algorithm as implemented in LEMON. Arcs are implicit: arc
// i * m + j joins supply node i to demand node n + j. Only tree arcs carry flow,
// so flows are stored per tree node on the arc to its parent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "equistate/error.hpp"

namespace equistate {

template <typename Flow>
class TransportSimplex {
 public:
  using Cost = std::int64_t;

  struct BasicArc {
    int i;
    int j;
    Flow flow;
  };

  /// costs is row-major n x m; supplies a (size n) and demands b (size m) are
  /// positive with equal sums.
  TransportSimplex(int n, int m, const Cost* costs, std::vector<Flow> a, std::vector<Flow> b)
      : n_(n), m_(m), cost_(costs) {
    node_num_ = n + m;
    arc_num_ = static_cast<std::int64_t>(n) * m;
    root_ = node_num_;
    supply_.resize(static_cast<std::size_t>(node_num_ + 1));
    for (int i = 0; i < n; ++i) supply_[i] = a[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) supply_[n + j] = -b[static_cast<std::size_t>(j)];
    Cost maxc = 0;
    for (std::int64_t e = 0; e < arc_num_; ++e) maxc = std::max(maxc, costs[e]);
    art_cost_ = (maxc + 1) * (node_num_ + 1);
    block_size_ = std::max<std::int64_t>(static_cast<std::int64_t>(std::sqrt(static_cast<double>(arc_num_))), 10);
  }

  /// Runs to optimality. Throws InvalidArgument when the problem is infeasible.
  void run() {
    init();
    while (find_entering_arc()) {
      find_join_node();
      find_leaving_arc();
      change_flow();
      update_tree_structure();
      update_potential();
    }
    for (int u = 0; u < node_num_; ++u)
      if (pred_[u] >= arc_num_ && tflow_[u] != 0)
        throw Error(ErrorKind::InvalidArgument, "transport problem is infeasible");
  }

  /// Tree arcs between real nodes with their flows (possibly zero for degenerate arcs).
  std::vector<BasicArc> basis() const {
    std::vector<BasicArc> out;
    for (int u = 0; u < node_num_; ++u) {
      std::int64_t e = pred_[u];
      if (e < arc_num_) out.push_back({static_cast<int>(e / m_), static_cast<int>(e % m_), tflow_[u]});
    }
    std::sort(out.begin(), out.end(), [](const BasicArc& x, const BasicArc& y) {
      return x.i != y.i ? x.i < y.i : x.j < y.j;
    });
    return out;
  }

  /// Dual values alpha_i + beta_j <= c_ij, tight on the basis.
  Cost alpha(int i) const { return -(pi_[i] - pi_[root_ref()]); }
  Cost beta(int j) const { return pi_[n_ + j] - pi_[root_ref()]; }
  std::int64_t pivots() const { return pivots_; }

 private:
  static constexpr signed char kTree = 0;
  static constexpr signed char kLower = 1;
  static constexpr int kUp = 1;
  static constexpr int kDown = -1;

  int root_ref() const { return root_; }

  int source(std::int64_t e) const {
    if (e < arc_num_) return static_cast<int>(e / m_);
    return art_source_[static_cast<std::size_t>(e - arc_num_)];
  }
  int target(std::int64_t e) const {
    if (e < arc_num_) return n_ + static_cast<int>(e % m_);
    return art_target_[static_cast<std::size_t>(e - arc_num_)];
  }
  Cost cost(std::int64_t e) const {
    if (e < arc_num_) return cost_[e];
    return art_arc_cost_[static_cast<std::size_t>(e - arc_num_)];
  }

  void init() {
    auto N = static_cast<std::size_t>(node_num_ + 1);
    parent_.assign(N, -1);
    pred_.assign(N, -1);
    thread_.assign(N, 0);
    rev_thread_.assign(N, 0);
    succ_num_.assign(N, 0);
    last_succ_.assign(N, 0);
    pred_dir_.assign(N, 0);
    pi_.assign(N, 0);
    tflow_.assign(N, Flow(0));
    state_.assign(static_cast<std::size_t>(arc_num_), kLower);
    art_source_.assign(static_cast<std::size_t>(node_num_), 0);
    art_target_.assign(static_cast<std::size_t>(node_num_), 0);
    art_arc_cost_.assign(static_cast<std::size_t>(node_num_), 0);

    thread_[root_] = 0;
    rev_thread_[0] = root_;
    succ_num_[root_] = node_num_ + 1;
    last_succ_[root_] = root_ - 1;
    pi_[root_] = 0;
    for (int u = 0; u < node_num_; ++u) {
      std::int64_t e = arc_num_ + u;
      auto k = static_cast<std::size_t>(u);
      parent_[u] = root_;
      pred_[u] = e;
      thread_[u] = u + 1;
      rev_thread_[u + 1] = u;
      succ_num_[u] = 1;
      last_succ_[u] = u;
      if (supply_[u] >= 0) {
        pred_dir_[u] = kUp;
        pi_[u] = 0;
        art_source_[k] = u;
        art_target_[k] = root_;
        tflow_[u] = supply_[u];
        art_arc_cost_[k] = 0;
      } else {
        pred_dir_[u] = kDown;
        pi_[u] = art_cost_;
        art_source_[k] = root_;
        art_target_[k] = u;
        tflow_[u] = -supply_[u];
        art_arc_cost_[k] = art_cost_;
      }
    }
    next_arc_ = 0;
    pivots_ = 0;
  }

  // Block search: scan blocks of arcs cyclically, stop at the end of the first
  // block that contains an arc with negative reduced cost and take the most
  // negative one seen.
  bool find_entering_arc() {
    Cost min = 0;
    std::int64_t cnt = block_size_;
    std::int64_t e;
    for (e = next_arc_; e != arc_num_; ++e) {
      if (state_[e] == kLower) {
        Cost c = cost_[e] + pi_[e / m_] - pi_[n_ + e % m_];
        if (c < min) {
          min = c;
          in_arc_ = e;
        }
      }
      if (--cnt == 0) {
        if (min < 0) goto search_end;
        cnt = block_size_;
      }
    }
    for (e = 0; e != next_arc_; ++e) {
      if (state_[e] == kLower) {
        Cost c = cost_[e] + pi_[e / m_] - pi_[n_ + e % m_];
        if (c < min) {
          min = c;
          in_arc_ = e;
        }
      }
      if (--cnt == 0) {
        if (min < 0) goto search_end;
        cnt = block_size_;
      }
    }
    if (min >= 0) return false;
  search_end:
    next_arc_ = e;
    ++pivots_;
    return true;
  }

  void find_join_node() {
    int u = source(in_arc_);
    int v = target(in_arc_);
    while (u != v) {
      if (succ_num_[u] < succ_num_[v]) u = parent_[u];
      else v = parent_[v];
    }
    join_ = u;
  }

  // Uncapacitated: only arcs pointing against the cycle direction can block.
  // Ties on the second side are taken last, which keeps the tree strongly feasible.
  void find_leaving_arc() {
    first_ = source(in_arc_);
    second_ = target(in_arc_);
    bool have = false;
    int result = 0;
    for (int u = first_; u != join_; u = parent_[u]) {
      if (pred_dir_[u] != kUp) continue;
      const Flow& d = tflow_[u];
      if (!have || d < delta_) {
        delta_ = d;
        u_out_ = u;
        result = 1;
        have = true;
      }
    }
    for (int u = second_; u != join_; u = parent_[u]) {
      if (pred_dir_[u] != kDown) continue;
      const Flow& d = tflow_[u];
      if (!have || d <= delta_) {
        delta_ = d;
        u_out_ = u;
        result = 2;
        have = true;
      }
    }
    if (!have) throw Error(ErrorKind::InvalidArgument, "unbounded transport problem");
    if (result == 1) {
      u_in_ = first_;
      v_in_ = second_;
    } else {
      u_in_ = second_;
      v_in_ = first_;
    }
  }

  void change_flow() {
    if (delta_ > 0) {
      for (int u = source(in_arc_); u != join_; u = parent_[u]) {
        if (pred_dir_[u] == kUp) tflow_[u] -= delta_;
        else tflow_[u] += delta_;
      }
      for (int u = target(in_arc_); u != join_; u = parent_[u]) {
        if (pred_dir_[u] == kUp) tflow_[u] += delta_;
        else tflow_[u] -= delta_;
      }
    }
    in_flow_ = delta_;
    state_[in_arc_] = kTree;
    if (pred_[u_out_] < arc_num_) state_[pred_[u_out_]] = kLower;
  }

  void update_tree_structure() {
    int old_rev_thread = rev_thread_[u_out_];
    int old_succ_num = succ_num_[u_out_];
    int old_last_succ = last_succ_[u_out_];
    v_out_ = parent_[u_out_];

    if (u_in_ == u_out_) {
      parent_[u_in_] = v_in_;
      pred_[u_in_] = in_arc_;
      pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kUp : kDown;
      tflow_[u_in_] = in_flow_;
      if (thread_[v_in_] != u_out_) {
        int after = thread_[old_last_succ];
        thread_[old_rev_thread] = after;
        rev_thread_[after] = old_rev_thread;
        after = thread_[v_in_];
        thread_[v_in_] = u_out_;
        rev_thread_[u_out_] = v_in_;
        thread_[old_last_succ] = after;
        rev_thread_[after] = old_last_succ;
      }
    } else {
      int thread_continue = old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];
      int stem = u_in_;
      int par_stem = v_in_;
      int next_stem;
      int last = last_succ_[u_in_];
      int before, after = thread_[last];
      thread_[v_in_] = u_in_;
      dirty_revs_.clear();
      dirty_revs_.push_back(v_in_);
      while (stem != u_out_) {
        next_stem = parent_[stem];
        thread_[last] = next_stem;
        dirty_revs_.push_back(last);
        before = rev_thread_[stem];
        thread_[before] = after;
        rev_thread_[after] = before;
        parent_[stem] = par_stem;
        par_stem = stem;
        stem = next_stem;
        last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem] : last_succ_[stem];
        after = thread_[last];
      }
      parent_[u_out_] = par_stem;
      thread_[last] = thread_continue;
      rev_thread_[thread_continue] = last;
      last_succ_[u_out_] = last;
      if (old_rev_thread != v_in_) {
        thread_[old_rev_thread] = after;
        rev_thread_[after] = old_rev_thread;
      }
      for (int u : dirty_revs_) rev_thread_[thread_[u]] = u;

      int tmp_sc = 0, tmp_ls = last_succ_[u_out_];
      for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
        pred_[u] = pred_[p];
        pred_dir_[u] = -pred_dir_[p];
        tflow_[u] = tflow_[p];
        tmp_sc += succ_num_[u] - succ_num_[p];
        succ_num_[u] = tmp_sc;
        last_succ_[p] = tmp_ls;
      }
      pred_[u_in_] = in_arc_;
      pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kUp : kDown;
      tflow_[u_in_] = in_flow_;
      succ_num_[u_in_] = old_succ_num;
    }

    int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
    int last_succ_out = last_succ_[u_out_];
    for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) last_succ_[u] = last_succ_out;

    if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
      for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u])
        last_succ_[u] = old_rev_thread;
    } else if (last_succ_out != old_last_succ) {
      for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u])
        last_succ_[u] = last_succ_out;
    }

    for (int u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
    for (int u = v_out_; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
  }

  void update_potential() {
    Cost sigma = pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * cost(in_arc_);
    int end = thread_[last_succ_[u_in_]];
    for (int u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
  }

  int n_, m_;
  const Cost* cost_;
  int node_num_;
  std::int64_t arc_num_;
  int root_;
  Cost art_cost_;
  std::int64_t block_size_;

  std::vector<Flow> supply_;
  std::vector<int> parent_;
  std::vector<std::int64_t> pred_;
  std::vector<int> thread_, rev_thread_, succ_num_, last_succ_, dirty_revs_;
  std::vector<int> pred_dir_;
  std::vector<Cost> pi_;
  std::vector<Flow> tflow_;
  std::vector<signed char> state_;
  std::vector<int> art_source_, art_target_;
  std::vector<Cost> art_arc_cost_;

  std::int64_t in_arc_ = 0, next_arc_ = 0, pivots_ = 0;
  int join_ = 0, u_in_ = 0, v_in_ = 0, u_out_ = 0, v_out_ = 0, first_ = 0, second_ = 0;
  Flow delta_{0}, in_flow_{0};
};

}  // namespace equistate
