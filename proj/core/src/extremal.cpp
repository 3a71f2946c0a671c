#include "ufg/extremal.hpp"

#include <algorithm>

#include "ufg/errors.hpp"

namespace ufg {
namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  BitMatrix ones;   // reflexive and transitively closed
  BitMatrix zeros;  // pairs fixed absent
};

// Pairs that must be absent given `ones` and `zeros`: the reverse of every
// present pair, and (x,y) whenever a <= x and y <= c for some absent (a,c).
BitMatrix close_zeros(const BitMatrix& ones, const BitMatrix& zeros, int m) {
  BitMatrix out = zeros | (ones.transposed(m) - BitMatrix::diagonal(m));
  const BitMatrix below = ones.transposed(m);  // row c: items y with y <= c
  for (int a = 0; a < m; ++a) {
    const BitMatrix::Row zr = zeros.row(a);
    if (zr == 0) continue;
    BitMatrix::Row ys = 0;
    for (int c = 0; c < m; ++c) {
      if (zr & BitMatrix::column_bit(c)) ys |= below.row(c);
    }
    const BitMatrix::Row up = ones.row(a);
    for (int x = 0; x < m; ++x) {
      if (up & BitMatrix::column_bit(x)) {
        out.set_row(x, static_cast<BitMatrix::Row>(out.row(x) | ys));
      }
    }
  }
  return out;
}

template <typename W>
class BranchAndBound {
 public:
  BranchAndBound(const UfgFamily& family, std::vector<W> weights,
                 const ExtremalOptions& options)
      : family_(family),
        weights_(std::move(weights)),
        options_(options),
        m_(family.item_count),
        maximize_(options.direction == Direction::kMax) {
    order_edges();
    if (options.timeout) deadline_ = Clock::now() + *options.timeout;
  }

  struct Found {
    Poset poset;
    W value;
  };

  void run() {
    Node root{BitMatrix::diagonal(m_), BitMatrix{}};
    root.zeros = close_zeros(root.ones, root.zeros, m_);
    descend(root);
  }

  const std::vector<Found>& pool() const { return pool_; }
  bool timed_out() const { return timed_out_; }
  const std::optional<W>& open_bound() const { return open_bound_; }
  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t violations() const { return violations_; }

 private:
  void order_edges() {
    std::vector<std::pair<W, Edge>> scored;
    for (int a = 0; a < m_; ++a) {
      for (int b = 0; b < m_; ++b) {
        if (a == b) continue;
        W touch{0};
        for (std::size_t i = 0; i < family_.sets.size(); ++i) {
          if (family_.sets[i].union_pairs.test(a, b)) touch += weights_[i];
        }
        scored.emplace_back(touch, Edge{a, b});
      }
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (const auto& [w, e] : scored) edges_.push_back(e);
  }

  // Best objective any completion of the node can reach.
  W bound(const Node& n) const {
    W sum{0};
    const BitMatrix allowed = BitMatrix::full(m_) - n.zeros;
    for (std::size_t i = 0; i < family_.sets.size(); ++i) {
      const UfgSet& s = family_.sets[i];
      if (maximize_) {
        if (!s.intersection.intersects(n.zeros) && n.ones.is_subset_of(s.union_pairs)) {
          sum += weights_[i];
        }
      } else if (s.intersection.is_subset_of(n.ones) &&
                 allowed.is_subset_of(s.union_pairs)) {
        sum += weights_[i];
      }
    }
    return sum;
  }

  W value(const BitMatrix& q) const {
    W sum{0};
    for (std::size_t i = 0; i < family_.sets.size(); ++i) {
      const UfgSet& s = family_.sets[i];
      if (s.intersection.is_subset_of(q) && q.is_subset_of(s.union_pairs)) {
        sum += weights_[i];
      }
    }
    return sum;
  }

  bool better(const W& a, const W& b) const { return maximize_ ? a > b : a < b; }

  bool pool_full() const {
    return pool_.size() >= static_cast<std::size_t>(options_.k);
  }

  // A subtree whose bound cannot beat the current k-th value is skipped.
  bool prunable(const W& b) const {
    if (options_.audit_bounds || !pool_full()) return false;
    return !better(b, pool_.back().value);
  }

  void offer(const Poset& p, const W& v) {
    for (const Found& f : pool_) {
      if (f.poset == p) return;
    }
    if (pool_full() && !better(v, pool_.back().value)) return;
    pool_.push_back({p, v});
    std::stable_sort(pool_.begin(), pool_.end(), [&](const Found& x, const Found& y) {
      if (x.value != y.value) return better(x.value, y.value);
      return x.poset < y.poset;
    });
    if (pool_.size() > static_cast<std::size_t>(options_.k)) pool_.pop_back();
  }

  void note_open(const W& b) {
    if (!open_bound_ || better(b, *open_bound_)) open_bound_ = b;
  }

  bool out_of_time() {
    if (timed_out_) return true;
    if (deadline_ && (nodes_ & 255) == 0 && Clock::now() > *deadline_) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  // Returns the best value found in the subtree (audit mode relies on it
  // being exhaustive there).
  std::optional<W> descend(const Node& n) {
    ++nodes_;
    const W b = bound(n);
    if (out_of_time()) {
      note_open(b);
      return std::nullopt;
    }
    // Setting every undecided pair absent always yields a poset.
    const Poset completion = Poset::assume_valid(m_, n.ones);
    const W here = value(n.ones);
    offer(completion, here);
    std::optional<W> best = here;

    const Edge* next = nullptr;
    for (const Edge& e : edges_) {
      if (!n.ones.test(e.from, e.to) && !n.zeros.test(e.from, e.to)) {
        next = &e;
        break;
      }
    }
    if (next == nullptr || prunable(b)) {
      if (options_.audit_bounds && better(here, b)) ++violations_;
      return best;
    }

    std::vector<std::pair<W, Node>> children;
    {
      Node one = n;
      bits::add_pair_closed(one.ones, m_, next->from, next->to);
      one.zeros = close_zeros(one.ones, n.zeros, m_);
      if (!one.ones.intersects(one.zeros)) children.emplace_back(bound(one), one);
      Node zero = n;
      zero.zeros.set(next->from, next->to);
      zero.zeros = close_zeros(zero.ones, zero.zeros, m_);
      children.emplace_back(bound(zero), zero);
    }
    // The zero child shares this node's completion; exploring the more
    // promising child first tightens the pool sooner.
    std::stable_sort(children.begin(), children.end(), [&](const auto& x, const auto& y) {
      return better(x.first, y.first);
    });
    for (auto& [cb, child] : children) {
      if (timed_out_) {
        note_open(cb);
        continue;
      }
      if (prunable(cb)) continue;
      if (auto v = descend(child); v && better(*v, *best)) best = v;
    }
    if (options_.audit_bounds && !timed_out_ && better(*best, b)) ++violations_;
    return best;
  }

  const UfgFamily& family_;
  std::vector<W> weights_;
  ExtremalOptions options_;
  int m_;
  bool maximize_;
  std::vector<Edge> edges_;
  std::vector<Found> pool_;
  std::optional<Clock::time_point> deadline_;
  bool timed_out_ = false;
  std::optional<W> open_bound_;
  std::uint64_t nodes_ = 0;
  std::uint64_t violations_ = 0;
};

BigInt widen(const BigInt& v) { return v; }
BigInt widen(detail::uint128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

template <typename W>
ExtremalSolution run_search(const UfgFamily& family, const DepthEvaluator& eval,
                            std::vector<W> weights, const ExtremalOptions& options) {
  BranchAndBound<W> search(family, std::move(weights), options);
  search.run();
  ExtremalSolution sol;
  sol.direction = options.direction;
  sol.timed_out = search.timed_out();
  sol.nodes = search.nodes();
  sol.bound_violations = search.violations();
  const BigInt& total = eval.scaled_total();
  const auto as_depth = [&](const W& v) {
    return total == 0 ? Rational(0) : Rational(widen(v), total);
  };
  for (const auto& f : search.pool()) {
    sol.ranked.push_back({f.poset, as_depth(f.value), eval.supporting_sets(f.poset)});
  }
  if (sol.timed_out) {
    const Rational kth = sol.ranked.empty() ? Rational(0) : sol.ranked.back().depth;
    const bool full = sol.ranked.size() >= static_cast<std::size_t>(options.k);
    if (search.open_bound()) {
      const Rational open = as_depth(*search.open_bound());
      Rational gap = options.direction == Direction::kMax ? open - kth : kth - open;
      if (!full) gap = options.direction == Direction::kMax ? open : kth;
      sol.gap = gap > 0 ? gap : Rational(0);
    } else {
      sol.gap = Rational(0);
    }
  }
  return sol;
}

}  // namespace

ExtremalSolution solve_extremal(const UfgFamily& family,
                                const ExtremalOptions& options) {
  if (options.k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (family.item_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "family has no universe");
  }
  const DepthEvaluator eval(family);
  if (!eval.scaled_weights_fast().empty() || family.sets.empty()) {
    return run_search(family, eval, eval.scaled_weights_fast(), options);
  }
  std::vector<BigInt> weights;
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    weights.push_back(eval.scaled_weight(i));
  }
  return run_search(family, eval, std::move(weights), options);
}

bool verify_solution(const ExtremalSolution& solution, const UfgFamily& family,
                     EnumerationLimit limit) {
  if (solution.ranked.empty()) return false;
  const DepthEvaluator eval(family);
  const bool maximize = solution.direction == Direction::kMax;
  for (std::size_t i = 0; i < solution.ranked.size(); ++i) {
    const RankedPoset& r = solution.ranked[i];
    if (r.poset.size() != family.item_count) return false;
    if (eval.depth(r.poset) != r.depth) return false;
    if (eval.supporting_sets(r.poset) != r.proof) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (solution.ranked[j].poset == r.poset) return false;
    }
    if (i > 0) {
      const Rational& prev = solution.ranked[i - 1].depth;
      if (maximize ? r.depth > prev : r.depth < prev) return false;
    }
  }
  if (solution.timed_out || family.item_count > limit.max_items) return true;
  const DepthMap all = depth_map(family, DepthScope::kAllPosets, {}, limit);
  std::vector<Rational> values;
  for (const DepthEntry& e : all.entries) values.push_back(e.depth);
  if (!maximize) std::reverse(values.begin(), values.end());
  const std::size_t expect = std::min(values.size(), solution.ranked.size());
  if (solution.ranked.size() != expect) return false;
  for (std::size_t i = 0; i < expect; ++i) {
    if (solution.ranked[i].depth != values[i]) return false;
  }
  return true;
}

std::string format_lp(const UfgFamily& family, Direction direction) {
  const int m = family.item_count;
  const DepthEvaluator eval(family);
  const auto var = [](int a, int b) {
    return "e_" + std::to_string(a) + "_" + std::to_string(b);
  };
  std::string out;
  out += "\\ union-free generic depth 0-1 program\n";
  out += "\\ items: " + std::to_string(m) + ", sets: " +
         std::to_string(family.sets.size()) + "\n";
  out += "\\ objective / " + eval.scaled_total().str() + " = depth\n";
  out += direction == Direction::kMax ? "Maximize\n" : "Minimize\n";
  out += " obj:";
  if (family.sets.empty()) out += " 0 " + var(0, m > 1 ? 1 : 0);
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    out += (i == 0 ? " " : " + ") + eval.scaled_weight(i).str() + " s" +
           std::to_string(i);
  }
  out += "\nSubject To\n";
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      out += " anti_" + std::to_string(a) + "_" + std::to_string(b) + ": " +
             var(a, b) + " + " + var(b, a) + " <= 1\n";
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) {
        if (a == b || b == c || a == c) continue;
        out += " trans_" + std::to_string(a) + "_" + std::to_string(b) + "_" +
               std::to_string(c) + ": " + var(a, b) + " + " + var(b, c) +
               " - " + var(a, c) + " <= 1\n";
      }
    }
  }
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    const UfgSet& s = family.sets[i];
    const std::string si = "s" + std::to_string(i);
    std::string reverse = " cover_" + std::to_string(i) + ": " + si;
    int inter_count = 0;
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        const std::string tag = std::to_string(i) + "_" + std::to_string(a) + "_" +
                                std::to_string(b);
        if (s.intersection.test(a, b)) {
          out += " inter_" + tag + ": " + si + " - " + var(a, b) + " <= 0\n";
          reverse += " - " + var(a, b);
          ++inter_count;
        } else if (!s.union_pairs.test(a, b)) {
          out += " union_" + tag + ": " + si + " + " + var(a, b) + " <= 1\n";
          reverse += " + " + var(a, b);
        }
      }
    }
    if (direction == Direction::kMin) {
      out += reverse + " >= " + std::to_string(1 - inter_count) + "\n";
    }
  }
  out += "Binaries\n";
  for (std::size_t i = 0; i < family.sets.size(); ++i) {
    out += " s" + std::to_string(i) + "\n";
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b) out += " " + var(a, b) + "\n";
    }
  }
  out += "End\n";
  return out;
}

}  // namespace ufg
