#include "classify/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace wristleak {

namespace {

constexpr double kMinGain = 1e-12;

double gini(const std::vector<int64_t>& counts, int64_t total) {
  if (total == 0) return 0.0;
  double acc = 0.0;
  for (int64_t c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(total);
    acc += p * p;
  }
  return 1.0 - acc;
}

struct Segment {
  size_t begin;
  size_t end;
  int parent;      // node index whose child pointer to fill, -1 for root
  bool is_left;
};

}  // namespace

int DecisionTree::predict(const std::vector<double>& x) const {
  if (nodes_.empty()) throw InconsistencyError("decision tree: not fitted");
  int i = 0;
  while (nodes_[static_cast<size_t>(i)].feature >= 0) {
    const TreeNode& n = nodes_[static_cast<size_t>(i)];
    i = x[static_cast<size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes_[static_cast<size_t>(i)].leaf_class;
}

DecisionTree train_tree(const TrainView& data, int mtry, bool bootstrap, uint64_t seed) {
  const size_t n = data.rows.size();
  const size_t d = data.rows.front().size();
  Rng rng(seed);

  std::vector<int> sample_ids(n);
  if (bootstrap) {
    for (auto& id : sample_ids) id = static_cast<int>(rng.below(n));
  } else {
    std::iota(sample_ids.begin(), sample_ids.end(), 0);
  }

  // One presorted index array per feature over the (possibly repeated)
  // bootstrap sample; stable partitioning below keeps each one sorted.
  std::vector<std::vector<int>> sorted(d);
  for (size_t f = 0; f < d; ++f) {
    sorted[f] = sample_ids;
    std::stable_sort(sorted[f].begin(), sorted[f].end(), [&](int a, int b) {
      return data.rows[static_cast<size_t>(a)][f] < data.rows[static_cast<size_t>(b)][f];
    });
  }

  const size_t k = mtry <= 0 || static_cast<size_t>(mtry) >= d ? d : static_cast<size_t>(mtry);
  std::vector<size_t> feature_pool(d);
  std::iota(feature_pool.begin(), feature_pool.end(), 0);

  DecisionTree tree;
  std::vector<int> scratch_left, scratch_right;
  std::vector<Segment> stack{{0, n, -1, false}};
  std::vector<int64_t> counts(static_cast<size_t>(data.class_count));
  std::vector<int64_t> left_counts(static_cast<size_t>(data.class_count));

  while (!stack.empty()) {
    const Segment seg = stack.back();
    stack.pop_back();
    const size_t m = seg.end - seg.begin;

    std::fill(counts.begin(), counts.end(), 0);
    for (size_t i = seg.begin; i < seg.end; ++i) {
      ++counts[static_cast<size_t>(data.labels[static_cast<size_t>(sorted[0][i])])];
    }
    const auto total = static_cast<int64_t>(m);
    const double parent_gini = gini(counts, total);

    int majority = 0;
    for (int c = 1; c < data.class_count; ++c) {
      if (counts[static_cast<size_t>(c)] > counts[static_cast<size_t>(majority)]) majority = c;
    }
    const bool pure = counts[static_cast<size_t>(majority)] == total;

    double best_gain = kMinGain;
    size_t best_feature = 0;
    double best_threshold = 0.0;
    size_t best_left_size = 0;

    if (!pure && m >= 2) {
      // Sample the candidate features for this node, then evaluate them in
      // ascending order so tie-breaks do not depend on the draw order.
      std::vector<size_t> candidates;
      if (k == d) {
        candidates = feature_pool;
      } else {
        std::vector<size_t> pool = feature_pool;
        for (size_t i = 0; i < k; ++i) {
          std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        }
        candidates.assign(pool.begin(), pool.begin() + static_cast<ptrdiff_t>(k));
        std::sort(candidates.begin(), candidates.end());
      }

      for (size_t f : candidates) {
        const auto& idx = sorted[f];
        std::fill(left_counts.begin(), left_counts.end(), 0);
        int64_t left_total = 0;
        for (size_t i = seg.begin; i + 1 < seg.end; ++i) {
          const int id = idx[i];
          ++left_counts[static_cast<size_t>(data.labels[static_cast<size_t>(id)])];
          ++left_total;
          const double v = data.rows[static_cast<size_t>(id)][f];
          const double v_next = data.rows[static_cast<size_t>(idx[i + 1])][f];
          if (v_next <= v) continue;  // split only between distinct values
          double right_gini_acc = 0.0;
          {
            const int64_t right_total = total - left_total;
            double acc_l = 0.0, acc_r = 0.0;
            for (int c = 0; c < data.class_count; ++c) {
              const double lc = static_cast<double>(left_counts[static_cast<size_t>(c)]);
              const double rc = static_cast<double>(counts[static_cast<size_t>(c)]) - lc;
              acc_l += lc * lc;
              acc_r += rc * rc;
            }
            const double gl = 1.0 - acc_l / (static_cast<double>(left_total) *
                                             static_cast<double>(left_total));
            const double gr = 1.0 - acc_r / (static_cast<double>(right_total) *
                                             static_cast<double>(right_total));
            right_gini_acc = (static_cast<double>(left_total) * gl +
                              static_cast<double>(right_total) * gr) /
                             static_cast<double>(total);
          }
          const double gain = parent_gini - right_gini_acc;
          if (gain > best_gain) {
            best_gain = gain;
            best_feature = f;
            best_threshold = 0.5 * (v + v_next);
            best_left_size = static_cast<size_t>(left_total);
          }
        }
      }
    }

    int node_index = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    if (seg.parent >= 0) {
      auto& parent = tree.nodes_[static_cast<size_t>(seg.parent)];
      (seg.is_left ? parent.left : parent.right) = node_index;
    }

    if (best_gain <= kMinGain) {
      tree.nodes_.back().leaf_class = majority;
      continue;
    }

    TreeNode& node = tree.nodes_.back();
    node.feature = static_cast<int>(best_feature);
    node.threshold = best_threshold;

    // Stable partition of every feature's segment by the chosen predicate.
    for (size_t f = 0; f < d; ++f) {
      auto& idx = sorted[f];
      scratch_left.clear();
      scratch_right.clear();
      for (size_t i = seg.begin; i < seg.end; ++i) {
        const int id = idx[i];
        if (data.rows[static_cast<size_t>(id)][best_feature] <= best_threshold) {
          scratch_left.push_back(id);
        } else {
          scratch_right.push_back(id);
        }
      }
      std::copy(scratch_left.begin(), scratch_left.end(),
                idx.begin() + static_cast<ptrdiff_t>(seg.begin));
      std::copy(scratch_right.begin(), scratch_right.end(),
                idx.begin() + static_cast<ptrdiff_t>(seg.begin + scratch_left.size()));
    }

    const size_t mid = seg.begin + best_left_size;
    stack.push_back({mid, seg.end, node_index, false});
    stack.push_back({seg.begin, mid, node_index, true});
  }
  return tree;
}

}  // namespace wristleak
