#include "classify/forest.hpp"

#include <atomic>
#include <future>
#include <thread>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace wristleak {

void Forest::fit(const TrainView& data, int tree_count, int mtry, uint64_t seed) {
  class_count_ = data.class_count;
  trees_.assign(static_cast<size_t>(tree_count), DecisionTree{});

  Rng root(seed);
  std::vector<uint64_t> tree_seeds;
  tree_seeds.reserve(static_cast<size_t>(tree_count));
  for (int t = 0; t < tree_count; ++t) tree_seeds.push_back(root.next_u64());

  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(),
                            static_cast<unsigned>(tree_count)));
  std::vector<std::future<void>> jobs;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&] {
      for (int t = next.fetch_add(1); t < tree_count; t = next.fetch_add(1)) {
        trees_[static_cast<size_t>(t)] =
            train_tree(data, mtry, /*bootstrap=*/true, tree_seeds[static_cast<size_t>(t)]);
      }
    }));
  }
  for (auto& j : jobs) j.get();
}

int Forest::predict(const std::vector<double>& x) const {
  if (trees_.empty()) throw InconsistencyError("forest: not fitted");
  std::vector<int> votes(static_cast<size_t>(class_count_), 0);
  for (const auto& tree : trees_) ++votes[static_cast<size_t>(tree.predict(x))];
  int best = 0;
  for (int c = 1; c < class_count_; ++c) {
    if (votes[static_cast<size_t>(c)] > votes[static_cast<size_t>(best)]) best = c;
  }
  return best;
}

void Forest::restore(std::vector<DecisionTree> trees, int class_count) {
  trees_ = std::move(trees);
  class_count_ = class_count;
}

}  // namespace wristleak
