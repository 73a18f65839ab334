#include "classify/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

#include <json.hpp>

#include "core/file_util.hpp"
#include "core/rng.hpp"

namespace wristleak {

namespace {

using nlohmann::json;

// Tie-break priority, strongest standalone learner first.
constexpr std::array<size_t, 5> kPriority = {1 /*rf*/, 4 /*bdt*/, 3 /*svm*/, 2 /*knn*/,
                                             0 /*slr*/};

json weights_to_json(const std::vector<std::vector<double>>& w) {
  return json(w);
}

std::vector<std::vector<double>> weights_from_json(const json& j) {
  return j.get<std::vector<std::vector<double>>>();
}

json trees_to_json(const Forest& forest) {
  json trees = json::array();
  for (const auto& tree : forest.trees()) {
    json nodes = json::array();
    for (const auto& n : tree.nodes()) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.leaf_class});
    }
    trees.push_back(std::move(nodes));
  }
  return trees;
}

void trees_from_json(const json& j, Forest& forest, int class_count) {
  std::vector<DecisionTree> trees;
  for (const auto& tj : j) {
    std::vector<TreeNode> nodes;
    nodes.reserve(tj.size());
    for (const auto& nj : tj) {
      TreeNode n;
      n.feature = nj[0].get<int>();
      n.threshold = nj[1].get<double>();
      n.left = nj[2].get<int>();
      n.right = nj[3].get<int>();
      n.leaf_class = nj[4].get<int>();
      nodes.push_back(n);
    }
    DecisionTree tree;
    tree.restore(std::move(nodes));
    trees.push_back(std::move(tree));
  }
  forest.restore(std::move(trees), class_count);
}

}  // namespace

TrainConfig TrainConfig::from_json(const std::string& text) {
  TrainConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("train config is not valid JSON: ") + e.what());
  }
  if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
  if (j.contains("knn_k")) c.knn_k = j["knn_k"].get<int>();
  if (j.contains("rf_trees")) c.rf_trees = j["rf_trees"].get<int>();
  if (j.contains("bdt_trees")) c.bdt_trees = j["bdt_trees"].get<int>();
  if (j.contains("svm_epochs")) c.svm_epochs = j["svm_epochs"].get<int>();
  if (j.contains("svm_lambda")) c.svm_lambda = j["svm_lambda"].get<double>();
  if (j.contains("slr_lambda")) c.slr_lambda = j["slr_lambda"].get<double>();
  if (c.knn_k < 1 || c.rf_trees < 1 || c.bdt_trees < 1 || c.svm_epochs < 1) {
    throw ValidationError("train config: counts must be positive");
  }
  return c;
}

std::string TrainConfig::to_json() const {
  json j;
  j["seed"] = seed;
  j["knn_k"] = knn_k;
  j["rf_trees"] = rf_trees;
  j["bdt_trees"] = bdt_trees;
  j["svm_epochs"] = svm_epochs;
  j["svm_lambda"] = svm_lambda;
  j["slr_lambda"] = slr_lambda;
  return j.dump();
}

std::pair<std::string, bool> majority_vote(const std::array<std::string, 5>& member_votes) {
  std::map<std::string, int> counts;
  for (const auto& v : member_votes) ++counts[v];
  int max_count = 0;
  for (const auto& [_, c] : counts) max_count = std::max(max_count, c);
  std::set<std::string> tied;
  for (const auto& [label, c] : counts) {
    if (c == max_count) tied.insert(label);
  }
  if (tied.size() == 1) return {*tied.begin(), false};
  for (size_t member : kPriority) {
    if (tied.count(member_votes[member])) return {member_votes[member], true};
  }
  throw InconsistencyError("majority_vote: unreachable");
}

TrainedModel TrainedModel::fit(const std::vector<FeatureVector>& train,
                               const TrainConfig& config) {
  if (train.empty()) throw ValidationError("fit: empty training set");

  TrainedModel model;
  model.config_ = config;
  model.schema_id_ = train.front().schema_id;
  const size_t d = schema(model.schema_id_).dimension();

  std::set<std::string> class_set;
  for (const auto& v : train) {
    if (v.schema_id != model.schema_id_) throw ValidationError("fit: mixed feature schemas");
    if (v.values.size() != d) throw ValidationError("fit: dimension mismatch");
    if (!v.label) throw ValidationError("fit: unlabeled training vector");
    class_set.insert(*v.label);
  }
  if (class_set.size() < 2) throw ValidationError("fit: need at least 2 classes");
  model.classes_.assign(class_set.begin(), class_set.end());

  std::map<std::string, int> class_index;
  for (size_t c = 0; c < model.classes_.size(); ++c) {
    class_index[model.classes_[c]] = static_cast<int>(c);
  }
  std::map<int, size_t> per_class;
  std::vector<std::vector<double>> raw_rows;
  std::vector<int> labels;
  raw_rows.reserve(train.size());
  labels.reserve(train.size());
  for (const auto& v : train) {
    raw_rows.push_back(v.values);
    labels.push_back(class_index[*v.label]);
    ++per_class[labels.back()];
  }
  for (const auto& [c, count] : per_class) {
    if (count < 2) {
      throw ValidationError("fit: class '" + model.classes_[static_cast<size_t>(c)] +
                            "' has fewer than 2 examples");
    }
  }

  model.standardizer_ = Standardizer::fit(raw_rows);
  std::vector<std::vector<double>> rows;
  rows.reserve(raw_rows.size());
  for (const auto& r : raw_rows) rows.push_back(model.standardizer_.transform(r));

  const TrainView view{rows, labels, static_cast<int>(model.classes_.size())};
  Rng seeds(config.seed);
  const uint64_t rf_seed = seeds.next_u64();
  const uint64_t bdt_seed = seeds.next_u64();
  const uint64_t svm_seed = seeds.next_u64();

  // The forests parallelize internally; the cheap members ride alongside.
  auto svm_job = std::async(std::launch::async, [&] {
    model.svm_.fit(view, config.svm_lambda, config.svm_epochs, svm_seed);
  });
  auto slr_job = std::async(std::launch::async, [&] { model.slr_.fit(view, config.slr_lambda); });
  model.knn_.fit(view, config.knn_k);
  const int mtry = static_cast<int>(std::sqrt(static_cast<double>(d)));
  model.rf_.fit(view, config.rf_trees, std::max(1, mtry), rf_seed);
  model.bdt_.fit(view, config.bdt_trees, 0, bdt_seed);
  slr_job.get();
  svm_job.get();
  return model;
}

Prediction TrainedModel::predict(const FeatureVector& x) const {
  if (x.schema_id != schema_id_) {
    throw ValidationError("predict: vector schema " + x.schema_id + " does not match model " +
                          schema_id_);
  }
  const std::vector<double> z = standardizer_.transform(x.values);

  const std::array<int, 5> raw = {slr_.predict(z), rf_.predict(z), knn_.predict(z),
                                  svm_.predict(z), bdt_.predict(z)};
  std::array<std::string, 5> votes;
  for (size_t m = 0; m < raw.size(); ++m) votes[m] = classes_[static_cast<size_t>(raw[m])];

  Prediction p;
  const auto [label, tie_broken] = majority_vote(votes);
  p.label = label;
  p.tie_broken = tie_broken;
  for (size_t m = 0; m < votes.size(); ++m) p.votes[kMemberNames[m]] = votes[m];
  return p;
}

std::string TrainedModel::to_json() const {
  nlohmann::ordered_json j;
  j["format"] = "wristleak-model";
  j["version"] = 1;
  j["schema"] = schema_id_;
  j["classes"] = classes_;
  j["config"] = json::parse(config_.to_json());
  j["standardizer"]["mean"] = standardizer_.mean;
  j["standardizer"]["std"] = standardizer_.std_dev;
  j["members"]["slr"]["weights"] = weights_to_json(slr_.weights());
  j["members"]["svm"]["weights"] = weights_to_json(svm_.weights());
  j["members"]["knn"]["k"] = knn_.k();
  j["members"]["knn"]["points"] = knn_.points();
  j["members"]["knn"]["labels"] = knn_.labels();
  j["members"]["rf"]["trees"] = trees_to_json(rf_);
  j["members"]["bdt"]["trees"] = trees_to_json(bdt_);
  return j.dump();
}

TrainedModel TrainedModel::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!j.contains("format") || j["format"] != "wristleak-model" || j["version"] != 1) {
    throw ValidationError("not a wristleak model file (or unsupported version)");
  }
  TrainedModel m;
  m.schema_id_ = j["schema"].get<std::string>();
  m.classes_ = j["classes"].get<std::vector<std::string>>();
  m.config_ = TrainConfig::from_json(j["config"].dump());
  m.standardizer_.mean = j["standardizer"]["mean"].get<std::vector<double>>();
  m.standardizer_.std_dev = j["standardizer"]["std"].get<std::vector<double>>();
  const int class_count = static_cast<int>(m.classes_.size());
  m.slr_.set_weights(weights_from_json(j["members"]["slr"]["weights"]));
  m.svm_.set_weights(weights_from_json(j["members"]["svm"]["weights"]));
  m.knn_.restore(j["members"]["knn"]["k"].get<int>(),
                 j["members"]["knn"]["points"].get<std::vector<std::vector<double>>>(),
                 j["members"]["knn"]["labels"].get<std::vector<int>>(), class_count);
  trees_from_json(j["members"]["rf"]["trees"], m.rf_, class_count);
  trees_from_json(j["members"]["bdt"]["trees"], m.bdt_, class_count);
  return m;
}

void TrainedModel::save(const std::string& path) const {
  atomic_write_file(path, to_json());
}

TrainedModel TrainedModel::load(const std::string& path) {
  return from_json(read_file(path));
}

}  // namespace wristleak
