#include "classify/evaluate.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "core/rng.hpp"

namespace wristleak {

namespace {

constexpr const char* kDefaultSubject = "all";

std::string subject_of(const FeatureVector& v) {
  return v.subject ? *v.subject : std::string(kDefaultSubject);
}

// Stratified split of the given indices: per class, a seeded shuffle and a
// train_fraction cut that always leaves at least one vector on each side.
void stratified_split(const std::vector<FeatureVector>& data, const std::vector<size_t>& indices,
                      double fraction, Rng& rng, std::vector<size_t>* train,
                      std::vector<size_t>* test) {
  std::map<std::string, std::vector<size_t>> by_class;
  for (size_t i : indices) by_class[data[i].label.value_or("")].push_back(i);
  for (auto& [_, idx] : by_class) {
    rng.shuffle(idx);
    const auto m = static_cast<double>(idx.size());
    auto cut = static_cast<size_t>(fraction * m);
    cut = std::clamp<size_t>(cut, 1, idx.size() - 1);
    train->insert(train->end(), idx.begin(), idx.begin() + static_cast<ptrdiff_t>(cut));
    test->insert(test->end(), idx.begin() + static_cast<ptrdiff_t>(cut), idx.end());
  }
}

struct Accumulator {
  std::vector<std::string> classes;
  std::map<std::string, size_t> class_index;
  std::vector<std::vector<int64_t>> confusion;

  explicit Accumulator(const std::set<std::string>& class_set) {
    classes.assign(class_set.begin(), class_set.end());
    for (size_t i = 0; i < classes.size(); ++i) class_index[classes[i]] = i;
    confusion.assign(classes.size(), std::vector<int64_t>(classes.size(), 0));
  }

  void add(const std::string& truth, const std::string& predicted) {
    ++confusion[class_index.at(truth)][class_index.at(predicted)];
  }
};

void run_round(const std::vector<FeatureVector>& data, const std::vector<size_t>& train_idx,
               const std::vector<size_t>& test_idx, const TrainConfig& config,
               Accumulator* acc) {
  {
    std::set<size_t> train_set(train_idx.begin(), train_idx.end());
    for (size_t i : test_idx) {
      if (train_set.count(i)) throw InconsistencyError("evaluate: train/test sets overlap");
    }
  }
  std::vector<FeatureVector> train;
  train.reserve(train_idx.size());
  for (size_t i : train_idx) train.push_back(data[i]);
  const TrainedModel model = TrainedModel::fit(train, config);
  for (size_t i : test_idx) {
    acc->add(*data[i].label, model.predict(data[i]).label);
  }
}

}  // namespace

const char* protocol_name(Protocol p) {
  switch (p) {
    case Protocol::OneVsOne: return "one-vs-one";
    case Protocol::OneVsRest: return "one-vs-rest";
    case Protocol::AllVsAll: return "all-vs-all";
  }
  throw ValidationError("invalid protocol value");
}

Protocol protocol_from_name(const std::string& name) {
  if (name == "one-vs-one") return Protocol::OneVsOne;
  if (name == "one-vs-rest") return Protocol::OneVsRest;
  if (name == "all-vs-all") return Protocol::AllVsAll;
  throw ValidationError("unknown protocol '" + name +
                        "' (expected one-vs-one, one-vs-rest or all-vs-all)");
}

EvalReport evaluate(const std::vector<FeatureVector>& data, Protocol protocol,
                    const SplitConfig& split, const TrainConfig& train_config) {
  if (data.empty()) throw ValidationError("evaluate: empty dataset");
  std::set<std::string> class_set;
  std::map<std::string, std::vector<size_t>> by_subject;
  for (size_t i = 0; i < data.size(); ++i) {
    if (!data[i].label) throw ValidationError("evaluate: unlabeled vector");
    class_set.insert(*data[i].label);
    by_subject[subject_of(data[i])].push_back(i);
  }
  if (split.target_subject && !by_subject.count(*split.target_subject)) {
    throw ValidationError("evaluate: unknown subject '" + *split.target_subject + "'");
  }

  Accumulator acc(class_set);
  Rng rng(split.seed);

  switch (protocol) {
    case Protocol::OneVsOne: {
      for (const auto& [subject, indices] : by_subject) {
        if (split.target_subject && subject != *split.target_subject) continue;
        std::vector<size_t> train, test;
        stratified_split(data, indices, split.train_fraction, rng, &train, &test);
        run_round(data, train, test, train_config, &acc);
      }
      break;
    }
    case Protocol::OneVsRest: {
      if (by_subject.size() < 2) {
        throw ValidationError("evaluate: one-vs-rest needs at least 2 subjects");
      }
      for (const auto& [subject, indices] : by_subject) {
        if (split.target_subject && subject != *split.target_subject) continue;
        std::vector<size_t> train;
        for (const auto& [other, other_idx] : by_subject) {
          if (other != subject) train.insert(train.end(), other_idx.begin(), other_idx.end());
        }
        run_round(data, train, indices, train_config, &acc);
      }
      break;
    }
    case Protocol::AllVsAll: {
      std::vector<size_t> all(data.size());
      for (size_t i = 0; i < data.size(); ++i) all[i] = i;
      std::vector<size_t> train, test;
      stratified_split(data, all, split.train_fraction, rng, &train, &test);
      run_round(data, train, test, train_config, &acc);
      break;
    }
  }

  EvalReport report;
  report.protocol = protocol;
  report.classes = acc.classes;
  report.confusion = acc.confusion;
  int64_t total = 0, correct = 0;
  for (size_t c = 0; c < acc.classes.size(); ++c) {
    int64_t row = 0;
    for (int64_t x : acc.confusion[c]) row += x;
    total += row;
    correct += acc.confusion[c][c];
    report.per_class_accuracy[acc.classes[c]] =
        row == 0 ? 0.0 : static_cast<double>(acc.confusion[c][c]) / static_cast<double>(row);
  }
  report.test_total = total;
  report.accuracy = total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["protocol"] = protocol_name(protocol);
  j["accuracy"] = accuracy;
  j["test_total"] = test_total;
  j["classes"] = classes;
  j["confusion"] = confusion;
  j["per_class_accuracy"] = per_class_accuracy;
  return j.dump(2) + "\n";
}

}  // namespace wristleak
