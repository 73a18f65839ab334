#include "classify/linear.hpp"

#include <cmath>
#include <numeric>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace wristleak {

namespace {

// Solves A x = b for symmetric positive-definite A via in-place Cholesky.
std::vector<double> cholesky_solve(std::vector<double> a, std::vector<double> b, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      double sum = a[i * n + j];
      for (size_t k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
      if (i == j) {
        if (sum <= 0.0) throw InconsistencyError("cholesky: matrix not positive definite");
        a[i * n + j] = std::sqrt(sum);
      } else {
        a[i * n + j] = sum / a[j * n + j];
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    double sum = b[i];
    for (size_t k = 0; k < i; ++k) sum -= a[i * n + k] * b[k];
    b[i] = sum / a[i * n + i];
  }
  for (size_t i = n; i-- > 0;) {
    double sum = b[i];
    for (size_t k = i + 1; k < n; ++k) sum -= a[k * n + i] * b[k];
    b[i] = sum / a[i * n + i];
  }
  return b;
}

double score(const std::vector<double>& w, const std::vector<double>& x) {
  double s = w.back();  // bias
  for (size_t j = 0; j < x.size(); ++j) s += w[j] * x[j];
  return s;
}

int argmax_score(const std::vector<std::vector<double>>& weights, const std::vector<double>& x) {
  int best = 0;
  double best_score = score(weights[0], x);
  for (size_t c = 1; c < weights.size(); ++c) {
    const double s = score(weights[c], x);
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

void LeastSquaresScorer::fit(const TrainView& data, double ridge_lambda) {
  const size_t n = data.rows.size();
  const size_t d = data.rows.front().size();
  const size_t m = d + 1;

  // Gram matrix of [X | 1], shared across the per-class solves.
  std::vector<double> gram(m * m, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const auto& x = data.rows[i];
    for (size_t a = 0; a < d; ++a) {
      for (size_t b = a; b < d; ++b) gram[a * m + b] += x[a] * x[b];
      gram[a * m + d] += x[a];
    }
  }
  gram[d * m + d] = static_cast<double>(n);
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = 0; b < a; ++b) gram[a * m + b] = gram[b * m + a];
    gram[a * m + a] += ridge_lambda;
  }

  weights_.assign(static_cast<size_t>(data.class_count), {});
  for (int c = 0; c < data.class_count; ++c) {
    std::vector<double> rhs(m, 0.0);
    for (size_t i = 0; i < n; ++i) {
      const double y = data.labels[i] == c ? 1.0 : -1.0;
      const auto& x = data.rows[i];
      for (size_t a = 0; a < d; ++a) rhs[a] += y * x[a];
      rhs[d] += y;
    }
    weights_[static_cast<size_t>(c)] = cholesky_solve(gram, std::move(rhs), m);
  }
}

int LeastSquaresScorer::predict(const std::vector<double>& x) const {
  return argmax_score(weights_, x);
}

void LinearSvm::fit(const TrainView& data, double lambda, int epochs, uint64_t seed) {
  const size_t n = data.rows.size();
  const size_t d = data.rows.front().size();
  weights_.assign(static_cast<size_t>(data.class_count),
                  std::vector<double>(d + 1, 0.0));

  Rng rng(seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  int64_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (size_t idx : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto& x = data.rows[idx];
      for (int c = 0; c < data.class_count; ++c) {
        auto& w = weights_[static_cast<size_t>(c)];
        const double y = data.labels[idx] == c ? 1.0 : -1.0;
        const double margin = y * score(w, x);
        const double decay = 1.0 - eta * lambda;
        for (size_t j = 0; j < d; ++j) w[j] *= decay;
        if (margin < 1.0) {
          for (size_t j = 0; j < d; ++j) w[j] += eta * y * x[j];
          w[d] += eta * y;  // bias is not regularized
        }
      }
    }
  }
}

int LinearSvm::predict(const std::vector<double>& x) const {
  return argmax_score(weights_, x);
}

}  // namespace wristleak
