#include "hsge/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "hsge/errors.hpp"
#include "hsge/parallel.hpp"
#include "hsge/rng.hpp"

namespace hsge {

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DenseMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ParameterError("ragged rows");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> rows) const {
  DenseMatrix out(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

namespace {

double dot_with_bias(std::span<const double> w, std::span<const double> x) {
  double s = w.back();
  for (std::size_t j = 0; j < x.size(); ++j) s += w[j] * x[j];
  return s;
}

// Dual coordinate descent for the L1-loss SVM; y in {-1, +1}.
std::vector<double> train_binary(const DenseMatrix& x, std::span<const double> y, const SvmOptions& o,
                                 bool& converged) {
  const auto n = x.rows(), d = x.cols();
  std::vector<double> w(d + 1, 0.0), alpha(n, 0.0), qii(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 1.0;  // bias feature
    for (auto v : x.row(i)) s += v * v;
    qii[i] = s;
  }
  converged = false;
  for (std::size_t epoch = 0; epoch < o.max_epochs; ++epoch) {
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const auto xi = x.row(i);
      const double g = y[i] * dot_with_bias(w, xi) - 1.0;
      double pg = g;
      if (alpha[i] <= 0.0) pg = std::min(g, 0.0);
      else if (alpha[i] >= o.C) pg = std::max(g, 0.0);
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);
      if (std::abs(pg) > 1e-12) {
        const double old = alpha[i];
        alpha[i] = std::clamp(alpha[i] - g / qii[i], 0.0, o.C);
        const double step = (alpha[i] - old) * y[i];
        for (std::size_t j = 0; j < d; ++j) w[j] += step * xi[j];
        w[d] += step;
      }
    }
    if (pg_max - pg_min < o.tolerance) {
      converged = true;
      break;
    }
  }
  return w;
}

}  // namespace

LinearSvm LinearSvm::train(const DenseMatrix& x, std::span<const int> y, const SvmOptions& options) {
  if (x.rows() != y.size()) throw ParameterError("row count does not match label count");
  if (!(options.C > 0.0)) throw ParameterError("C must be positive");
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (auto v : x.row(i))
      if (!std::isfinite(v)) throw ParameterError("non-finite feature value in row " + std::to_string(i));

  LinearSvm model;
  const std::set<int> distinct(y.begin(), y.end());
  model.classes_.assign(distinct.begin(), distinct.end());
  if (model.classes_.size() < 2) throw DegenerateModelError("training data has fewer than two classes");

  const std::size_t separators = model.classes_.size() == 2 ? 1 : model.classes_.size();
  std::vector<double> target(y.size());
  for (std::size_t s = 0; s < separators; ++s) {
    const int positive = model.classes_.size() == 2 ? model.classes_[1] : model.classes_[s];
    for (std::size_t i = 0; i < y.size(); ++i) target[i] = y[i] == positive ? 1.0 : -1.0;
    bool ok = true;
    model.weights_.push_back(train_binary(x, target, options, ok));
    model.converged_ = model.converged_ && ok;
  }
  return model;
}

std::vector<double> LinearSvm::decision(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(weights_.size());
  for (const auto& w : weights_) out.push_back(dot_with_bias(w, x));
  return out;
}

int LinearSvm::predict(std::span<const double> x) const {
  const auto scores = decision(x);
  if (classes_.size() == 2) return scores[0] >= 0.0 ? classes_[1] : classes_[0];
  const auto best = std::max_element(scores.begin(), scores.end()) - scores.begin();
  return classes_[static_cast<std::size_t>(best)];
}

std::vector<int> LinearSvm::predict(const DenseMatrix& x) const {
  std::vector<int> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict(x.row(i));
  return out;
}

double accuracy_percent(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ParameterError("prediction count mismatch");
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

void LabeledDataset::validate() const {
  if (embeddings.rows() != class_labels.size())
    throw ParameterError("embedding rows do not match class labels");
  if (!split) return;
  std::vector<int> seen(class_labels.size(), 0);
  for (const auto* part : {&split->train, &split->validation, &split->test}) {
    for (auto r : *part) {
      if (r >= seen.size()) throw ParameterError("split index out of range");
      if (seen[r]++) throw ParameterError("split lists overlap at row " + std::to_string(r));
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw ParameterError("split lists do not cover every row");
}

namespace {

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

std::size_t smallest_class(std::span<const int> labels) {
  std::map<int, std::size_t> counts;
  for (auto c : labels) ++counts[c];
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& [c, n] : counts) m = std::min(m, n);
  return counts.empty() ? 0 : m;
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double ss = 0.0;
  for (auto x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

std::vector<int> pick(std::span<const int> labels, std::span<const std::size_t> rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(labels[r]);
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t folds,
                                                       std::uint64_t seed) {
  if (folds < 2) throw ParameterError("need at least 2 folds");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t next = 0;
  for (auto& [c, members] : by_class) {
    shuffle(members, rng);
    for (auto r : members) out[next++ % folds].push_back(r);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

double select_c(const DenseMatrix& x, std::span<const int> y, std::span<const double> c_grid,
                std::size_t inner_folds, std::uint64_t seed) {
  if (c_grid.empty()) throw ParameterError("empty C grid");
  if (c_grid.size() == 1) return c_grid[0];
  std::vector<double> grid(c_grid.begin(), c_grid.end());
  std::sort(grid.begin(), grid.end());

  const auto k = std::min(inner_folds, smallest_class(y));
  std::vector<double> score(grid.size(), 0.0);
  if (k < 2) {
    // Too few samples for inner folds: fall back to training accuracy.
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto m = LinearSvm::train(x, y, {.C = grid[g]});
      score[g] = accuracy_percent(m.predict(x), y);
    }
  } else {
    const auto folds = stratified_folds(y, k, seed);
    for (std::size_t f = 0; f < k; ++f) {
      std::vector<std::size_t> train;
      for (std::size_t o = 0; o < k; ++o)
        if (o != f) train.insert(train.end(), folds[o].begin(), folds[o].end());
      std::sort(train.begin(), train.end());
      const auto xtr = x.select_rows(train);
      const auto ytr = pick(y, train);
      const auto xte = x.select_rows(folds[f]);
      const auto yte = pick(y, folds[f]);
      if (std::set<int>(ytr.begin(), ytr.end()).size() < 2) continue;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto m = LinearSvm::train(xtr, ytr, {.C = grid[g]});
        score[g] += accuracy_percent(m.predict(xte), yte);
      }
    }
  }
  const auto best = std::max_element(score.begin(), score.end()) - score.begin();
  return grid[static_cast<std::size_t>(best)];
}

EvalReport cross_validate(const FoldFeaturizer& features, std::span<const int> labels, const CvOptions& options) {
  if (options.folds < 2) throw ParameterError("need at least 2 folds");
  if (options.repetitions == 0) throw ParameterError("need at least one repetition");
  if (options.folds > smallest_class(labels))
    throw ParameterError("fold count " + std::to_string(options.folds) + " exceeds the smallest class size " +
                         std::to_string(smallest_class(labels)));

  EvalReport report;
  report.protocol = "cv";
  report.folds = options.folds;
  report.seed = options.seed;
  report.fold_accuracies.assign(options.repetitions, std::vector<double>(options.folds, 0.0));
  report.chosen_c.assign(options.repetitions, std::vector<double>(options.folds, 0.0));

  std::vector<std::vector<std::vector<std::size_t>>> partitions;
  for (std::size_t r = 0; r < options.repetitions; ++r)
    partitions.push_back(stratified_folds(labels, options.folds, derive_seed(options.seed, r)));

  parallel_for(options.repetitions * options.folds, options.jobs, [&](std::size_t job) {
    const auto r = job / options.folds, f = job % options.folds;
    const auto& folds = partitions[r];
    std::vector<std::size_t> train;
    for (std::size_t o = 0; o < options.folds; ++o)
      if (o != f) train.insert(train.end(), folds[o].begin(), folds[o].end());
    std::sort(train.begin(), train.end());
    const auto& test = folds[f];

    const auto data = features(r, train, test);
    const auto ytr = pick(labels, train);
    const auto yte = pick(labels, test);
    const double c = select_c(data.train, ytr, options.c_grid, options.inner_folds,
                              derive_seed(options.seed, "inner/" + std::to_string(job)));
    const auto model = LinearSvm::train(data.train, ytr, {.C = c});
    report.fold_accuracies[r][f] = accuracy_percent(model.predict(data.test), yte);
    report.chosen_c[r][f] = c;
  });

  std::vector<double> all;
  for (const auto& rep : report.fold_accuracies) {
    report.repetition_means.push_back(std::accumulate(rep.begin(), rep.end(), 0.0) / static_cast<double>(rep.size()));
    all.insert(all.end(), rep.begin(), rep.end());
  }
  report.mean_accuracy = std::accumulate(report.repetition_means.begin(), report.repetition_means.end(), 0.0) /
                         static_cast<double>(report.repetition_means.size());
  report.std_accuracy = sample_std(report.repetition_means);
  report.fold_std = sample_std(all);
  return report;
}

namespace {

FoldFeaturizer matrix_featurizer(const DenseMatrix& x) {
  return [&x](std::size_t, std::span<const std::size_t> train, std::span<const std::size_t> test) {
    return FoldData{x.select_rows(train), x.select_rows(test)};
  };
}

}  // namespace

EvalReport cross_validate(const LabeledDataset& ds, const CvOptions& options) {
  ds.validate();
  return cross_validate(matrix_featurizer(ds.embeddings), ds.class_labels, options);
}

EvalReport holdout_eval(const FoldFeaturizer& features, std::span<const int> labels, const Split& split,
                        std::span<const double> c_grid) {
  if (c_grid.empty()) throw ParameterError("empty C grid");
  std::vector<std::size_t> held(split.validation);
  held.insert(held.end(), split.test.begin(), split.test.end());
  const auto data = features(0, split.train, held);
  const auto ytr = pick(labels, split.train);
  const auto yval = pick(labels, split.validation);
  const auto yte = pick(labels, split.test);

  std::vector<std::size_t> val_rows(split.validation.size()), test_rows(split.test.size());
  std::iota(val_rows.begin(), val_rows.end(), 0);
  std::iota(test_rows.begin(), test_rows.end(), split.validation.size());
  const auto xval = data.test.select_rows(val_rows);
  const auto xte = data.test.select_rows(test_rows);

  std::vector<double> grid(c_grid.begin(), c_grid.end());
  std::sort(grid.begin(), grid.end());
  double best_c = grid[0], best_acc = -1.0;
  for (auto c : grid) {
    const auto m = LinearSvm::train(data.train, ytr, {.C = c});
    const double acc = yval.empty() ? accuracy_percent(m.predict(data.train), ytr)
                                    : accuracy_percent(m.predict(xval), yval);
    if (acc > best_acc) {
      best_acc = acc;
      best_c = c;
    }
  }
  const auto model = LinearSvm::train(data.train, ytr, {.C = best_c});
  EvalReport report;
  report.protocol = "holdout";
  report.mean_accuracy = accuracy_percent(model.predict(xte), yte);
  report.repetition_means = {report.mean_accuracy};
  report.fold_accuracies = {{report.mean_accuracy}};
  report.chosen_c = {{best_c}};
  report.folds = 1;
  return report;
}

EvalReport holdout_eval(const LabeledDataset& ds, std::span<const double> c_grid) {
  ds.validate();
  if (!ds.split) throw StateError("dataset has no predefined train/validation/test split");
  return holdout_eval(matrix_featurizer(ds.embeddings), ds.class_labels, *ds.split, c_grid);
}

}  // namespace hsge
