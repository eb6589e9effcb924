#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hsge {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix select_rows(std::span<const std::size_t> rows) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SvmOptions {
  double C = 1.0;
  double tolerance = 1e-4;  // projected-gradient gap
  std::size_t max_epochs = 20000;
};

/// Linear C-SVM (hinge loss, bias as a constant feature) solved by dual
/// coordinate descent in fixed row order. Two classes train one separator;
/// more classes train one-vs-rest separators.
class LinearSvm {
 public:
  /// Throws DegenerateModelError for fewer than two classes and
  /// ParameterError for non-finite inputs or size mismatches.
  static LinearSvm train(const DenseMatrix& x, std::span<const int> y, const SvmOptions& options = {});

  int predict(std::span<const double> x) const;
  std::vector<int> predict(const DenseMatrix& x) const;
  /// One score per separator (one for binary problems).
  std::vector<double> decision(std::span<const double> x) const;

  const std::vector<int>& classes() const { return classes_; }
  /// Separator weights; the last entry of each is the bias.
  const std::vector<std::vector<double>>& weights() const { return weights_; }
  bool converged() const { return converged_; }

 private:
  std::vector<int> classes_;
  std::vector<std::vector<double>> weights_;
  bool converged_ = true;
};

double accuracy_percent(std::span<const int> predicted, std::span<const int> truth);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

struct LabeledDataset {
  DenseMatrix embeddings;
  std::vector<int> class_labels;
  std::optional<Split> split;

  /// Throws ParameterError on inconsistent sizes or an overlapping/partial split.
  void validate() const;
};

struct EvalReport {
  std::string protocol;  // "cv" or "holdout"
  double mean_accuracy = 0.0;  // percent
  double std_accuracy = 0.0;   // sample std over repetition means (0 for one repetition)
  double fold_std = 0.0;       // sample std over all fold accuracies
  std::vector<double> repetition_means;
  std::vector<std::vector<double>> fold_accuracies;  // [repetition][fold]
  std::vector<std::vector<double>> chosen_c;         // [repetition][fold]
  std::size_t folds = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct Timings {
  double embed_seconds = 0.0;
  double evaluate_seconds = 0.0;
};

/// Features for one fold. The featurizer sees only the training rows when it
/// decides the feature space (e.g. builds the graphlet vocabulary).
struct FoldData {
  DenseMatrix train;
  DenseMatrix test;
};

/// (repetition, train rows, test rows) -> features.
using FoldFeaturizer =
    std::function<FoldData(std::size_t, std::span<const std::size_t>, std::span<const std::size_t>)>;

struct CvOptions {
  std::size_t folds = 10;
  std::vector<double> c_grid{0.01, 0.1, 1.0, 10.0, 100.0};
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  std::size_t inner_folds = 3;  // C selection on the training portion
  std::size_t jobs = 1;
};

/// Stratified fold assignment from a seeded shuffle: each class is dealt
/// round-robin over the folds, so class counts per fold differ by at most one.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels, std::size_t folds,
                                                       std::uint64_t seed);

/// Picks C from the grid by inner stratified cross-validation on (x, y).
/// Ties go to the smaller C.
double select_c(const DenseMatrix& x, std::span<const int> y, std::span<const double> c_grid,
                std::size_t inner_folds, std::uint64_t seed);

/// Repeated stratified k-fold cross-validation. Repetition r reshuffles the
/// folds with a seed derived from (seed, r) and asks the featurizer for
/// repetition r's features. Throws ParameterError when folds < 2 or some
/// class has fewer members than folds.
EvalReport cross_validate(const FoldFeaturizer& features, std::span<const int> labels, const CvOptions& options);
EvalReport cross_validate(const LabeledDataset& ds, const CvOptions& options);

/// Train on the training split, choose C on the validation split, report
/// test accuracy. Throws StateError when the dataset has no split.
EvalReport holdout_eval(const LabeledDataset& ds, std::span<const double> c_grid);
EvalReport holdout_eval(const FoldFeaturizer& features, std::span<const int> labels, const Split& split,
                        std::span<const double> c_grid);

}  // namespace hsge
