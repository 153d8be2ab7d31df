#pragma once

// Domain data model for logged multi-label predictions and the per-label
// binary decomposition every metric in this library is computed on.
//
// A Dataset holds one PredictionRecord per instance: a multi-hot truth
// vector, an N x L matrix of Monte-Carlo dropout probability samples and
// optionally a deterministic probability row. All types are immutable in
// practice (construct, validate, read) and safe for concurrent reads.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "selpred/matrix.hpp"

namespace selpred {

// Ordered label identifiers; index order is canonical everywhere.
struct LabelSet {
  std::vector<std::string> labels;

  std::size_t size() const { return labels.size(); }

  // The 14 ECtHR convention articles used as the stock multi-label profile:
  // the substantive rights (Articles 2-14) plus Protocol 1 Article 1.
  static LabelSet ecthr_articles() {
    return LabelSet{{"2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12",
                     "13", "14", "P1-1"}};
  }

  static LabelSet generic(std::size_t n) {
    LabelSet ls;
    ls.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      ls.labels.push_back("label_" + std::to_string(i));
    }
    return ls;
  }
};

struct PredictionRecord {
  std::string instance_id;
  std::vector<std::uint8_t> truth;       // multi-hot, length L
  Matrix<double> prob_samples;           // N x L, values in [0,1]
  std::optional<std::vector<double>> det_probs;  // length L, deterministic pass
};

struct Dataset {
  LabelSet label_set;
  std::vector<PredictionRecord> records;
  std::size_t n_samples = 0;  // N, uniform across records

  std::size_t n_labels() const { return label_set.size(); }
  std::size_t n_records() const { return records.size(); }
};

enum class ViolationKind {
  kEmptyLabels,
  kEmptyRecords,
  kDuplicateId,
  kDimensionMismatch,
  kOutOfRange,
  kNotANumber,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace detail

// Report-style validation: collects every invariant breach instead of
// stopping at the first one. NaN anywhere is a violation, never propagated.
inline ValidationReport validate_dataset(const Dataset& d) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string msg) {
    report.violations.push_back({kind, std::move(msg)});
  };

  const std::size_t n_labels = d.n_labels();
  if (n_labels == 0) {
    add(ViolationKind::kEmptyLabels, "label set is empty");
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : d.label_set.labels) {
      if (!seen.insert(name).second) {
        add(ViolationKind::kDuplicateId, "duplicate label '" + name + "'");
      }
    }
  }
  if (d.records.empty()) {
    add(ViolationKind::kEmptyRecords, "dataset has no records");
  }
  if (d.n_samples < 1) {
    add(ViolationKind::kDimensionMismatch, "n_samples must be >= 1");
  }

  std::unordered_set<std::string> ids;
  for (std::size_t r = 0; r < d.records.size(); ++r) {
    const auto& rec = d.records[r];
    const std::string where =
        "record " + std::to_string(r) + " ('" + rec.instance_id + "')";
    if (!ids.insert(rec.instance_id).second) {
      add(ViolationKind::kDuplicateId, where + ": duplicate instance_id");
    }
    if (rec.truth.size() != n_labels) {
      add(ViolationKind::kDimensionMismatch,
          where + ": truth length " + std::to_string(rec.truth.size()) +
              " != " + std::to_string(n_labels) + " labels");
    }
    for (auto t : rec.truth) {
      if (t > 1) {
        add(ViolationKind::kOutOfRange, where + ": truth entry not 0/1");
        break;
      }
    }
    if (rec.prob_samples.rows() != d.n_samples ||
        rec.prob_samples.cols() != n_labels) {
      add(ViolationKind::kDimensionMismatch,
          where + ": prob_samples is " + std::to_string(rec.prob_samples.rows()) +
              "x" + std::to_string(rec.prob_samples.cols()) + ", expected " +
              std::to_string(d.n_samples) + "x" + std::to_string(n_labels));
    }
    for (double p : rec.prob_samples.flat()) {
      if (std::isnan(p)) {
        add(ViolationKind::kNotANumber, where + ": NaN in prob_samples");
        break;
      }
      if (!detail::in_unit_interval(p)) {
        add(ViolationKind::kOutOfRange,
            where + ": sample probability " + std::to_string(p) +
                " outside [0,1]");
        break;
      }
    }
    if (rec.det_probs) {
      if (rec.det_probs->size() != n_labels) {
        add(ViolationKind::kDimensionMismatch,
            where + ": det_probs length " +
                std::to_string(rec.det_probs->size()) + " != " +
                std::to_string(n_labels) + " labels");
      }
      for (double p : *rec.det_probs) {
        if (std::isnan(p)) {
          add(ViolationKind::kNotANumber, where + ": NaN in det_probs");
          break;
        }
        if (!detail::in_unit_interval(p)) {
          add(ViolationKind::kOutOfRange,
              where + ": det probability " + std::to_string(p) +
                  " outside [0,1]");
          break;
        }
      }
    }
  }
  return report;
}

// One label treated as a standalone binary classification task.
// losses[i] = 1 exactly when the 0.5-threshold decision on decision_probs[i]
// disagrees with truth[i]; p >= 0.5 predicts positive.
struct BinaryLabelView {
  std::size_t label_index = 0;
  std::vector<std::uint8_t> losses;   // 1 = misclassified
  std::vector<double> decision_probs;

  std::size_t size() const { return losses.size(); }
};

inline bool decide_positive(double p) { return p >= 0.5; }

// Decision probability of one record for one label: the deterministic pass
// when present, otherwise the mean over the N dropout samples. Keeping one
// rule here makes hard decisions and macro-F1 identical across estimators.
inline double decision_probability(const PredictionRecord& rec,
                                   std::size_t label) {
  if (rec.det_probs) return (*rec.det_probs)[label];
  double sum = 0.0;
  const std::size_t n = rec.prob_samples.rows();
  for (std::size_t s = 0; s < n; ++s) sum += rec.prob_samples(s, label);
  return sum / static_cast<double>(n);
}

inline BinaryLabelView binary_view(const Dataset& d, std::size_t label) {
  if (label >= d.n_labels()) {
    throw std::out_of_range("binary_view: label index " +
                            std::to_string(label) + " >= " +
                            std::to_string(d.n_labels()));
  }
  BinaryLabelView view;
  view.label_index = label;
  view.losses.reserve(d.n_records());
  view.decision_probs.reserve(d.n_records());
  for (const auto& rec : d.records) {
    const double p = decision_probability(rec, label);
    const bool predicted = decide_positive(p);
    const bool actual = rec.truth[label] != 0;
    view.decision_probs.push_back(p);
    view.losses.push_back(predicted != actual ? 1 : 0);
  }
  return view;
}

}  // namespace selpred
