#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcdm {

// Base of all library errors. The three broad classes below map onto the
// CLI exit-code contract: ParseError -> 1, ValidationError -> 2,
// ConsistencyError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document: unreadable file, invalid JSON/CSV, schema shape
// violations (missing keys, wrong node types, empty criteria list).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Consistency-gate failures (CR at or above the configured threshold).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class NonSquare : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonPositiveEntry : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Carries the worst offending pair so diagnostics can point at it.
class ReciprocityViolation : public ValidationError {
 public:
  ReciprocityViolation(std::size_t row, std::size_t col, double residual)
      : ValidationError(message(row, col, residual)),
        row_(row),
        col_(col),
        residual_(residual) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }
  double residual() const { return residual_; }

 private:
  static std::string message(std::size_t row, std::size_t col, double residual) {
    std::ostringstream os;
    os << "reciprocity violation at (" << row << ", " << col
       << "): |a[i][j]*a[j][i] - 1| = " << residual;
    return os.str();
  }

  std::size_t row_;
  std::size_t col_;
  double residual_;
};

class ScaleViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroColumn : public ValidationError {
 public:
  explicit ZeroColumn(const std::string& criterion_id)
      : ValidationError("criterion column is all zero: " + criterion_id),
        criterion_id_(criterion_id) {}

  const std::string& criterion_id() const { return criterion_id_; }

 private:
  std::string criterion_id_;
};

class NegativeScore : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ZeroWeightComponent : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class MissingRiEntry : public ValidationError {
 public:
  explicit MissingRiEntry(std::size_t order)
      : ValidationError("no random-index value for matrix order " +
                        std::to_string(order) +
                        "; supply a custom RI value"),
        order_(order) {}

  std::size_t order() const { return order_; }

 private:
  std::size_t order_;
};

class CriterionSetMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyCell : public ValidationError {
 public:
  EmptyCell(const std::string& alternative_id, const std::string& criterion_id)
      : ValidationError("no scores for alternative '" + alternative_id +
                        "' on criterion '" + criterion_id + "'"),
        alternative_id_(alternative_id),
        criterion_id_(criterion_id) {}

  const std::string& alternative_id() const { return alternative_id_; }
  const std::string& criterion_id() const { return criterion_id_; }

 private:
  std::string alternative_id_;
  std::string criterion_id_;
};

class DegenerateAlternative : public ValidationError {
 public:
  explicit DegenerateAlternative(std::size_t index)
      : ValidationError(
            "alternative " + std::to_string(index) +
            " has zero distance to both ideals (all alternatives identical)"),
        index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class KTooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptySubset : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnknownReportField : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Power iteration ran out of iterations. Cannot occur for positive matrices
// with sane tol/max_iter, so this surfaces a misconfiguration.
class NoConvergence : public Error {
 public:
  NoConvergence(int max_iter, double last_delta)
      : Error("eigenvector iteration did not converge after " +
              std::to_string(max_iter) + " iterations (last delta " +
              std::to_string(last_delta) + ")") {}
};

class ConsistencyGateFailed : public ConsistencyError {
 public:
  explicit ConsistencyGateFailed(
      std::vector<std::pair<std::string, double>> failing)
      : ConsistencyError(message(failing)), failing_(std::move(failing)) {}

  const std::vector<std::pair<std::string, double>>& failing_experts() const {
    return failing_;
  }

 private:
  static std::string message(
      const std::vector<std::pair<std::string, double>>& failing) {
    std::ostringstream os;
    os << "consistency gate failed for " << failing.size() << " expert(s):";
    for (const auto& [id, cr] : failing) {
      os << " " << id << " (CR=" << cr << ")";
    }
    return os.str();
  }

  std::vector<std::pair<std::string, double>> failing_;
};

}  // namespace mcdm
