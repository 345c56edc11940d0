#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "pnt/linalg.hpp"

namespace pnt {

struct Dataset {
  SparseMatrix features;  // N x n
  Vector labels;          // entries in {-1, +1}
  std::string name;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// LIBSVM text format: `<label> <idx>:<val> ...` with 1-based indices,
/// strictly increasing within a line; everything after '#' is a comment.
/// Labels must be +-1. The feature count is the maximum index seen unless
/// n_override (>= max index) is given.
Dataset parse_libsvm(std::istream& is,
                     std::optional<std::size_t> n_override = std::nullopt,
                     std::string name = "");
Dataset parse_libsvm_file(const std::string& path,
                          std::optional<std::size_t> n_override = std::nullopt);

void serialize_libsvm(std::ostream& os, const Dataset& d);

/// Scales every nonzero row to unit Euclidean norm; zero rows pass through.
Dataset normalize_rows(const Dataset& d);

/// Seeded synthetic instance: a ground-truth weight vector with
/// ceil(sparsity * n) entries of +-1, feature rows with standard-normal
/// values at ceil(sparsity * n) seeded positions, and labels
/// sign(a_i^T w + 0.1 eps_i) with ties resolved to +1. Bitwise reproducible
/// for a fixed seed.
Dataset generate_synthetic_logistic(std::size_t n_samples,
                                    std::size_t n_features, double sparsity,
                                    std::uint64_t seed);

}  // namespace pnt
