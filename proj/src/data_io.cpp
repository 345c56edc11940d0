#include "pnt/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pnt/rng.hpp"

namespace pnt {

namespace {

double parse_double_token(const std::string& tok, std::size_t line) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError("non-numeric token '" + tok + "'", line);
  }
  if (pos != tok.size())
    throw ParseError("non-numeric token '" + tok + "'", line);
  return v;
}

std::size_t parse_index_token(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("non-numeric index '" + tok + "'", line);
  unsigned long long v = std::stoull(tok);
  if (v == 0) throw ParseError("feature indices are 1-based", line);
  return static_cast<std::size_t>(v);
}

}  // namespace

Dataset parse_libsvm(std::istream& is, std::optional<std::size_t> n_override,
                     std::string name) {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  Vector labels;
  std::size_t max_index = 0;  // 1-based
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;  // blank line

    double label = parse_double_token(tok, line_no);
    if (label != 1.0 && label != -1.0)
      throw ParseError("label outside {-1,+1}", line_no);
    std::vector<std::pair<std::size_t, double>> row;
    std::size_t prev_index = 0;
    while (ss >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ParseError("expected idx:val, got '" + tok + "'", line_no);
      std::size_t idx = parse_index_token(tok.substr(0, colon), line_no);
      double val = parse_double_token(tok.substr(colon + 1), line_no);
      if (idx <= prev_index)
        throw ParseError("feature indices not increasing", line_no);
      prev_index = idx;
      max_index = std::max(max_index, idx);
      if (val != 0.0) row.emplace_back(idx - 1, val);
    }
    rows.push_back(std::move(row));
    labels.push_back(label);
  }
  std::size_t n = max_index;
  if (n_override) {
    if (*n_override < max_index)
      throw ParseError("feature index " + std::to_string(max_index) +
                           " exceeds requested dimension",
                       line_no);
    n = *n_override;
  }
  return {SparseMatrix::from_rows(n, rows), std::move(labels),
          std::move(name)};
}

Dataset parse_libsvm_file(const std::string& path,
                          std::optional<std::size_t> n_override) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  auto slash = path.find_last_of('/');
  return parse_libsvm(is, n_override,
                      slash == std::string::npos ? path
                                                 : path.substr(slash + 1));
}

void serialize_libsvm(std::ostream& os, const Dataset& d) {
  char buf[40];
  for (std::size_t i = 0; i < d.features.rows(); ++i) {
    os << (d.labels[i] > 0 ? "+1" : "-1");
    auto cols = d.features.row_cols(i);
    auto vals = d.features.row_values(i);
    for (std::size_t p = 0; p < cols.size(); ++p) {
      std::snprintf(buf, sizeof(buf), "%.17g", vals[p]);
      os << ' ' << (cols[p] + 1) << ':' << buf;
    }
    os << '\n';
  }
}

Dataset normalize_rows(const Dataset& d) {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(
      d.features.rows());
  for (std::size_t i = 0; i < d.features.rows(); ++i) {
    auto cols = d.features.row_cols(i);
    auto vals = d.features.row_values(i);
    double sq = 0.0;
    for (double v : vals) sq += v * v;
    double inv = sq > 0.0 ? 1.0 / std::sqrt(sq) : 1.0;
    for (std::size_t p = 0; p < cols.size(); ++p)
      rows[i].emplace_back(cols[p], vals[p] * inv);
  }
  return {SparseMatrix::from_rows(d.features.cols(), rows), d.labels, d.name};
}

Dataset generate_synthetic_logistic(std::size_t n_samples,
                                    std::size_t n_features, double sparsity,
                                    std::uint64_t seed) {
  if (n_samples < 1 || n_features < 1)
    throw std::invalid_argument("generate_synthetic_logistic: empty shape");
  if (!(sparsity > 0.0 && sparsity <= 1.0))
    throw std::invalid_argument(
        "generate_synthetic_logistic: sparsity must be in (0,1]");
  const auto nnz_per_row = static_cast<std::size_t>(
      std::ceil(sparsity * static_cast<double>(n_features)));
  Rng rng(seed);

  auto pick_positions = [&](std::size_t count) {
    std::vector<std::size_t> perm(n_features);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t r = j + rng.index(n_features - j);
      std::swap(perm[j], perm[r]);
    }
    perm.resize(count);
    std::sort(perm.begin(), perm.end());
    return perm;
  };
  auto nonzero_normal = [&]() {
    double v;
    do v = rng.normal();
    while (v == 0.0);
    return v;
  };

  Vector truth(n_features, 0.0);
  for (std::size_t j : pick_positions(nnz_per_row))
    truth[j] = (rng.next_u64() & 1) ? 1.0 : -1.0;

  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n_samples);
  Vector labels(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    double margin = 0.0;
    for (std::size_t j : pick_positions(nnz_per_row)) {
      double v = nonzero_normal();
      rows[i].emplace_back(j, v);
      margin += v * truth[j];
    }
    margin += 0.1 * rng.normal();
    labels[i] = margin < 0.0 ? -1.0 : 1.0;
  }
  return {SparseMatrix::from_rows(n_features, rows), std::move(labels),
          "synthetic"};
}

}  // namespace pnt
