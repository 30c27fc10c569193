#pragma once

// Tabular ingestion and binarization: CSV loading, equal-width quantization
// of numeric columns, one-hot encoding into binary features, seeded k-fold
// splitting and duplicate-label consistency checking.
//
// All transformations are pure value functions; quantizers and encoders are
// fitted on one dataset and can be applied to another (the cross-validation
// harness fits them on the training fold only, test rows outside the fitted
// range clamp to the nearest bin).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "satdl/errors.hpp"

namespace satdl {

// --- raw (pre-binarization) data ---------------------------------------------

struct RawColumn {
  bool numeric = false;
  std::vector<double> numbers;      // when numeric
  std::vector<std::string> labels;  // when categorical

  std::size_t size() const { return numeric ? numbers.size() : labels.size(); }
};

struct RawDataset {
  std::vector<std::string> column_names;
  std::vector<RawColumn> columns;
  int class_column = -1;

  std::size_t row_count() const { return columns.empty() ? 0 : columns[0].size(); }
};

// --- binarized data ----------------------------------------------------------

struct Instance {
  std::vector<std::uint8_t> features;  // bit vector of length K
  int class_id = 0;
};

struct BinDataset {
  int feature_count = 0;  // K
  int class_count = 0;    // at least 2
  std::vector<Instance> instances;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;

  std::size_t size() const { return instances.size(); }

  std::vector<std::size_t> class_histogram() const {
    std::vector<std::size_t> h(static_cast<std::size_t>(class_count), 0);
    for (const auto& e : instances)
      if (e.class_id >= 0 && e.class_id < class_count) ++h[static_cast<std::size_t>(e.class_id)];
    return h;
  }
};

struct FoldSplit {
  int k = 0;
  std::vector<int> assignments;  // fold id per instance
  std::uint64_t seed = 0;
};

// --- CSV loading --------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

inline bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace detail

// Loads a header + rows CSV. Cells are trimmed, a column becomes numeric when
// every cell parses as a number, except that columns whose raw cells are all
// "0"/"1" stay categorical (they are already binary features) and the class
// column is always kept categorical. `class_column` is a column name or a
// 0-based index given as digits.
inline RawDataset load_csv(const std::string& path, const std::string& class_column) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path);

  std::string line;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (header.empty()) {
      header = cells;
      continue;
    }
    if (cells.size() != header.size())
      throw IngestError(path + ": row at line " + std::to_string(lineno) + " has " +
                        std::to_string(cells.size()) + " cells, header has " +
                        std::to_string(header.size()));
    rows.push_back(std::move(cells));
  }
  if (header.empty()) throw IngestError(path + ": empty file");
  if (rows.empty()) throw IngestError(path + ": no data rows");

  RawDataset ds;
  ds.column_names = header;
  int cls = -1;
  if (!class_column.empty() &&
      class_column.find_first_not_of("0123456789") == std::string::npos) {
    cls = std::stoi(class_column);
    if (cls < 0 || cls >= static_cast<int>(header.size()))
      throw IngestError(path + ": class column index " + class_column + " out of range");
  } else {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == class_column) cls = static_cast<int>(i);
    if (cls < 0) throw IngestError(path + ": unknown class column '" + class_column + "'");
  }
  ds.class_column = cls;

  for (std::size_t c = 0; c < header.size(); ++c) {
    RawColumn col;
    bool all_numeric = static_cast<int>(c) != cls;
    bool all_binary = true;
    std::vector<double> nums(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string& cell = rows[r][c];
      if (cell != "0" && cell != "1") all_binary = false;
      double v;
      if (all_numeric && detail::parse_number(cell, v))
        nums[r] = v;
      else
        all_numeric = false;
    }
    if (all_numeric && !all_binary) {
      col.numeric = true;
      col.numbers = std::move(nums);
    } else {
      col.numeric = false;
      col.labels.reserve(rows.size());
      for (const auto& row : rows) col.labels.push_back(row[c]);
    }
    ds.columns.push_back(std::move(col));
  }
  return ds;
}

inline RawDataset select_rows(const RawDataset& ds, const std::vector<int>& rows) {
  RawDataset out;
  out.column_names = ds.column_names;
  out.class_column = ds.class_column;
  for (const auto& col : ds.columns) {
    RawColumn c;
    c.numeric = col.numeric;
    for (int r : rows) {
      if (col.numeric)
        c.numbers.push_back(col.numbers[static_cast<std::size_t>(r)]);
      else
        c.labels.push_back(col.labels[static_cast<std::size_t>(r)]);
    }
    out.columns.push_back(std::move(c));
  }
  return out;
}

// --- quantization --------------------------------------------------------------

struct ColumnBinning {
  double lo = 0.0;
  double width = 0.0;  // zero means the column was constant
  int bins = 1;

  // Smallest bin whose right edge is at or above the value; bins are
  // right-closed, out-of-range values clamp to the nearest bin.
  int bin_of(double v) const {
    if (width <= 0.0) return 0;
    int b = static_cast<int>(std::ceil((v - lo) / width));
    return std::clamp(b, 1, bins) - 1;
  }

  std::string label_of(int bin) const {
    std::ostringstream os;
    if (width <= 0.0) {
      os << "[" << lo << "]";
    } else {
      double a = lo + bin * width, b = lo + (bin + 1) * width;
      os << (bin == 0 ? '[' : '(') << a << "," << b << "]";
    }
    return os.str();
  }
};

struct QuantizerModel {
  int intervals = 2;
  std::map<int, ColumnBinning> binnings;  // column index -> binning
};

inline QuantizerModel fit_quantizer(const RawDataset& ds, int intervals) {
  if (intervals < 2) throw IngestError("quantization needs at least 2 intervals");
  QuantizerModel q;
  q.intervals = intervals;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    const auto& col = ds.columns[c];
    if (!col.numeric || static_cast<int>(c) == ds.class_column) continue;
    double lo = col.numbers[0], hi = col.numbers[0];
    for (double v : col.numbers) {
      if (std::isnan(v))
        throw IngestError("NaN cell in column '" + ds.column_names[c] + "'");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    ColumnBinning b;
    b.lo = lo;
    if (hi > lo) {
      b.width = (hi - lo) / intervals;
      b.bins = intervals;
    }
    q.binnings[static_cast<int>(c)] = b;
  }
  return q;
}

inline RawDataset apply_quantizer(const RawDataset& ds, const QuantizerModel& q) {
  RawDataset out;
  out.column_names = ds.column_names;
  out.class_column = ds.class_column;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    const auto& col = ds.columns[c];
    auto it = q.binnings.find(static_cast<int>(c));
    if (!col.numeric || it == q.binnings.end()) {
      out.columns.push_back(col);
      continue;
    }
    RawColumn labeled;
    labeled.numeric = false;
    labeled.labels.reserve(col.numbers.size());
    for (double v : col.numbers) {
      if (std::isnan(v))
        throw IngestError("NaN cell in column '" + ds.column_names[c] + "'");
      labeled.labels.push_back(it->second.label_of(it->second.bin_of(v)));
    }
    out.columns.push_back(std::move(labeled));
  }
  return out;
}

// Equal-width binning of every numeric feature column into `intervals`
// right-closed bins over the observed [min, max]; categorical columns pass
// through unchanged, a constant numeric column collapses to one category.
inline RawDataset quantize(const RawDataset& ds, int intervals) {
  return apply_quantizer(ds, fit_quantizer(ds, intervals));
}

// --- one-hot encoding ------------------------------------------------------------

struct OneHotColumn {
  int source_column = -1;
  std::vector<std::string> categories;  // sorted; 2-valued columns collapse to 1 bit
};

struct OneHotModel {
  std::vector<OneHotColumn> feature_columns;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;  // sorted class labels
  int class_column = -1;
};

namespace detail {

inline std::vector<std::string> sorted_distinct(const std::vector<std::string>& labels) {
  std::set<std::string> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

}  // namespace detail

inline OneHotModel fit_one_hot(const RawDataset& ds) {
  OneHotModel m;
  m.class_column = ds.class_column;
  for (std::size_t c = 0; c < ds.columns.size(); ++c) {
    const auto& col = ds.columns[c];
    if (static_cast<int>(c) == ds.class_column) {
      if (col.numeric) throw IngestError("class column must be categorical");
      m.class_names = detail::sorted_distinct(col.labels);
      if (m.class_names.size() < 2) throw IngestError("single-class dataset");
      continue;
    }
    if (col.numeric)
      throw IngestError("numeric column '" + ds.column_names[c] +
                        "' must be quantized before one-hot encoding");
    OneHotColumn oc;
    oc.source_column = static_cast<int>(c);
    oc.categories = detail::sorted_distinct(col.labels);
    if (oc.categories.size() <= 1) continue;  // constant column carries no signal
    if (oc.categories.size() == 2) {
      // One bit: set when the cell equals the second (greater) category. A
      // plain 0/1 column keeps its own name as the feature name.
      bool plain01 = oc.categories[0] == "0" && oc.categories[1] == "1";
      m.feature_names.push_back(plain01 ? ds.column_names[c]
                                        : ds.column_names[c] + "=" + oc.categories[1]);
    } else {
      for (const auto& cat : oc.categories)
        m.feature_names.push_back(ds.column_names[c] + "=" + cat);
    }
    m.feature_columns.push_back(std::move(oc));
  }
  return m;
}

inline BinDataset apply_one_hot(const RawDataset& ds, const OneHotModel& m) {
  BinDataset out;
  out.feature_count = static_cast<int>(m.feature_names.size());
  out.feature_names = m.feature_names;
  out.class_names = m.class_names;
  out.class_count = static_cast<int>(m.class_names.size());

  const auto& class_labels = ds.columns[static_cast<std::size_t>(m.class_column)].labels;
  std::size_t rows = ds.row_count();
  out.instances.reserve(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Instance e;
    e.features.reserve(static_cast<std::size_t>(out.feature_count));
    for (const auto& oc : m.feature_columns) {
      const auto& labels = ds.columns[static_cast<std::size_t>(oc.source_column)].labels;
      const std::string& cell = labels[r];
      if (oc.categories.size() == 2) {
        e.features.push_back(cell == oc.categories[1] ? 1 : 0);
      } else {
        // Unseen categories map to all-zero bits for this column.
        for (const auto& cat : oc.categories) e.features.push_back(cell == cat ? 1 : 0);
      }
    }
    auto it = std::find(out.class_names.begin(), out.class_names.end(), class_labels[r]);
    if (it == out.class_names.end()) {
      // Class label unseen at fit time: give it a fresh id so predictions,
      // which can only name fitted classes, count it as an error.
      out.class_names.push_back(class_labels[r]);
      out.class_count = static_cast<int>(out.class_names.size());
      e.class_id = out.class_count - 1;
    } else {
      e.class_id = static_cast<int>(it - out.class_names.begin());
    }
    out.instances.push_back(std::move(e));
  }
  return out;
}

// One-hot encodes all categorical feature columns: a column with d distinct
// values becomes d binary features, except d = 2 which becomes a single bit.
inline BinDataset one_hot(const RawDataset& ds) { return apply_one_hot(ds, fit_one_hot(ds)); }

// --- k-fold split ------------------------------------------------------------------

// Deterministic for a fixed seed: a seeded Fisher-Yates permutation followed
// by round-robin fold assignment, so fold sizes differ by at most one.
inline FoldSplit kfold_split(const BinDataset& ds, int k, std::uint64_t seed) {
  const int m = static_cast<int>(ds.size());
  if (k < 2) throw IngestError("fold count must be at least 2");
  if (k > m) throw IngestError("fold count " + std::to_string(k) + " exceeds " +
                               std::to_string(m) + " instances");
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  for (int i = m - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  FoldSplit split;
  split.k = k;
  split.seed = seed;
  split.assignments.assign(static_cast<std::size_t>(m), 0);
  for (int pos = 0; pos < m; ++pos)
    split.assignments[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos)])] = pos % k;
  return split;
}

// --- consistency -------------------------------------------------------------------

struct ConflictGroup {
  std::vector<int> instances;  // indices sharing one feature vector
  std::set<int> classes;       // at least two distinct labels among them
};

// A perfect model exists only when no feature vector appears with two
// different labels; returns every offending group (empty means consistent).
inline std::vector<ConflictGroup> check_consistency(const BinDataset& ds) {
  std::map<std::vector<std::uint8_t>, std::vector<int>> by_features;
  for (std::size_t i = 0; i < ds.instances.size(); ++i)
    by_features[ds.instances[i].features].push_back(static_cast<int>(i));
  std::vector<ConflictGroup> out;
  for (auto& [bits, idxs] : by_features) {
    std::set<int> classes;
    for (int i : idxs) classes.insert(ds.instances[static_cast<std::size_t>(i)].class_id);
    if (classes.size() >= 2) out.push_back(ConflictGroup{idxs, classes});
  }
  return out;
}

}  // namespace satdl
