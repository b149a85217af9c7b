#include "cmrff/dataio.hpp"

#include "cmrff/errors.hpp"
#include "cmrff/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmrff {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_label(std::string_view tok, std::size_t line) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || std::floor(value) != value) {
    throw ParseError(line, "malformed label '" + std::string(tok) + "'");
  }
  return static_cast<int>(value);
}

}  // namespace

int LibsvmData::max_index() const {
  int d = 0;
  for (const auto& r : rows) {
    if (!r.entries.empty()) d = std::max(d, r.entries.back().first);
  }
  return d;
}

LibsvmData parse_libsvm(std::istream& in) {
  LibsvmData data;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    std::istringstream tokens{std::string(text)};
    std::string tok;
    tokens >> tok;
    data.labels.push_back(parse_label(tok, line));
    SparseRow row;
    int last = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) {
        throw ParseError(line, "expected <index>:<value>, got '" + tok + "'");
      }
      int index = 0;
      double value = 0.0;
      const char* b = tok.data();
      const auto r1 = std::from_chars(b, b + colon, index);
      const auto r2 = std::from_chars(b + colon + 1, b + tok.size(), value);
      if (r1.ec != std::errc() || r1.ptr != b + colon || r2.ec != std::errc() ||
          r2.ptr != b + tok.size()) {
        throw ParseError(line, "malformed feature '" + tok + "'");
      }
      if (index < 1) throw ParseError(line, "feature index must be >= 1");
      if (index <= last) {
        throw ParseError(line, index == last ? "duplicate feature index " + std::to_string(index)
                                             : "feature indices must be strictly increasing");
      }
      last = index;
      row.entries.emplace_back(index, value);
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

LibsvmData parse_libsvm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
  return parse_libsvm(in);
}

void write_libsvm(std::ostream& out, const LibsvmData& data) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    out << data.labels[i];
    for (const auto& [idx, val] : data.rows[i].entries) out << ' ' << idx << ':' << val;
    out << '\n';
  }
}

Matrix to_dense(const LibsvmData& data, int dim) {
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(data.rows.size()), dim);
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    for (const auto& [idx, val] : data.rows[i].entries) {
      if (idx > dim) throw DimensionError("to_dense: feature index exceeds dimension");
      x(static_cast<Eigen::Index>(i), idx - 1) = val;
    }
  }
  return x;
}

Dataset make_dataset(const LibsvmData& data, int dim, std::string name) {
  Dataset ds;
  ds.x = to_dense(data, dim);
  ds.y = data.labels;
  ds.name = std::move(name);
  return ds;
}

std::pair<Dataset, Dataset> load_train_test(const std::string& train_path,
                                            const std::string& test_path) {
  const LibsvmData train = parse_libsvm_file(train_path);
  const LibsvmData test = parse_libsvm_file(test_path);
  const int d = std::max(train.max_index(), test.max_index());
  if (d == 0) throw std::runtime_error("dataset has no features");
  return {make_dataset(train, d, train_path), make_dataset(test, d, test_path)};
}

std::pair<Dataset, Dataset> normalize_minmax(const Dataset& train, const Dataset& test) {
  require_dim(test.dim(), train.dim(), "normalize_minmax");
  const Eigen::Index d = train.dim();
  Vector lo = Vector::Zero(d);
  Vector hi = Vector::Zero(d);
  if (train.size() > 0) {
    lo = train.x.colwise().minCoeff().transpose();
    hi = train.x.colwise().maxCoeff().transpose();
  }
  auto scale = [&](const Dataset& in, bool clip) {
    Dataset out = in;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double range = hi(j) - lo(j);
      for (Eigen::Index i = 0; i < out.size(); ++i) {
        double v = range > 0.0 ? (in.x(i, j) - lo(j)) / range : 0.0;
        if (clip) v = std::clamp(v, 0.0, 1.0);
        out.x(i, j) = v;
      }
    }
    out.feature_min = lo;
    out.feature_max = hi;
    return out;
  };
  return {scale(train, false), scale(test, true)};
}

std::vector<int> distinct_labels(const std::vector<int>& labels) {
  std::set<int> s(labels.begin(), labels.end());
  return {s.begin(), s.end()};
}

std::vector<int> map_binary_labels(const std::vector<int>& labels) {
  const auto classes = distinct_labels(labels);
  if (classes.size() != 2) return labels;
  std::vector<int> out(labels.size());
  std::transform(labels.begin(), labels.end(), out.begin(),
                 [&](int y) { return y == classes[0] ? -1 : 1; });
  return out;
}

std::vector<Fold> kfold_split(int n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold_split: need at least 2 folds");
  if (k > n) throw std::invalid_argument("kfold_split: more folds than samples");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Engine engine = make_engine(seed, stream::kFolds);
  std::shuffle(perm.begin(), perm.end(), engine);

  std::vector<Fold> folds(static_cast<std::size_t>(k));
  int start = 0;
  for (int f = 0; f < k; ++f) {
    const int size = n / k + (f < n % k ? 1 : 0);
    auto& fold = folds[static_cast<std::size_t>(f)];
    fold.validation.assign(perm.begin() + start, perm.begin() + start + size);
    fold.train.reserve(static_cast<std::size_t>(n - size));
    fold.train.insert(fold.train.end(), perm.begin(), perm.begin() + start);
    fold.train.insert(fold.train.end(), perm.begin() + start + size, perm.end());
    std::sort(fold.validation.begin(), fold.validation.end());
    std::sort(fold.train.begin(), fold.train.end());
    start += size;
  }
  return folds;
}

Dataset select_rows(const Dataset& data, const std::vector<int>& rows) {
  Dataset out;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), data.dim());
  out.y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(rows[i]);
    out.y.push_back(data.y[static_cast<std::size_t>(rows[i])]);
  }
  out.feature_min = data.feature_min;
  out.feature_max = data.feature_max;
  out.name = data.name;
  return out;
}

std::vector<int> sample_indices(int n, int cap, std::uint64_t seed, std::uint64_t stream_id) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Engine engine = make_engine(seed, stream_id);
  std::shuffle(perm.begin(), perm.end(), engine);
  perm.resize(static_cast<std::size_t>(std::clamp(cap, 0, n)));
  return perm;
}

}  // namespace cmrff
