#include "softclique/kernels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace softclique {

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const auto m = values.size();
  if (m % 2 == 1) return values[m / 2];
  return 0.5 * (values[m / 2 - 1] + values[m / 2]);
}

void append_pair_distances(const PointCloud& points, DistanceMode mode, std::vector<double>& out) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const double d2 = squared_distance(points[i], points[j]);
      out.push_back(mode == DistanceMode::squared ? d2 : std::sqrt(d2));
    }
  }
}

double check_width(double median) {
  if (!(median > 0.0)) throw std::invalid_argument("median distance is zero: all points coincide");
  return median;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  for (auto& f : out) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
  }
  return out;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no) {
  T value{};
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw std::invalid_argument("line " + std::to_string(line_no) + ": cannot parse \"" +
                                std::string(field) + "\"");
  return value;
}

// Reads the header and returns the number of leading index columns matched.
std::size_t check_header(std::istream& in, std::span<const std::string_view> index_cols) {
  std::string header;
  if (!std::getline(in, header)) throw std::invalid_argument("CSV is empty");
  const auto cols = split_commas(header);
  if (cols.size() <= index_cols.size()) throw std::invalid_argument("CSV header has no coordinate columns");
  for (std::size_t c = 0; c < index_cols.size(); ++c)
    if (cols[c] != index_cols[c])
      throw std::invalid_argument("CSV header column " + std::to_string(c) + " must be \"" +
                                  std::string(index_cols[c]) + "\"");
  for (std::size_t c = index_cols.size(); c < cols.size(); ++c)
    if (cols[c] != "coord_" + std::to_string(c - index_cols.size()))
      throw std::invalid_argument("CSV header column " + std::to_string(c) + " must be coord_" +
                                  std::to_string(c - index_cols.size()));
  return cols.size() - index_cols.size();
}

}  // namespace

SimilarityMatrix::SimilarityMatrix(SquareMatrix<double> values) : values_(std::move(values)) {
  const auto n = values_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v)) throw std::invalid_argument("similarity entries must be finite");
      if (v < 0.0) throw std::invalid_argument("similarity entries must be nonnegative");
      if (v != values_(j, i)) throw std::invalid_argument("similarity matrix must be symmetric");
    }
  }
}

PointCloudSeries::PointCloudSeries(std::vector<PointCloud> slices) : slices_(std::move(slices)) {
  if (slices_.empty()) throw std::invalid_argument("point series needs at least one slice");
  const auto n = slices_.front().size();
  if (n == 0) throw std::invalid_argument("point series needs at least one point");
  const auto d = slices_.front().front().size();
  if (d == 0) throw std::invalid_argument("points need at least one coordinate");
  for (const auto& s : slices_) {
    if (s.size() != n) throw std::invalid_argument("slices must have the same number of points");
    for (const auto& p : s) {
      if (p.size() != d) throw std::invalid_argument("points must share one dimension");
      for (double c : p)
        if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");
    }
  }
}

BagDataset::BagDataset(std::vector<std::vector<Point>> bags) : bags_(std::move(bags)) {
  if (bags_.empty()) throw std::invalid_argument("bag dataset is empty");
  std::size_t d = 0;
  for (std::size_t b = 0; b < bags_.size(); ++b) {
    if (bags_[b].empty()) throw std::invalid_argument("bag " + std::to_string(b) + " is empty");
    for (const auto& p : bags_[b]) {
      if (d == 0) d = p.size();
      if (p.empty() || p.size() != d) throw std::invalid_argument("descriptors must share one dimension");
      for (double c : p)
        if (!std::isfinite(c)) throw std::invalid_argument("coordinates must be finite");
    }
  }
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double median_width(const PointCloud& points, DistanceMode mode) {
  if (points.size() < 2) throw std::invalid_argument("median width needs at least 2 points");
  std::vector<double> d;
  d.reserve(points.size() * (points.size() - 1) / 2);
  append_pair_distances(points, mode, d);
  return check_width(median_of(std::move(d)));
}

double global_median_width(const PointCloudSeries& series, DistanceMode mode) {
  if (series.point_count() < 2) throw std::invalid_argument("median width needs at least 2 points");
  std::vector<double> d;
  for (const auto& s : series.slices()) append_pair_distances(s, mode, d);
  return check_width(median_of(std::move(d)));
}

SimilarityMatrix rbf_similarity(const PointCloud& points, double width) {
  if (!(width > 0.0) || !std::isfinite(width)) throw std::invalid_argument("kernel width must be positive");
  const auto n = points.size();
  SquareMatrix<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j)
      k.set_symmetric(i, j, std::exp(-squared_distance(points[i], points[j]) / width));
  }
  return SimilarityMatrix(std::move(k));
}

std::vector<SimilarityMatrix> slice_similarities(const PointCloudSeries& series, DistanceMode mode,
                                                 bool global_width) {
  const double shared = global_width ? global_median_width(series, mode) : 0.0;
  std::vector<SimilarityMatrix> out;
  out.reserve(series.slice_count());
  for (const auto& s : series.slices())
    out.push_back(rbf_similarity(s, global_width ? shared : median_width(s, mode)));
  return out;
}

SimilarityMatrix total_similarity(std::span<const SimilarityMatrix> per_slice) {
  if (per_slice.empty()) throw std::invalid_argument("total similarity needs at least one matrix");
  const auto n = per_slice.front().size();
  for (const auto& k : per_slice)
    if (k.size() != n) throw std::invalid_argument("similarity matrices differ in size");
  SquareMatrix<double> sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (const auto& k : per_slice) s += k(i, j);
      sum.set_symmetric(i, j, s);
    }
  }
  return SimilarityMatrix(std::move(sum));
}

SimilarityMatrix set_kernel(const BagDataset& bags, double base_width) {
  if (!(base_width > 0.0) || !std::isfinite(base_width))
    throw std::invalid_argument("kernel width must be positive");
  const auto n = bags.size();
  SquareMatrix<double> k(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      for (const auto& u : bags.bag(a))
        for (const auto& v : bags.bag(b)) s += std::exp(-squared_distance(u, v) / base_width);
      k.set_symmetric(a, b, s);
    }
  }
  return SimilarityMatrix(std::move(k));
}

SimilarityMatrix subpoly_transform(const SimilarityMatrix& k, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sub-polynomial exponent must lie in (0,1)");
  const auto n = k.size();
  SquareMatrix<double> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      rows(i, j) = std::pow(k(i, j), p);
      norm2 += rows(i, j) * rows(i, j);
    }
    if (!(norm2 > 0.0)) throw std::invalid_argument("row " + std::to_string(i) + " is zero; cannot normalize");
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t j = 0; j < n; ++j) rows(i, j) *= inv;
  }
  SquareMatrix<double> gram(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += rows(i, c) * rows(j, c);
      gram.set_symmetric(i, j, s);
    }
  }
  return SimilarityMatrix(std::move(gram));
}

nlohmann::json to_json(const SimilarityMatrix& k) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto r = k.values().row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return {{"n", k.size()}, {"rows", std::move(rows)}};
}

SimilarityMatrix similarity_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() || !doc.contains("rows") ||
      !doc["rows"].is_array())
    throw std::invalid_argument("matrix document needs \"n\" and \"rows\"");
  const auto n_signed = doc["n"].get<long long>();
  if (n_signed < 0) throw std::invalid_argument("matrix size must be nonnegative");
  const auto n = static_cast<std::size_t>(n_signed);
  const auto& rows = doc["rows"];
  if (rows.size() != n) throw std::invalid_argument("matrix has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  SquareMatrix<double> m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw std::invalid_argument("matrix row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[i][j].is_number()) throw std::invalid_argument("matrix entries must be numbers");
      m(i, j) = rows[i][j].get<double>();
    }
  }
  return SimilarityMatrix(std::move(m));
}

PointCloudSeries read_point_csv(std::istream& in) {
  static constexpr std::string_view kIndex[] = {"t", "vertex"};
  const auto d = check_header(in, kIndex);
  std::map<std::pair<std::size_t, std::size_t>, Point> rows;
  std::size_t max_t = 0;
  std::size_t max_v = 0;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_commas(line);
    if (fields.size() != d + 2)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(d + 2) + " fields");
    const auto t = parse_field<std::size_t>(fields[0], line_no);
    const auto v = parse_field<std::size_t>(fields[1], line_no);
    Point p(d);
    for (std::size_t c = 0; c < d; ++c) p[c] = parse_field<double>(fields[c + 2], line_no);
    if (!rows.emplace(std::make_pair(t, v), std::move(p)).second)
      throw std::invalid_argument("duplicate row for t=" + std::to_string(t) + ", vertex=" + std::to_string(v));
    max_t = std::max(max_t, t);
    max_v = std::max(max_v, v);
  }
  if (rows.empty()) throw std::invalid_argument("point CSV has no rows");
  const auto T = max_t + 1;
  const auto n = max_v + 1;
  if (rows.size() != T * n)
    throw std::invalid_argument("point CSV must contain every (t, vertex) pair exactly once");
  std::vector<PointCloud> slices(T, PointCloud(n));
  for (auto& [key, p] : rows) slices[key.first][key.second] = std::move(p);
  return PointCloudSeries(std::move(slices));
}

void write_point_csv(std::ostream& out, const PointCloudSeries& series) {
  out << "t,vertex";
  for (std::size_t c = 0; c < series.dimension(); ++c) out << ",coord_" << c;
  out << '\n';
  char buf[64];
  for (std::size_t t = 0; t < series.slice_count(); ++t) {
    for (std::size_t v = 0; v < series.point_count(); ++v) {
      out << t << ',' << v;
      for (double c : series.slice(t)[v]) {
        std::snprintf(buf, sizeof buf, "%.17g", c);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
}

BagDataset read_bag_csv(std::istream& in) {
  static constexpr std::string_view kIndex[] = {"vertex"};
  const auto d = check_header(in, kIndex);
  std::map<std::size_t, std::vector<Point>> bags;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_commas(line);
    if (fields.size() != d + 1)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " + std::to_string(d + 1) + " fields");
    const auto v = parse_field<std::size_t>(fields[0], line_no);
    Point p(d);
    for (std::size_t c = 0; c < d; ++c) p[c] = parse_field<double>(fields[c + 1], line_no);
    bags[v].push_back(std::move(p));
  }
  if (bags.empty()) throw std::invalid_argument("bag CSV has no rows");
  const auto n = bags.rbegin()->first + 1;
  std::vector<std::vector<Point>> out(n);
  for (auto& [v, b] : bags) out[v] = std::move(b);
  return BagDataset(std::move(out));
}

}  // namespace softclique
