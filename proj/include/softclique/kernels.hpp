#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <vector>

#include <json.hpp>

#include "softclique/matrix.hpp"

namespace softclique {

/// Symmetric, nonnegative, finite n x n weights. The diagonal is stored but
/// clique objectives only read pairs i < j.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  /// Throws std::invalid_argument unless `values` is exactly symmetric,
  /// finite and nonnegative.
  explicit SimilarityMatrix(SquareMatrix<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }
  const SquareMatrix<double>& values() const noexcept { return values_; }

  bool operator==(const SimilarityMatrix&) const = default;

 private:
  SquareMatrix<double> values_;
};

using Point = std::vector<double>;
using PointCloud = std::vector<Point>;

/// T slices of n points in R^d, same n and d in every slice.
class PointCloudSeries {
 public:
  explicit PointCloudSeries(std::vector<PointCloud> slices);

  std::size_t slice_count() const noexcept { return slices_.size(); }
  std::size_t point_count() const noexcept { return slices_.front().size(); }
  std::size_t dimension() const noexcept { return slices_.front().front().size(); }
  const PointCloud& slice(std::size_t t) const { return slices_.at(t); }
  std::span<const PointCloud> slices() const noexcept { return slices_; }

  bool operator==(const PointCloudSeries&) const = default;

 private:
  std::vector<PointCloud> slices_;
};

/// n nonempty bags of descriptors in R^d.
class BagDataset {
 public:
  explicit BagDataset(std::vector<std::vector<Point>> bags);

  std::size_t size() const noexcept { return bags_.size(); }
  const std::vector<Point>& bag(std::size_t i) const { return bags_.at(i); }

 private:
  std::vector<std::vector<Point>> bags_;
};

enum class DistanceMode {
  squared,    ///< median of ||v_i - v_j||^2
  euclidean,  ///< median of ||v_i - v_j||
};

double squared_distance(std::span<const double> a, std::span<const double> b);

/// Median of pairwise distances over i < j; even counts average the two
/// central values. Throws when fewer than two points or the median is zero.
double median_width(const PointCloud& points, DistanceMode mode = DistanceMode::squared);

/// Median over the pooled pairwise distances of every slice.
double global_median_width(const PointCloudSeries& series, DistanceMode mode = DistanceMode::squared);

/// exp(-||v_i - v_j||^2 / width).
SimilarityMatrix rbf_similarity(const PointCloud& points, double width);

/// One RBF matrix per slice, each with its own median width unless
/// `global_width` is set.
std::vector<SimilarityMatrix> slice_similarities(const PointCloudSeries& series,
                                                 DistanceMode mode = DistanceMode::squared,
                                                 bool global_width = false);

SimilarityMatrix total_similarity(std::span<const SimilarityMatrix> per_slice);

/// Unnormalized double sum of the RBF base kernel over bag a x bag b.
SimilarityMatrix set_kernel(const BagDataset& bags, double base_width);

/// Elementwise power p in (0,1), L2 row normalization, then the Gram
/// matrix of the normalized rows.
SimilarityMatrix subpoly_transform(const SimilarityMatrix& k, double p);

nlohmann::json to_json(const SimilarityMatrix& k);
SimilarityMatrix similarity_from_json(const nlohmann::json& doc);

/// Point CSV: header `t,vertex,coord_0,...`; every (t, vertex) exactly once.
PointCloudSeries read_point_csv(std::istream& in);
void write_point_csv(std::ostream& out, const PointCloudSeries& series);

/// Bag CSV: header `vertex,coord_0,...`; one descriptor per row.
BagDataset read_bag_csv(std::istream& in);

}  // namespace softclique
