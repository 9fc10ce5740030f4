#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace logcap {

/// Finite union of disjoint closed real intervals [e1,e2] u ... u
/// [e_{2r-1}, e_{2r}], endpoints strictly increasing.
class BandSet {
  public:
    BandSet() = default;
    explicit BandSet(std::vector<double> endpoints);
    static BandSet interval(double a, double b);
    /// Sorts, validates and merges endpoints that coincide within tol;
    /// merge points (closed gaps) are reported separately.
    static std::pair<BandSet, std::vector<double>> merged(std::vector<double> endpoints,
                                                          double tol);

    [[nodiscard]] std::size_t band_count() const { return endpoints_.size() / 2; }
    [[nodiscard]] std::pair<double, double> band(std::size_t j) const;
    [[nodiscard]] const std::vector<double>& endpoints() const { return endpoints_; }
    [[nodiscard]] double min() const { return endpoints_.front(); }
    [[nodiscard]] double max() const { return endpoints_.back(); }
    [[nodiscard]] double total_length() const;
    /// Interior gaps (open intervals between consecutive bands).
    [[nodiscard]] std::vector<std::pair<double, double>> gaps() const;
    [[nodiscard]] bool contains(double x, double tol = 0.0) const;
    /// Distance from a real point to the set.
    [[nodiscard]] double distance(double x) const;
    /// Distance from a complex point to the set.
    [[nodiscard]] double distance(std::complex<double> z) const;
    /// True when other covers this set (every band inside a band of other).
    [[nodiscard]] bool subset_of(const BandSet& other, double tol = 0.0) const;

  private:
    std::vector<double> endpoints_;
};

/// Finite point set in the complex plane.
struct PointCloud {
    std::vector<std::complex<double>> points;
    bool conj_symmetric = false;

    PointCloud() = default;
    /// Validates exact conjugate pairing when conj_symmetric is set.
    PointCloud(std::vector<std::complex<double>> pts, bool conj_sym);
};

/// delta-distance (Hausdorff): smallest r such that each set lies in the
/// closed r-inflation of the other.
double set_distance(const BandSet& a, const BandSet& b);
double set_distance(const PointCloud& a, const PointCloud& b);

}  // namespace logcap
