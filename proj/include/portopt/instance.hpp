#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace portopt {

/// Per-asset first and second moments of the weekly return series.
struct AssetStats {
    int index = 0;            ///< 0-based asset id
    double mean_return = 0;   ///< expected weekly return
    double std_dev = 0;       ///< weekly return standard deviation, >= 0
};

/// An asset universe: per-asset statistics plus the full covariance matrix.
///
/// Immutable after construction; safe to share read-only across parallel
/// solver runs.
///
/// Text format ("portN", whitespace-separated decimal tokens, any line
/// breaking):
///   token 1:             integer n (number of assets)
///   tokens 2..2n+1:      n pairs (mean_return_i, std_dev_i)
///   remaining tokens:    triples (i, j, rho_ij), 1-based indices, covering
///                        every pair including the diagonal; either
///                        triangular order is accepted
/// Covariance is assembled as sigma_ij = rho_ij * s_i * s_j; the diagonal is
/// set to s_i^2 exactly after validating rho_ii == 1 within 1e-9.
class Instance {
public:
    /// Parses the portN format from a stream.
    /// Throws MalformedFile, InconsistentCount, CorrelationOutOfRange.
    static Instance parse_orlib(std::istream& in);

    /// Same, reading from a file path. Throws IoError if unreadable.
    static Instance parse_orlib_file(const std::string& path);

    /// Builds an instance from means and a covariance matrix (tests,
    /// synthetic data). std_devs are taken as sqrt of the diagonal.
    static Instance from_covariance(std::vector<double> means,
                                    Eigen::MatrixXd covariance);

    int size() const { return static_cast<int>(stats_.size()); }
    const std::vector<AssetStats>& stats() const { return stats_; }
    const AssetStats& stat(int i) const;
    double mean_return(int i) const { return stat(i).mean_return; }
    double std_dev(int i) const { return stat(i).std_dev; }

    /// sigma_ij, symmetric in its arguments. Throws IndexOutOfRange.
    double covariance_of(int i, int j) const;

    const Eigen::MatrixXd& covariance() const { return covariance_; }
    const Eigen::VectorXd& means() const { return means_; }

    /// Writes the instance back in the portN format (upper triangle, full
    /// precision). parse_orlib on the output reproduces the instance.
    void write_orlib(std::ostream& out) const;

private:
    Instance() = default;

    std::vector<AssetStats> stats_;
    Eigen::VectorXd means_;
    Eigen::MatrixXd covariance_;
};

}  // namespace portopt
