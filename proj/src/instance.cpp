#include "portopt/instance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "portopt/errors.hpp"

namespace portopt {

namespace {

constexpr double kCorrelationTol = 1e-9;
constexpr double kDuplicateTol = 1e-12;

double parse_double(const std::string& tok, std::size_t position) {
    double value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw MalformedFile("non-numeric token '" + tok + "' at position " +
                            std::to_string(position + 1));
    }
    return value;
}

int parse_int(const std::string& tok, std::size_t position) {
    int value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw MalformedFile("expected integer, got '" + tok + "' at position " +
                            std::to_string(position + 1));
    }
    return value;
}

}  // namespace

Instance Instance::parse_orlib(std::istream& in) {
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(std::move(tok));

    if (tokens.empty()) throw MalformedFile("empty input");

    const int n = parse_int(tokens[0], 0);
    if (n < 2) throw MalformedFile("asset count must be >= 2, got " + tokens[0]);

    const std::size_t n_pairs = static_cast<std::size_t>(n) * (n + 1) / 2;
    const std::size_t expected = 1 + 2 * static_cast<std::size_t>(n) + 3 * n_pairs;
    if (tokens.size() != expected) {
        throw InconsistentCount("declared " + std::to_string(n) + " assets, expected " +
                                std::to_string(expected) + " tokens but found " +
                                std::to_string(tokens.size()));
    }

    Instance inst;
    inst.stats_.resize(n);
    std::size_t pos = 1;
    for (int i = 0; i < n; ++i) {
        const double mean = parse_double(tokens[pos], pos);
        const double sd = parse_double(tokens[pos + 1], pos + 1);
        if (sd < 0) {
            throw MalformedFile("negative standard deviation for asset " +
                                std::to_string(i + 1));
        }
        inst.stats_[i] = AssetStats{i, mean, sd};
        pos += 2;
    }

    inst.covariance_ = Eigen::MatrixXd::Constant(n, n,
                                                 std::numeric_limits<double>::quiet_NaN());
    std::size_t seen = 0;
    while (pos < tokens.size()) {
        const int fi = parse_int(tokens[pos], pos);
        const int fj = parse_int(tokens[pos + 1], pos + 1);
        const double rho = parse_double(tokens[pos + 2], pos + 2);
        pos += 3;
        if (fi < 1 || fi > n || fj < 1 || fj > n) {
            throw MalformedFile("correlation pair (" + std::to_string(fi) + "," +
                                std::to_string(fj) + ") out of range 1.." +
                                std::to_string(n));
        }
        if (std::abs(rho) > 1.0 + kCorrelationTol) {
            throw CorrelationOutOfRange("correlation " + std::to_string(rho) +
                                        " for pair (" + std::to_string(fi) + "," +
                                        std::to_string(fj) + ")");
        }
        const int i = fi - 1;
        const int j = fj - 1;
        if (i == j && std::abs(rho - 1.0) > kCorrelationTol) {
            throw CorrelationOutOfRange("diagonal correlation for asset " +
                                        std::to_string(fi) + " is " +
                                        std::to_string(rho) + ", expected 1");
        }
        const double sigma =
            i == j ? inst.stats_[i].std_dev * inst.stats_[i].std_dev
                   : rho * inst.stats_[i].std_dev * inst.stats_[j].std_dev;
        const double prev = inst.covariance_(i, j);
        if (!std::isnan(prev)) {
            if (std::abs(prev - sigma) > kDuplicateTol) {
                throw MalformedFile("conflicting duplicate correlation for pair (" +
                                    std::to_string(fi) + "," + std::to_string(fj) + ")");
            }
            continue;
        }
        inst.covariance_(i, j) = sigma;
        inst.covariance_(j, i) = sigma;
        ++seen;
    }

    if (seen != n_pairs) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (std::isnan(inst.covariance_(i, j)))
                    throw MalformedFile("missing correlation pair (" +
                                        std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ")");
    }

    inst.means_.resize(n);
    for (int i = 0; i < n; ++i) inst.means_[i] = inst.stats_[i].mean_return;
    return inst;
}

Instance Instance::parse_orlib_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    return parse_orlib(in);
}

Instance Instance::from_covariance(std::vector<double> means, Eigen::MatrixXd covariance) {
    const int n = static_cast<int>(means.size());
    if (n < 2 || covariance.rows() != n || covariance.cols() != n) {
        throw MalformedFile("from_covariance: need n >= 2 and an n x n matrix");
    }
    Instance inst;
    inst.stats_.resize(n);
    for (int i = 0; i < n; ++i) {
        const double var = covariance(i, i);
        if (var < 0) throw MalformedFile("negative variance on the diagonal");
        inst.stats_[i] = AssetStats{i, means[i], std::sqrt(var)};
        for (int j = 0; j < i; ++j) {
            // enforce exact symmetry
            const double s = 0.5 * (covariance(i, j) + covariance(j, i));
            covariance(i, j) = s;
            covariance(j, i) = s;
        }
    }
    inst.covariance_ = std::move(covariance);
    inst.means_ = Eigen::Map<const Eigen::VectorXd>(means.data(), n);
    return inst;
}

const AssetStats& Instance::stat(int i) const {
    if (i < 0 || i >= size()) {
        throw IndexOutOfRange("asset index " + std::to_string(i) + " outside 0.." +
                              std::to_string(size() - 1));
    }
    return stats_[static_cast<std::size_t>(i)];
}

double Instance::covariance_of(int i, int j) const {
    if (i < 0 || i >= size() || j < 0 || j >= size()) {
        throw IndexOutOfRange("covariance index (" + std::to_string(i) + "," +
                              std::to_string(j) + ") outside 0.." +
                              std::to_string(size() - 1));
    }
    return covariance_(i, j);
}

void Instance::write_orlib(std::ostream& out) const {
    const int n = size();
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << n << '\n';
    for (const auto& s : stats_) out << fmt(s.mean_return) << ' ' << fmt(s.std_dev) << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double rho;
            if (i == j) {
                rho = 1.0;
            } else {
                const double denom = stats_[i].std_dev * stats_[j].std_dev;
                rho = denom > 0 ? covariance_(i, j) / denom : 0.0;
            }
            out << (i + 1) << ' ' << (j + 1) << ' ' << fmt(rho) << '\n';
        }
    }
}

}  // namespace portopt
