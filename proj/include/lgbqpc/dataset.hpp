#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lgbqpc {

class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Row-major n x m matrix of finite reals with optional ground-truth labels.
/// Immutable once constructed; granular balls refer to rows by index.
class Dataset {
  public:
    Dataset(std::vector<double> values, std::size_t n_features,
            std::optional<std::vector<int>> labels = std::nullopt)
      : values_{std::move(values)}
      , m_{n_features}
      , labels_{std::move(labels)} {
        if (m_ == 0) throw DataError("dataset needs at least one feature");
        if (values_.empty() || values_.size() % m_ != 0)
            throw DataError("dataset needs at least one complete row");
        n_ = values_.size() / m_;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw DataError("non-finite value at row " + std::to_string(i / m_) + ", column " +
                                std::to_string(i % m_));
        }
        if (labels_ && labels_->size() != n_)
            throw DataError("label count " + std::to_string(labels_->size()) +
                            " does not match row count " + std::to_string(n_));
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t n_features() const noexcept { return m_; }

    std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * m_, m_}; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * m_ + j]; }

    const std::vector<double>& values() const noexcept { return values_; }
    bool has_labels() const noexcept { return labels_.has_value(); }
    const std::vector<int>& labels() const {
        if (!labels_) throw DataError("dataset has no ground-truth labels");
        return *labels_;
    }
    const std::optional<std::vector<int>>& maybe_labels() const noexcept { return labels_; }

  private:
    std::vector<double>             values_;
    std::size_t                     n_{0};
    std::size_t                     m_;
    std::optional<std::vector<int>> labels_;
};

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::optional<double> parse_real(std::string_view cell) {
    const std::string text{trim(cell)};
    if (text.empty()) return std::nullopt;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (used != text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

}  // namespace detail

/// Parses comma-separated numeric text. Row/column numbers in error messages are 1-based
/// and count the header line when present.
inline Dataset parse_csv(std::istream& in, bool has_header, std::optional<std::size_t> label_column = std::nullopt) {
    std::vector<double> values;
    std::vector<int> labels;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::size_t rows = 0;
    std::string line;

    while (std::getline(in, line)) {
        ++line_no;
        const auto view = detail::trim(line);
        if (line_no == 1 && has_header) continue;
        if (view.empty()) continue;

        const auto cells = detail::split_commas(view);
        if (rows == 0) {
            width = cells.size();
            if (label_column && *label_column >= width)
                throw DataError("label column " + std::to_string(*label_column) + " out of range (row has " +
                                std::to_string(width) + " columns)");
            if (label_column && width < 2) throw DataError("no feature columns besides the label column");
        } else if (cells.size() != width) {
            throw DataError("ragged row at line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                            " columns, got " + std::to_string(cells.size()));
        }

        for (std::size_t j = 0; j < cells.size(); ++j) {
            const auto parsed = detail::parse_real(cells[j]);
            if (!parsed)
                throw DataError("non-numeric cell '" + std::string{detail::trim(cells[j])} + "' at row " +
                                std::to_string(line_no) + ", column " + std::to_string(j + 1));
            if (label_column && j == *label_column) {
                if (*parsed != std::round(*parsed))
                    throw DataError("non-integer label at row " + std::to_string(line_no));
                labels.push_back(static_cast<int>(*parsed));
            } else {
                values.push_back(*parsed);
            }
        }
        ++rows;
    }
    if (rows == 0) throw DataError("no data rows");

    const std::size_t m = label_column ? width - 1 : width;
    if (label_column) return Dataset{std::move(values), m, std::move(labels)};
    return Dataset{std::move(values), m};
}

inline Dataset load_csv(const std::string& path, bool has_header,
                        std::optional<std::size_t> label_column = std::nullopt) {
    std::ifstream in{path};
    if (!in) throw DataError("cannot open '" + path + "'");
    return parse_csv(in, has_header, label_column);
}

/// Z-score every column with the population standard deviation. Columns with no spread
/// (relative to their magnitude) become all zeros.
inline Dataset standardize(const Dataset& d) {
    const std::size_t n = d.size();
    const std::size_t m = d.n_features();
    std::vector<double> out(d.values());

    for (std::size_t j = 0; j < m; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += d(i, j);
        mean /= static_cast<double>(n);

        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dev = d(i, j) - mean;
            var += dev * dev;
        }
        double sd = std::sqrt(var / static_cast<double>(n));
        const bool constant = sd <= 1e-12 * (1.0 + std::abs(mean));

        for (std::size_t i = 0; i < n; ++i) out[i * m + j] = constant ? 0.0 : (d(i, j) - mean) / sd;
    }
    return Dataset{std::move(out), m, d.maybe_labels()};
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

inline double euclidean(std::span<const double> a, std::span<const double> b) noexcept {
    return std::sqrt(squared_distance(a, b));
}

}  // namespace lgbqpc
