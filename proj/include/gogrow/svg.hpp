#pragma once
// Minimal static SVG line plots.  CSV files are the contract; these are a
// convenience for eyeballing profiles and dispersion curves without an
// external plotting step.

#include <filesystem>
#include <string>
#include <vector>

namespace gogrow::svg {

struct Series {
    std::string label;
    std::vector<double> x, y;
};

class LinePlot {
public:
    LinePlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void add_series(std::string label, std::vector<double> x, std::vector<double> y);
    void write(const std::filesystem::path& path) const;

private:
    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
};

}  // namespace gogrow::svg
