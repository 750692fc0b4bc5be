#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace rearr {

/// A measurable function sampled on a measured partition of a domain:
/// a list of cells, each carrying its measure and the function value there.
/// Cell geometry is irrelevant; only the (measure, value) pairs matter.
class GridFunction {
public:
    struct Cell {
        double measure;
        double value;
    };

    GridFunction() = default;

    /// Builds from explicit cells. total_measure defaults to the cell sum.
    /// Throws std::invalid_argument on non-positive measures, non-finite
    /// values, or a cell sum that disagrees with total_measure by more than
    /// 1e-12 relative.
    explicit GridFunction(std::vector<Cell> cells, std::string label = {});
    GridFunction(std::vector<Cell> cells, double total_measure, std::string label = {});

    const std::vector<Cell>& cells() const { return cells_; }
    double total_measure() const { return total_measure_; }
    const std::string& label() const { return label_; }

    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    /// Applies fn to every cell value, keeping measures.
    GridFunction map(const std::function<double(double)>& fn, std::string label = {}) const;

    /// Sum of measure * |value|^p (the p-th moment; p = 1 gives the L1 norm).
    double abs_moment(double p) const;

private:
    void validate() const;

    std::vector<Cell> cells_;
    double total_measure_ = 0.0;
    std::string label_;
};

/// Surface area of the unit sphere S^{n-1} in R^n.
double unit_sphere_area(int n);

/// Volume of the ball of radius r in R^n.
double ball_volume(int n, double r);

/// Samples a radial function on concentric shells of B(0, R) in R^n.
/// Shell boundaries follow the graded rule r_i = R * (i/shells)^gamma; the
/// cell value is fn at the shell midpoint and the cell measure is the exact
/// shell volume.
GridFunction sample_radial_shells(const std::function<double(double)>& fn, int n, double R,
                                  std::size_t shells, double gamma = 1.5, std::string label = {});

/// CSV round trip, header "measure,value", '.' decimal separator, UTF-8.
void write_grid_csv(std::ostream& os, const GridFunction& g);
GridFunction read_grid_csv(std::istream& is, std::string label = {});

}  // namespace rearr
