#include "rearr/grid_function.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rearr {

GridFunction::GridFunction(std::vector<Cell> cells, std::string label)
    : cells_(std::move(cells)), label_(std::move(label)) {
    double sum = 0.0;
    for (const Cell& c : cells_) sum += c.measure;
    total_measure_ = sum;
    validate();
}

GridFunction::GridFunction(std::vector<Cell> cells, double total_measure, std::string label)
    : cells_(std::move(cells)), total_measure_(total_measure), label_(std::move(label)) {
    validate();
}

void GridFunction::validate() const {
    if (cells_.empty()) throw std::invalid_argument("GridFunction: no cells");
    if (!(total_measure_ > 0.0)) throw std::invalid_argument("GridFunction: total measure must be positive");
    double sum = 0.0;
    for (const Cell& c : cells_) {
        if (!(c.measure > 0.0)) throw std::invalid_argument("GridFunction: cell measure must be positive");
        if (!std::isfinite(c.value)) throw std::invalid_argument("GridFunction: cell value must be finite");
        sum += c.measure;
    }
    if (std::abs(sum - total_measure_) > 1e-12 * total_measure_)
        throw std::invalid_argument("GridFunction: cell measures do not sum to the total measure");
}

GridFunction GridFunction::map(const std::function<double(double)>& fn, std::string label) const {
    std::vector<Cell> out = cells_;
    for (Cell& c : out) c.value = fn(c.value);
    return GridFunction(std::move(out), total_measure_, std::move(label));
}

double GridFunction::abs_moment(double p) const {
    double sum = 0.0;
    for (const Cell& c : cells_) sum += c.measure * std::pow(std::abs(c.value), p);
    return sum;
}

double unit_sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("unit_sphere_area: n must be >= 1");
    const double half = 0.5 * n;
    return 2.0 * std::pow(M_PI, half) / std::tgamma(half);
}

double ball_volume(int n, double r) {
    return unit_sphere_area(n) * std::pow(r, n) / n;
}

GridFunction sample_radial_shells(const std::function<double(double)>& fn, int n, double R,
                                  std::size_t shells, double gamma, std::string label) {
    if (shells == 0) throw std::invalid_argument("sample_radial_shells: need at least one shell");
    if (!(R > 0.0)) throw std::invalid_argument("sample_radial_shells: R must be positive");
    const double area = unit_sphere_area(n);
    std::vector<GridFunction::Cell> cells;
    cells.reserve(shells);
    double r_lo = 0.0;
    double rn_lo = 0.0;
    for (std::size_t i = 1; i <= shells; ++i) {
        const double r_hi = R * std::pow(double(i) / double(shells), gamma);
        const double rn_hi = std::pow(r_hi, n);
        cells.push_back({area * (rn_hi - rn_lo) / n, fn(0.5 * (r_lo + r_hi))});
        r_lo = r_hi;
        rn_lo = rn_hi;
    }
    return GridFunction(std::move(cells), std::move(label));
}

void write_grid_csv(std::ostream& os, const GridFunction& g) {
    os << "measure,value\n";
    char buf[64];
    for (const auto& c : g.cells()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", c.measure, c.value);
        os << buf;
    }
}

GridFunction read_grid_csv(std::istream& is, std::string label) {
    std::vector<GridFunction::Cell> cells;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.find("measure") != std::string::npos) continue;  // header row
        }
        std::istringstream row(line);
        double m = 0.0, v = 0.0;
        char comma = 0;
        if (!(row >> m >> comma >> v) || comma != ',')
            throw std::invalid_argument("grid csv: malformed row: " + line);
        cells.push_back({m, v});
    }
    return GridFunction(std::move(cells), std::move(label));
}

}  // namespace rearr
