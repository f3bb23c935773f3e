#include "oge/mrl.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "oge/csv.hpp"
#include "oge/errors.hpp"

namespace oge {

namespace {

std::string ellipse_id(const FovEllipse& e) {
    std::ostringstream os;
    os << "ellipse:ah=" << e.a_h << ",av=" << e.a_v << ",cy=" << e.center_y;
    return os.str();
}

// number of g x g cell centers inside the ellipse
int count_regions(int g, const FovEllipse& e) {
    int n = 0;
    for (int row = 0; row < g; ++row)
        for (int col = 0; col < g; ++col) {
            double u = -1.0 + 2.0 * (col + 0.5) / g;
            double v = -1.0 + 2.0 * (row + 0.5) / g;
            if (e.contains(u, v)) ++n;
        }
    return n;
}

}  // namespace

CalibrationTargets CalibrationTargets::reference() {
    CalibrationTargets t;
    t.counts = {{10, 62}, {15, 133}, {20, 244}, {25, 374}, {30, 554}, {35, 739}, {40, 980}};
    return t;
}

FovMask build_mask(const GridSpec& grid, const FovEllipse& ellipse) {
    if (grid.g < 2) throw MaskError("grid size must be at least 2");
    FovMask m;
    m.g = grid.g;
    m.id = ellipse_id(ellipse);
    for (int row = 0; row < grid.g; ++row)
        for (int col = 0; col < grid.g; ++col) {
            double u = -1.0 + 2.0 * (col + 0.5) / grid.g;
            double v = -1.0 + 2.0 * (row + 0.5) / grid.g;
            if (ellipse.contains(u, v)) m.regions.emplace_back(row, col);
        }
    if (m.regions.empty()) throw MaskError("mask selects no regions");
    return m;
}

FovMask read_mask(std::istream& in) {
    FovMask m;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto f = split_csv_line(line);
        if (f.size() != 3) throw MaskError("expected 'g,row,col' line, got '" + line + "'");
        int g = int(parse_long(f[0]));
        int row = int(parse_long(f[1]));
        int col = int(parse_long(f[2]));
        if (m.g == 0) m.g = g;
        if (g != m.g) throw MaskError("inconsistent grid size in mask file");
        if (row < 0 || row >= g || col < 0 || col >= g)
            throw MaskError("region out of grid bounds: " + line);
        m.regions.emplace_back(row, col);
    }
    if (m.g < 2 || m.regions.empty()) throw MaskError("mask file empty or invalid");
    auto sorted = m.regions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw MaskError("duplicate region in mask file");
    m.id = "file";
    return m;
}

FovMask read_mask_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MaskError("cannot open mask file " + path);
    FovMask m = read_mask(in);
    m.id = "file:" + path;
    return m;
}

void write_mask(const FovMask& mask, std::ostream& out) {
    out << "# region mask, " << mask.regions.size() << " of " << mask.g << "x" << mask.g
        << " cells (" << mask.id << ")\n";
    for (const auto& [row, col] : mask.regions)
        out << mask.g << ',' << row << ',' << col << '\n';
}

void write_mask_file(const FovMask& mask, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MaskError("cannot open " + path + " for writing");
    write_mask(mask, out);
}

MrlFeatureVector extract_mrl(const LuminanceMap& lum, const FisheyeGeometry& geom,
                             const FovMask& mask) {
    if (mask.g < 2) throw MaskError("grid size must be at least 2");
    if (!(geom.radius_px > 0.0)) throw GeometryError("image-circle radius must be positive");

    const int g = mask.g;
    std::vector<double> cell_sum(std::size_t(g) * g, 0.0);
    std::vector<long> cell_n(std::size_t(g) * g, 0);

    for (int y = 0; y < lum.height; ++y)
        for (int x = 0; x < lum.width; ++x) {
            double u = (x + 0.5 - geom.center_x) / geom.radius_px;
            double v = (y + 0.5 - geom.center_y) / geom.radius_px;
            if (u * u + v * v > 1.0) continue;
            int col = int(std::floor((u + 1.0) / 2.0 * g));
            int row = int(std::floor((v + 1.0) / 2.0 * g));
            col = std::clamp(col, 0, g - 1);
            row = std::clamp(row, 0, g - 1);
            std::size_t c = std::size_t(row) * g + std::size_t(col);
            cell_sum[c] += lum.at(x, y);
            cell_n[c] += 1;
        }

    MrlFeatureVector fv;
    fv.g = g;
    fv.mask_id = mask.id;
    fv.region_means.reserve(mask.regions.size());
    fv.region_empty.reserve(mask.regions.size());
    for (const auto& [row, col] : mask.regions) {
        std::size_t c = std::size_t(row) * g + std::size_t(col);
        if (cell_n[c] > 0) {
            fv.region_means.push_back(cell_sum[c] / double(cell_n[c]));
            fv.region_empty.push_back(0);
        } else {
            fv.region_means.push_back(0.0);
            fv.region_empty.push_back(1);
        }
    }
    return fv;
}

namespace {

// For fixed (a_h, cy), a cell center (u, v) is inside the ellipse for every
// a_v >= |v - cy| / sqrt(1 - (u/a_h)^2). Sorting these critical values per
// grid turns the count into a binary search, so the a_v axis can be swept
// cheaply and the expensive search runs only over (a_h, cy).
int best_av_deviation(const std::map<int, int>& targets, double ah, double cy, double av_lo,
                      double av_hi, double av_step, double* best_av) {
    std::map<int, std::vector<double>> crit;
    for (const auto& [g, want] : targets) {
        (void)want;
        auto& t = crit[g];
        t.reserve(std::size_t(g) * g);
        for (int row = 0; row < g; ++row)
            for (int col = 0; col < g; ++col) {
                double u = -1.0 + 2.0 * (col + 0.5) / g;
                double v = -1.0 + 2.0 * (row + 0.5) / g;
                double q = 1.0 - (u / ah) * (u / ah);
                if (q <= 0.0) continue;  // never inside
                t.push_back(std::abs(v - cy) / std::sqrt(q));
            }
        std::sort(t.begin(), t.end());
    }
    int best = INT_MAX;
    for (double av = av_lo; av <= av_hi + 1e-12; av += av_step) {
        int dev = 0;
        for (const auto& [g, want] : targets) {
            const auto& t = crit[g];
            int got = int(std::upper_bound(t.begin(), t.end(), av) - t.begin());
            dev += std::abs(got - want);
        }
        if (dev < best) {
            best = dev;
            *best_av = av;
        }
    }
    return best;
}

}  // namespace

CalibrationResult calibrate_fov_ellipse(const CalibrationTargets& targets) {
    if (targets.counts.empty()) throw MaskError("no calibration targets");

    constexpr double kAxisLo = 0.60, kAxisHi = 1.20;
    constexpr double kCenterLo = -0.40, kCenterHi = 0.10;
    constexpr double kFine = 0.001;

    FovEllipse best_e{};
    int best_dev = INT_MAX;
    auto consider = [&](double ah, double cy) {
        double av = 0.0;
        int dev = best_av_deviation(targets.counts, ah, cy, kAxisLo, kAxisHi, kFine, &av);
        if (dev < best_dev) {
            best_dev = dev;
            best_e = {ah, av, cy};
        }
    };

    // coarse sweep over (a_h, cy), full-resolution sweep over a_v
    for (double ah = kAxisLo; ah <= kAxisHi + 1e-12; ah += 0.005)
        for (double cy = kCenterLo; cy <= kCenterHi + 1e-12; cy += 0.005) consider(ah, cy);
    // local refinement at the fine step
    const FovEllipse coarse = best_e;
    for (double ah = coarse.a_h - 0.005; ah <= coarse.a_h + 0.005 + 1e-12; ah += kFine)
        for (double cy = coarse.center_y - 0.005; cy <= coarse.center_y + 0.005 + 1e-12;
             cy += kFine)
            consider(ah, cy);

    CalibrationResult res;
    res.ellipse = best_e;
    res.total_abs_deviation = best_dev;
    for (const auto& [g, want] : targets.counts) {
        int got = count_regions(g, res.ellipse);
        res.achieved[g] = got;
        double rel = std::abs(got - want) / double(want);
        res.max_rel_deviation = std::max(res.max_rel_deviation, rel);
    }
    return res;
}

}
