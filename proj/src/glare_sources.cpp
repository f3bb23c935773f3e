#include "oge/glare_sources.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oge/errors.hpp"

namespace oge {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

struct Component {
    std::vector<int> pixel_ids;
    double sum_w = 0.0;
    Direction dir_sum{0.0, 0.0, 0.0};  // omega-weighted direction accumulator

    Direction centroid() const {
        double n = std::sqrt(dir_sum.x * dir_sum.x + dir_sum.y * dir_sum.y + dir_sum.z * dir_sum.z);
        if (n <= 0.0) return {0.0, 0.0, 1.0};
        return {dir_sum.x / n, dir_sum.y / n, dir_sum.z / n};
    }
};

}  // namespace

std::vector<GlareSource> detect_sources(const LuminanceMap& lum, const FisheyeGeometry& geom,
                                        const SourceDetectionParams& params,
                                        const TaskZone& zone) {
    double threshold;
    if (params.absolute_floor) {
        threshold = *params.absolute_floor;
    } else {
        SceneStats st = scene_stats(lum, geom, zone);
        if (!(st.task_lum > 0.0))
            throw DetectionError(
                "task luminance is zero; adaptive threshold undefined (set an absolute floor)");
        threshold = params.threshold_multiplier * st.task_lum;
    }

    const int w = lum.width, h = lum.height;
    const std::size_t n = std::size_t(w) * std::size_t(h);
    std::vector<PixelGeometry> geo(n);
    std::vector<char> candidate(n, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            auto pg = pixel_geometry(geom, x, y);
            if (!pg) continue;
            std::size_t i = std::size_t(y) * w + std::size_t(x);
            geo[i] = *pg;
            if (lum.values[i] > threshold) candidate[i] = 1;
        }

    // 8-connected components over the candidate mask
    std::vector<int> comp_of(n, -1);
    std::vector<Component> comps;
    std::vector<int> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (!candidate[start] || comp_of[start] >= 0) continue;
        int id = int(comps.size());
        comps.emplace_back();
        stack.push_back(int(start));
        comp_of[start] = id;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            int x = i % w, y = i / w;
            Component& c = comps[std::size_t(id)];
            c.pixel_ids.push_back(i);
            double ww = geo[std::size_t(i)].omega;
            Direction d = direction_from_angles(geo[std::size_t(i)].theta, geo[std::size_t(i)].phi);
            c.sum_w += ww;
            c.dir_sum.x += ww * d.x;
            c.dir_sum.y += ww * d.y;
            c.dir_sum.z += ww * d.z;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (!dx && !dy) continue;
                    int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    std::size_t j = std::size_t(ny) * w + std::size_t(nx);
                    if (candidate[j] && comp_of[j] < 0) {
                        comp_of[j] = id;
                        stack.push_back(int(j));
                    }
                }
        }
    }

    // merge components with nearby centroids (transitive closure)
    UnionFind uf(int(comps.size()));
    for (std::size_t a = 0; a < comps.size(); ++a)
        for (std::size_t b = a + 1; b < comps.size(); ++b)
            if (angle_between(comps[a].centroid(), comps[b].centroid()) <= params.merge_radius_rad)
                uf.unite(int(a), int(b));

    std::vector<std::vector<int>> groups(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i)
        groups[std::size_t(uf.find(int(i)))].push_back(int(i));

    std::vector<GlareSource> out;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        GlareSource s;
        double sum_w = 0.0, sum_lw = 0.0, sum_pw = 0.0;
        Direction dsum{0.0, 0.0, 0.0};
        for (int ci : g)
            for (int i : comps[std::size_t(ci)].pixel_ids) {
                s.pixel_ids.push_back(i);
                const PixelGeometry& pg = geo[std::size_t(i)];
                double l = lum.values[std::size_t(i)];
                sum_w += pg.omega;
                sum_lw += l * pg.omega;
                sum_pw += pg.position_index * pg.omega;
                s.direct_illuminance += l * pg.omega * std::cos(pg.theta);
                Direction d = direction_from_angles(pg.theta, pg.phi);
                dsum.x += pg.omega * d.x;
                dsum.y += pg.omega * d.y;
                dsum.z += pg.omega * d.z;
            }
        std::sort(s.pixel_ids.begin(), s.pixel_ids.end());
        s.omega = sum_w;
        s.luminance = sum_lw / sum_w;
        s.position_index = sum_pw / sum_w;
        double nrm = std::sqrt(dsum.x * dsum.x + dsum.y * dsum.y + dsum.z * dsum.z);
        if (nrm > 0.0) {
            s.centroid_theta = std::acos(std::clamp(dsum.z / nrm, -1.0, 1.0));
            s.centroid_phi = std::atan2(dsum.x / nrm, dsum.y / nrm);
            if (s.centroid_phi < 0.0) s.centroid_phi += 2.0 * 3.14159265358979323846;
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const GlareSource& a, const GlareSource& b) {
        return a.pixel_ids.front() < b.pixel_ids.front();
    });
    return out;
}

}
