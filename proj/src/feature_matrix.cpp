#include "oge/feature_matrix.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "oge/csv.hpp"
#include "oge/errors.hpp"

namespace oge {

void FeatureMatrix::validate() const {
    if (rows.empty()) throw EmptyDatasetError("feature matrix has no rows");
    if (feature_names.empty()) throw EmptyDatasetError("feature matrix has no columns");
    if (labels.size() != rows.size())
        throw ShapeError("label count does not match row count");
    if (!ids.empty() && ids.size() != rows.size())
        throw ShapeError("id count does not match row count");
    for (const auto& r : rows)
        if (r.size() != feature_names.size())
            throw ShapeError("ragged feature matrix row");
    for (int l : labels)
        if (l != 0 && l != 1) throw ShapeError("labels must be 0 or 1");
}

FeatureMatrix assemble_matrix(const std::vector<MrlFeatureVector>& features,
                              const std::vector<int>& labels,
                              const std::vector<std::string>& ids) {
    if (features.empty()) throw EmptyDatasetError("no feature vectors");
    if (labels.size() != features.size()) throw ShapeError("label count mismatch");
    const std::size_t m = features.front().region_means.size();
    const int g = features.front().g;
    FeatureMatrix mat;
    mat.dataset_name = "MRL-" + std::to_string(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::ostringstream os;
        os << "r" << (j + 1);
        mat.feature_names.push_back(os.str());
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto& f = features[i];
        if (f.region_means.size() != m || f.g != g)
            throw ShapeError("feature vectors come from different grids or masks");
        mat.rows.push_back(f.region_means);
    }
    mat.labels = labels;
    mat.ids = ids;
    mat.validate();
    return mat;
}

FeatureMatrix assemble_matrix(const std::vector<GlareMetricsRecord>& records,
                              const std::vector<int>& labels,
                              const std::vector<std::string>& ids) {
    if (records.empty()) throw EmptyDatasetError("no metric records");
    if (labels.size() != records.size()) throw ShapeError("label count mismatch");
    FeatureMatrix mat;
    mat.dataset_name = "24-metrics";
    for (const char* n : GlareMetricsRecord::metric_names()) mat.feature_names.push_back(n);
    for (const auto& r : records) {
        auto v = r.values();
        mat.rows.emplace_back(v.begin(), v.end());
    }
    mat.labels = labels;
    mat.ids = ids;
    mat.validate();
    return mat;
}

void write_matrix(const FeatureMatrix& mat, std::ostream& out,
                  const std::vector<std::string>& comments) {
    mat.validate();
    for (const auto& c : comments) out << (c.empty() || c[0] != '#' ? "# " : "") << c << '\n';
    std::vector<std::string> hdr;
    hdr.push_back("id");
    hdr.insert(hdr.end(), mat.feature_names.begin(), mat.feature_names.end());
    hdr.push_back("label");
    write_csv_row(out, hdr);
    for (std::size_t i = 0; i < mat.rows.size(); ++i) {
        std::vector<std::string> row;
        row.push_back(mat.ids.empty() ? std::to_string(i) : mat.ids[i]);
        for (double v : mat.rows[i]) row.push_back(format_double(v));
        row.push_back(std::to_string(mat.labels[i]));
        write_csv_row(out, row);
    }
}

void write_matrix_file(const FeatureMatrix& mat, const std::string& path,
                       const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    write_matrix(mat, out, comments);
}

FeatureMatrix read_matrix(std::istream& in) {
    CsvTable t = read_csv(in);
    if (t.header.size() < 3 || t.header.front() != "id" || t.header.back() != "label")
        throw ShapeError("expected header 'id,<features...>,label'");
    FeatureMatrix mat;
    mat.feature_names.assign(t.header.begin() + 1, t.header.end() - 1);
    for (const auto& r : t.rows) {
        if (r.size() != t.header.size()) throw ShapeError("row width does not match header");
        mat.ids.push_back(r.front());
        std::vector<double> vals;
        vals.reserve(r.size() - 2);
        for (std::size_t j = 1; j + 1 < r.size(); ++j) vals.push_back(parse_double(r[j]));
        mat.rows.push_back(std::move(vals));
        long l = parse_long(r.back());
        if (l != 0 && l != 1) throw ShapeError("labels must be 0 or 1");
        mat.labels.push_back(int(l));
    }
    mat.dataset_name = "csv";
    mat.validate();
    return mat;
}

FeatureMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return read_matrix(in);
}

}
