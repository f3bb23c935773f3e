#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oge/glare_indices.hpp"
#include "oge/mrl.hpp"

namespace oge {

// Dense n x m design matrix with binary labels (1 = glare).
struct FeatureMatrix {
    std::string dataset_name;  // "MRL-<m>" or "24-metrics" for the built-ins
    std::vector<std::string> ids;
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;

    std::size_t n() const { return rows.size(); }
    std::size_t m() const { return feature_names.size(); }
    void validate() const;  // ShapeError / EmptyDatasetError
};

FeatureMatrix assemble_matrix(const std::vector<MrlFeatureVector>& features,
                              const std::vector<int>& labels,
                              const std::vector<std::string>& ids);

FeatureMatrix assemble_matrix(const std::vector<GlareMetricsRecord>& records,
                              const std::vector<int>& labels,
                              const std::vector<std::string>& ids);

// CSV layout: optional '#' comment lines, header "id,<f1>,...,<fm>,label"
void write_matrix(const FeatureMatrix& mat, std::ostream& out,
                  const std::vector<std::string>& comments = {});
void write_matrix_file(const FeatureMatrix& mat, const std::string& path,
                       const std::vector<std::string>& comments = {});
FeatureMatrix read_matrix(std::istream& in);
FeatureMatrix read_matrix_file(const std::string& path);

}
