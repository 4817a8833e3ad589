#pragma once

#include <string>

#include "kexp/image.hpp"
#include "kexp/types.hpp"

namespace kexp {

// Comma-delimited numeric matrix, optional single header row.
DataMatrix read_csv_matrix(const std::string& path, bool has_header = false);
void write_csv_matrix(const std::string& path, const DataMatrix& data);

// One integer label per line, trailing newline. Files may leave a cluster
// id unused; the in-memory invariant is re-checked by consumers.
Membership read_labels_csv(const std::string& path);
void write_labels_csv(const std::string& path, const Membership& membership);

struct ColumnScaling {
    std::vector<double> stds;  // sample (n-1) standard deviations
};

// Divide each column by its sample standard deviation. Rejects constant
// columns by name.
std::pair<DataMatrix, ColumnScaling> scale_by_std(const DataMatrix& data);

// Binary PPM (P6, maxval 255), bit-exact round trip.
RasterImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RasterImage& image);

// (width*height) x 3 matrix of channel values in pixel order.
DataMatrix image_to_matrix(const RasterImage& image);

// Paint each pixel with its cluster's center color, rounded half-up and
// clamped to [0, 255].
RasterImage recolor(const RasterImage& image, const Membership& membership,
                    const CentroidSet& centroids);

// Rec.601 luma, replicated across the three channels.
RasterImage to_grayscale(const RasterImage& image);

}  // namespace kexp
