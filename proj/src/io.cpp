#include "kexp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kexp {

namespace {

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
            ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw error("unparsable cell '" + cell + "' at row " + std::to_string(row) +
                    ", column " + std::to_string(col));
    }
}

std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

DataMatrix read_csv_matrix(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line_no == 1 && has_header) continue;
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        const auto cells = split_commas(line);
        if (width == 0) width = cells.size();
        else if (cells.size() != width)
            throw error("ragged row " + std::to_string(line_no) + " in '" + path +
                        "': " + std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(width));
        std::vector<double> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c)
            row.push_back(parse_cell(cells[c], line_no, c + 1));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw error("no data rows in '" + path + "'");
    return DataMatrix::from_rows(rows);
}

void write_csv_matrix(const std::string& path, const DataMatrix& data) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path + "'");
    char buf[64];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", data(i, j));
            out << buf;
            if (j + 1 < data.cols()) out << ',';
        }
        out << '\n';
    }
}

Membership read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    Membership labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        int value = 0;
        const auto [ptr, ec] =
            std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc{} || ptr != line.data() + line.size() || value < 0)
            throw error("invalid label '" + line + "' at line " +
                        std::to_string(line_no) + " of '" + path + "'");
        labels.push_back(value);
    }
    if (labels.empty()) throw error("no labels in '" + path + "'");
    return labels;
}

void write_labels_csv(const std::string& path, const Membership& membership) {
    if (membership.empty()) throw error("refusing to write empty label file");
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path + "'");
    for (int c : membership) out << c << '\n';
}

std::pair<DataMatrix, ColumnScaling> scale_by_std(const DataMatrix& data) {
    const std::size_t n = data.rows(), p = data.cols();
    if (n < 2) throw error("scaling needs at least 2 rows");
    ColumnScaling scaling;
    scaling.stds.resize(p);
    DataMatrix scaled(n, p);
    for (std::size_t j = 0; j < p; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += data(i, j);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = data(i, j) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        if (sd == 0.0)
            throw error("column " + std::to_string(j + 1) + " has zero variance");
        scaling.stds[j] = sd;
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) = data(i, j) / sd;
    }
    return {std::move(scaled), std::move(scaling)};
}

RasterImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open '" + path + "'");
    std::string magic;
    in >> magic;
    if (magic != "P6") throw error("'" + path + "': unsupported format (want binary P6)");
    long width = 0, height = 0, maxval = 0;
    in >> width >> height >> maxval;
    if (!in || width <= 0 || height <= 0)
        throw error("'" + path + "': malformed PPM header");
    if (maxval != 255) throw error("'" + path + "': maxval must be 255");
    in.get();  // single whitespace byte after maxval
    RasterImage img(static_cast<std::size_t>(width), static_cast<std::size_t>(height));
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw error("'" + path + "': truncated pixel data");
    return img;
}

void write_ppm(const std::string& path, const RasterImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write '" + path + "'");
    out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              static_cast<std::streamsize>(image.pixels.size()));
}

DataMatrix image_to_matrix(const RasterImage& image) {
    DataMatrix m(image.pixel_count(), 3);
    for (std::size_t i = 0; i < image.pixel_count(); ++i)
        for (std::size_t ch = 0; ch < 3; ++ch)
            m(i, ch) = static_cast<double>(image.at(i, ch));
    return m;
}

RasterImage recolor(const RasterImage& image, const Membership& membership,
                    const CentroidSet& centroids) {
    if (membership.size() != image.pixel_count())
        throw error("membership length does not match pixel count");
    if (centroids.p != 3) throw error("centroids must be K x 3");
    RasterImage out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        const int c = membership[i];
        if (c < 0 || static_cast<std::size_t>(c) >= centroids.k)
            throw error("cluster id out of range in recolor");
        for (std::size_t ch = 0; ch < 3; ++ch) {
            const double v = centroids(c, ch);
            if (std::isnan(v)) throw error("NaN centroid channel");
            const double rounded = std::floor(v + 0.5);  // half-up
            const double clamped = std::min(255.0, std::max(0.0, rounded));
            out.at(i, ch) = static_cast<std::uint8_t>(clamped);
        }
    }
    return out;
}

RasterImage to_grayscale(const RasterImage& image) {
    RasterImage out(image.width, image.height);
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        const double luma = 0.299 * image.at(i, 0) + 0.587 * image.at(i, 1) +
                            0.114 * image.at(i, 2);
        const auto v = static_cast<std::uint8_t>(
            std::min(255.0, std::floor(luma + 0.5)));
        out.at(i, 0) = out.at(i, 1) = out.at(i, 2) = v;
    }
    return out;
}

}  // namespace kexp
