#pragma once

#include <cstdint>
#include <vector>

#include "kexp/types.hpp"

namespace kexp {

// width x height grid of 8-bit RGB pixels, row-major, top-to-bottom.
struct RasterImage {
    std::size_t width = 0, height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel

    RasterImage() = default;
    RasterImage(std::size_t w, std::size_t h)
        : width(w), height(h), pixels(w * h * 3, 0) {
        if (w == 0 || h == 0) throw error("image dimensions must be positive");
    }

    std::size_t pixel_count() const { return width * height; }

    std::uint8_t& at(std::size_t i, std::size_t channel) {
        return pixels[i * 3 + channel];
    }
    std::uint8_t at(std::size_t i, std::size_t channel) const {
        return pixels[i * 3 + channel];
    }

    bool operator==(const RasterImage& o) const = default;
};

}  // namespace kexp
