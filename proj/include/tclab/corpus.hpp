#pragma once

#include <cstdint>

#include "tclab/image.hpp"

namespace tclab::corpus {

// Smooth radial shading crossed by anti-aliased oriented edges, with mild
// sensor-like noise. Quantized to integers.
GrayImage gradient_edges(int width, int height, std::uint32_t seed);

// Band-limited random texture: a sum of oriented sinusoids with 1/f
// amplitudes, plus mild noise. Quantized to integers.
GrayImage texture(int width, int height, std::uint32_t seed);

inline constexpr std::uint32_t kGradientSeed = 20240601u;
inline constexpr std::uint32_t kTextureSeed = 20240602u;

}  // namespace tclab::corpus
