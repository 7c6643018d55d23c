#include "floqlab/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "floqlab/errors.hpp"

namespace floqlab {

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // normalize -0 so both zeros print the same way
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 12);
    if (res.ec != std::errc{})
        throw Error("format_double: conversion failed");
    return std::string(buf.data(), res.ptr);
}

double log10_clamped(double v) {
    if (!(v > 0.0)) return -300.0;
    return std::max(std::log10(v), -300.0);
}

} // namespace floqlab
