#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "emtk/field.hpp"

namespace emtk {

// Structured parse failure carrying the byte offset of the defect.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::uint64_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          byte_offset(offset) {}
    std::uint64_t byte_offset;
};

// VFLD1: magic "VFLD1\0"; little-endian u8 n, u8 channel count, u16 zero,
// n x u32 grid sizes, f64 L, u32 T, T x f64 times, then T blocks of
// channel-major row-major f64 samples.  Channels 0..n-1 are the velocity
// components; an optional channel n is the pressure.
void save_field(const SampledField& field, const std::string& path);
SampledField load_field(const std::string& path);

// VMSR1: magic "VMSR1\0"; little-endian u8 n, u8 one, u16 zero, n x u32 grid
// sizes, f64 L, u32 atom count, row-major f64 density grid, then atom
// records (n x f64 position, f64 weight).
void save_measure(const SampledMeasure& m, const std::string& path);
SampledMeasure load_measure(const std::string& path);

// CSV export of one scalar slice (velocity component or pressure) at one
// time index, one row per grid point: i,j[,k],value.
void export_scalar_csv(const SampledField& field, int time_index, int channel,
                       const std::string& path);

}  // namespace emtk
