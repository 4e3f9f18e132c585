#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "permdec/errors.hpp"

namespace permdec::detail {

static_assert(std::endian::native == std::endian::little,
              "raw volume files are little-endian; big-endian hosts are unsupported");

enum class Dtype { U8, U16, F32, F64 };

inline std::string dtype_name(Dtype d) {
    switch (d) {
        case Dtype::U8: return "u8";
        case Dtype::U16: return "u16";
        case Dtype::F32: return "f32";
        case Dtype::F64: return "f64";
    }
    return "?";
}

inline Dtype dtype_from_name(const std::string& s) {
    if (s == "u8") return Dtype::U8;
    if (s == "u16") return Dtype::U16;
    if (s == "f32") return Dtype::F32;
    if (s == "f64") return Dtype::F64;
    raise(ErrorCode::InvalidArgument, "unknown dtype '" + s + "'");
}

inline std::size_t dtype_size(Dtype d) {
    switch (d) {
        case Dtype::U8: return 1;
        case Dtype::U16: return 2;
        case Dtype::F32: return 4;
        case Dtype::F64: return 8;
    }
    return 0;
}

struct Sidecar {
    int nx = 0, ny = 0, nz = 0;
    double voxel_size_um = 0.0;
    Dtype dtype = Dtype::F64;
    std::string value_kind;  // "intensity" | "permeability_mD" | "labels"
};

inline std::filesystem::path sidecar_path(const std::filesystem::path& data_path) {
    return std::filesystem::path(data_path.string() + ".meta.json");
}

inline Sidecar read_sidecar(const std::filesystem::path& data_path) {
    const auto meta = sidecar_path(data_path);
    std::ifstream in(meta);
    if (!in) raise(ErrorCode::IoFailure, "cannot open sidecar " + meta.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::IoFailure, "corrupt sidecar " + meta.string() + ": " + e.what());
    }
    Sidecar s;
    try {
        s.nx = j.at("nx").get<int>();
        s.ny = j.at("ny").get<int>();
        s.nz = j.at("nz").get<int>();
        s.voxel_size_um = j.at("voxel_size_um").get<double>();
        s.dtype = dtype_from_name(j.at("dtype").get<std::string>());
        s.value_kind = j.at("value_kind").get<std::string>();
        if (j.at("order").get<std::string>() != "x-fastest")
            raise(ErrorCode::InvalidArgument, "unsupported voxel order in " + meta.string());
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::IoFailure, "sidecar " + meta.string() + " missing field: " + e.what());
    }
    if (s.nx < 1 || s.ny < 1 || s.nz < 1)
        raise(ErrorCode::InvalidArgument, "non-positive dims in " + meta.string());
    if (!(s.voxel_size_um > 0.0))
        raise(ErrorCode::InvalidArgument, "non-positive voxel_size_um in " + meta.string());
    return s;
}

inline void write_sidecar(const std::filesystem::path& data_path, const Sidecar& s) {
    nlohmann::json j{
        {"nx", s.nx},
        {"ny", s.ny},
        {"nz", s.nz},
        {"voxel_size_um", s.voxel_size_um},
        {"dtype", dtype_name(s.dtype)},
        {"value_kind", s.value_kind},
        {"order", "x-fastest"},
    };
    const auto meta = sidecar_path(data_path);
    std::ofstream out(meta);
    if (!out) raise(ErrorCode::IoFailure, "cannot write sidecar " + meta.string());
    out << j.dump(2) << '\n';
    if (!out) raise(ErrorCode::IoFailure, "failed writing sidecar " + meta.string());
}

// Reads the raw payload and widens to double. u8/u16/f32 widen exactly.
inline std::vector<double> read_raw(const std::filesystem::path& path, const Sidecar& s) {
    const std::size_t n =
        static_cast<std::size_t>(s.nx) * static_cast<std::size_t>(s.ny) * static_cast<std::size_t>(s.nz);
    std::error_code ec;
    const auto bytes = std::filesystem::file_size(path, ec);
    if (ec) raise(ErrorCode::IoFailure, "cannot stat " + path.string());
    if (bytes != n * dtype_size(s.dtype))
        raise(ErrorCode::SizeMismatch, path.string() + ": sidecar dims give " +
                                           std::to_string(n * dtype_size(s.dtype)) + " bytes, file holds " +
                                           std::to_string(bytes));
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::IoFailure, "cannot open " + path.string());

    std::vector<double> out(n);
    auto load_as = [&]<class T>(T) {
        std::vector<T> buf(n);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * sizeof(T)));
        if (!in) raise(ErrorCode::IoFailure, "short read on " + path.string());
        for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(buf[i]);
    };
    switch (s.dtype) {
        case Dtype::U8: load_as(std::uint8_t{}); break;
        case Dtype::U16: load_as(std::uint16_t{}); break;
        case Dtype::F32: load_as(float{}); break;
        case Dtype::F64: load_as(double{}); break;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(out[i]))
            raise(ErrorCode::NonFiniteValue, path.string() + ": non-finite value at index " + std::to_string(i));
    return out;
}

// Writes doubles at the requested dtype. Narrowing targets require every value
// to survive the round trip exactly; the persisted form must reload bit-equal.
inline void write_raw(const std::filesystem::path& path, std::span<const double> values, Dtype dtype) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    auto store_as = [&]<class T>(T) {
        std::vector<T> buf(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double v = values[i];
            if constexpr (std::is_integral_v<T>) {
                if (!(v >= 0.0 && v <= static_cast<double>(std::numeric_limits<T>::max()) && v == std::floor(v)))
                    raise(ErrorCode::InvalidArgument,
                          "value " + std::to_string(v) + " not representable as " + dtype_name(dtype));
                buf[i] = static_cast<T>(v);
            } else {
                const T narrowed = static_cast<T>(v);
                if (static_cast<double>(narrowed) != v)
                    raise(ErrorCode::InvalidArgument,
                          "value " + std::to_string(v) + " not representable as " + dtype_name(dtype));
                buf[i] = narrowed;
            }
        }
        out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(T)));
    };
    switch (dtype) {
        case Dtype::U8: store_as(std::uint8_t{}); break;
        case Dtype::U16: store_as(std::uint16_t{}); break;
        case Dtype::F32: store_as(float{}); break;
        case Dtype::F64: store_as(double{}); break;
    }
    if (!out) raise(ErrorCode::IoFailure, "failed writing " + path.string());
}

}  // namespace permdec::detail
