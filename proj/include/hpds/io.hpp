#pragma once

#include "hpds/system.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace hpds {

inline constexpr int kSchemaVersion = 1;

struct ModelMetadata {
    std::string name;
    std::optional<std::uint64_t> seed;
    std::string generator;  ///< generator kind, empty for hand-written files
    std::string rng;        ///< random algorithm identity when seeded
};

/// Versioned JSON model document. V / Vk are present on reduced models.
struct ModelFile {
    InputOutputHpds model;
    ModelMetadata metadata;
    std::optional<Matrix> V;
    std::optional<Matrix> Vk;
};

/// Throws InputError on malformed documents or shape mismatches.
[[nodiscard]] ModelFile parse_model(const std::string& text);
[[nodiscard]] ModelFile read_model(const std::filesystem::path& path);

/// Doubles are written in shortest round-trip form, so read(write(m)) is bit-exact.
[[nodiscard]] std::string serialize_model(const ModelFile& file);
void write_model(const std::filesystem::path& path, const ModelFile& file);

/// Header t,x_1..x_n[,y_1..y_l]; values with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Whole file as a string; InputError when it cannot be opened.
[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace hpds
