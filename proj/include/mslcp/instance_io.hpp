#pragma once

#include <filesystem>
#include <string>

#include "mslcp/instance.hpp"

namespace mslcp {

inline constexpr int kInstanceFormatVersion = 1;

// Instance documents are JSON. Unknown fields are rejected; MOs reference
// locations by name and receive their indices from file order.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);

std::string dump_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace mslcp
