#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace testutil {

inline std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "graphval-tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& content) {
    auto path = scratch_dir() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace testutil
