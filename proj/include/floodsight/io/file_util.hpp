#pragma once

#include <string>
#include <vector>

namespace floodsight {

std::string read_text_file(const std::string& path);
std::vector<unsigned char> read_binary_file(const std::string& path);

// Writes to <path>.tmp then renames, so readers never observe partial files.
void atomic_write_file(const std::string& path, const void* data, std::size_t size);
void atomic_write_text(const std::string& path, const std::string& text);

}  // namespace floodsight
