#pragma once

#include <string>

namespace tandem {

/// Writes content to a sibling temp file and renames it into place, so readers
/// never observe a half-written file.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

}  // namespace tandem
