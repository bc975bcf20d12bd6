#pragma once

#include <string>
#include <vector>

namespace pencil {

/// Bumped whenever the on-disk layout of any emitted artifact changes.
constexpr int kFormatVersion = 1;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// CSV with %.17g cells: re-reading reproduces the doubles bit for bit.  No
/// timestamps or durations, so repeated runs emit identical bytes.
std::string render_csv(const Table& table);

/// Write-to-temporary-then-rename, creating parent directories.
void write_text_file(const std::string& path, const std::string& body);

}  // namespace pencil
