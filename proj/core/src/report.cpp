#include "pencil/report.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pencil {

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    char cell[40];
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("render_csv: row width differs from header");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            std::snprintf(cell, sizeof(cell), "%.17g", row[c]);
            out += cell;
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& body) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp);
        out << body;
        if (!out) throw std::runtime_error("write_text_file: failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace pencil
