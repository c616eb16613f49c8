#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dqm/errors.hpp"

namespace dqm::cli {

// 17 significant digits round-trips doubles and keeps output byte-stable.
inline std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

class CsvWriter {
public:
    void header(std::initializer_list<std::string> columns) { row_strings(columns); }

    template <typename... Cells>
    void row(const Cells&... cells) {
        bool first = true;
        (append_cell(cell_text(cells), first), ...);
        text_ += '\n';
    }

    void row_strings(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) append_cell(c, first);
        text_ += '\n';
    }

    void row_vector(const std::vector<std::string>& cells) {
        bool first = true;
        for (const auto& c : cells) append_cell(c, first);
        text_ += '\n';
    }

    const std::string& text() const { return text_; }

private:
    static std::string cell_text(double v) { return fmt(v); }
    static std::string cell_text(int v) { return std::to_string(v); }
    static std::string cell_text(long v) { return std::to_string(v); }
    static std::string cell_text(std::size_t v) { return std::to_string(v); }
    static std::string cell_text(const std::string& v) { return v; }
    static std::string cell_text(const char* v) { return v; }

    void append_cell(const std::string& cell, bool& first) {
        if (!first) text_ += ',';
        first = false;
        text_ += cell;
    }

    std::string text_;
};

// Whole-file write through a temporary plus rename, so partial output never
// lands under the final name.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::ConfigInvalid, "out: cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

}  // namespace dqm::cli
