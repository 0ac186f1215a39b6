// Copyright 2026 The cxi-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cxi/errors.hpp"

namespace cxi {

/// File write failed (unwritable path, full disk, ...).
struct IoError : Error {
    using Error::Error;
};

/// Format a double with 12 significant digits, locale-independent.
inline std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

/// Minimal CSV emitter: header row first, one row per record, '\n' endings.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw IoError("cannot open for writing: " + path);
        write_strings(header);
        columns_ = header.size();
        path_ = path;
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_) throw InvalidArgument("CsvWriter: column count mismatch");
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(format_number(v));
        write_strings(cells);
    }

    void row_cells(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw InvalidArgument("CsvWriter: column count mismatch");
        write_strings(cells);
    }

    void close() {
        out_.close();
        if (out_.fail()) throw IoError("write failed: " + path_);
    }

  private:
    void write_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
        if (!out_) throw IoError("write failed: " + path_);
    }

    std::ofstream out_;
    std::size_t columns_ = 0;
    std::string path_;
};

}  // namespace cxi
