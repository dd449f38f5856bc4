#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace esgd {

// Shortest-faithful decimal rendering: %.17g round-trips any double and the
// output is locale-independent, so identical runs give identical bytes.
inline std::string csv_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
        columns_ = header.size();
        write_row(header);
    }

    void write_row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw std::runtime_error("csv: row has " + std::to_string(cells.size()) +
                                     " cells, header has " + std::to_string(columns_));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw std::runtime_error("csv: flush failed");
    }

private:
    std::ofstream out_;
    std::size_t columns_ = 0;
};

}  // namespace esgd
