#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "grushin/errors.hpp"

namespace grushin {

/// Minimal CSV writer: header row, LF line ends, 17 significant digits so
/// doubles round-trip exactly.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : fp_(std::fopen(path.c_str(), "wb")) {
        if (!fp_) throw Error("cannot open " + path);
        for (std::size_t i = 0; i < header.size(); ++i)
            std::fprintf(fp_, "%s%s", header[i].c_str(),
                         i + 1 < header.size() ? "," : "\n");
    }
    ~CsvWriter() {
        if (fp_) std::fclose(fp_);
    }
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            std::fprintf(fp_, "%.17g%s", vals[i],
                         i + 1 < vals.size() ? "," : "\n");
    }
    void row_mixed(const std::vector<std::string>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            std::fprintf(fp_, "%s%s", vals[i].c_str(),
                         i + 1 < vals.size() ? "," : "\n");
    }
    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }

  private:
    std::FILE* fp_;
};

}  // namespace grushin
