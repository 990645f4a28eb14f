#include "mdsf/csvio.hpp"

#include <cstdint>
#include <cstdio>
#include <ostream>

namespace mdsf {

std::string format_probability(double p) {
    if (p == 0.0) return "0";
    char buf[40];
    if (p < 1e-3) {
        std::snprintf(buf, sizeof(buf), "%.6e", p);
    } else {
        std::snprintf(buf, sizeof(buf), "%.6f", p);
    }
    return buf;
}

std::string format_count(std::uint64_t v) { return std::to_string(v); }

void CsvWriter::row(std::span<const std::string> fields) {
    bool first = true;
    for (const std::string& field : fields) {
        if (!first) *out_ << ',';
        first = false;
        if (field.find_first_of(",\"\r\n") != std::string::npos) {
            *out_ << '"';
            for (char c : field) {
                if (c == '"') *out_ << '"';
                *out_ << c;
            }
            *out_ << '"';
        } else {
            *out_ << field;
        }
    }
    *out_ << "\r\n";
}

void CsvWriter::row(std::initializer_list<std::string> fields) {
    row(std::span<const std::string>(fields.begin(), fields.size()));
}

}  // namespace mdsf
