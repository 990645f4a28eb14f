// RFC 4180 CSV output with the fixed number formats every tool in this
// project uses, so identical runs produce identical bytes.

#pragma once

#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>

namespace mdsf {

/// "0" for zero, fixed six decimals down to 1e-3, scientific below that.
std::string format_probability(double p);

/// Plain decimal integer.
std::string format_count(std::uint64_t v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(&out) {}

    void row(std::span<const std::string> fields);
    void row(std::initializer_list<std::string> fields);

private:
    std::ostream* out_;
};

}  // namespace mdsf
