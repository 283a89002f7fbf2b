#ifndef FRAMEKIT_IO_HPP
#define FRAMEKIT_IO_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "framekit/frame.hpp"
#include "framekit/localization.hpp"

namespace framekit {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& token);

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_number);
};

/// Text format:
///   framekit-frame v1 <M> <N> <complex|real>
///   [label <k>]
///   <N reals or N re/im pairs, space-separated>   (one line per vector)
/// Label lines are written only when labels differ from 0..M-1. The field
/// marker is "real" exactly when every imaginary part is 0.
std::string serialize_frame(const Frame& f);
Frame parse_frame(const std::string& text);

/// Text format:
///   framekit-map v1 <M> <d> <L> <D>
///   <flat target per line, M lines>
std::string serialize_map(const LocalizationMap& m);
LocalizationMap parse_map(const std::string& text);

struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// "# key: value" metadata lines, then one "## name" block per table with a
/// comma-separated header row and data rows. No quoting; fields must not
/// contain commas or newlines.
struct Report {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<ReportTable> tables;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add_count(const std::string& key, std::size_t value);
    std::string str() const;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace framekit

#endif
