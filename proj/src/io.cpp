#include "framekit/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace framekit {

std::string format_double(double v) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::runtime_error("not a number: '" + token + "'");
    return v;
}

ParseError::ParseError(const std::string& msg, int line_number)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + msg),
      line(line_number) {}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool default_labels(const Frame& f) {
    for (std::size_t i = 0; i < f.labels.size(); ++i)
        if (f.labels[i] != static_cast<long long>(i)) return false;
    return true;
}

} // namespace

std::string serialize_frame(const Frame& f) {
    f.validate();
    bool real_field = true;
    for (std::size_t i = 0; i < f.size() && real_field; ++i)
        for (std::size_t k = 0; k < f.dim; ++k)
            if (f.synthesis.at(k, i).imag() != 0.0) {
                real_field = false;
                break;
            }
    const bool with_labels = !default_labels(f);

    std::ostringstream out;
    out << "framekit-frame v1 " << f.size() << ' ' << f.dim << ' '
        << (real_field ? "real" : "complex") << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (with_labels) out << "label " << f.labels[i] << '\n';
        for (std::size_t k = 0; k < f.dim; ++k) {
            if (k > 0) out << ' ';
            const cx v = f.synthesis.at(k, i);
            out << format_double(v.real());
            if (!real_field) out << ' ' << format_double(v.imag());
        }
        out << '\n';
    }
    return out.str();
}

Frame parse_frame(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty frame file", 1);
    const std::vector<std::string> head = split_ws(lines[0]);
    if (head.size() != 5 || head[0] != "framekit-frame" || head[1] != "v1")
        throw ParseError("expected 'framekit-frame v1 <M> <N> <complex|real>'", 1);
    std::size_t m = 0, n = 0;
    try {
        m = static_cast<std::size_t>(std::stoull(head[2]));
        n = static_cast<std::size_t>(std::stoull(head[3]));
    } catch (const std::exception&) {
        throw ParseError("bad vector or dimension count", 1);
    }
    bool real_field = false;
    if (head[4] == "real")
        real_field = true;
    else if (head[4] != "complex")
        throw ParseError("field marker must be 'complex' or 'real'", 1);
    if (m < 1 || n < 1) throw ParseError("counts must be positive", 1);

    Frame f(n, m);
    std::size_t row = 0;
    bool any_label = false;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const int line_number = static_cast<int>(ln) + 1;
        std::vector<std::string> toks = split_ws(lines[ln]);
        if (toks.empty()) continue;
        if (toks[0] == "label") {
            if (toks.size() != 2) throw ParseError("expected 'label <integer>'", line_number);
            if (row >= m) throw ParseError("label after the last vector", line_number);
            try {
                f.labels[row] = std::stoll(toks[1]);
            } catch (const std::exception&) {
                throw ParseError("bad label", line_number);
            }
            any_label = true;
            continue;
        }
        if (row >= m) throw ParseError("more vectors than the header declares", line_number);
        const std::size_t expected = real_field ? n : 2 * n;
        if (toks.size() != expected)
            throw ParseError("expected " + std::to_string(expected) + " values, found " +
                                 std::to_string(toks.size()),
                             line_number);
        try {
            for (std::size_t k = 0; k < n; ++k) {
                if (real_field)
                    f.synthesis.at(k, row) = cx(parse_double(toks[k]), 0.0);
                else
                    f.synthesis.at(k, row) =
                        cx(parse_double(toks[2 * k]), parse_double(toks[2 * k + 1]));
            }
        } catch (const std::exception& ex) {
            throw ParseError(ex.what(), line_number);
        }
        ++row;
    }
    if (row != m)
        throw ParseError("header declares " + std::to_string(m) + " vectors, found " +
                             std::to_string(row),
                         static_cast<int>(lines.size()));
    (void)any_label;
    try {
        f.validate();
    } catch (const std::exception& ex) {
        throw ParseError(ex.what(), static_cast<int>(lines.size()));
    }
    return f;
}

std::string serialize_map(const LocalizationMap& m) {
    m.validate();
    std::ostringstream out;
    out << "framekit-map v1 " << m.targets.size() << ' ' << m.group.d << ' ' << m.group.L << ' '
        << m.group.D << '\n';
    for (std::size_t t : m.targets) out << t << '\n';
    return out.str();
}

LocalizationMap parse_map(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty map file", 1);
    const std::vector<std::string> head = split_ws(lines[0]);
    if (head.size() != 6 || head[0] != "framekit-map" || head[1] != "v1")
        throw ParseError("expected 'framekit-map v1 <M> <d> <L> <D>'", 1);
    LocalizationMap m;
    std::size_t count = 0;
    try {
        count = static_cast<std::size_t>(std::stoull(head[2]));
        m.group = IndexGroup(std::stoi(head[3]), std::stoi(head[4]), std::stoi(head[5]));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ParseError(ex.what(), 1);
    }
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const std::vector<std::string> toks = split_ws(lines[ln]);
        if (toks.empty()) continue;
        if (toks.size() != 1)
            throw ParseError("expected one flat target per line", static_cast<int>(ln) + 1);
        try {
            m.targets.push_back(static_cast<std::size_t>(std::stoull(toks[0])));
        } catch (const std::exception&) {
            throw ParseError("bad target", static_cast<int>(ln) + 1);
        }
    }
    if (m.targets.size() != count)
        throw ParseError("header declares " + std::to_string(count) + " targets, found " +
                             std::to_string(m.targets.size()),
                         static_cast<int>(lines.size()));
    try {
        m.validate();
    } catch (const std::exception& ex) {
        throw ParseError(ex.what(), static_cast<int>(lines.size()));
    }
    return m;
}

void Report::add(const std::string& key, const std::string& value) {
    metadata.push_back({key, value});
}

void Report::add(const std::string& key, double value) {
    metadata.push_back({key, format_double(value)});
}

void Report::add_count(const std::string& key, std::size_t value) {
    metadata.push_back({key, std::to_string(value)});
}

std::string Report::str() const {
    std::ostringstream out;
    for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
    for (const ReportTable& table : tables) {
        out << '\n' << "## " << table.name << '\n';
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c > 0) out << ',';
            out << table.columns[c];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c > 0) out << ',';
                out << row[c];
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

} // namespace framekit
