#include "nlwt/record_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nlwt {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(field);
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool iequals(const std::string& a, const char* b) {
    std::size_t i = 0;
    for (; i < a.size() && b[i] != '\0'; ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return i == a.size() && b[i] == '\0';
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

Signal RecordFile::channel(std::size_t index) const {
    if (index >= channels.size()) throw OutOfBounds("RecordFile: no such channel");
    Signal s;
    s.samples = channels[index];
    s.sample_rate_hz = sample_rate_hz;
    s.label = channel_names[index];
    return s;
}

RecordFile read_csv(std::istream& in, const std::string& path_for_messages,
                    double fs_override_hz) {
    RecordFile record;
    record.source_path = path_for_messages;
    record.sample_rate_hz = fs_override_hz;

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    bool drop_time_column = false;
    std::size_t columns = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trimmed(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            // comment; "# fs=<hz>" carries the sample rate
            const std::size_t pos = t.find("fs=");
            if (pos != std::string::npos && fs_override_hz <= 0.0) {
                const std::string value = trimmed(t.substr(pos + 3));
                char* end = nullptr;
                const double fs = std::strtod(value.c_str(), &end);
                if (end == value.c_str() || !(fs > 0.0))
                    throw ParseError(line_no, pos + 4, "bad sample rate \"" + value + "\"");
                record.sample_rate_hz = fs;
            }
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            std::vector<std::string> names = split_csv_line(t);
            if (!names.empty() && iequals(trimmed(names.front()), "time")) {
                drop_time_column = true;
                names.erase(names.begin());
            }
            if (names.empty())
                throw ParseError(line_no, 1, "header names no channels");
            for (std::string& name : names) {
                record.channel_names.push_back(trimmed(name));
                record.channels.emplace_back();
            }
            columns = record.channel_names.size() + (drop_time_column ? 1 : 0);
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(t);
        if (fields.size() != columns) throw RaggedRows(line_no, columns, fields.size());
        for (std::size_t f = drop_time_column ? 1 : 0; f < fields.size(); ++f) {
            const std::string cell = trimmed(fields[f]);
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() + cell.size() || cell.empty())
                throw ParseError(line_no, f + 1, "bad number \"" + cell + "\"");
            if (!std::isfinite(value))
                throw ParseError(line_no, f + 1, "non-finite sample \"" + cell + "\"");
            record.channels[f - (drop_time_column ? 1 : 0)].push_back(value);
        }
    }

    if (!header_seen) throw ParseError(line_no, 1, "empty record file");
    if (record.length() == 0) throw ParseError(line_no, 1, "record has no samples");
    if (!(record.sample_rate_hz > 0.0)) throw MissingSampleRate();
    return record;
}

RecordFile read_csv(const std::string& path, double fs_override_hz) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path + "\" for reading");
    return read_csv(in, path, fs_override_hz);
}

void write_csv(const RecordFile& record, std::ostream& out) {
    out << "# schema_version=1\n";
    out << "# fs=" << format_value(record.sample_rate_hz) << "\n";
    for (std::size_t c = 0; c < record.channel_names.size(); ++c) {
        out << (c ? "," : "") << record.channel_names[c];
    }
    out << "\n";
    const std::size_t n = record.length();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < record.channels.size(); ++c) {
            out << (c ? "," : "") << format_value(record.channels[c][i]);
        }
        out << "\n";
    }
}

void write_csv(const RecordFile& record, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open \"" + path + "\" for writing");
    write_csv(record, out);
    if (!out) throw IoError("failed writing \"" + path + "\"");
}

RecordFile record_from_signal(const Signal& signal, const std::string& channel_name) {
    RecordFile record;
    record.channel_names.push_back(channel_name);
    record.channels.push_back(signal.samples);
    record.sample_rate_hz = signal.sample_rate_hz;
    record.source_path = signal.label;
    return record;
}

} // namespace nlwt
