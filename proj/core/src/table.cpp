#include "truncdist/table.hpp"

#include "truncdist/params.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace truncdist {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string to_csv(const Table& table) {
    std::ostringstream os;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ',';
        os << csv_field(table.columns[c]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            os << csv_field(row[c]);
        }
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& table, const TableMeta& meta) {
    std::ostringstream os;
    os << "{\n  \"meta\": {\n";
    os << "    \"version\": \"" << kVersion << "\",\n";
    os << "    \"command\": \"" << json_escape(meta.command) << "\"";
    if (meta.seed) os << ",\n    \"seed\": " << *meta.seed;
    if (meta.include_timestamp) os << ",\n    \"timestamp\": \"" << utc_timestamp() << "\"";
    os << "\n  },\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        os << (r ? ",\n    {" : "\n    {");
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) os << ", ";
            os << "\"" << json_escape(table.columns[c]) << "\": \""
               << json_escape(table.rows[r][c]) << "\"";
        }
        os << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

}  // namespace truncdist
