#ifndef TRUNCDIST_TABLE_HPP
#define TRUNCDIST_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

namespace truncdist {

/// Buffered output table with a fixed column order. Emitted whole, so row
/// production order (grid order) is what lands on disk regardless of how
/// rows were computed.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct TableMeta {
    std::string command;
    std::optional<std::uint64_t> seed;
    bool include_timestamp = true;
};

/// RFC-4180-style CSV: header always present; fields quoted when they
/// contain a comma, quote or newline, quotes doubled.
std::string to_csv(const Table& table);

/// Single object {"meta": {...}, "rows": [...]} with insertion-ordered keys.
std::string to_json(const Table& table, const TableMeta& meta);

}  // namespace truncdist

#endif
