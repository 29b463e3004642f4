#pragma once

#include <string>
#include <vector>

#include "hopfmod/charges.hpp"

namespace hopf::cli {

enum class TableFormat { csv, json, text };

TableFormat parse_table_format(const std::string& s);  // throws ConfigError
std::string table_extension(TableFormat f);

std::string emit_table(const std::vector<ChargeRow>& rows, TableFormat f);

// Rational columns of a csv or json table, keyed like the csv header.
struct TableRecord {
  std::string species, chirality;
  mpq_class Y_C, Y_S, two_Y, four_T3, Q;

  bool operator==(const TableRecord& o) const;
};

std::vector<TableRecord> to_records(const std::vector<ChargeRow>& rows);
std::vector<TableRecord> parse_csv_table(const std::string& text);   // throws std::invalid_argument
std::vector<TableRecord> parse_json_table(const std::string& text);  // throws std::invalid_argument

}  // namespace hopf::cli
