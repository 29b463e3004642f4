#include "hopfmod/cli/table_io.hpp"

#include <iomanip>
#include <sstream>

#include "hopfmod/cli/config.hpp"
#include "json.hpp"

namespace hopf::cli {

namespace {

const char* kHeader = "species,chirality,Y_C,Y_S,2Y,4T3,Q";

std::string chir(Chirality c) { return c == Chirality::L ? "L" : "R"; }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TableFormat parse_table_format(const std::string& s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "json") return TableFormat::json;
  if (s == "text") return TableFormat::text;
  throw ConfigError("unknown table format " + s);
}

std::string table_extension(TableFormat f) {
  switch (f) {
    case TableFormat::csv: return "csv";
    case TableFormat::json: return "json";
    case TableFormat::text: return "txt";
  }
  return "txt";
}

bool TableRecord::operator==(const TableRecord& o) const {
  return species == o.species && chirality == o.chirality && Y_C == o.Y_C && Y_S == o.Y_S && two_Y == o.two_Y &&
         four_T3 == o.four_T3 && Q == o.Q;
}

std::vector<TableRecord> to_records(const std::vector<ChargeRow>& rows) {
  std::vector<TableRecord> out;
  for (const auto& r : rows)
    out.push_back({r.species.label, chir(r.species.chirality), r.Y_C, r.Y_S, r.two_Y, r.four_T3, r.Q});
  return out;
}

std::string emit_table(const std::vector<ChargeRow>& rows, TableFormat f) {
  std::ostringstream os;
  const auto recs = to_records(rows);
  if (f == TableFormat::csv) {
    os << kHeader << '\n';
    for (const auto& r : recs)
      os << r.species << ',' << r.chirality << ',' << format_rational(r.Y_C) << ',' << format_rational(r.Y_S) << ','
         << format_rational(r.two_Y) << ',' << format_rational(r.four_T3) << ',' << format_rational(r.Q) << '\n';
  } else if (f == TableFormat::json) {
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& r = recs[i];
      arr.push_back({{"species", r.species},
                     {"chirality", r.chirality},
                     {"group", rows[i].species.group},
                     {"bundle", rows[i].species.tensor()},
                     {"Y_C", format_rational(r.Y_C)},
                     {"Y_S", format_rational(r.Y_S)},
                     {"2Y", format_rational(r.two_Y)},
                     {"4T3", format_rational(r.four_T3)},
                     {"Q", format_rational(r.Q)}});
    }
    os << arr.dump(2) << '\n';
  } else {
    os << std::left << std::setw(18) << "group" << std::setw(7) << "name" << std::setw(14) << "bundle" << std::right
       << std::setw(6) << "Y_C" << std::setw(6) << "Y_S" << std::setw(7) << "2Y" << std::setw(5) << "4T3" << std::setw(6)
       << "Q" << '\n';
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto& r = recs[i];
      os << std::left << std::setw(18) << rows[i].species.group << std::setw(7) << r.species << std::setw(14)
         << rows[i].species.tensor() << std::right << std::setw(6) << format_rational(r.Y_C) << std::setw(6)
         << format_rational(r.Y_S) << std::setw(7) << format_rational(r.two_Y) << std::setw(5)
         << format_rational(r.four_T3) << std::setw(6) << format_rational(r.Q) << '\n';
    }
  }
  return os.str();
}

std::vector<TableRecord> parse_csv_table(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw std::invalid_argument("empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw std::invalid_argument("unexpected table header: " + line);
  std::vector<TableRecord> out;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c = split(line, ',');
    if (c.size() != 7) throw std::invalid_argument("bad table row: " + line);
    out.push_back({c[0], c[1], parse_rational(c[2]), parse_rational(c[3]), parse_rational(c[4]), parse_rational(c[5]),
                   parse_rational(c[6])});
  }
  return out;
}

std::vector<TableRecord> parse_json_table(const std::string& text) {
  std::vector<TableRecord> out;
  try {
    const auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("json table must be an array of rows");
    for (const auto& e : j) {
      out.push_back({e.at("species").get<std::string>(), e.at("chirality").get<std::string>(),
                     parse_rational(e.at("Y_C").get<std::string>()), parse_rational(e.at("Y_S").get<std::string>()),
                     parse_rational(e.at("2Y").get<std::string>()), parse_rational(e.at("4T3").get<std::string>()),
                     parse_rational(e.at("Q").get<std::string>())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad json table: ") + e.what());
  }
  return out;
}

}  // namespace hopf::cli
