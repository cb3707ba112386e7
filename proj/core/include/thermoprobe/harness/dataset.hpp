#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace thermoprobe::harness {

enum class ColumnType { Number, Text };

struct Column {
  std::string name;
  std::string unit;  // "1" for dimensionless
  ColumnType type = ColumnType::Number;
};

// monostate marks a cell with no value (not applicable or failed point).
using Cell = std::variant<std::monostate, double, std::string>;

// Excluded interval along one axis of one series, e.g. around a pole.
struct Gap {
  std::string series;
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  friend bool operator==(const Gap&, const Gap&) = default;
};

struct Dataset {
  std::string id;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<Gap> gaps;

  std::size_t column_index(std::string_view name) const;  // throws if absent
  double number(std::size_t row, std::string_view column) const;
  const std::string& text(std::size_t row, std::string_view column) const;
  bool has_value(std::size_t row, std::string_view column) const;
  const std::string* meta(std::string_view key) const;

  void add_row(std::vector<Cell> row);  // checks arity, type and finiteness
};

std::string format_number(double v);  // %.17g

std::string to_csv(const Dataset& d);
std::string to_json(const Dataset& d);
Dataset from_csv(std::string_view text);
Dataset from_json(std::string_view text);

}  // namespace thermoprobe::harness
