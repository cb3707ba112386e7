#include "thermoprobe/harness/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "thermoprobe/errors.hpp"

namespace thermoprobe::harness {
namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& what) {
  throw ValidationError("dataset", what);
}

double parse_double(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) parse_fail("bad number '" + tmp + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool needs_quotes(const std::string& s) {
  return s.empty() || s.find_first_of(",\"\n\r") != std::string::npos || s.front() == '#';
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one CSV record; `quoted` tells an empty quoted field from a missing one.
std::vector<std::pair<std::string, bool>> split_csv(std::string_view line) {
  std::vector<std::pair<std::string, bool>> fields;
  std::size_t i = 0;
  while (true) {
    std::string field;
    bool quoted = false;
    if (i < line.size() && line[i] == '"') {
      quoted = true;
      ++i;
      while (true) {
        if (i >= line.size()) parse_fail("unterminated quote");
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        field += line[i++];
      }
    } else {
      while (i < line.size() && line[i] != ',') field += line[i++];
    }
    fields.emplace_back(std::move(field), quoted);
    if (i >= line.size()) break;
    if (line[i] != ',') parse_fail("garbage after quoted field");
    ++i;
  }
  return fields;
}

// "key: value" after the leading "# ".
std::pair<std::string, std::string> split_meta(std::string_view body) {
  const auto colon = body.find(':');
  if (colon == std::string_view::npos) parse_fail("metadata line without ':'");
  return {std::string(trim(body.substr(0, colon))), std::string(trim(body.substr(colon + 1)))};
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t Dataset::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw std::out_of_range("no column " + std::string(name));
}

double Dataset::number(std::size_t row, std::string_view column) const {
  return std::get<double>(rows.at(row).at(column_index(column)));
}

const std::string& Dataset::text(std::size_t row, std::string_view column) const {
  return std::get<std::string>(rows.at(row).at(column_index(column)));
}

bool Dataset::has_value(std::size_t row, std::string_view column) const {
  return !std::holds_alternative<std::monostate>(rows.at(row).at(column_index(column)));
}

const std::string* Dataset::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Dataset::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("row arity mismatch in " + id);
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (const double* v = std::get_if<double>(&row[i])) {
      if (columns[i].type != ColumnType::Number)
        throw std::logic_error("number in text column " + columns[i].name);
      if (!std::isfinite(*v)) throw std::logic_error("non-finite value in " + columns[i].name);
    } else if (std::holds_alternative<std::string>(row[i]) && columns[i].type != ColumnType::Text) {
      throw std::logic_error("text in number column " + columns[i].name);
    }
  }
  rows.push_back(std::move(row));
}

std::string to_csv(const Dataset& d) {
  std::ostringstream out;
  out << "# dataset: " << d.id << '\n';
  for (const auto& [k, v] : d.metadata) out << "# " << k << ": " << v << '\n';
  for (const auto& c : d.columns) {
    out << "# column: " << c.name << " [" << c.unit << "]"
        << (c.type == ColumnType::Text ? " text" : "") << '\n';
  }
  for (const auto& g : d.gaps) {
    out << "# gap: " << g.series << "; " << g.axis << "; " << format_number(g.from) << "; "
        << format_number(g.to) << '\n';
  }
  for (std::size_t i = 0; i < d.columns.size(); ++i) {
    out << (i ? "," : "") << d.columns[i].name;
  }
  out << '\n';
  for (const auto& row : d.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* v = std::get_if<double>(&row[i])) {
        out << format_number(*v);
      } else if (const std::string* s = std::get_if<std::string>(&row[i])) {
        out << (needs_quotes(*s) ? quote(*s) : *s);
      }
    }
    out << '\n';
  }
  return out.str();
}

Dataset from_csv(std::string_view text) {
  Dataset d;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen && line.front() == '#') {
      auto [key, value] = split_meta(trim(line.substr(1)));
      if (key == "dataset") {
        d.id = value;
      } else if (key == "column") {
        Column c;
        const auto open = value.find(" [");
        const auto close = value.rfind(']');
        if (open == std::string::npos || close == std::string::npos || close < open)
          parse_fail("bad column line '" + value + "'");
        c.name = value.substr(0, open);
        c.unit = value.substr(open + 2, close - open - 2);
        c.type = trim(std::string_view(value).substr(close + 1)) == "text" ? ColumnType::Text
                                                                           : ColumnType::Number;
        d.columns.push_back(std::move(c));
      } else if (key == "gap") {
        std::vector<std::string> parts;
        std::string_view rest = value;
        while (true) {
          const auto semi = rest.find(';');
          parts.emplace_back(trim(rest.substr(0, semi)));
          if (semi == std::string_view::npos) break;
          rest = rest.substr(semi + 1);
        }
        if (parts.size() != 4) parse_fail("bad gap line '" + value + "'");
        d.gaps.push_back({parts[0], parts[1], parse_double(parts[2]), parse_double(parts[3])});
      } else {
        d.metadata.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    auto fields = split_csv(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != d.columns.size()) parse_fail("header does not match column lines");
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (fields[i].first != d.columns[i].name) parse_fail("header name mismatch");
      }
      continue;
    }
    if (fields.size() != d.columns.size()) parse_fail("row arity mismatch");
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      auto& [f, quoted] = fields[i];
      if (f.empty() && !quoted) {
        row.emplace_back(std::monostate{});
      } else if (d.columns[i].type == ColumnType::Number) {
        row.emplace_back(parse_double(f));
      } else {
        row.emplace_back(std::move(f));
      }
    }
    d.rows.push_back(std::move(row));
  }
  if (!header_seen) parse_fail("missing header row");
  return d;
}

std::string to_json(const Dataset& d) {
  ojson meta = ojson::object();
  meta["dataset"] = d.id;
  for (const auto& [k, v] : d.metadata) meta[k] = v;
  ojson cols = ojson::array();
  for (const auto& c : d.columns) {
    cols.push_back({{"name", c.name},
                    {"unit", c.unit},
                    {"type", c.type == ColumnType::Text ? "text" : "number"}});
  }
  ojson rows = ojson::array();
  for (const auto& row : d.rows) {
    ojson r = ojson::array();
    for (const auto& cell : row) {
      if (const double* v = std::get_if<double>(&cell)) {
        r.push_back(*v);
      } else if (const std::string* s = std::get_if<std::string>(&cell)) {
        r.push_back(*s);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  ojson gaps = ojson::array();
  for (const auto& g : d.gaps) {
    gaps.push_back({{"series", g.series}, {"axis", g.axis}, {"from", g.from}, {"to", g.to}});
  }
  ojson doc{{"metadata", meta}, {"columns", cols}, {"rows", rows}, {"gaps", gaps}};
  return doc.dump(1) + "\n";
}

Dataset from_json(std::string_view text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    parse_fail(e.what());
  }
  Dataset d;
  try {
    for (const auto& [k, v] : doc.at("metadata").items()) {
      if (k == "dataset") {
        d.id = v.get<std::string>();
      } else {
        d.metadata.emplace_back(k, v.get<std::string>());
      }
    }
    for (const auto& c : doc.at("columns")) {
      d.columns.push_back({c.at("name").get<std::string>(), c.at("unit").get<std::string>(),
                           c.at("type").get<std::string>() == "text" ? ColumnType::Text
                                                                     : ColumnType::Number});
    }
    for (const auto& r : doc.at("rows")) {
      if (r.size() != d.columns.size()) parse_fail("row arity mismatch");
      std::vector<Cell> row;
      for (const auto& cell : r) {
        if (cell.is_null()) {
          row.emplace_back(std::monostate{});
        } else if (cell.is_string()) {
          row.emplace_back(cell.get<std::string>());
        } else {
          row.emplace_back(cell.get<double>());
        }
      }
      d.rows.push_back(std::move(row));
    }
    if (doc.contains("gaps")) {
      for (const auto& g : doc["gaps"]) {
        d.gaps.push_back({g.at("series").get<std::string>(), g.at("axis").get<std::string>(),
                          g.at("from").get<double>(), g.at("to").get<double>()});
      }
    }
  } catch (const ojson::exception& e) {
    parse_fail(e.what());
  }
  return d;
}

}  // namespace thermoprobe::harness
