#include <charconv>
#include <sstream>

#include "ontogdss/error.hpp"
#include "ontogdss/mcdm.hpp"

namespace ontogdss {

namespace {

using Row = std::vector<std::string>;

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Splits one line into fields. Quoted fields may hold commas and "" escapes.
Row split(std::string_view line, std::size_t line_no) {
  Row out;
  std::size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::string field;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field += line[i++];
      }
      if (!closed) {
        throw Error(ErrorCode::ParseFailure, "unterminated quote on line " + std::to_string(line_no),
                    {{"line", line_no}});
      }
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != ',') {
        throw Error(ErrorCode::ParseFailure, "text after closing quote on line " + std::to_string(line_no),
                    {{"line", line_no}});
      }
    } else {
      auto end = line.find(',', i);
      field = trim(line.substr(i, end == std::string_view::npos ? std::string_view::npos : end - i));
      i = end == std::string_view::npos ? line.size() : end;
    }
    out.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return out;
}

double number(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::ParseFailure, "'" + text + "' is not a number on line " + std::to_string(line_no),
                {{"line", line_no}, {"value", text}});
  }
  return v;
}

std::string format(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos && s == trim(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// "Usual" or "Linear:q:p".
PreferenceFunction preference(const std::string& text, std::size_t line_no) {
  if (text == "Usual") return PreferenceFunction::usual();
  if (text.rfind("Linear:", 0) == 0) {
    auto rest = text.substr(7);
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
      return PreferenceFunction::linear(number(rest.substr(0, colon), line_no), number(rest.substr(colon + 1), line_no));
    }
  }
  throw Error(ErrorCode::ParseFailure, "unknown preference '" + text + "' on line " + std::to_string(line_no),
              {{"line", line_no}, {"value", text}});
}

}  // namespace

DecisionMatrix matrix_from_csv(std::string_view text) {
  std::vector<std::pair<std::size_t, Row>> keyed;
  std::optional<Row> header;
  DecisionMatrix m;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    if (!header && trim(line).front() == '#') {
      auto t = trim(line);
      keyed.emplace_back(line_no, split(std::string_view(t).substr(1), line_no));
      continue;
    }
    Row row = split(line, line_no);
    if (!header) {
      header = std::move(row);
      if (header->size() < 2) {
        throw Error(ErrorCode::ParseFailure, "header needs a scheme column and at least one criterion",
                    {{"line", line_no}});
      }
      for (std::size_t c = 1; c < header->size(); ++c) {
        CriterionSpec spec;
        spec.name = (*header)[c];
        m.criteria.push_back(std::move(spec));
      }
      continue;
    }
    if (row.size() != header->size()) {
      throw Error(ErrorCode::NonRectangular,
                  "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) + " fields, expected " +
                      std::to_string(header->size()),
                  {{"line", line_no}});
    }
    m.schemes.push_back(row[0]);
    std::vector<double> scores;
    for (std::size_t c = 1; c < row.size(); ++c) scores.push_back(number(row[c], line_no));
    m.scores.push_back(std::move(scores));
  }
  if (!header) throw Error(ErrorCode::ParseFailure, "missing header row");

  for (auto& [ln, row] : keyed) {
    if (row.size() != header->size()) {
      throw Error(ErrorCode::NonRectangular, "key row on line " + std::to_string(ln) + " has the wrong field count",
                  {{"line", ln}});
    }
    const std::string& key = row[0];
    for (std::size_t c = 1; c < row.size(); ++c) {
      CriterionSpec& spec = m.criteria[c - 1];
      if (key == "weight") {
        spec.weight = number(row[c], ln);
      } else if (key == "direction") {
        auto d = parse_direction(row[c]);
        if (!d) throw Error(ErrorCode::ParseFailure, "unknown direction '" + row[c] + "'", {{"line", ln}});
        spec.direction = *d;
      } else if (key == "preference") {
        spec.preference = preference(row[c], ln);
      } else if (key == "discordance_scale") {
        spec.discordance_scale = number(row[c], ln);
      } else {
        throw Error(ErrorCode::ParseFailure, "unknown key row '" + key + "'", {{"line", ln}, {"key", key}});
      }
    }
  }
  m.validate();
  return m;
}

std::string matrix_to_csv(const DecisionMatrix& m) {
  std::ostringstream out;
  auto key_row = [&](const char* key, auto cell) {
    out << '#' << key;
    for (const auto& c : m.criteria) out << ',' << cell(c);
    out << '\n';
  };
  key_row("weight", [](const CriterionSpec& c) { return format(c.weight); });
  key_row("direction", [](const CriterionSpec& c) { return std::string(to_string(c.direction)); });
  key_row("preference", [](const CriterionSpec& c) {
    if (c.preference.shape == PreferenceFunction::Shape::Usual) return std::string("Usual");
    return "Linear:" + format(c.preference.q) + ":" + format(c.preference.p);
  });
  key_row("discordance_scale", [](const CriterionSpec& c) { return format(c.discordance_scale); });
  out << "scheme";
  for (const auto& c : m.criteria) out << ',' << quote(c.name);
  out << '\n';
  for (std::size_t s = 0; s < m.schemes.size(); ++s) {
    out << quote(m.schemes[s]);
    for (double v : m.scores[s]) out << ',' << format(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace ontogdss
