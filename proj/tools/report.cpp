#include "report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

namespace sumprod::cli {

json envelope(const std::string& command, const json& config, const std::string& descriptor_key,
              const std::string& descriptor, const std::string& status, json result) {
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["config"] = config;
  if (!descriptor_key.empty()) out[descriptor_key] = descriptor;
  out["status"] = status;
  out["result"] = std::move(result);
  return out;
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool is_primitive_array(const json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& y) { return y.is_primitive(); });
}

// Arrays of primitives, or of short primitive tuples such as (u, y) pairs,
// print on one line.
bool is_inline_array(const json& v) {
  return v.is_array() &&
         std::all_of(v.begin(), v.end(), [](const json& y) { return y.is_primitive() || is_primitive_array(y); });
}

bool is_flat_object(const json& v) {
  if (!v.is_object()) return false;
  return std::all_of(v.begin(), v.end(), [](const json& x) {
    return x.is_primitive() || is_primitive_array(x);
  });
}

std::string inline_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += inline_text(v[i]);
  }
  return out + "]";
}

// Arrays of flat objects become column tables.
void render_rows(std::ostringstream& out, const json& rows, const std::string& indent) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
    }
  }
  std::vector<std::size_t> width(columns.size());
  std::vector<std::vector<std::string>> cells;
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      line.push_back(row.contains(columns[c]) ? inline_text(row[columns[c]]) : "-");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto print_line = [&](const std::vector<std::string>& line) {
    out << indent;
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << line[c];
      if (c + 1 < line.size()) out << std::string(width[c] - line[c].size() + 2, ' ');
    }
    out << "\n";
  };
  print_line(columns);
  for (const auto& line : cells) print_line(line);
}

void render(std::ostringstream& out, const json& node, const std::string& indent) {
  std::size_t key_width = 0;
  for (auto it = node.begin(); it != node.end(); ++it) {
    if (it->is_primitive() || is_inline_array(*it)) {
      key_width = std::max(key_width, it.key().size());
    }
  }
  for (auto it = node.begin(); it != node.end(); ++it) {
    const json& v = *it;
    if (v.is_primitive() || is_inline_array(v)) {
      out << indent << it.key() << std::string(key_width - it.key().size() + 2, ' ') << inline_text(v) << "\n";
    } else if (v.is_object()) {
      out << indent << it.key() << ":\n";
      render(out, v, indent + "  ");
    } else if (std::all_of(v.begin(), v.end(), is_flat_object)) {
      out << indent << it.key() << ": (" << v.size() << " rows)\n";
      if (!v.empty()) render_rows(out, v, indent + "  ");
    } else {
      out << indent << it.key() << ":\n";
      std::size_t i = 0;
      for (const auto& item : v) {
        out << indent << "  [" << i++ << "]\n";
        if (item.is_object()) {
          render(out, item, indent + "    ");
        } else {
          out << indent << "    " << inline_text(item) << "\n";
        }
      }
    }
  }
}

}  // namespace

std::string render_table(const json& report) {
  std::ostringstream out;
  render(out, report, "");
  return out.str();
}

void emit(std::ostream& out, const json& report, OutputMode mode) {
  if (mode == OutputMode::json) {
    out << report.dump(2) << "\n";
  } else {
    out << render_table(report);
  }
}

}  // namespace sumprod::cli
