#include "softfoot/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace softfoot::lab {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
  if (!out) throw solve_error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw solve_error("cannot open for reading: " + path.string());
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw invalid_input("cannot parse number: '" + text + "'");
  }
  return value;
}

void write_sweep_csv(const SweepTable& table, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "swept_value_m,cop_m,ankle_comp_rad,F1_N,F2_N,F3_N,T_N,admissible\n";
  for (const auto& row : table.rows) {
    out << format_double(row.swept) << ',' << format_double(row.cop) << ','
        << format_double(row.ankle_comp) << ',' << format_double(row.f1) << ','
        << format_double(row.f2) << ',' << format_double(row.f3) << ','
        << format_double(row.tension) << ',' << (row.admissible ? "true" : "false") << '\n';
  }
  if (!out) throw solve_error("write failed: " + path.string());
}

SweepTable read_sweep_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw invalid_input("empty CSV: " + path.string());

  SweepTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw invalid_input("malformed sweep row in " + path.string() + ": '" + line + "'");
    }
    SweepRow row;
    row.swept = parse_double(fields[0]);
    row.cop = parse_double(fields[1]);
    row.ankle_comp = parse_double(fields[2]);
    row.f1 = parse_double(fields[3]);
    row.f2 = parse_double(fields[4]);
    row.f3 = parse_double(fields[5]);
    row.tension = parse_double(fields[6]);
    row.admissible = fields[7] == "true";
    table.rows.push_back(row);
  }
  return table;
}

void write_map_csv(const ComplianceMap& map, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "e_bar,e0,load_kg,compliance_m_per_N\n";
  for (std::size_t li = 0; li < map.loads_kg.size(); ++li) {
    const auto& grid = map.values[li];
    for (int r = 0; r < grid.rows(); ++r) {
      for (int c = 0; c < grid.cols(); ++c) {
        out << format_double(map.e_bar[static_cast<std::size_t>(c)]) << ','
            << format_double(map.e0[static_cast<std::size_t>(r)]) << ','
            << format_double(map.loads_kg[li]) << ',' << format_double(grid(r, c)) << '\n';
      }
    }
  }
  if (!out) throw solve_error("write failed: " + path.string());
}

std::vector<MapRow> read_map_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw invalid_input("empty CSV: " + path.string());

  std::vector<MapRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      throw invalid_input("malformed map row in " + path.string() + ": '" + line + "'");
    }
    rows.push_back({parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2]),
                    parse_double(fields[3])});
  }
  return rows;
}

void write_gallery_csv(const Gallery& gallery, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "load_kg,node_index,x_m,y_m\n";
  for (const auto& entry : gallery.entries) {
    if (!entry.solved) continue;
    for (std::size_t i = 0; i < entry.shape.sole.size(); ++i) {
      out << format_double(entry.load_kg) << ',' << i << ','
          << format_double(entry.shape.sole[i].x()) << ','
          << format_double(entry.shape.sole[i].y()) << '\n';
    }
    out << format_double(entry.load_kg) << ",-1," << format_double(entry.shape.ankle.x()) << ','
        << format_double(entry.shape.ankle.y()) << '\n';
  }
  if (!out) throw solve_error("write failed: " + path.string());
}

}  // namespace softfoot::lab
