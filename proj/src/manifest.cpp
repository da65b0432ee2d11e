#include "scripta/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scripta {

std::string to_string(SplitSide s) {
  switch (s) {
    case SplitSide::whole: return "whole";
    case SplitSide::a: return "a";
    case SplitSide::b: return "b";
  }
  return "?";
}

SplitSide split_side_from_string(const std::string& s) {
  if (s == "whole" || s == "w") return SplitSide::whole;
  if (s == "a") return SplitSide::a;
  if (s == "b") return SplitSide::b;
  throw std::runtime_error("unknown split_side '" + s + "'");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r'))
      f.pop_back();
  }
  return out;
}

}  // namespace

std::vector<ColumnRecord> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("manifest not found: " + path.string());

  std::vector<ColumnRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string stripped = line;
    if (auto pos = stripped.find('#'); pos != std::string::npos)
      stripped.erase(pos);
    bool blank = stripped.find_first_not_of(" \t\r") == std::string::npos;
    if (blank) continue;
    if (!header_seen) {
      const auto fields = split_fields(stripped);
      if (fields.size() != 4 || fields[0] != "scan_id" ||
          fields[1] != "column_index" || fields[2] != "split_side" ||
          fields[3] != "image_path") {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": missing or malformed header line");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(stripped);
    auto row_error = [&](const std::string& what) -> std::runtime_error {
      return std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                ": unreadable row (" + what + "): " + line);
    };
    if (fields.size() != 4) throw row_error("expected 4 fields");
    ColumnRecord rec;
    rec.scan_id = fields[0];
    if (rec.scan_id.empty()) throw row_error("empty scan_id");
    try {
      std::size_t used = 0;
      rec.column_index = std::stoi(fields[1], &used);
      if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
    } catch (const std::exception&) {
      throw row_error("bad column_index '" + fields[1] + "'");
    }
    if (rec.column_index < 1) throw row_error("column_index must be >= 1");
    try {
      rec.split_side = split_side_from_string(fields[2]);
    } catch (const std::exception&) {
      throw row_error("bad split_side '" + fields[2] + "'");
    }
    if (fields[3].empty()) throw row_error("empty image_path");
    rec.image_path = fields[3];
    // Relative image paths resolve against the manifest's directory.
    if (rec.image_path.is_relative())
      rec.image_path = path.parent_path() / rec.image_path;
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw std::runtime_error("empty manifest: " + path.string());

  std::stable_sort(records.begin(), records.end(),
                   [](const ColumnRecord& l, const ColumnRecord& r) {
                     if (l.column_index != r.column_index)
                       return l.column_index < r.column_index;
                     return static_cast<int>(l.split_side) <
                            static_cast<int>(r.split_side);
                   });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].column_index == records[i - 1].column_index &&
        records[i].split_side == records[i - 1].split_side) {
      throw std::runtime_error(
          "duplicate manifest entry for column " +
          std::to_string(records[i].column_index) + " split " +
          to_string(records[i].split_side));
    }
  }
  return records;
}

void save_manifest(const std::vector<ColumnRecord>& records,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
  out << "scan_id,column_index,split_side,image_path\n";
  for (const auto& r : records) {
    out << r.scan_id << "," << r.column_index << "," << to_string(r.split_side)
        << "," << r.image_path.string() << "\n";
  }
}

SeriesLayout validate_series(const std::vector<ColumnRecord>& records) {
  if (records.empty()) throw std::runtime_error("validate_series: no records");
  SeriesLayout layout;
  std::set<int> cols;
  std::set<std::pair<int, SplitSide>> seen;
  bool splits_expected = false;
  for (const auto& r : records) {
    cols.insert(r.column_index);
    seen.insert({r.column_index, r.split_side});
    if (r.split_side != SplitSide::whole) splits_expected = true;
  }
  layout.present.assign(cols.begin(), cols.end());
  layout.n_columns = static_cast<int>(layout.present.size());
  const int max_col = layout.present.back();
  for (int c = 1; c <= max_col; ++c) {
    if (!cols.count(c)) layout.gaps.push_back(c);
  }
  if (splits_expected) {
    for (int c : layout.present) {
      const bool has_a = seen.count({c, SplitSide::a});
      const bool has_b = seen.count({c, SplitSide::b});
      if (has_a != has_b) {
        layout.warnings.push_back("column " + std::to_string(c) +
                                  " has only split " + (has_a ? "a" : "b"));
      }
    }
  }
  return layout;
}

GrayImage resolve_image(const ColumnRecord& record) {
  return load_gray(record.image_path);
}

}  // namespace scripta
