#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scripta/image.hpp"

namespace scripta {

enum class SplitSide { whole, a, b };

std::string to_string(SplitSide s);
SplitSide split_side_from_string(const std::string& s);

// One row of the corpus manifest: a scanned image mapped to its serial
// column number in the manuscript, possibly one half of a split scan.
struct ColumnRecord {
  std::string scan_id;
  int column_index = 0;  // serial position, >= 1
  SplitSide split_side = SplitSide::whole;
  std::filesystem::path image_path;

  friend bool operator==(const ColumnRecord&, const ColumnRecord&) = default;
};

// Which serial positions are covered and which are missing.
struct SeriesLayout {
  int n_columns = 0;
  std::vector<int> present;  // strictly increasing
  std::vector<int> gaps;     // missing indices in [1, max(present)]
  std::vector<std::string> warnings;
};

// Manifest file: one record per line `scan_id,column_index,split_side,image_path`,
// a header line is required, '#' starts a comment, UTF-8 throughout.
std::vector<ColumnRecord> load_manifest(const std::filesystem::path& path);
void save_manifest(const std::vector<ColumnRecord>& records,
                   const std::filesystem::path& path);

// Pure validation; never mutates the records.
SeriesLayout validate_series(const std::vector<ColumnRecord>& records);

// Loads the record's image and converts to grayscale by luminance.
GrayImage resolve_image(const ColumnRecord& record);

}  // namespace scripta
