#pragma once

#include "lgt/series.hpp"

#include <string>
#include <vector>

namespace lgt {

/// Shortest decimal string that round-trips the exact double.
std::string format_double(double x);

/// Writes content to a temporary file in the target directory and
/// renames it into place, so the destination is either fully written
/// or not created at all.
void write_file_atomic(const std::string& path, const std::string& content);

/// Reads the wide-layout dataset CSV: header
/// `id,category,frequency,horizon,v1,v2,...`, one series per row,
/// ragged tails allowed. Preserves input order. Throws
/// std::runtime_error naming the offending row (or series id for
/// non-finite values).
std::vector<TimeSeries> load_dataset(const std::string& path);

/// Inverse of load_dataset; load_dataset(save_dataset(c)) == c.
void save_dataset(const std::string& path, const std::vector<TimeSeries>& dataset);

}  // namespace lgt
