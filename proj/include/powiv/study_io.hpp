#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "powiv/mc_study.hpp"

namespace powiv {

enum class TableFormat { CSV, JSON };

/// Accepts "csv" or "json" (any case); throws UnsupportedFormat otherwise.
TableFormat parse_table_format(std::string_view name);

/// Serialises a study table.
///
/// Columns are always kind, K, alpha, dnr, mean_sigma, std_sigma. CSV has a
/// header row, '\n' line ends, '.' decimals and shortest round-trip number
/// text; missing values are written as NA. JSON is an array of objects with
/// the same six keys first (null for missing) followed by per-cell
/// diagnostics. Throws InvalidArgument on an empty table.
std::string emit_table(const StudyTable& table, TableFormat format);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Comma separated list of positive reals, e.g. "0.4,0.6,1".
std::vector<double> parse_real_list(std::string_view text);
std::vector<PowerKind> parse_kind_list(std::string_view text);

/// Applies one key=value pair. Keys mirror the CLI flags: spot (or s0),
/// horizon, sigma, rate, steps, reps, seed, alphas, strikes, kinds, threads,
/// clamp-discriminant. Throws InvalidConfig on an unknown key or bad value.
void apply_config_entry(StudyConfig& config, std::string_view key, std::string_view value);

/// Reads a flat key=value file on top of `base`. Blank lines and lines
/// starting with '#' are skipped.
StudyConfig load_study_config(const std::filesystem::path& path, StudyConfig base = {});

} // namespace powiv
