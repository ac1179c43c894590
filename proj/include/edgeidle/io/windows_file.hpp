#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "edgeidle/idle/fit.hpp"

namespace edgeidle::io {

inline constexpr const char* kWindowsSchema = "edgeidle.windows";
inline constexpr int kWindowsVersion = 1;

/// Labeled feature windows, one JSON object per line:
/// {"mad_ad","mad_cd","n","label"}. A schema header line is optional on input.
void write_labeled_windows(std::ostream& out, const std::vector<idle::LabeledWindow>& windows);
std::vector<idle::LabeledWindow> read_labeled_windows(std::istream& in);

void write_labeled_windows_file(const std::string& path, const std::vector<idle::LabeledWindow>& windows);
std::vector<idle::LabeledWindow> read_labeled_windows_file(const std::string& path);

}  // namespace edgeidle::io
