#pragma once

#include <map>
#include <string>
#include <vector>

#include "focklab/types.hpp"

namespace focklab {

/// INI-style config: [section] headers, key = value lines, # or ; comments.
/// Keys are tracked per section in insertion order; `canonical_string`
/// re-serializes with sorted sections and keys so equal configs hash equal.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const;
  Complex get_complex(const std::string& section, const std::string& key) const;
  Complex get_complex_or(const std::string& section, const std::string& key,
                         Complex fallback) const;

  /// Throws InvalidParameter when the section holds a key outside `allowed`.
  void require_known_keys(const std::string& section,
                          const std::vector<std::string>& allowed) const;
  std::vector<std::string> sections() const;
  std::string canonical_string() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
};

}  // namespace focklab
