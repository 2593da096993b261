#include "focklab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "focklab/io.hpp"

namespace focklab {

namespace {
std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}
}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw InvalidParameter("config line " + std::to_string(lineno) +
                               ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw InvalidParameter("config line " + std::to_string(lineno) +
                               ": empty section name");
      cfg.data_[section];
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw InvalidParameter("config line " + std::to_string(lineno) +
                             ": expected key = value");
    if (section.empty())
      throw InvalidParameter("config line " + std::to_string(lineno) +
                             ": key outside any [section]");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw InvalidParameter("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.data_[section].count(key))
      throw InvalidParameter("config line " + std::to_string(lineno) +
                             ": duplicate key '" + key + "' in [" + section + "]");
    cfg.data_[section][key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) { return parse(io::read_file(path)); }

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  if (s == data_.end())
    throw InvalidParameter("config is missing section [" + section + "]");
  const auto k = s->second.find(key);
  if (k == s->second.end())
    throw InvalidParameter("config is missing key '" + key + "' in [" + section + "]");
  return k->second;
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw InvalidParameter("config key '" + key + "' is not a number: '" + v + "'");
  }
  if (used != v.size())
    throw InvalidParameter("config key '" + key + "' has trailing text: '" + v + "'");
  return out;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
  const double v = get_double(section, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw InvalidParameter("config key '" + key + "' must be an integer");
  return i;
}

int Config::get_int_or(const std::string& section, const std::string& key,
                       int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key) const {
  const std::string v = get(section, key);
  std::vector<double> out;
  std::istringstream is(v);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw InvalidParameter("config key '" + key + "' has an empty list entry");
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw InvalidParameter("config key '" + key + "' has a non-numeric entry: '" +
                             item + "'");
    }
    if (used != item.size())
      throw InvalidParameter("config key '" + key + "' has a malformed entry: '" +
                             item + "'");
  }
  if (out.empty())
    throw InvalidParameter("config key '" + key + "' is an empty list");
  return out;
}

Complex Config::get_complex(const std::string& section, const std::string& key) const {
  const std::vector<double> parts = get_list(section, key);
  if (parts.size() == 1) return {parts[0], 0.0};
  if (parts.size() == 2) return {parts[0], parts[1]};
  throw InvalidParameter("config key '" + key + "' must be 're' or 're,im'");
}

Complex Config::get_complex_or(const std::string& section, const std::string& key,
                               Complex fallback) const {
  return has(section, key) ? get_complex(section, key) : fallback;
}

void Config::require_known_keys(const std::string& section,
                                const std::vector<std::string>& allowed) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return;
  for (const auto& [key, value] : s->second) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InvalidParameter("config key '" + key + "' is not recognized in [" +
                             section + "]");
  }
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, body] : data_) out.push_back(name);
  return out;
}

std::string Config::canonical_string() const {
  std::ostringstream os;
  for (const auto& [name, body] : data_) {
    os << '[' << name << "]\n";
    for (const auto& [key, value] : body) os << key << " = " << value << '\n';
  }
  return os.str();
}

}  // namespace focklab
