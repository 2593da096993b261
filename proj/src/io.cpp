#include "focklab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace focklab::io {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  return format_double(v.real()) + (v.imag() < 0.0 ? "" : "+") + format_double(v.imag()) + "i";
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string moment_table_csv(const MomentTable& table) {
  std::ostringstream os;
  os << "k,log_moment,moment,rel_err\n";
  for (int k = 0; k <= table.k_max(); ++k)
    os << k << ',' << format_double(table.log_moment(k)) << ','
       << format_double(table.moment(k)) << ',' << format_double(table.rel_err(k))
       << '\n';
  return os.str();
}

std::string decay_curve_csv(const DecayCurve& curve) {
  std::ostringstream os;
  os << "radius,value,n_samples,trusted\n";
  for (std::size_t i = 0; i < curve.radii.size(); ++i)
    os << format_double(curve.radii[i]) << ',' << format_double(curve.values[i]) << ','
       << curve.n_samples[i] << ',' << (curve.trusted[i] ? 1 : 0) << '\n';
  return os.str();
}

std::string grid_symbol_csv(const GridSymbol& g) {
  std::ostringstream os;
  os << "x,y,value_re,value_im\n";
  for (Eigen::Index iy = 0; iy < g.values.rows(); ++iy)
    for (Eigen::Index ix = 0; ix < g.values.cols(); ++ix) {
      const Complex v = g.values(iy, ix);
      os << format_double(g.x0 + ix * g.h) << ',' << format_double(g.y0 + iy * g.h)
         << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  return os.str();
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "z_re,z_im,value_re,value_im,trusted\n";
  for (const ScanRow& row : rows)
    os << format_double(row.z.real()) << ',' << format_double(row.z.imag()) << ','
       << format_double(row.value.real()) << ',' << format_double(row.value.imag())
       << ',' << (row.trusted ? 1 : 0) << '\n';
  return os.str();
}

std::string matrix_json(const CMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  j["re"] = re;
  j["im"] = im;
  return j.dump();
}

CMatrix matrix_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
  const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(re.size()) != rows * cols || re.size() != im.size())
    throw InvalidParameter("matrix payload size mismatch");
  CMatrix m(rows, cols);
  std::size_t i = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c, ++i) m(r, c) = Complex(re[i], im[i]);
  return m;
}

std::string poly_json(const SymbolPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : p.terms()) {
    nlohmann::json t;
    t["a"] = key.first;
    t["b"] = key.second;
    t["re"] = c.real();
    t["im"] = c.imag();
    terms.push_back(t);
  }
  nlohmann::json j;
  j["terms"] = terms;
  return j.dump();
}

SymbolPoly poly_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SymbolPoly p;
  for (const auto& t : j.at("terms"))
    p.set(t.at("a").get<int>(), t.at("b").get<int>(),
          Complex(t.at("re").get<double>(), t.at("im").get<double>()));
  return p;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidParameter("cannot open '" + path + "' for writing");
  os << contents;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidParameter("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace focklab::io
