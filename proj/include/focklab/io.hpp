#pragma once

#include <string>
#include <vector>

#include "focklab/approx.hpp"
#include "focklab/localization.hpp"
#include "focklab/types.hpp"
#include "focklab/weight.hpp"

namespace focklab::io {

/// Deterministic text formatting: fixed scientific with 17 significant
/// digits so round-trips and hashes are stable across runs.
std::string format_double(double v);
std::string format_complex(Complex v);

/// FNV-1a 64-bit over the raw bytes, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string moment_table_csv(const MomentTable& table);
std::string decay_curve_csv(const DecayCurve& curve);
std::string grid_symbol_csv(const GridSymbol& g);

/// Rows of a pointwise scan: z, value, trust flag.
struct ScanRow {
  Complex z;
  Complex value;
  bool trusted = true;
};
std::string scan_csv(const std::vector<ScanRow>& rows);

std::string matrix_json(const CMatrix& m);
CMatrix matrix_from_json(const std::string& text);

std::string poly_json(const SymbolPoly& p);
SymbolPoly poly_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace focklab::io
