#pragma once

#include "indep/cnf.hpp"
#include "indep/estimate.hpp"
#include "indep/montecarlo.hpp"
#include "indep/params.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace indep {

struct GeneratorSpec {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t k = 3;
  std::uint64_t seed = 0;
  /// Every clause is satisfied by a hidden assignment drawn first.
  bool planted = false;
};

/// Random k-CNF: k distinct variables per clause, fair polarities, no repeated
/// clause unless m forces one. Throws std::invalid_argument if n < k or k == 0.
CnfFormula generate(const GeneratorSpec& spec);

struct ChiSquare {
  double statistic = 0.0;
  double p_value = 1.0;
  std::uint64_t cells = 0;
};

/// Largest universe chi_square_uniformity accepts.
inline constexpr std::uint64_t kMaxChiSquareCells = 100000;

/// Pearson statistic of the counts against equal expected counts.
ChiSquare chi_square_counts(const std::vector<std::uint64_t>& counts);

/// Pearson test of samples against the uniform distribution on U_psi. Throws
/// std::invalid_argument if the universe exceeds kMaxChiSquareCells, n > 64, or
/// a sample lies outside the universe.
ChiSquare chi_square_uniformity(const std::vector<PartialAssignment>& samples, const Universe& universe);

/// One run, as printed by the command-line tool.
struct RunReport {
  static constexpr const char* kSchema = "indep.run/1";

  std::string source;  // "file", "stdin" or "gen"
  std::string path;
  std::optional<GeneratorSpec> generator;
  std::uint32_t n = 0;
  std::size_t m = 0;
  std::uint32_t k = 0;
  Strategy strategy = Strategy::IndepStructs;
  std::optional<ParamSet> params;
  Estimate estimate;
  std::optional<BigInt> reference;
  double wall_seconds = 0.0;
  int threads = 1;

  nlohmann::json to_json() const;
};

nlohmann::json params_json(const ParamSet& p);
nlohmann::json estimate_json(const Estimate& e);

/// Column header and one row of the bench CSV.
std::string csv_header();
std::string csv_row(std::size_t trial, const RunReport& r);

}  // namespace indep
